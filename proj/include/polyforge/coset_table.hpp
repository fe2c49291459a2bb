#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polyforge/presentation.hpp"

namespace polyforge {

using Coset = std::uint32_t;

enum class Strategy { hlt, felsch };

struct EnumConfig {
  // counts cosets ever defined, not live cosets
  std::uint64_t max_cosets = 2'000'000;
  Strategy strategy = Strategy::felsch;
  bool lookahead = true;  // HLT only: closing passes once the limit is hit
};

// Transition table of a group acting on the cosets of a subgroup. Rows are
// cosets, columns the signed generators in order g0, g0^-1, g1, g1^-1, ...
// Coset 0 is the subgroup itself. A table is partial while entries are
// missing; entries of live rows always reference live cosets, and
// row[c][g] == d implies row[d][g^-1] == c.
class CosetTable {
public:
  static constexpr Coset subgroup_coset = 0;

  bool complete() const { return complete_; }
  bool standardized() const { return standardized_; }
  std::uint32_t coset_count() const { return live_count_; }        // live cosets
  std::uint64_t cosets_defined() const { return defined_count_; }  // ever defined

  const Presentation& presentation() const { return pres_; }
  const std::vector<Word>& subgroup_generators() const { return subgens_; }

  bool is_live(Coset c) const { return c < live_.size() && live_[c]; }
  std::vector<Coset> live_cosets() const;

  // One step of the right action; nullopt when the entry is undefined.
  std::optional<Coset> step(Coset c, Letter l) const;

  // Follows w letter by letter from c; nullopt as soon as an entry is
  // missing. Throws if c is dead or out of range.
  std::optional<Coset> trace(Coset c, const Word& w) const;

  // True iff every subgroup generator acts as the identity on all cosets,
  // i.e. the subgroup equals the kernel of the coset action. Requires a
  // complete table.
  bool is_normal() const;

  // Renumbers cosets in breadth-first scan order over (coset, signed
  // generator) starting from coset 0, dropping dead rows. Requires a
  // complete table. Idempotent.
  CosetTable standardize() const;

  // Checks that all relators and subgroup generators close and that entries
  // are mutually inverse. Throws on violation.
  void validate() const;

  // One line per live coset: "c: c.g0 c.g0^-1 c.g1 c.g1^-1" (1-based).
  void export_text(std::ostream& os) const;
  std::string export_json() const;

  // Fault-injection hook (tests, --mutate-table): a copy with one raw entry
  // overwritten (0-based coset value, -1 for undefined). The copy may
  // violate table invariants by design; validate() must catch that.
  CosetTable with_entry(Coset c, int col, std::int32_t value) const;

private:
  friend class Enumerator;
  friend CosetTable enumerate(const Presentation&, const std::vector<Word>&,
                              const EnumConfig&);

  Presentation pres_;
  std::vector<Word> subgens_;
  int ncols_ = 0;
  std::vector<std::int32_t> rows_;  // row-major, -1 = undefined
  std::vector<std::uint8_t> live_;
  bool complete_ = false;
  bool standardized_ = false;
  std::uint32_t live_count_ = 0;
  std::uint64_t defined_count_ = 0;

  std::int32_t entry(Coset c, int col) const { return rows_[std::size_t(c) * ncols_ + col]; }
};

// Column index of a signed letter.
inline int letter_col(Letter l) { return 2 * letter_gen(l) + (l < 0 ? 1 : 0); }

// Todd-Coxeter enumeration of the cosets of <subgens> in the group presented
// by p. If the table closes within cfg.max_cosets the result is complete and
// coset_count() is the index of the subgroup; otherwise the result is
// partial and records only provable equalities. Hitting the limit is not an
// error.
CosetTable enumerate(const Presentation& p, const std::vector<Word>& subgens,
                     const EnumConfig& cfg = {});

enum class Certificate { proven, unknown };

// Sound one-sided test that w = 1 in the group presented by p: enumerates
// cosets of the trivial subgroup (HLT) up to cfg.max_cosets and checks
// whether the partial table already forces trace(0, w) = 0. Never claims
// w != 1.
Certificate certify_trivial_word(const Presentation& p, const Word& w,
                                 const EnumConfig& cfg = {});

}  // namespace polyforge

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "polyforge/coset_table.hpp"

namespace polyforge {

// Prefix-closed coset representatives from the breadth-first spanning tree of
// a complete coset table, plus the numbering of the Schreier generators (one
// per positive non-tree edge). Keeps its own standardized copy of the table.
class SchreierTransversal {
public:
  explicit SchreierTransversal(const CosetTable& t);  // t must be complete

  const CosetTable& table() const { return table_; }
  std::size_t size() const { return words_.size(); }
  const Word& word(Coset c) const;
  std::size_t max_length() const;

  // true iff the transition (c, l) lies on the spanning tree
  bool tree_edge(Coset c, Letter l) const;

  // Schreier generators: 0-based ids for positive non-tree edges, scanned in
  // (coset, generator) order. gen_id is -1 on tree edges.
  int rank() const { return static_cast<int>(edges_.size()); }
  int gen_id(Coset c, int gen) const;
  std::pair<Coset, int> edge(int id) const { return edges_.at(id); }

  // Rewrites a word over the group's generators as a word over the Schreier
  // generators, starting at coset `from` (which the word must return to).
  Word rewrite_from(Coset from, const Word& w) const;
  // Same from coset 0; throws unless w lies in the subgroup.
  Word rewrite(const Word& w) const { return rewrite_from(0, w); }

private:
  CosetTable table_;
  std::vector<Word> words_;
  std::vector<Coset> parent_;
  std::vector<Letter> plet_;  // letter leading from parent_[c] to c; 0 at root
  std::vector<int> ids_;      // (coset, gen) -> Schreier id, -1 on tree edges
  std::vector<std::pair<Coset, int>> edges_;
};

// A presentation of the subgroup on Schreier generators, as produced by
// Reidemeister-Schreier rewriting and transformed by tietze_simplify. Words
// use the fixed original numbering s_1..s_rank throughout; `active` lists the
// generators that survive simplification and `eliminated` the definitions
// substituted away, in order.
struct SubgroupPresentation {
  int rank = 0;
  std::vector<std::pair<Coset, int>> edges;  // Schreier id -> (coset, gen)
  std::vector<Word> relators;                // over Schreier generator ids
  std::vector<int> active;                   // surviving 0-based ids, sorted
  std::vector<std::pair<int, Word>> eliminated;  // (id, defining word)
  bool fully_simplified = false;  // false after the raw rewrite or when the
                                  // move budget ran out
  std::uint64_t moves = 0;        // Tietze moves applied

  // Compact view on the active generators (names keep the original numbering:
  // s3, s17, ...) for printing and abelian-invariant computations.
  Presentation as_presentation() const;
};

// Rewrites every conjugate transversal(c) * r * transversal(c)^-1 of every
// relator; the result presents the subgroup on all rank() Schreier
// generators, one relator per (live coset, relator) pair, unsimplified.
SubgroupPresentation rewrite_presentation(const Presentation& p,
                                          const SchreierTransversal& tr);
SubgroupPresentation rewrite_presentation(const Presentation& p,
                                          const CosetTable& t);

// Deterministic Tietze simplification: repeatedly eliminates a generator that
// occurs exactly once in some (shortest-first) relator, and otherwise
// shortens a relator by replacing more than half of another relator's cyclic
// rotation with the shorter complement. Stops at a fixed point or after
// `budget` applied moves; the flag records which.
SubgroupPresentation tietze_simplify(const SubgroupPresentation& sp,
                                     std::uint64_t budget = 200'000);

}  // namespace polyforge

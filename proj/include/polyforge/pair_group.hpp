#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "polyforge/action.hpp"
#include "polyforge/coordinate_map.hpp"
#include "polyforge/presets.hpp"

namespace polyforge {

// One element of the finite quotient: a coset of the rank-4 kernel plus a
// vector of residues mod m in the kernel's basis. (q, v) stands for the
// normal form transversal(q) * n_v with n_v the kernel element at v.
struct PairElement {
  Coset q = 0;
  std::array<long long, 4> v{0, 0, 0, 0};

  bool operator==(const PairElement& o) const { return q == o.q && v == o.v; }
  bool operator!=(const PairElement& o) const { return !(*this == o); }
  bool operator<(const PairElement& o) const {
    return q != o.q ? q < o.q : v < o.v;
  }
};

// The quotient of the base group by the index-m^4 characteristic sublattice
// of its rank-4 free-abelian kernel, realized as pairs (coset, vector mod m)
// with twisted multiplication:
//
//   (q, v) . g = (q.g, v*A_g + tau(q, g))
//
// where A_g is the conjugation matrix of g on the kernel and the twist
// tau(q, g) = coordinates(transversal(q.g)^-1 * transversal(q) * g) is
// computed exactly in Z^4 at build time. Built for any m >= 1; m = 1 gives
// the plain quotient by the kernel itself.
class PairGroup {
public:
  int case_id() const { return case_id_; }
  long long modulus() const { return m_; }
  const bigint& order() const { return order_; }  // index * m^4

  const CosetTable& table() const { return cm_.transversal().table(); }
  const SchreierTransversal& transversal() const { return cm_.transversal(); }
  const CoordinateMap& coordinate_map() const { return cm_; }

  // A_g for a signed generator letter (inverse letters get the exact
  // integer inverse matrix).
  const IntMatrix& action(Letter l) const { return mats_.at(letter_col(l)); }
  // Exact (unreduced) twist vector for the transition (q, l).
  const Vec4& twist(Coset q, Letter l) const {
    return twists_.at(letter_col(l)).at(q);
  }
  // Defect of generator l against its transversal representative; zero on a
  // standardized table for every signed generator.
  const Vec4& delta(Letter l) const { return twist(0, l); }

  PairElement identity() const { return PairElement{}; }
  bool is_identity(const PairElement& e) const;
  PairElement apply(const PairElement& e, Letter l) const;
  // fold apply over w starting from the identity
  PairElement evaluate(const Word& w) const;
  // least k <= cap with w^k = 1; throws when the cap is exceeded
  std::uint64_t element_order(const Word& w,
                              std::uint64_t cap = 1 << 20) const;

  // relators of the base group plus basis_i^m: a presentation of exactly
  // this finite group, as required by the polytope certifier
  Presentation full_presentation() const;
  const std::vector<Word>& basis() const { return cm_.basis(); }

private:
  friend PairGroup build_pair_group(const CaseData&, long long,
                                    const CoordinateMap&);
  explicit PairGroup(CoordinateMap cm) : cm_(std::move(cm)) {}

  int case_id_ = 0;
  long long m_ = 1;
  bigint order_;
  CoordinateMap cm_;
  std::array<IntMatrix, 4> mats_;            // column order a, a^-1, b, b^-1
  std::array<long long, 64> mats_ll_{};      // flattened copy for the mod-m path
  std::array<std::vector<Vec4>, 4> twists_;     // exact
  std::array<std::vector<std::array<long long, 4>>, 4> twists_mod_;
};

// Builds the pair group and verifies the construction exactly (no mod-m
// reduction): every relator of the base group must evaluate from the
// identity back to (0, zero-vector), every basis word to (0, e_i), and every
// (coset, generator) twist must cancel against its inverse transition.
// Throws on any mismatch; cm must be certified for this case.
PairGroup build_pair_group(const CaseData& cd, long long m,
                           const CoordinateMap& cm);

// Independent check against direct Todd-Coxeter enumeration over the words
// basis_i^m: compares the index with the pair-group order and the orders of
// a, b, ab and both chirality witness words between the coset-action image
// and the pair representation. Throws if the enumeration does not complete
// within max_cosets (the caller decides whether that means skip).
bool cross_validate(const PairGroup& g, std::uint64_t max_cosets = 2'000'000);

}  // namespace polyforge

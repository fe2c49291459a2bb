#pragma once

#include <array>
#include <string>
#include <vector>

#include "polyforge/int_matrix.hpp"
#include "polyforge/schreier.hpp"

namespace polyforge {

using Vec4 = std::array<bigint, 4>;

// Exact homomorphism from a finite-index subgroup onto Z^4, certified in two
// steps: (A) Tietze simplification of the rewritten presentation must reach
// exactly four generators whose relators are commutation relations covering
// all six pairs (so the subgroup is free abelian of rank 4), and (B) the
// supplied basis words must map to a determinant +-1 matrix over those four
// generators (so they are a free basis). coordinates() then sends any
// subgroup element to its exact integer coordinates in the supplied basis.
class CoordinateMap {
public:
  enum class Verdict { certified, unproven, not_a_basis };

  Verdict verdict() const { return verdict_; }
  bool certified() const { return verdict_ == Verdict::certified; }
  const std::string& detail() const { return detail_; }

  const SchreierTransversal& transversal() const { return trans_; }
  const SubgroupPresentation& simplified() const { return simplified_; }
  const std::vector<Word>& basis() const { return basis_; }
  // rows = abelianized images of the basis words over the surviving
  // generators; det is +1 or -1 when certified
  const IntMatrix& basis_matrix() const { return bmat_; }

  // Exact coordinates of w in the basis; requires certified(); throws when w
  // does not lie in the subgroup.
  Vec4 coordinates(const Word& w) const;

private:
  friend CoordinateMap certify_free_abelian_rank4(const Presentation&,
                                                  const CosetTable&,
                                                  const std::vector<Word>&,
                                                  std::uint64_t);
  explicit CoordinateMap(SchreierTransversal t) : trans_(std::move(t)) {}

  Verdict verdict_ = Verdict::unproven;
  std::string detail_;
  SchreierTransversal trans_;
  SubgroupPresentation simplified_;
  std::vector<Word> basis_;
  IntMatrix bmat_, binv_;
  std::vector<Vec4> rows_;  // Schreier generator -> abelianized image over
                            // the surviving generators
};

// Runs the whole chain: transversal, Reidemeister-Schreier rewrite, Tietze
// simplification, commutator-form check, basis unimodularity check. Never
// reports a false "not free abelian": failure to simplify yields verdict
// unproven. Throws if a basis word is not in the subgroup or basis.size()
// is not 4.
CoordinateMap certify_free_abelian_rank4(const Presentation& p,
                                         const CosetTable& t,
                                         const std::vector<Word>& basis,
                                         std::uint64_t tietze_budget = 200'000);

}  // namespace polyforge

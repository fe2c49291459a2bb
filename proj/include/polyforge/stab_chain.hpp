#pragma once

#include <vector>

#include "polyforge/perm.hpp"

namespace polyforge {

// Point-stabilizer chain built by Schreier's lemma with deterministic
// (greedy first-moved-point) base selection. Every Schreier generator is
// either verified to be the identity permutation point by point, or passed
// down as a generator of the next level, so order() is exact.
class StabChain {
public:
  static constexpr std::size_t default_degree_bound = 200'000;

  explicit StabChain(std::vector<Permutation> gens,
                     std::size_t degree_bound = default_degree_bound);

  const bigint& order() const { return order_; }

  // exact membership test by sifting plus a full identity check
  bool contains(const Permutation& p) const;

  std::size_t base_length() const { return levels_.size(); }

private:
  struct Level {
    Point base = 0;
    std::vector<Permutation> gens;
    std::vector<Point> orbit;                 // BFS order, orbit[0] = base
    std::vector<std::int32_t> where;          // point -> orbit position, -1
    std::vector<Point> tree_parent;           // by orbit position
    std::vector<std::int32_t> tree_gen;       // by orbit position, -1 at base
  };

  std::vector<Level> levels_;
  std::size_t degree_ = 0;
  bigint order_ = 1;

  // transversal element u_p mapping base -> p, composed along tree edges
  Permutation transversal(const Level& lv, Point p) const;
  static Level make_level(std::vector<Permutation> gens, Point base);
};

bigint group_order(const std::vector<Permutation>& gens,
                   std::size_t degree_bound = StabChain::default_degree_bound);
inline bigint group_order(const PermGroup& g,
                          std::size_t degree_bound =
                              StabChain::default_degree_bound) {
  return group_order(g.generators, degree_bound);
}

struct DerivedSeries {
  enum class Verdict { solvable, not_solvable, undecided };
  std::vector<bigint> orders;  // |G|, |G'|, |G''|, ...
  Verdict verdict = Verdict::undecided;
};

// Successive derived subgroups via normal closure of generator commutators;
// stops at the trivial group, at a repeating order, or at the step cap.
DerivedSeries derived_series(const PermGroup& g, int max_steps = 64);

}  // namespace polyforge

#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "polyforge/coset_table.hpp"

namespace polyforge {

using bigint = boost::multiprecision::cpp_int;
using Point = std::uint32_t;

// A permutation of 0..degree-1, stored as its image array.
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<Point> images);  // must be a bijection
  static Permutation identity(std::size_t degree);

  std::size_t degree() const { return img_.size(); }
  Point operator()(Point x) const { return img_[x]; }
  const std::vector<Point>& images() const { return img_; }

  bool is_identity() const;
  Permutation inverse() const;
  // apply *this first, then o — matches left-to-right word evaluation
  Permutation operator*(const Permutation& o) const;

  bool operator==(const Permutation& o) const { return img_ == o.img_; }
  bool operator!=(const Permutation& o) const { return img_ != o.img_; }
  bool operator<(const Permutation& o) const { return img_ < o.img_; }

private:
  std::vector<Point> img_;
};

// least common multiple of the cycle lengths
bigint element_order(const Permutation& p);

// A group of permutations with one generator per alphabet letter, typically
// the image of a coset action.
struct PermGroup {
  std::size_t degree = 0;
  Alphabet alphabet;
  std::vector<Permutation> generators;
};

// The action of the presented group on the cosets of a complete table: each
// generator maps to c -> c 'dot' g. Tables with gaps in their numbering are
// standardized first, so point labels follow the standardized order.
PermGroup image_of_table(const CosetTable& t);

// product of generator images along the letters of w
Permutation evaluate(const PermGroup& g, const Word& w);

// |<p> intersect <q>| as sets of permutations; both cyclic groups are
// materialized, so the combined order must stay small (desk scale).
std::uint64_t cyclic_intersection_order(const Permutation& p,
                                        const Permutation& q);

}  // namespace polyforge

#include "polyforge/perm.hpp"

#include <set>

namespace polyforge {

Permutation::Permutation(std::vector<Point> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (Point x : img_) {
    if (x >= img_.size() || seen[x])
      throw error("permutation images are not a bijection");
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  Permutation p;
  p.img_.resize(degree);
  for (std::size_t i = 0; i < degree; ++i) p.img_[i] = static_cast<Point>(i);
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i)
    p.img_[img_[i]] = static_cast<Point>(i);
  return p;
}

Permutation Permutation::operator*(const Permutation& o) const {
  if (degree() != o.degree()) throw error("permutation degrees differ");
  Permutation p;
  p.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) p.img_[i] = o.img_[img_[i]];
  return p;
}

bigint element_order(const Permutation& p) {
  std::vector<bool> seen(p.degree(), false);
  bigint order = 1;
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    Point x = static_cast<Point>(i);
    do {
      seen[x] = true;
      x = p(x);
      ++len;
    } while (x != i);
    order = boost::multiprecision::lcm(order, bigint(len));
  }
  return order;
}

PermGroup image_of_table(const CosetTable& t) {
  if (!t.complete()) throw error("image_of_table: table is not complete");
  const CosetTable* tbl = &t;
  CosetTable owned;
  if (!t.standardized()) {
    owned = t.standardize();
    tbl = &owned;
  }
  PermGroup g;
  g.degree = tbl->coset_count();
  g.alphabet = tbl->presentation().alphabet;
  for (int i = 0; i < g.alphabet.size(); ++i) {
    std::vector<Point> img(g.degree);
    for (Coset c = 0; c < g.degree; ++c)
      img[c] = *tbl->step(c, static_cast<Letter>(i + 1));
    g.generators.emplace_back(std::move(img));
  }
  return g;
}

Permutation evaluate(const PermGroup& g, const Word& w) {
  if (w.max_generator() >= static_cast<int>(g.generators.size()))
    throw error("evaluate: word uses a generator outside the group");
  Permutation p = Permutation::identity(g.degree);
  for (Letter l : w)
    p = p * (l > 0 ? g.generators[letter_gen(l)]
                   : g.generators[letter_gen(l)].inverse());
  return p;
}

std::uint64_t cyclic_intersection_order(const Permutation& p,
                                        const Permutation& q) {
  if (p.degree() != q.degree())
    throw error("cyclic_intersection_order: permutation degrees differ");
  bigint op = element_order(p), oq = element_order(q);
  if (op > 1'000'000 || oq > 1'000'000)
    throw error("cyclic_intersection_order: cyclic groups too large");
  std::set<Permutation> pows;
  Permutation x = Permutation::identity(p.degree());
  do {
    pows.insert(x);
    x = x * p;
  } while (!x.is_identity());
  std::uint64_t count = 0;
  Permutation y = Permutation::identity(q.degree());
  do {
    if (pows.count(y)) ++count;
    y = y * q;
  } while (!y.is_identity());
  return count;
}

}  // namespace polyforge

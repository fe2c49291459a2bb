#include "polyforge/stab_chain.hpp"

#include <algorithm>
#include <set>

namespace polyforge {

namespace {

// first point moved by any generator, or -1 if all are trivial
std::int64_t first_moved(const std::vector<Permutation>& gens) {
  if (gens.empty()) return -1;
  std::size_t n = gens[0].degree();
  for (std::size_t x = 0; x < n; ++x)
    for (const Permutation& g : gens)
      if (g(static_cast<Point>(x)) != x) return static_cast<std::int64_t>(x);
  return -1;
}

Permutation commutator(const Permutation& u, const Permutation& v) {
  return u.inverse() * v.inverse() * u * v;
}

}  // namespace

StabChain::Level StabChain::make_level(std::vector<Permutation> gens,
                                       Point base) {
  Level lv;
  lv.base = base;
  lv.gens = std::move(gens);
  std::size_t n = lv.gens[0].degree();
  lv.where.assign(n, -1);
  lv.orbit.push_back(base);
  lv.where[base] = 0;
  lv.tree_parent.push_back(base);
  lv.tree_gen.push_back(-1);
  for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
    Point p = lv.orbit[k];
    for (std::size_t gi = 0; gi < lv.gens.size(); ++gi) {
      Point q = lv.gens[gi](p);
      if (lv.where[q] < 0) {
        lv.where[q] = static_cast<std::int32_t>(lv.orbit.size());
        lv.orbit.push_back(q);
        lv.tree_parent.push_back(p);
        lv.tree_gen.push_back(static_cast<std::int32_t>(gi));
      }
    }
  }
  return lv;
}

Permutation StabChain::transversal(const Level& lv, Point p) const {
  std::vector<std::int32_t> path;
  Point x = p;
  while (x != lv.base) {
    std::int32_t pos = lv.where[x];
    path.push_back(lv.tree_gen[pos]);
    x = lv.tree_parent[pos];
  }
  Permutation u = Permutation::identity(degree_);
  for (auto it = path.rbegin(); it != path.rend(); ++it)
    u = u * lv.gens[*it];
  return u;
}

StabChain::StabChain(std::vector<Permutation> gens, std::size_t degree_bound) {
  std::vector<Permutation> cur;
  {
    std::set<Permutation> seen;
    for (Permutation& g : gens) {
      if (g.is_identity()) continue;
      if (!cur.empty() && g.degree() != degree_)
        throw error("group_order: generator degrees differ");
      degree_ = g.degree();
      if (degree_ > degree_bound)
        throw error("group_order: degree exceeds the configured bound");
      if (seen.insert(g).second) cur.push_back(std::move(g));
    }
  }
  while (!cur.empty()) {
    Point base = static_cast<Point>(first_moved(cur));
    Level lv = make_level(std::move(cur), base);
    std::size_t m = lv.orbit.size();

    // Schreier generators: one per non-tree edge of the orbit graph. The
    // sweep below evaluates all of them on every point at once, column by
    // column, so each one is either proven to be the identity or marked.
    struct Edge {
      std::uint32_t from, gi, to;
    };
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t gi = 0; gi < lv.gens.size(); ++gi) {
        Point q = lv.gens[gi](lv.orbit[k]);
        std::int32_t qpos = lv.where[q];
        if (lv.tree_gen[qpos] == static_cast<std::int32_t>(gi) &&
            lv.tree_parent[qpos] == lv.orbit[k] && qpos != 0)
          continue;  // tree edge
        edges.push_back({static_cast<std::uint32_t>(k),
                         static_cast<std::uint32_t>(gi),
                         static_cast<std::uint32_t>(qpos)});
      }
    std::vector<std::uint8_t> marked(edges.size(), 0);
    std::vector<Point> t(m);
    for (Point y = 0; y < degree_; ++y) {
      t[0] = y;
      for (std::size_t k = 1; k < m; ++k)
        t[k] = lv.gens[lv.tree_gen[k]](t[lv.where[lv.tree_parent[k]]]);
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (!marked[e] &&
            lv.gens[edges[e].gi](t[edges[e].from]) != t[edges[e].to])
          marked[e] = 1;
    }

    std::vector<Permutation> next;
    std::set<Permutation> dedupe;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!marked[e]) continue;
      Permutation s = transversal(lv, lv.orbit[edges[e].from]) *
                      lv.gens[edges[e].gi] *
                      transversal(lv, lv.orbit[edges[e].to]).inverse();
      if (dedupe.insert(s).second) next.push_back(std::move(s));
    }
    order_ *= m;
    levels_.push_back(std::move(lv));
    cur = std::move(next);
  }
}

bool StabChain::contains(const Permutation& p) const {
  if (levels_.empty()) return p.is_identity();
  if (p.degree() != degree_) throw error("contains: degree mismatch");
  Permutation r = p;
  for (const Level& lv : levels_) {
    Point d = r(lv.base);
    if (d == lv.base) continue;
    if (lv.where[d] < 0) return false;
    r = r * transversal(lv, d).inverse();
  }
  return r.is_identity();
}

bigint group_order(const std::vector<Permutation>& gens,
                   std::size_t degree_bound) {
  return StabChain(gens, degree_bound).order();
}

namespace {

// Incremental chain used only while closing generating sets: sift success
// proves membership, sift failure may be a false negative (which merely adds
// a redundant generator), so no verification sweep is needed here.
class SiftChain {
public:
  explicit SiftChain(std::size_t degree) : degree_(degree) {}

  bool contains(const Permutation& p) const {
    Permutation r = p;
    for (const auto& lv : levels_) {
      Point d = r(lv.base);
      if (d == lv.base) continue;
      if (lv.where[d] < 0) return false;
      r = r * transversal(lv, d).inverse();
    }
    return r.is_identity();
  }

  void add(const Permutation& g) {
    Permutation r = g;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      if (r.is_identity()) return;
      Level& lv = levels_[i];
      Point d = r(lv.base);
      if (d != lv.base) {
        if (lv.where[d] < 0) {
          lv.gens.push_back(r);
          rebuild_orbit(lv);
          return;
        }
        r = r * transversal(lv, d).inverse();
      }
    }
    if (r.is_identity()) return;
    Level lv;
    lv.base = static_cast<Point>(first_moved({r}));
    lv.gens.push_back(r);
    rebuild_orbit(lv);
    levels_.push_back(std::move(lv));
  }

private:
  struct Level {
    Point base = 0;
    std::vector<Permutation> gens;
    std::vector<Point> orbit;
    std::vector<std::int32_t> where;
    std::vector<Point> tree_parent;
    std::vector<std::int32_t> tree_gen;
  };

  std::size_t degree_;
  std::vector<Level> levels_;

  void rebuild_orbit(Level& lv) const {
    lv.orbit.clear();
    lv.where.assign(degree_, -1);
    lv.tree_parent.clear();
    lv.tree_gen.clear();
    lv.orbit.push_back(lv.base);
    lv.where[lv.base] = 0;
    lv.tree_parent.push_back(lv.base);
    lv.tree_gen.push_back(-1);
    for (std::size_t k = 0; k < lv.orbit.size(); ++k)
      for (std::size_t gi = 0; gi < lv.gens.size(); ++gi) {
        Point q = lv.gens[gi](lv.orbit[k]);
        if (lv.where[q] < 0) {
          lv.where[q] = static_cast<std::int32_t>(lv.orbit.size());
          lv.orbit.push_back(q);
          lv.tree_parent.push_back(lv.orbit[k]);
          lv.tree_gen.push_back(static_cast<std::int32_t>(gi));
        }
      }
  }

  Permutation transversal(const Level& lv, Point p) const {
    std::vector<std::int32_t> path;
    Point x = p;
    while (x != lv.base) {
      std::int32_t pos = lv.where[x];
      path.push_back(lv.tree_gen[pos]);
      x = lv.tree_parent[pos];
    }
    Permutation u = Permutation::identity(degree_);
    for (auto it = path.rbegin(); it != path.rend(); ++it)
      u = u * lv.gens[*it];
    return u;
  }
};

}  // namespace

DerivedSeries derived_series(const PermGroup& g, int max_steps) {
  DerivedSeries out;
  out.orders.push_back(group_order(g.generators));
  std::vector<Permutation> conjugators;
  for (const Permutation& x : g.generators) {
    conjugators.push_back(x);
    conjugators.push_back(x.inverse());
  }
  std::vector<Permutation> cur = g.generators;
  for (int step = 0; step < max_steps; ++step) {
    // normal closure (in g) of the commutators of the current generators
    SiftChain sift(g.degree);
    std::vector<Permutation> gens;
    std::vector<Permutation> queue;
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j)
        queue.push_back(commutator(cur[i], cur[j]));
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      Permutation c = queue[qi];  // by value: the loop body grows the queue
      if (c.is_identity() || sift.contains(c)) continue;
      sift.add(c);
      gens.push_back(c);
      for (const Permutation& x : conjugators)
        queue.push_back(x.inverse() * c * x);
    }
    bigint order = gens.empty() ? bigint(1) : group_order(gens);
    out.orders.push_back(order);
    if (order == 1) {
      out.verdict = DerivedSeries::Verdict::solvable;
      return out;
    }
    if (order == out.orders[out.orders.size() - 2]) {
      out.verdict = DerivedSeries::Verdict::not_solvable;
      return out;
    }
    cur = std::move(gens);
  }
  out.verdict = DerivedSeries::Verdict::undecided;
  return out;
}

}  // namespace polyforge

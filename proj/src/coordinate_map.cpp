#include "polyforge/coordinate_map.hpp"

#include <optional>

namespace polyforge {

namespace {

// true iff r forces two distinct generators to commute: cyclically reduced,
// length 4, one positive and one negative occurrence of each of two
// generators
bool is_commutation(const Word& r, int& gi, int& gj) {
  if (r.size() != 4) return false;
  int a = -1, b = -1;
  int asum = 0, bsum = 0, acount = 0, bcount = 0;
  for (Letter l : r) {
    int g = letter_gen(l);
    if (a < 0 || g == a) {
      a = g;
      asum += l > 0 ? 1 : -1;
      ++acount;
    } else if (b < 0 || g == b) {
      b = g;
      bsum += l > 0 ? 1 : -1;
      ++bcount;
    } else {
      return false;
    }
  }
  if (b < 0 || acount != 2 || bcount != 2 || asum != 0 || bsum != 0)
    return false;
  if (cyclic_reduce(free_reduce(r)).size() != 4) return false;
  gi = a < b ? a : b;
  gj = a < b ? b : a;
  return true;
}

}  // namespace

Vec4 CoordinateMap::coordinates(const Word& w) const {
  if (!certified())
    throw error("coordinate map is not certified (" + detail_ + ")");
  Word rw = trans_.rewrite(w);
  Vec4 acc{};
  for (Letter l : rw) {
    const Vec4& row = rows_[letter_gen(l)];
    for (int i = 0; i < 4; ++i) acc[i] += l > 0 ? row[i] : -row[i];
  }
  return apply_row(acc, binv_);
}

CoordinateMap certify_free_abelian_rank4(const Presentation& p,
                                         const CosetTable& t,
                                         const std::vector<Word>& basis,
                                         std::uint64_t tietze_budget) {
  if (basis.size() != 4) throw error("certify wants exactly 4 basis words");
  CoordinateMap cm{SchreierTransversal(t)};
  cm.basis_ = basis;
  for (const Word& x : basis) cm.trans_.rewrite(x);  // throws if outside

  SubgroupPresentation raw = rewrite_presentation(p, cm.trans_);
  cm.simplified_ = tietze_simplify(raw, tietze_budget);
  const SubgroupPresentation& sp = cm.simplified_;

  if (sp.active.size() != 4) {
    cm.detail_ = "simplification left " + std::to_string(sp.active.size()) +
                 " generators" + (sp.fully_simplified ? "" : " (budget hit)");
    return cm;
  }
  bool pairs[4][4] = {};
  for (const Word& r : sp.relators) {
    int gi, gj;
    if (!is_commutation(r, gi, gj)) {
      cm.detail_ = "relator is not a commutation relation";
      return cm;
    }
    // map original ids to 0..3 positions among the active generators
    int pi = -1, pj = -1;
    for (int k = 0; k < 4; ++k) {
      if (sp.active[k] == gi) pi = k;
      if (sp.active[k] == gj) pj = k;
    }
    if (pi < 0 || pj < 0) {
      cm.detail_ = "relator mentions an eliminated generator";
      return cm;
    }
    pairs[pi][pj] = pairs[pj][pi] = true;
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!pairs[i][j]) {
        cm.detail_ = "commutation relations do not cover all pairs";
        return cm;
      }

  // abelianized image of every Schreier generator over the active four
  std::vector<int> pos(sp.rank, -1);
  for (int k = 0; k < 4; ++k) pos[sp.active[k]] = k;
  std::vector<std::optional<Word>> def(sp.rank);
  for (const auto& [g, w] : sp.eliminated) def[g] = w;
  cm.rows_.assign(sp.rank, Vec4{});
  std::vector<std::optional<Vec4>> memo(sp.rank);
  auto resolve = [&](auto&& self, int g) -> const Vec4& {
    if (memo[g]) return *memo[g];
    Vec4 v{};
    if (pos[g] >= 0) {
      v[pos[g]] = 1;
    } else if (def[g]) {
      for (Letter l : *def[g]) {
        const Vec4& sub = self(self, letter_gen(l));
        for (int i = 0; i < 4; ++i) v[i] += l > 0 ? sub[i] : -sub[i];
      }
    } else {
      throw error("generator neither active nor eliminated");
    }
    memo[g] = v;
    return *memo[g];
  };
  for (int g = 0; g < sp.rank; ++g) cm.rows_[g] = resolve(resolve, g);

  cm.bmat_ = IntMatrix(4, 4);
  for (int i = 0; i < 4; ++i) {
    Word rw = cm.trans_.rewrite(basis[i]);
    Vec4 acc{};
    for (Letter l : rw) {
      const Vec4& row = cm.rows_[letter_gen(l)];
      for (int k = 0; k < 4; ++k) acc[k] += l > 0 ? row[k] : -row[k];
    }
    for (int k = 0; k < 4; ++k) cm.bmat_.at(i, k) = acc[k];
  }
  bigint d = cm.bmat_.det();
  if (d != 1 && d != -1) {
    cm.verdict_ = CoordinateMap::Verdict::not_a_basis;
    cm.detail_ = "basis matrix has determinant " + d.str();
    return cm;
  }
  cm.binv_ = cm.bmat_.inverse_unimodular();
  cm.verdict_ = CoordinateMap::Verdict::certified;
  return cm;
}

}  // namespace polyforge

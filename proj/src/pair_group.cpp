#include "polyforge/pair_group.hpp"

#include <algorithm>
#include <string>

#include "polyforge/perm.hpp"

namespace polyforge {

namespace {

long long reduce(long long x, long long m) {
  long long r = x % m;
  return r < 0 ? r + m : r;
}

// Exact pair arithmetic over unreduced integer vectors, used for build-time
// validation only.
struct ExactState {
  Coset q;
  Vec4 v;
};

ExactState apply_exact(const PairGroup& g, const CosetTable& t, ExactState e,
                       Letter l) {
  Coset d = *t.step(e.q, l);
  const IntMatrix& a = g.action(l);
  Vec4 out = g.twist(e.q, l);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) out[j] += e.v[i] * a.at(i, j);
  return {d, std::move(out)};
}

ExactState evaluate_exact(const PairGroup& g, const CosetTable& t,
                          const Word& w) {
  ExactState e{0, Vec4{}};
  for (Letter l : w) e = apply_exact(g, t, std::move(e), l);
  return e;
}

}  // namespace

bool PairGroup::is_identity(const PairElement& e) const {
  return e.q == 0 && e.v == std::array<long long, 4>{0, 0, 0, 0};
}

PairElement PairGroup::apply(const PairElement& e, Letter l) const {
  int col = letter_col(l);
  PairElement out;
  out.q = *table().step(e.q, l);
  const long long* a = mats_ll_.data() + 16 * col;
  const auto& tau = twists_mod_[col][e.q];
  for (int j = 0; j < 4; ++j) {
    long long s = tau[j];
    for (int i = 0; i < 4; ++i) s += e.v[i] * a[4 * i + j];
    out.v[j] = reduce(s, m_);
  }
  return out;
}

PairElement PairGroup::evaluate(const Word& w) const {
  PairElement e;
  for (Letter l : w) e = apply(e, l);
  return e;
}

std::uint64_t PairGroup::element_order(const Word& w,
                                       std::uint64_t cap) const {
  PairElement acc = evaluate(w);
  for (std::uint64_t k = 1; k <= cap; ++k) {
    if (is_identity(acc)) return k;
    for (Letter l : w) acc = apply(acc, l);
  }
  throw error("element order exceeds cap " + std::to_string(cap));
}

Presentation PairGroup::full_presentation() const {
  Presentation p = table().presentation();
  for (const Word& b : cm_.basis()) p.relators.push_back(b.pow(m_));
  return p;
}

PairGroup build_pair_group(const CaseData& cd, long long m,
                           const CoordinateMap& cm) {
  if (m < 1) throw error("pair group modulus must be >= 1");
  if (m > (1LL << 31)) throw error("pair group modulus too large");
  if (!cm.certified())
    throw error("pair group needs a certified rank-4 coordinate map");
  if (cm.transversal().table().presentation().alphabet.size() != 2)
    throw error("pair group expects a two-generator base group");
  if (cd.basis.size() != cm.basis().size() ||
      !std::equal(cd.basis.begin(), cd.basis.end(), cm.basis().begin()))
    throw error("pair group case data does not match the coordinate map");
  if (static_cast<Coset>(cd.expected_index) !=
      cm.transversal().table().coset_count())
    throw error("pair group index does not match the enumerated table");

  PairGroup g(cm);
  g.case_id_ = cd.id;
  g.m_ = m;

  const SchreierTransversal& tr = g.cm_.transversal();
  const CosetTable& t = tr.table();
  Coset n = t.coset_count();
  g.order_ = bigint(n) * m * m * m * m;

  ActionPair ap = action_matrices(g.cm_);
  g.mats_[0] = ap.mats[0];
  g.mats_[1] = ap.mats[0].inverse_unimodular();
  g.mats_[2] = ap.mats[1];
  g.mats_[3] = ap.mats[1].inverse_unimodular();
  for (int col = 0; col < 4; ++col)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        g.mats_ll_[16 * col + 4 * i + j] =
            static_cast<long long>(g.mats_[col].at(i, j));

  // twist tables: tau(q, l) = coordinates(t_{q.l}^-1 * t_q * l), exact
  for (int col = 0; col < 4; ++col) {
    Letter l = (col % 2 == 0) ? static_cast<Letter>(col / 2 + 1)
                              : static_cast<Letter>(-(col / 2 + 1));
    g.twists_[col].resize(n);
    g.twists_mod_[col].resize(n);
    for (Coset q = 0; q < n; ++q) {
      Coset d = *t.step(q, l);
      Word defect = tr.word(d).inverse() * tr.word(q) * Word({l});
      g.twists_[col][q] = g.cm_.coordinates(defect);
      for (int j = 0; j < 4; ++j)
        g.twists_mod_[col][q][j] =
            reduce(static_cast<long long>(g.twists_[col][q][j]), m);
    }
  }

  // validation, all in exact arithmetic: relators return to (0, 0), basis
  // words hit the standard vectors, and every transition cancels its inverse
  const Presentation& pres = t.presentation();
  for (const Word& r : pres.relators) {
    ExactState e = evaluate_exact(g, t, r);
    if (e.q != 0 || e.v != Vec4{})
      throw error("pair group validation: relator does not act trivially");
  }
  for (std::size_t i = 0; i < g.cm_.basis().size(); ++i) {
    ExactState e = evaluate_exact(g, t, g.cm_.basis()[i]);
    Vec4 want{};
    want[i] = 1;
    if (e.q != 0 || e.v != want)
      throw error("pair group validation: basis word misses its unit vector");
  }
  for (Coset q = 0; q < n; ++q)
    for (Letter l : {Letter(1), Letter(-1), Letter(2), Letter(-2)}) {
      ExactState e = apply_exact(g, t, {q, Vec4{}}, l);
      e = apply_exact(g, t, std::move(e), static_cast<Letter>(-l));
      if (e.q != q || e.v != Vec4{})
        throw error("pair group validation: twists do not cancel");
    }

  return g;
}

bool cross_validate(const PairGroup& g, std::uint64_t max_cosets) {
  const Presentation& base = g.table().presentation();
  std::vector<Word> subgens;
  for (const Word& b : g.basis()) subgens.push_back(b.pow(g.modulus()));

  EnumConfig cfg;
  cfg.max_cosets = max_cosets;
  CosetTable direct = enumerate(base, subgens, cfg);
  if (!direct.complete())
    throw error("cross validation budget: enumeration incomplete at " +
                std::to_string(max_cosets) + " cosets");
  if (bigint(direct.coset_count()) != g.order()) return false;

  PermGroup img = image_of_table(direct);
  std::vector<Word> probes{Word({1}), Word({2}), Word({1, 2}),
                           chirality_witness_base(),
                           chirality_witness_twisted()};
  for (const Word& w : probes) {
    bigint direct_order = element_order(evaluate(img, w));
    if (bigint(g.element_order(w)) != direct_order) return false;
  }
  return true;
}

}  // namespace polyforge

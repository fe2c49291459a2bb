#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "polyforge/action.hpp"
#include "polyforge/coordinate_map.hpp"
#include "polyforge/int_matrix.hpp"
#include "polyforge/presets.hpp"
#include "polyforge/schreier.hpp"

using namespace polyforge;
using oracle::oracle_groups;
using oracle::OracleGroup;
using oracle::parse_all;
using oracle::Perm;

namespace {

CosetTable enumerate_over(const Presentation& p,
                          const std::vector<std::string>& subtexts) {
  CosetTable t = enumerate(p, parse_all(p, subtexts));
  REQUIRE(t.complete());
  return t;
}

// The word over the original generators that Schreier generator `id` stands
// for: rep(c) g rep(c.g)^-1 for the non-tree edge (c, g).
Word schreier_word(const SchreierTransversal& tr, int id) {
  auto [c, g] = tr.edge(id);
  Letter l = static_cast<Letter>(g + 1);
  Coset d = *tr.table().step(c, l);
  return tr.word(c) * Word({l}) * tr.word(d).inverse();
}

// Expands a word over Schreier generators back to the original alphabet.
Word expand(const SchreierTransversal& tr, const Word& w) {
  Word out;
  for (Letter l : w) {
    Word s = schreier_word(tr, letter_gen(l));
    out = out * (l > 0 ? s : s.inverse());
  }
  return out;
}

Vec4 v4(long a, long b, long c, long d) {
  return Vec4{bigint(a), bigint(b), bigint(c), bigint(d)};
}

Vec4 expected_row(const CaseData& cd, int gen, int i) {
  const auto& r = cd.expected_action[gen][i];
  return v4(r[0], r[1], r[2], r[3]);
}

IntMatrix expected_matrix(const CaseData& cd, int gen) {
  std::vector<std::vector<long long>> rows;
  for (int i = 0; i < 4; ++i)
    rows.push_back({cd.expected_action[gen][i][0], cd.expected_action[gen][i][1],
                    cd.expected_action[gen][i][2], cd.expected_action[gen][i][3]});
  return IntMatrix::from_rows(rows);
}

const CosetTable& partial_table() {
  static const CosetTable t = [] {
    Presentation p({"x", "y"}, {"x^2", "y^3", "(x*y)^7"});
    EnumConfig cfg;
    cfg.max_cosets = 50;  // the (2,3,7) group is infinite: never closes
    return enumerate(p, {}, cfg);
  }();
  return t;
}

}  // namespace

TEST_CASE("transversal basics") {
  // S3 over <a>: cosets H, Hb, Hb^-1 in scan order
  Presentation s3({"a", "b"}, {"a^2", "b^3", "(a*b)^2"});
  CosetTable t = enumerate_over(s3, {"a"});
  SchreierTransversal tr(t);
  REQUIRE(tr.size() == 3);
  CHECK(tr.word(0) == Word());
  CHECK(tr.word(1) == Word({2}));
  CHECK(tr.word(2) == Word({-2}));
  CHECK(tr.max_length() == 1);

  // whole group as its own subgroup: one empty representative
  Presentation z6({"a"}, {"a^6"});
  CosetTable whole = enumerate_over(z6, {"a"});
  SchreierTransversal tw(whole);
  CHECK(tw.size() == 1);
  CHECK(tw.word(0) == Word());
  CHECK(tw.max_length() == 0);
  CHECK(tw.rank() == 1);  // the single loop edge at the root

  CHECK_FALSE(partial_table().complete());
  CHECK_THROWS_AS(SchreierTransversal{partial_table()}, error);
  CHECK_THROWS_AS(rewrite_presentation(Presentation({"x", "y"},
                                                    {"x^2", "y^3", "(x*y)^7"}),
                                       partial_table()),
                  error);
}

TEST_CASE("transversal representatives reach their cosets and stay prefix-closed") {
  for (const OracleGroup& g : oracle_groups()) {
    CAPTURE(g.name);
    CosetTable t = enumerate_over(g.pres, g.subgroup);
    SchreierTransversal tr(t);
    REQUIRE(tr.size() == g.sub_index);

    std::set<std::vector<Letter>> reps;
    for (Coset c = 0; c < tr.size(); ++c)
      reps.insert(tr.word(c).letters());
    CHECK(reps.size() == tr.size());  // distinct representatives

    std::size_t longest = 0;
    for (Coset c = 0; c < tr.size(); ++c) {
      const Word& w = tr.word(c);
      longest = std::max(longest, w.size());
      CHECK(*tr.table().trace(0, w) == c);
      std::vector<Letter> prefix;
      for (Letter l : w) {  // every proper prefix is also a representative
        CHECK(reps.count(prefix));
        prefix.push_back(l);
      }
    }
    CHECK(tr.max_length() == longest);

    // Schreier generator ids: a bijection onto the positive non-tree edges
    int ngens = g.pres.alphabet.size();
    int seen = 0;
    for (Coset c = 0; c < tr.size(); ++c)
      for (int gen = 0; gen < ngens; ++gen) {
        Letter l = static_cast<Letter>(gen + 1);
        int id = tr.gen_id(c, gen);
        CHECK(tr.tree_edge(c, l) == (id < 0));
        if (id >= 0) {
          ++seen;
          CHECK(tr.edge(id) == std::make_pair(c, gen));
        }
      }
    CHECK(seen == tr.rank());
    CHECK(tr.rank() == static_cast<int>(tr.size()) * ngens -
                           static_cast<int>(tr.size()) + 1);
  }
}

TEST_CASE("schreier generators of free-group subgroups") {
  // index-2 subgroup of the free group of rank 2 (words of even length)
  Presentation f2({"a", "b"}, {});
  CosetTable t2 = enumerate_over(f2, {"a^2", "a*b", "b*a"});
  REQUIRE(t2.coset_count() == 2);
  SubgroupPresentation sp2 = rewrite_presentation(f2, t2);
  CHECK(sp2.rank == 3);  // Nielsen-Schreier: 2(index - 1) + 1
  CHECK(sp2.relators.empty());
  SubgroupPresentation simp2 = tietze_simplify(sp2);
  CHECK(simp2.active.size() == 3);
  CHECK(simp2.moves == 0);
  CHECK(simp2.fully_simplified);
  CHECK(abelian_invariants(simp2.as_presentation()) ==
        std::vector<bigint>{0, 0, 0});

  // index-3 subgroup: kernel of a -> 1, b -> 0 into Z/3
  CosetTable t3 = enumerate_over(f2, {"a^3", "b", "a*b*a^-1", "a^2*b*a^-2"});
  REQUIRE(t3.coset_count() == 3);
  SubgroupPresentation sp3 = rewrite_presentation(f2, t3);
  CHECK(sp3.rank == 4);
  CHECK(sp3.relators.empty());
}

TEST_CASE("rewritten relators expand to the identity") {
  // Soundness oracle: substituting the subgroup words the Schreier generators
  // stand for into every rewritten relator must give a relation of the group,
  // checked in a faithful permutation representation. Tietze output (surviving
  // relators and elimination definitions) must pass the same expansion test.
  for (const OracleGroup& g : oracle_groups()) {
    CAPTURE(g.name);
    CosetTable t = enumerate_over(g.pres, g.subgroup);
    SchreierTransversal tr(t);
    SubgroupPresentation sp = rewrite_presentation(g.pres, tr);
    CHECK(sp.relators.size() == g.sub_index * g.pres.relators.size());

    Perm id = oracle::pid(g.degree);
    for (const Word& r : sp.relators)
      CHECK(oracle::peval(g.perms, expand(tr, r)) == id);

    SubgroupPresentation simp = tietze_simplify(sp);
    CHECK(simp.fully_simplified);
    for (const Word& r : simp.relators)
      CHECK(oracle::peval(g.perms, expand(tr, r)) == id);
    for (const auto& [gen, def] : simp.eliminated)
      CHECK(oracle::peval(g.perms, expand(tr, def)) ==
            oracle::peval(g.perms, schreier_word(tr, gen)));

    // active + eliminated partition the original generators
    std::set<int> gens(simp.active.begin(), simp.active.end());
    for (const auto& [gen, def] : simp.eliminated) CHECK(gens.insert(gen).second);
    CHECK(gens.size() == static_cast<std::size_t>(sp.rank));
  }
}

TEST_CASE("tietze simplification") {
  auto make = [](int rank, std::vector<std::vector<Letter>> rels) {
    SubgroupPresentation sp;
    sp.rank = rank;
    for (int i = 0; i < rank; ++i) sp.active.push_back(i);
    for (auto& r : rels) sp.relators.emplace_back(std::move(r));
    return sp;
  };

  // <x, y | y> -> <x | >
  SubgroupPresentation a = tietze_simplify(make(2, {{2}}));
  CHECK(a.active == std::vector<int>{0});
  CHECK(a.relators.empty());
  CHECK(a.eliminated.size() == 1);
  CHECK(a.eliminated[0].first == 1);
  CHECK(a.eliminated[0].second == Word());
  CHECK(a.fully_simplified);
  CHECK(a.moves == 1);

  // a single commutator is already minimal
  SubgroupPresentation b = tietze_simplify(make(2, {{-1, -2, 1, 2}}));
  CHECK(b.active == std::vector<int>{0, 1});
  CHECK(b.relators.size() == 1);
  CHECK(b.moves == 0);
  CHECK(b.fully_simplified);

  // budget zero: nothing happens and the flag says so
  SubgroupPresentation c = tietze_simplify(make(2, {{2}}), 0);
  CHECK_FALSE(c.fully_simplified);
  CHECK(c.moves == 0);
  CHECK(c.active.size() == 2);
  CHECK(c.relators.size() == 1);

  // duplicates up to rotation and inversion collapse on input
  SubgroupPresentation d =
      tietze_simplify(make(2, {{-1, -2, 1, 2}, {-2, -1, 2, 1}}));
  CHECK(d.relators.size() == 1);

  // relators of a dead generator pair: s1 s2 and s2 s1 are the same relator
  // cyclically; eliminating one generator empties the list
  SubgroupPresentation e = tietze_simplify(make(2, {{1, 2}, {2, 1}}));
  CHECK(e.active.size() == 1);
  CHECK(e.relators.empty());

  // as_presentation refuses relators that mention eliminated generators
  SubgroupPresentation broken;
  broken.rank = 2;
  broken.active = {0};
  broken.eliminated = {{1, Word()}};
  broken.relators = {Word({1, 2})};
  CHECK_THROWS_AS(broken.as_presentation(), error);
}

TEST_CASE("index-one rewriting is the identity on presentations") {
  // Over the whole group the rewriting map is generator-for-generator, so the
  // raw rewritten relators equal the original ones and every abelian
  // invariant is preserved, before and after simplification.
  for (const OracleGroup& g : oracle_groups()) {
    CAPTURE(g.name);
    std::vector<std::string> gens;
    for (int i = 0; i < g.pres.alphabet.size(); ++i)
      gens.push_back(g.pres.alphabet[i].name);
    CosetTable t = enumerate_over(g.pres, gens);
    REQUIRE(t.coset_count() == 1);
    SubgroupPresentation sp = rewrite_presentation(g.pres, t);
    CHECK(sp.rank == g.pres.alphabet.size());
    REQUIRE(sp.relators.size() == g.pres.relators.size());
    for (std::size_t i = 0; i < sp.relators.size(); ++i)
      CHECK(sp.relators[i] == g.pres.relators[i]);
    CHECK(abelian_invariants(sp.as_presentation()) ==
          abelian_invariants(g.pres));
    SubgroupPresentation simp = tietze_simplify(sp);
    CHECK(abelian_invariants(simp.as_presentation()) ==
          abelian_invariants(g.pres));
  }
}

TEST_CASE("kernel presentations simplify to free abelian of rank 4") {
  const std::size_t expected_maxlen[5] = {0, 14, 14, 16, 18};
  for (int k = 1; k <= 4; ++k) {
    CAPTURE(k);
    const Presentation& base = base_group();
    const CaseData& cd = case_data(k);
    CosetTable t = enumerate(base, cd.basis);
    REQUIRE(t.complete());
    REQUIRE(t.coset_count() == static_cast<Coset>(cd.expected_index));
    CHECK(t.is_normal());

    SchreierTransversal tr(t);
    CHECK(tr.max_length() == expected_maxlen[k]);
    CHECK(tr.max_length() <= 20);
    CHECK(tr.rank() == cd.expected_index + 1);

    SubgroupPresentation sp = rewrite_presentation(base, tr);
    CHECK(sp.relators.size() ==
          static_cast<std::size_t>(cd.expected_index) * base.relators.size());

    SubgroupPresentation simp = tietze_simplify(sp);
    CHECK(simp.fully_simplified);
    CHECK(simp.active.size() == 4);
    REQUIRE(simp.relators.size() == 6);
    for (const Word& r : simp.relators) CHECK(r.size() == 4);
    CHECK(abelian_invariants(simp.as_presentation()) ==
          std::vector<bigint>{0, 0, 0, 0});

    // deterministic: a second run reproduces the exact same output
    SubgroupPresentation again = tietze_simplify(sp);
    CHECK(again.relators == simp.relators);
    CHECK(again.eliminated == simp.eliminated);
    CHECK(again.moves == simp.moves);
  }
}

TEST_CASE("rank-4 certificates and exact coordinates") {
  std::mt19937 rng(421);
  for (int k = 1; k <= 4; ++k) {
    CAPTURE(k);
    const Presentation& base = base_group();
    const CaseData& cd = case_data(k);
    CosetTable t = enumerate(base, cd.basis);
    CoordinateMap cm = certify_free_abelian_rank4(base, t, cd.basis);
    REQUIRE(cm.certified());
    bigint det = cm.basis_matrix().det();
    CHECK((det == 1 || det == -1));

    // the basis maps to the standard basis, the identity to zero
    for (int i = 0; i < 4; ++i) {
      Vec4 e{};
      e[i] = 1;
      CHECK(cm.coordinates(cd.basis[i]) == e);
    }
    CHECK(cm.coordinates(Word()) == Vec4{});
    CHECK(cm.coordinates(cd.basis[0] * cd.basis[1]) == v4(1, 1, 0, 0));
    CHECK(cm.coordinates(cd.basis[2].inverse()) == v4(0, 0, -1, 0));

    // homomorphism: products of basis words map to exponent-vector sums
    std::uniform_int_distribution<int> pick(0, 3), sign(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
      Word w;
      long exp[4] = {0, 0, 0, 0};
      for (int j = 0; j < 8; ++j) {
        int i = pick(rng);
        if (sign(rng)) {
          w = w * cd.basis[i];
          ++exp[i];
        } else {
          w = w * cd.basis[i].inverse();
          --exp[i];
        }
      }
      CHECK(cm.coordinates(w) == v4(exp[0], exp[1], exp[2], exp[3]));
    }

    CHECK_THROWS_AS(cm.coordinates(Word({1})), error);  // not in the subgroup
  }
}

TEST_CASE("conjugation tables") {
  std::mt19937 rng(422);
  for (int k = 1; k <= 4; ++k) {
    CAPTURE(k);
    const Presentation& base = base_group();
    const CaseData& cd = case_data(k);
    CosetTable t = enumerate(base, cd.basis);
    CoordinateMap cm = certify_free_abelian_rank4(base, t, cd.basis);
    REQUIRE(cm.certified());

    for (int gen = 0; gen < 2; ++gen) {
      Word g({static_cast<Letter>(gen + 1)});
      IntMatrix expect = expected_matrix(cd, gen);
      for (int i = 0; i < 4; ++i) {
        CAPTURE(gen);
        CAPTURE(i);
        CHECK(cm.coordinates(cd.basis[i].conjugate(g)) ==
              expected_row(cd, gen, i));
      }
      // conjugating by g^-1 applies the inverse matrix
      IntMatrix inv = expect.inverse_unimodular();
      for (int i = 0; i < 4; ++i) {
        Vec4 e{};
        e[i] = 1;
        CHECK(cm.coordinates(cd.basis[i].conjugate(g.inverse())) ==
              apply_row(e, inv));
      }
      // and the conjugate of any subgroup element transforms by the matrix
      std::uniform_int_distribution<int> pick(0, 3), sign(0, 1);
      for (int trial = 0; trial < 5; ++trial) {
        Word w;
        for (int j = 0; j < 5; ++j) {
          int i = pick(rng);
          w = w * (sign(rng) ? cd.basis[i] : cd.basis[i].inverse());
        }
        CHECK(cm.coordinates(w.conjugate(g)) ==
              apply_row(cm.coordinates(w), expect));
      }
    }
  }
}

TEST_CASE("action matrices") {
  const Presentation& base = base_group();
  for (int k = 1; k <= 4; ++k) {
    CAPTURE(k);
    const CaseData& cd = case_data(k);
    CosetTable t = enumerate(base, cd.basis);
    CoordinateMap cm = certify_free_abelian_rank4(base, t, cd.basis);
    ActionPair ap = action_matrices(cm);
    REQUIRE(ap.mats.size() == 2);
    for (int gen = 0; gen < 2; ++gen) {
      CHECK(ap.mats[gen] == expected_matrix(cd, gen));
      bigint d = ap.mats[gen].det();
      CHECK((d == 1 || d == -1));
    }
    CHECK(verify_action_relations(ap, base));

    // flipping the sign of the first nonzero entry breaks the relation check
    ActionPair bad = ap;
    for (int j = 0; j < 4; ++j)
      if (bad.mats[0].at(0, j) != 0) {
        bad.mats[0].at(0, j) = -bad.mats[0].at(0, j);
        break;
      }
    CHECK_FALSE(verify_action_relations(bad, base));
    // a non-unimodular matrix is rejected outright
    ActionPair scaled = ap;
    for (int j = 0; j < 4; ++j) scaled.mats[1].at(0, j) *= 2;
    CHECK_FALSE(verify_action_relations(scaled, base));
  }

  // the first family member, spelled out
  const CaseData& c1 = case_data(1);
  CosetTable t1 = enumerate(base, c1.basis);
  CoordinateMap cm1 = certify_free_abelian_rank4(base, t1, c1.basis);
  ActionPair ap1 = action_matrices(cm1);
  CHECK(ap1.mats[0] == IntMatrix::from_rows(
                           {{0, 1, 0, -1}, {-1, 0, -1, 0}, {0, 0, 0, 1},
                            {-1, -1, 0, 0}}));
  CHECK(ap1.mats[1] == IntMatrix::from_rows(
                           {{1, 0, 0, 1}, {-1, 0, 0, 0}, {-1, 1, -1, -1},
                            {0, 0, 1, 0}}));
  // spot rows of the other kernels
  const CaseData& c3 = case_data(3);
  CHECK(expected_matrix(c3, 0).at(2, 0) == 1);  // third basis word -> first
  for (int j = 1; j < 4; ++j) CHECK(expected_matrix(c3, 0).at(2, j) == 0);
  const CaseData& c4 = case_data(4);
  CHECK(expected_matrix(c4, 0).at(2, 2) == -1);  // third -> its own inverse
}

TEST_CASE("certificate verdicts on degenerate input") {
  const Presentation& base = base_group();
  const CaseData& cd = case_data(1);
  CosetTable t = enumerate(base, cd.basis);

  // repeated basis word: determinant 0
  CoordinateMap rep = certify_free_abelian_rank4(
      base, t, {cd.basis[0], cd.basis[1], cd.basis[2], cd.basis[0]});
  CHECK(rep.verdict() == CoordinateMap::Verdict::not_a_basis);
  CHECK_FALSE(rep.detail().empty());
  CHECK_THROWS_AS(rep.coordinates(cd.basis[0]), error);

  // squared basis word: determinant 2, spans only a sublattice
  CoordinateMap sq = certify_free_abelian_rank4(
      base, t, {cd.basis[0] * cd.basis[0], cd.basis[1], cd.basis[2],
                cd.basis[3]});
  CHECK(sq.verdict() == CoordinateMap::Verdict::not_a_basis);

  // starved simplification budget: inconclusive, never a false claim
  CoordinateMap starved = certify_free_abelian_rank4(base, t, cd.basis, 3);
  CHECK(starved.verdict() == CoordinateMap::Verdict::unproven);
  CHECK(starved.detail().find("budget") != std::string::npos);

  CHECK_THROWS_AS(certify_free_abelian_rank4(
                      base, t, {cd.basis[0], cd.basis[1], cd.basis[2]}),
                  error);  // wrong arity
  CHECK_THROWS_AS(certify_free_abelian_rank4(
                      base, t,
                      {Word({1}), cd.basis[1], cd.basis[2], cd.basis[3]}),
                  error);  // first word lies outside the subgroup

  // a cyclic subgroup is not free abelian of rank 4: unproven, not a lie
  Presentation s4({"a", "b"}, {"a^4", "b^2", "(a*b)^3"});
  CosetTable ts4 = enumerate_over(s4, {"a"});
  Word a({1});
  CoordinateMap cyc = certify_free_abelian_rank4(
      s4, ts4, {a, a * a, a * a * a, a * a * a * a});
  CHECK(cyc.verdict() == CoordinateMap::Verdict::unproven);
  CHECK_THROWS_AS(action_matrices(cyc), error);
}

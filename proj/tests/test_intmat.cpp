#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "polyforge/int_matrix.hpp"
#include "polyforge/presentation.hpp"

using namespace polyforge;

namespace {

using Rows = std::vector<std::vector<long long>>;

// Independent oracle: determinant by Leibniz expansion over all permutations.
bigint leibniz_det(const IntMatrix& m) {
  std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  bigint det = 0;
  do {
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    bigint term = sign;
    for (std::size_t i = 0; i < n; ++i) term *= m.at(i, perm[i]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

void combinations(std::size_t n, std::size_t k,
                  std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    out.push_back(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

// Independent oracle for Smith divisors: d_k = g_k / g_{k-1} where g_k is the
// gcd of all k x k minors (the k-th determinantal divisor), zeros once the
// minors vanish.  Only usable for small matrices.
std::vector<bigint> oracle_divisors(const IntMatrix& m) {
  std::size_t n = std::min(m.rows(), m.cols());
  std::vector<bigint> out(n, 0);
  bigint prev = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<std::size_t>> rsel, csel;
    combinations(m.rows(), k, rsel);
    combinations(m.cols(), k, csel);
    bigint g = 0;
    for (const auto& rs : rsel)
      for (const auto& cs : csel) {
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = m.at(rs[i], cs[j]);
        g = gcd(g, leibniz_det(sub));
        if (g == 1) break;
      }
    if (g == 0) break;  // rank < k: trailing divisors stay zero
    out[k - 1] = abs(g) / prev;
    prev = abs(g);
  }
  return out;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t nr, std::size_t nc,
                        int span) {
  std::uniform_int_distribution<int> d(-span, span);
  IntMatrix m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m.at(i, j) = d(rng);
  return m;
}

// Random product of elementary row operations: unimodular by construction.
IntMatrix random_unimodular(std::mt19937& rng, std::size_t n, int ops) {
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> kind(0, 2);
  IntMatrix m = IntMatrix::identity(n);
  for (int t = 0; t < ops; ++t) {
    std::size_t a = idx(rng), b = idx(rng);
    switch (kind(rng)) {
      case 0:  // add multiple of another row
        if (a != b) {
          bigint q = coef(rng);
          for (std::size_t j = 0; j < n; ++j) m.at(a, j) += q * m.at(b, j);
        }
        break;
      case 1:  // swap
        for (std::size_t j = 0; j < n; ++j) std::swap(m.at(a, j), m.at(b, j));
        break;
      default:  // negate
        for (std::size_t j = 0; j < n; ++j) m.at(a, j) = -m.at(a, j);
    }
  }
  return m;
}

std::vector<bigint> divisors_of(const IntMatrix& m) {
  return smith_normal_form(m).divisors;
}

std::vector<bigint> big(std::vector<long long> v) {
  return std::vector<bigint>(v.begin(), v.end());
}

}  // namespace

TEST_CASE("matrix basics") {
  IntMatrix id = IntMatrix::identity(3);
  CHECK(id.is_identity());
  CHECK(id.det() == 1);
  IntMatrix m = IntMatrix::from_rows({{1, 2}, {3, 4}});
  CHECK(m.at(1, 0) == 3);
  CHECK((m * IntMatrix::identity(2)) == m);
  CHECK_FALSE(m.is_identity());
  CHECK(m.det() == -2);
  CHECK_THROWS_AS(IntMatrix::from_rows({{1, 2}, {3}}), error);
  CHECK_THROWS_AS(m * id, error);                               // 2x2 * 3x3
  CHECK_THROWS_AS(IntMatrix(2, 3).det(), error);                // non-square
  CHECK(IntMatrix::from_rows({{0, 1}, {0, 2}}).det() == 0);     // singular
  CHECK(IntMatrix::from_rows({{0, 1}, {2, 3}}).det() == -2);    // pivot swap
}

TEST_CASE("determinant matches Leibniz expansion") {
  std::mt19937 rng(811);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + t % 5;
    IntMatrix m = random_matrix(rng, n, n, 9);
    CHECK(m.det() == leibniz_det(m));
  }
}

TEST_CASE("unimodular inverse") {
  std::mt19937 rng(812);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = 2 + t % 4;
    IntMatrix u = random_unimodular(rng, n, 12);
    bigint d = u.det();
    CHECK((d == 1 || d == -1));
    IntMatrix v = u.inverse_unimodular();
    CHECK((u * v).is_identity());
    CHECK((v * u).is_identity());
  }
  CHECK_THROWS_AS(IntMatrix::from_rows({{2, 0}, {0, 1}}).inverse_unimodular(),
                  error);
  CHECK_THROWS_AS(IntMatrix::from_rows({{1, 1}, {1, 1}}).inverse_unimodular(),
                  error);
}

TEST_CASE("smith form pinned examples") {
  CHECK(divisors_of(IntMatrix::from_rows({{2, 0}, {0, 3}})) == big({1, 6}));
  CHECK(divisors_of(IntMatrix(6, 4)) == big({0, 0, 0, 0}));
  CHECK(divisors_of(IntMatrix::identity(3)) == big({1, 1, 1}));
  // relator matrix of <x,y | x^2, y^4, [x,y]>-style data
  CHECK(divisors_of(IntMatrix::from_rows({{4, 0}, {0, 8}, {2, 2}, {0, 0},
                                          {6, 14}})) == big({2, 4}));
  // scaled identity: index formula |det(m I)| = m^4
  for (long long m = 1; m <= 6; ++m) {
    IntMatrix s(4, 4);
    for (int i = 0; i < 4; ++i) s.at(i, i) = m;
    CHECK(divisors_of(s) == big({m, m, m, m}));
    bigint idx = s.det();
    CHECK(idx == bigint(m) * m * m * m);
  }
}

TEST_CASE("smith form matches determinantal divisors") {
  std::mt19937 rng(813);
  for (int t = 0; t < 150; ++t) {
    std::size_t nr = 1 + rng() % 4, nc = 1 + rng() % 5;
    IntMatrix m = random_matrix(rng, nr, nc, 6);
    CHECK(divisors_of(m) == oracle_divisors(m));
  }
}

TEST_CASE("smith divisors form a chain and survive unimodular factors") {
  std::mt19937 rng(814);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 2 + t % 3;
    IntMatrix m = random_matrix(rng, n, n, 5);
    std::vector<bigint> d = divisors_of(m);
    for (std::size_t k = 0; k + 1 < d.size(); ++k) {
      CHECK(d[k] >= 0);
      if (d[k + 1] != 0) {
        REQUIRE(d[k] != 0);
        CHECK(d[k + 1] % d[k] == 0);
      }
    }
    IntMatrix u = random_unimodular(rng, n, 10);
    IntMatrix v = random_unimodular(rng, n, 10);
    CHECK(divisors_of(u * m * v) == d);
  }
}

TEST_CASE("smith transforms reconstruct the diagonal") {
  std::mt19937 rng(815);
  for (int t = 0; t < 100; ++t) {
    std::size_t nr = 1 + rng() % 5, nc = 1 + rng() % 5;
    IntMatrix m = random_matrix(rng, nr, nc, 7);
    SmithForm s = smith_normal_form(m, true);
    REQUIRE(s.with_transforms);
    bigint dl = s.left.det(), dr = s.right.det();
    CHECK((dl == 1 || dl == -1));
    CHECK((dr == 1 || dr == -1));
    IntMatrix diag = s.left * m * s.right;
    std::size_t n = std::min(nr, nc);
    REQUIRE(s.divisors.size() == n);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j)
        CHECK(diag.at(i, j) == (i == j && i < n ? s.divisors[i] : 0));
  }
  SmithForm bare = smith_normal_form(IntMatrix::identity(2));
  CHECK_FALSE(bare.with_transforms);
  CHECK(bare.left.rows() == 0);
}

TEST_CASE("abelian invariants of standard presentations") {
  auto inv = [](std::vector<std::string> gens, std::vector<std::string> rels) {
    return abelian_invariants(Presentation(gens, rels));
  };
  CHECK(inv({"a"}, {"a^6"}) == big({6}));
  CHECK(inv({"a"}, {}) == big({0}));                       // infinite cyclic
  CHECK(inv({"a", "b"}, {}) == big({0, 0}));               // free of rank 2
  CHECK(inv({"a", "b"}, {"a^2", "b^3", "(ab)^2"}) == big({2}));      // S3
  CHECK(inv({"a", "b"}, {"a^4", "a^2b^-2", "b^-1aba"}) == big({2, 2}));  // Q8
  CHECK(inv({"a", "b"}, {"a^3", "b^3", "(ab)^2"}) == big({3}));      // A4
  CHECK(inv({"x", "y"}, {"xyx^-1y^-1"}) == big({0, 0}));   // Z^2
  CHECK(inv({"a", "b"}, {"a^2", "b^4", "abab^-1", "a^2b^8"}) == big({2, 4}));
  // trivialized group: every divisor 1, nothing survives
  CHECK(inv({"a", "b"}, {"a", "b"}).empty());
}

TEST_CASE("word to matrix evaluation") {
  Alphabet ab({"a", "b"});
  IntMatrix A = IntMatrix::from_rows({{0, 1}, {-1, 0}});   // order 4
  IntMatrix B = IntMatrix::from_rows({{1, 1}, {0, 1}});    // infinite order
  std::vector<IntMatrix> imgs{A, B};
  CHECK(matrix_of_word(parse_word("1", ab), imgs).is_identity());
  CHECK(matrix_of_word(parse_word("a^4", ab), imgs).is_identity());
  CHECK(matrix_of_word(parse_word("aa^-1", ab), imgs).is_identity());
  CHECK(matrix_of_word(parse_word("ab", ab), imgs) == A * B);
  CHECK(matrix_of_word(parse_word("b^-1a^-1", ab), imgs) ==
        (A * B).inverse_unimodular());
  IntMatrix bn = matrix_of_word(parse_word("b^7", ab), imgs);
  CHECK(bn.at(0, 1) == 7);
  CHECK_THROWS_AS(matrix_of_word(Word({3}), imgs), error);
  CHECK_THROWS_AS(matrix_of_word(Word(), {}), error);
}

TEST_CASE("row vector action") {
  IntMatrix m = IntMatrix::from_rows(
      {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 1}});
  std::array<bigint, 4> v{1, 2, 3, 4};
  std::array<bigint, 4> got = apply_row(v, m);
  CHECK(got == std::array<bigint, 4>{2, 1, 6, 4});
  CHECK_THROWS_AS(apply_row(v, IntMatrix(3, 3)), error);
}

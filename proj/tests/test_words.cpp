#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polyforge/presentation.hpp"
#include "polyforge/presets.hpp"

using namespace polyforge;

namespace {

const Alphabet ab({"a", "b"});

Word W(const std::string& t) { return parse_word(t, ab); }
std::string P(const Word& w) { return print_word(w, ab); }

Word random_word(std::mt19937& rng, int len, int ngens) {
  std::uniform_int_distribution<int> g(1, ngens);
  std::uniform_int_distribution<int> s(0, 1);
  std::vector<Letter> v;
  v.reserve(len);
  for (int i = 0; i < len; ++i) {
    Letter l = g(rng);
    v.push_back(s(rng) ? l : -l);
  }
  return free_reduce(v);
}

}  // namespace

TEST_CASE("alphabet") {
  CHECK(ab.size() == 2);
  CHECK(ab.index_of("a") == 0);
  CHECK(ab.index_of("b") == 1);
  CHECK(ab.index_of("c") == -1);
  CHECK_THROWS_AS(Alphabet({"a", "a"}), error);
  CHECK_THROWS_AS(Alphabet({""}), error);
}

TEST_CASE("parse basics") {
  CHECK(W("").empty());
  CHECK(W("  ").empty());
  CHECK(W("1").empty());
  CHECK(W("a*a^-1*b") == W("b"));
  CHECK(W("(b^-2*a)^4").size() == 12);
  CHECK(W("ab") == W("a*b"));  // juxtaposition
  CHECK(W("a b") == W("a*b"));
  CHECK(W("b^-2") == Word({-2, -2}));
  CHECK(W("a^0").empty());
  CHECK(W("(a*b)^2") == Word({1, 2, 1, 2}));
}

TEST_CASE("parse commutator and conjugation") {
  CHECK(W("(a,b)") == Word({-1, -2, 1, 2}));
  CHECK(W("(a,b)") == W("a^-1*b^-1*a*b"));
  CHECK(W("(a^2,b^2)^2").size() == 16);
  // w^g = g^-1 w g
  CHECK(W("(b^4)^a") == W("a^-1*b^4*a"));
  CHECK(W("(b^4)^(a*b^-1)") == W("b*a^-1*b^4*a*b^-1"));
  CHECK(W("b^4^a") == W("a^-1*b^4*a"));
  CHECK(W("a^b^-1") == W("(a^b)^-1"));  // postfix operators apply left to right
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(W("c"), parse_error);
  CHECK_THROWS_AS(W("a^"), parse_error);
  CHECK_THROWS_AS(W("(a"), parse_error);
  CHECK_THROWS_AS(W("a)"), parse_error);
  CHECK_THROWS_AS(W("a^x"), parse_error);
  CHECK_THROWS_AS(W("(a,b,a)"), parse_error);
}

TEST_CASE("free and cyclic reduction") {
  Word w = free_reduce(std::vector<Letter>{1, 2, -2, -1, 2});
  CHECK(w == Word({2}));
  CHECK(free_reduce(w) == w);  // idempotent
  CHECK(cyclic_reduce(W("a^-1*b*a")) == Word({2}));
  CHECK(cyclic_reduce(W("a*b*a^-1")) == Word({2}));
  CHECK(cyclic_reduce(W("a*b")) == W("a*b"));
}

TEST_CASE("word arithmetic") {
  CHECK((W("a*b") * W("b^-1*a")) == W("a^2"));
  CHECK(W("a*b").inverse() == W("b^-1*a^-1"));
  CHECK(W("a*b").pow(0).empty());
  CHECK(W("a*b").pow(-2) == W("(a*b)^-2"));
  CHECK(W("b^4").conjugate(W("a")) == W("a^-1*b^4*a"));
  CHECK(W("a").max_generator() == 0);
  CHECK(W("b").max_generator() == 1);
  CHECK(Word().max_generator() == -1);
}

TEST_CASE("substitute") {
  // a -> a^-1, b -> a^2*b
  std::vector<Word> images = {W("a^-1"), W("a^2*b")};
  Word w = W("a*b^3*a^2*b^4");
  CHECK(w.size() == 10);
  Word img = substitute(w, images);
  CHECK(img == W("a*b*a^2*b*a^2*b^2*a^2*b*a^2*b*a^2*b"));
  CHECK(img.size() == 18);
  CHECK(substitute(Word(), images).empty());
  CHECK_THROWS_AS(substitute(W("b"), {W("a")}), error);
}

TEST_CASE("substitute is a homomorphism") {
  std::mt19937 rng(20260815);
  std::vector<Word> images = {W("a^-1"), W("a^2*b")};
  for (int t = 0; t < 200; ++t) {
    Word u = random_word(rng, 12, 2), v = random_word(rng, 12, 2);
    CHECK(substitute(u * v, images) ==
          substitute(u, images) * substitute(v, images));
    CHECK(substitute(u.inverse(), images) == substitute(u, images).inverse());
  }
}

TEST_CASE("word properties, randomized") {
  std::mt19937 rng(94);
  for (int t = 0; t < 300; ++t) {
    Word u = random_word(rng, 16, 2), v = random_word(rng, 16, 2);
    CHECK((u * u.inverse()).empty());
    CHECK((u * v).inverse() == v.inverse() * u.inverse());
    CHECK(u.pow(3) == u * u * u);
    CHECK(u.conjugate(v) == v.inverse() * u * v);
    CHECK(parse_word(print_word(u, ab), ab) == u);
  }
}

TEST_CASE("print") {
  CHECK(P(Word()) == "1");
  CHECK(P(W("a")) == "a");
  CHECK(P(W("a^-1")) == "a^-1");
  CHECK(P(W("b*b*a")) == "b^2*a");
  CHECK(P(W("b^-2*a")) == "b^-2*a");
  CHECK(parse_word(P(W("(b^-2*a)^4")), ab) == W("(b^-2*a)^4"));
}

TEST_CASE("greedy longest-name matching") {
  Alphabet two({"x", "x1"});
  CHECK(parse_word("x1", two) == Word({2}));
  CHECK(parse_word("x*1", two) == Word({1}));
  CHECK(parse_word("x1*x", two) == Word({2, 1}));
}

TEST_CASE("base group preset") {
  const Presentation& u = base_group();
  CHECK(u.alphabet.size() == 2);
  CHECK(u.relators.size() == 5);
  std::vector<std::size_t> lens;
  for (const auto& r : u.relators) lens.push_back(r.size());
  CHECK(lens == std::vector<std::size_t>{4, 8, 4, 16, 20});
  CHECK(u.relators[0] == u.parse("a^4"));
  CHECK(u.relators[3] == u.parse("(a^-2*b^-2*a^2*b^2)^2"));
  CHECK(u.relators[4] == u.parse("(a*b^3*a^2*b^4)^2"));
}

TEST_CASE("case presets") {
  for (int id = 1; id <= 4; ++id) {
    const CaseData& c = case_data(id);
    CHECK(c.id == id);
    CHECK(c.basis.size() == 4);
    for (const auto& w : c.basis) {
      CHECK(!w.empty());
      CHECK(w.max_generator() <= 1);
    }
    CHECK(c.expected_index == 1024L << (id - 1));
  }
  CHECK_THROWS_AS(case_data(0), error);
  CHECK_THROWS_AS(case_data(5), error);
  CHECK(chirality_witness_base() == W("a*b^3*a^2*b^4"));
  CHECK(mirror_substitution().size() == 2);
  CHECK(mirror_substitution()[0] == W("a^-1"));
  CHECK(mirror_substitution()[1] == W("a^2*b"));
}

TEST_CASE("case 1 basis words") {
  const CaseData& c = case_data(1);
  CHECK(c.basis[0] == W("(b^-2*a)^4"));
  CHECK(c.basis[0].size() == 12);
  CHECK(c.basis[1] == W("b*a^-1*b^4*a*b^-1") * W("a*b^4*a^-1"));
  CHECK(c.basis[2] == W("(b^2*a^2)^4"));
  CHECK(c.basis[3] == W("a^-1*(b^2*a^2)^4*a"));
}

TEST_CASE("expected conjugation action rows") {
  // spot checks straight from the conjugation words
  const CaseData& c1 = case_data(1);
  // x1^a = x2*x4^-1
  CHECK(c1.expected_action[0][0] == std::array<long, 4>{0, 1, 0, -1});
  // x2^a = x1^-1*x3^-1
  CHECK(c1.expected_action[0][1] == std::array<long, 4>{-1, 0, -1, 0});
  // x3^b = x1^-1*x2*x3^-1*x4^-1
  CHECK(c1.expected_action[1][2] == std::array<long, 4>{-1, 1, -1, -1});
  // x4^b = x3
  CHECK(c1.expected_action[1][3] == std::array<long, 4>{0, 0, 1, 0});
}

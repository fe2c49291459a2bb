#include "polyforge/presets.hpp"

namespace polyforge {

namespace {

CaseData make_case(int id, std::array<std::string, 4> basis_texts, long index,
                   std::array<std::string, 8> conj) {
  CaseData c;
  c.id = id;
  c.basis_texts = basis_texts;
  const Alphabet& ab = base_group().alphabet;
  for (int i = 0; i < 4; ++i) c.basis.push_back(parse_word(c.basis_texts[i], ab));
  c.expected_index = index;
  c.conjugation_texts = conj;
  // derive the expected exponent rows by abelianizing the table entries
  Alphabet xs({"x1", "x2", "x3", "x4"});
  for (int g = 0; g < 2; ++g)
    for (int i = 0; i < 4; ++i) {
      Word w = parse_word(conj[4 * g + i], xs);
      std::array<long, 4> row{0, 0, 0, 0};
      for (Letter l : w) row[letter_gen(l)] += (l > 0 ? 1 : -1);
      c.expected_action[g][i] = row;
    }
  return c;
}

}  // namespace

const Presentation& base_group() {
  static const Presentation p({"a", "b"},
                              {"a^4", "b^8", "(a*b)^2", "(a^2,b^2)^2",
                               "(a*b^3*a^2*b^4)^2"});
  return p;
}

const CaseData& case_data(int id) {
  static const CaseData cases[4] = {
      make_case(1,
                {"(b^-2*a)^4", "(b^4)^(a*b^-1)*(b^4)^(a^-1)", "(b^2*a^2)^4",
                 "((b^2*a^2)^4)^a"},
                1024,
                {"x2*x4^-1", "x1^-1*x3^-1", "x4", "x1^-1*x2^-1",
                 "x1*x4", "x1^-1", "x1^-1*x2*x3^-1*x4^-1", "x3"}),
      make_case(2,
                {"b^2*a^2*b*a^-1*b^4*a^-1*b^2*a^-1*b*a^-1", "(b^-1*a)^8",
                 "b^3*a^2*b^2*a*b^-1*a*b^-1*a*b^-3*a^-1", "(a*b^-3)^4"},
                2048,
                {"x3", "x1*x3^-1*x4^-1", "x3*x4", "x2*x4^-1",
                 "x2^-1*x3^-1", "x1^-1*x3^-1*x4^-1", "x1", "x1^-1*x3^-1"}),
      make_case(3,
                {"(b^-1*a)^8", "(b^-3*a)^4", "(a*b^-1)^8",
                 "(a*b^2*a^-1*b*a^-1)^4"},
                4096,
                {"x3^-1", "x2^-1*x3^-1", "x1", "x1^-1*x4",
                 "x2*x4^-1", "x1^-1*x2", "x1", "x3^-1*x4^-1"}),
      make_case(4,
                {"(a*b^-1)^8", "((b^-1*a)^8)^b", "((b^-2*a)^8)^b",
                 "((a^2*b^2)^4)^(b^-1)*((b^-2*a^2)^4)^a"},
                8192,
                {"x2*x3^-1*x4^-1", "x2*x3^-1", "x3^-1", "x1*x2",
                 "x2*x3^-1*x4^-1", "x2^-1*x3", "x1^-1*x2^-1*x3", "x1*x2^-1"}),
  };
  if (id < 1 || id > 4) throw error("case id must be 1..4");
  return cases[id - 1];
}

Word chirality_witness_base() {
  return parse_word("a*b^3*a^2*b^4", base_group().alphabet);
}

Word chirality_witness_twisted() {
  return parse_word("a^-2*(a^2*b)^3*a^-2*(a^2*b)^4", base_group().alphabet);
}

std::vector<Word> mirror_substitution() {
  const Alphabet& ab = base_group().alphabet;
  return {parse_word("a^-1", ab), parse_word("a^2*b", ab)};
}

}  // namespace polyforge

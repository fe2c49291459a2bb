#pragma once

#include <array>
#include <string>
#include <vector>

#include "polyforge/presentation.hpp"

namespace polyforge {

// Built-in data for one of the four index-1024..8192 normal subgroups of the
// base group: its four generator words, the expected index, and the expected
// conjugation table (coordinates of basis_i^a and basis_i^b in the basis).
struct CaseData {
  int id = 0;  // 1..4
  std::array<std::string, 4> basis_texts;
  std::vector<Word> basis;  // parsed, freely reduced
  long expected_index = 0;
  // conjugation_texts[0..3] are basis_i^a, [4..7] are basis_i^b, written
  // over an auxiliary alphabet naming the four basis words.
  std::array<std::string, 8> conjugation_texts;
  // row i of expected_action[g] = exponent vector of basis_i^g
  std::array<std::array<std::array<long, 4>, 4>, 2> expected_action;
};

// The rank-2 base group <a,b | a^4, b^8, (ab)^2, [a^2,b^2]^2, (ab^3a^2b^4)^2>.
// Relators are stored expanded and freely reduced.
const Presentation& base_group();

// Case presets 1..4.
const CaseData& case_data(int id);

// Word ab^3a^2b^4, the half of the fifth relator used as the chirality
// witness; its mirror image under a -> a^-1, b -> a^2 b separates the
// enantiomorphs.
Word chirality_witness_base();

// The mirror-twisted witness a^-2 (a^2 b)^3 a^-2 (a^2 b)^4, whose order
// distinguishes the quotients from their mirror images (4 in case 1 at m=1,
// 8 in case 4 at m=1, but always 2 for the untwisted ab^3a^2b^4).
Word chirality_witness_twisted();

// Images of (a, b) under the mirror twist a -> a^-1, b -> a^2 b.
std::vector<Word> mirror_substitution();

}  // namespace polyforge

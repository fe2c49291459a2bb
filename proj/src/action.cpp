#include "polyforge/action.hpp"

namespace polyforge {

ActionPair action_matrices(const CoordinateMap& cm) {
  if (!cm.certified()) throw error("action matrices need a certified map");
  ActionPair ap;
  ap.alphabet = cm.transversal().table().presentation().alphabet;
  for (int g = 0; g < ap.alphabet.size(); ++g) {
    Word gen(std::vector<Letter>{static_cast<Letter>(g + 1)});
    IntMatrix m(4, 4);
    for (int i = 0; i < 4; ++i) {
      Vec4 row = cm.coordinates(cm.basis()[i].conjugate(gen));
      for (int j = 0; j < 4; ++j) m.at(i, j) = row[j];
    }
    ap.mats.push_back(std::move(m));
  }
  return ap;
}

bool verify_action_relations(const ActionPair& ap, const Presentation& p) {
  if (p.alphabet.size() > static_cast<int>(ap.mats.size()))
    throw error("verify_action_relations: generator without a matrix");
  for (const IntMatrix& m : ap.mats) {
    bigint d = m.det();
    if (d != 1 && d != -1) return false;
  }
  for (const Word& r : p.relators)
    if (!matrix_of_word(r, ap.mats).is_identity()) return false;
  return true;
}

}  // namespace polyforge

#pragma once

#include "polyforge/coordinate_map.hpp"
#include "polyforge/int_matrix.hpp"

namespace polyforge {

// Conjugation action of the group on its free-abelian normal subgroup: one
// integer matrix per group generator, row i = coordinates of basis_i^g
// (with u^g = g^-1 u g).
struct ActionPair {
  Alphabet alphabet;              // the group's generators
  std::vector<IntMatrix> mats;    // 4x4, det +-1 each
};

ActionPair action_matrices(const CoordinateMap& cm);

// True iff every generator matrix is unimodular and substituting the
// matrices into every relator of p yields the identity matrix (inverse
// letters use the exact integer inverse).
bool verify_action_relations(const ActionPair& ap, const Presentation& p);

}  // namespace polyforge

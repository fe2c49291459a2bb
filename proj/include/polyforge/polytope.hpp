#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "polyforge/pair_group.hpp"
#include "polyforge/perm.hpp"

namespace polyforge {

enum class PolytopeVerdict { chiral, regular, not_polytopal };

// Result of certifying a two-generator finite group as the rotation group of
// a chiral or regular 3-polytope of type {k1, k2}. The group is polytopal
// iff the product of the two generators has order 2 and the cyclic groups
// they generate intersect trivially; it is regular iff the mirror twist
// a -> a^-1, b -> a^2 b extends to an automorphism, decided by substituting
// into a full presentation. chi and genus are filled for polytopal verdicts
// and satisfy 2 - 2g = chi.
struct PolytopeReport {
  bigint order;
  std::uint64_t k1 = 0;            // exact order of the first generator
  std::uint64_t k2 = 0;            // exact order of the second
  std::uint64_t order_product = 0; // order of their product
  std::uint64_t intersection = 0;  // |<a> intersect <b>|
  PolytopeVerdict verdict = PolytopeVerdict::not_polytopal;
  int witness_index = -1;          // failing relator position when chiral
  Word witness;                    // the relator itself
  std::string witness_text;        // printed over the group's alphabet
  bigint chi = 0;
  bigint genus = 1;
};

const char* to_string(PolytopeVerdict v);

// Certifies the group of a complete pair representation. The presentation
// used for the regular/chiral decision (base relators + basis^m) presents
// exactly this group by construction, so the verdict is unconditionally
// sound.
PolytopeReport certify_polytope(const PairGroup& g);

// Certifies an explicit permutation group against a caller-supplied
// presentation with the same two-generator alphabet. Soundness of a
// "regular" verdict requires the presentation to define exactly this group,
// which is verified by enumerating its trivial-subgroup cosets and comparing
// with the stabilizer-chain order; throws when that check cannot be
// completed within max_cosets or fails.
PolytopeReport certify_polytope(const PermGroup& g, const Presentation& p,
                                std::uint64_t max_cosets = 2'000'000);

// chi = order * (1/k1 + 1/k2 - 1/2) over exact rationals and g = (2 - chi)/2;
// throws unless k1 and k2 divide the order, chi is integral and chi is even.
std::pair<bigint, bigint> euler_genus(const bigint& order, std::uint64_t k1,
                                      std::uint64_t k2);

// One deterministic JSON record per certified family member.
std::string atlas_record(const PolytopeReport& r, int case_id, long long m);

}  // namespace polyforge

#include "polyforge/polytope.hpp"

#include <limits>
#include <set>

#include <json.hpp>

#include "polyforge/stab_chain.hpp"

namespace polyforge {

namespace {

std::uint64_t to_u64(const bigint& o, const char* what) {
  if (o > std::numeric_limits<std::uint64_t>::max())
    throw error(std::string(what) + " too large to report");
  return o.convert_to<std::uint64_t>();
}

// The mirror twist a -> a^-1, b -> a^2 b over any two-letter alphabet. Its
// images generate the whole group, so a homomorphic extension is always an
// automorphism.
const std::vector<Word>& mirror_images() {
  static const std::vector<Word> m{Word({-1}), Word({1, 1, 2})};
  return m;
}

template <class Ops>
PolytopeReport certify_core(const Ops& ops, const Presentation& p) {
  if (p.alphabet.size() != 2)
    throw error("polytope certification needs a two-generator group");
  PolytopeReport r;
  r.order = ops.order();
  Word a({1}), b({2});
  r.k1 = ops.elem_order(a);
  r.k2 = ops.elem_order(b);
  r.order_product = ops.elem_order(a * b);
  r.intersection = ops.intersection();
  if (r.order_product != 2 || r.intersection != 1) {
    r.verdict = PolytopeVerdict::not_polytopal;
    return r;
  }
  auto [chi, genus] = euler_genus(r.order, r.k1, r.k2);
  r.chi = chi;
  r.genus = genus;

  r.verdict = PolytopeVerdict::regular;
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    Word image = substitute(p.relators[i], mirror_images());
    if (!ops.is_identity_word(image)) {
      r.verdict = PolytopeVerdict::chiral;
      r.witness_index = static_cast<int>(i);
      r.witness = p.relators[i];
      r.witness_text = print_word(p.relators[i], p.alphabet);
      break;
    }
  }
  return r;
}

struct PairOps {
  const PairGroup& g;
  bigint order() const { return g.order(); }
  std::uint64_t elem_order(const Word& w) const { return g.element_order(w); }
  bool is_identity_word(const Word& w) const {
    return g.is_identity(g.evaluate(w));
  }
  std::uint64_t intersection() const {
    std::set<PairElement> pa;
    PairElement e = g.identity();
    do {
      pa.insert(e);
      e = g.apply(e, 1);
    } while (!g.is_identity(e));
    std::uint64_t common = 0;
    e = g.identity();
    do {
      if (pa.count(e)) ++common;
      e = g.apply(e, 2);
    } while (!g.is_identity(e));
    return common;
  }
};

struct PermOps {
  const PermGroup& g;
  bigint order() const { return group_order(g); }
  std::uint64_t elem_order(const Word& w) const {
    return to_u64(element_order(evaluate(g, w)), "element order");
  }
  bool is_identity_word(const Word& w) const {
    return evaluate(g, w).is_identity();
  }
  std::uint64_t intersection() const {
    return cyclic_intersection_order(evaluate(g, Word({1})),
                                     evaluate(g, Word({2})));
  }
};

}  // namespace

const char* to_string(PolytopeVerdict v) {
  switch (v) {
    case PolytopeVerdict::chiral: return "chiral";
    case PolytopeVerdict::regular: return "regular";
    default: return "not-polytopal";
  }
}

PolytopeReport certify_polytope(const PairGroup& g) {
  return certify_core(PairOps{g}, g.full_presentation());
}

PolytopeReport certify_polytope(const PermGroup& g, const Presentation& p,
                                std::uint64_t max_cosets) {
  if (!(g.alphabet == p.alphabet))
    throw error("presentation alphabet does not match the group's");
  // A sound "regular" verdict needs p to define exactly g: every relator
  // must hold in g (g is a quotient of the presented group) and the
  // presented group's order must equal |g| (no proper quotient).
  for (const Word& r : p.relators)
    if (!evaluate(g, r).is_identity())
      throw error("presentation relator fails in the group");
  bigint order = group_order(g);
  EnumConfig cfg;
  cfg.max_cosets = max_cosets;
  CosetTable t = enumerate(p, {}, cfg);
  if (!t.complete())
    throw error("presentation check: enumeration incomplete at " +
                std::to_string(max_cosets) + " cosets");
  if (bigint(t.coset_count()) != order)
    throw error("presentation defines a group of different order");
  return certify_core(PermOps{g}, p);
}

std::pair<bigint, bigint> euler_genus(const bigint& order, std::uint64_t k1,
                                      std::uint64_t k2) {
  if (k1 == 0 || k2 == 0) throw error("euler characteristic: zero order");
  if (order % k1 != 0 || order % k2 != 0)
    throw error("euler characteristic: generator orders must divide |G|");
  bigint num = order * (4 * bigint(k1) + 4 * bigint(k2) - 2 * bigint(k1) * k2);
  bigint den = 4 * bigint(k1) * k2;
  if (num % den != 0) throw error("euler characteristic is not an integer");
  bigint chi = num / den;
  if (chi % 2 != 0) throw error("euler characteristic is odd");
  return {chi, (2 - chi) / 2};
}

std::string atlas_record(const PolytopeReport& r, int case_id, long long m) {
  nlohmann::json j;
  j["schema"] = "polyforge.atlas/1";
  j["case"] = case_id;
  j["m"] = m;
  j["order"] = to_u64(r.order, "order");
  j["type"] = {r.k1, r.k2};
  j["verdict"] = to_string(r.verdict);
  j["chi"] = r.chi.convert_to<std::int64_t>();
  j["genus"] = r.genus.convert_to<std::int64_t>();
  if (r.verdict == PolytopeVerdict::chiral)
    j["witness"] = r.witness_text;
  else
    j["witness"] = nullptr;
  return j.dump();
}

}  // namespace polyforge

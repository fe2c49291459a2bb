#include "polyforge/schreier.hpp"

#include <algorithm>

namespace polyforge {

SchreierTransversal::SchreierTransversal(const CosetTable& t)
    : table_(t.standardized() ? t : t.standardize()) {
  if (!t.complete())
    throw error("schreier transversal requires a complete coset table");
  std::size_t n = table_.coset_count();
  int ngens = table_.presentation().alphabet.size();
  words_.resize(n);
  parent_.assign(n, 0);
  plet_.assign(n, 0);
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  // breadth-first over (coset, signed letter) in column order; on a
  // standardized table discovery order is numeric order
  std::vector<Coset> order{0};
  for (std::size_t k = 0; k < order.size(); ++k) {
    Coset c = order[k];
    for (int col = 0; col < 2 * ngens; ++col) {
      Letter l = (col % 2 == 0) ? static_cast<Letter>(col / 2 + 1)
                                : static_cast<Letter>(-(col / 2 + 1));
      Coset d = *table_.step(c, l);
      if (seen[d]) continue;
      seen[d] = 1;
      parent_[d] = c;
      plet_[d] = l;
      std::vector<Letter> w = words_[c].letters();
      w.push_back(l);
      words_[d] = Word(std::move(w));
      order.push_back(d);
    }
  }
  // Schreier generators: positive edges off the tree, in (coset, gen) order
  ids_.assign(n * ngens, -1);
  for (Coset c = 0; c < n; ++c)
    for (int g = 0; g < ngens; ++g) {
      if (tree_edge(c, static_cast<Letter>(g + 1))) continue;
      ids_[c * ngens + g] = static_cast<int>(edges_.size());
      edges_.emplace_back(c, g);
    }
}

const Word& SchreierTransversal::word(Coset c) const {
  if (c >= words_.size()) throw error("coset out of range");
  return words_[c];
}

std::size_t SchreierTransversal::max_length() const {
  std::size_t m = 0;
  for (const Word& w : words_) m = std::max(m, w.size());
  return m;
}

bool SchreierTransversal::tree_edge(Coset c, Letter l) const {
  Coset d = *table_.step(c, l);
  return (parent_[d] == c && plet_[d] == l) ||
         (parent_[c] == d && plet_[c] == inv(l));
}

int SchreierTransversal::gen_id(Coset c, int gen) const {
  return ids_.at(c * table_.presentation().alphabet.size() + gen);
}

Word SchreierTransversal::rewrite_from(Coset from, const Word& w) const {
  std::vector<Letter> out;
  Coset c = from;
  for (Letter l : w) {
    Coset d = *table_.step(c, l);
    int id = l > 0 ? gen_id(c, letter_gen(l)) : gen_id(d, letter_gen(l));
    if (id >= 0) out.push_back(l > 0 ? static_cast<Letter>(id + 1)
                                     : static_cast<Letter>(-(id + 1)));
    c = d;
  }
  if (c != from)
    throw error("word does not lie in the subgroup (coset " +
                std::to_string(c) + ")");
  return free_reduce(out);
}

Presentation SubgroupPresentation::as_presentation() const {
  std::vector<std::string> names;
  std::vector<int> newidx(rank, -1);
  for (std::size_t i = 0; i < active.size(); ++i) {
    newidx[active[i]] = static_cast<int>(i);
    names.push_back("s" + std::to_string(active[i] + 1));
  }
  std::vector<Word> rels;
  for (const Word& r : relators) {
    std::vector<Letter> ls;
    for (Letter l : r) {
      int ni = newidx[letter_gen(l)];
      if (ni < 0)
        throw error("relator mentions an eliminated generator");
      ls.push_back(l > 0 ? static_cast<Letter>(ni + 1)
                         : static_cast<Letter>(-(ni + 1)));
    }
    rels.push_back(Word(std::move(ls)));
  }
  return Presentation(Alphabet(std::move(names)), std::move(rels));
}

SubgroupPresentation rewrite_presentation(const Presentation& p,
                                          const SchreierTransversal& tr) {
  if (!(tr.table().presentation().alphabet == p.alphabet))
    throw error("rewrite: presentation does not match the table");
  SubgroupPresentation sp;
  sp.rank = tr.rank();
  for (int i = 0; i < sp.rank; ++i) sp.edges.push_back(tr.edge(i));
  for (Coset c = 0; c < tr.size(); ++c)
    for (const Word& r : p.relators)
      sp.relators.push_back(tr.rewrite_from(c, r));
  sp.active.resize(sp.rank);
  for (int i = 0; i < sp.rank; ++i) sp.active[i] = i;
  return sp;
}

SubgroupPresentation rewrite_presentation(const Presentation& p,
                                          const CosetTable& t) {
  return rewrite_presentation(p, SchreierTransversal(t));
}

}  // namespace polyforge

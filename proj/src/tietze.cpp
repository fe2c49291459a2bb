#include <algorithm>
#include <map>
#include <queue>
#include <vector>

#include "polyforge/schreier.hpp"

namespace polyforge {

namespace {

// Relators are immutable once registered; edits kill the old id and insert a
// fresh one, which keeps the candidate queues trivially consistent.
struct Rel {
  std::vector<Letter> w;  // freely and cyclically reduced
  bool alive = true;
};

std::vector<Letter> inverse_letters(const std::vector<Letter>& w) {
  std::vector<Letter> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[w.size() - 1 - i] = -w[i];
  return out;
}

// lexicographic minimum over all rotations of w and of its inverse
std::vector<Letter> canonical(const std::vector<Letter>& w) {
  std::vector<Letter> best = w;
  auto consider = [&](const std::vector<Letter>& v) {
    std::vector<Letter> rot(v.size());
    for (std::size_t s = 0; s < v.size(); ++s) {
      for (std::size_t i = 0; i < v.size(); ++i)
        rot[i] = v[(s + i) % v.size()];
      if (rot < best) best = rot;
    }
  };
  consider(w);
  consider(inverse_letters(w));
  return best;
}

class Tietze {
public:
  Tietze(const SubgroupPresentation& sp, std::uint64_t budget)
      : in_(sp), budget_(budget), active_(sp.rank, 0), occ_(sp.rank) {
    for (int g : sp.active) active_[g] = 1;
    eliminated_ = sp.eliminated;
    moves_ = sp.moves;
    for (const Word& r : sp.relators) insert(r.letters());
  }

  SubgroupPresentation run() {
    bool fixpoint = false;
    while (moves_ < budget_) {
      if (eliminate_one()) continue;
      if (shorten_one()) continue;
      fixpoint = true;
      break;
    }
    SubgroupPresentation out;
    out.rank = in_.rank;
    out.edges = in_.edges;
    out.eliminated = std::move(eliminated_);
    out.moves = moves_;
    out.fully_simplified = fixpoint;
    for (int g = 0; g < in_.rank; ++g)
      if (active_[g]) out.active.push_back(g);
    std::vector<int> alive;
    for (std::size_t i = 0; i < rels_.size(); ++i)
      if (rels_[i].alive) alive.push_back(static_cast<int>(i));
    std::stable_sort(alive.begin(), alive.end(), [&](int a, int b) {
      return rels_[a].w.size() < rels_[b].w.size();
    });
    for (int id : alive) out.relators.push_back(Word(rels_[id].w));
    return out;
  }

private:
  const SubgroupPresentation& in_;
  std::uint64_t budget_;
  std::uint64_t moves_ = 0;
  std::vector<Rel> rels_;
  std::vector<char> active_;
  std::vector<std::pair<int, Word>> eliminated_;
  std::vector<std::vector<int>> occ_;  // gen -> relator ids, may hold stale ids
  std::map<std::vector<Letter>, int> canon_;
  // relators owning a generator that occurs in them exactly once
  using Item = std::pair<std::size_t, int>;  // (length, id)
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> elim_;

  void insert(std::vector<Letter> raw) {
    std::vector<Letter> w = cyclic_reduce(free_reduce(std::move(raw))).letters();
    if (w.empty()) return;
    std::vector<Letter> key = canonical(w);
    auto it = canon_.find(key);
    if (it != canon_.end() && rels_[it->second].alive) return;  // duplicate
    int id = static_cast<int>(rels_.size());
    rels_.push_back({w, true});
    canon_[key] = id;
    for (Letter l : w) occ_[letter_gen(l)].push_back(id);
    if (has_single_occurrence(w)) elim_.push({w.size(), id});
  }

  static bool has_single_occurrence(const std::vector<Letter>& w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      bool once = true;
      for (std::size_t j = 0; j < w.size(); ++j)
        if (j != i && letter_gen(w[j]) == letter_gen(w[i])) {
          once = false;
          break;
        }
      if (once) return true;
    }
    return false;
  }

  void kill(int id) {
    rels_[id].alive = false;
    auto it = canon_.find(canonical(rels_[id].w));
    if (it != canon_.end() && it->second == id) canon_.erase(it);
  }

  bool eliminate_one() {
    while (!elim_.empty()) {
      int id = elim_.top().second;
      if (!rels_[id].alive) {
        elim_.pop();
        continue;
      }
      const std::vector<Letter>& w = rels_[id].w;
      // lowest generator with exactly one occurrence in this relator
      int g = -1;
      std::size_t pos = 0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        int cand = letter_gen(w[i]);
        if (g >= 0 && cand >= g) continue;
        int count = 0;
        for (Letter l : w)
          if (letter_gen(l) == cand) ++count;
        if (count == 1) {
          g = cand;
          pos = i;
        }
      }
      elim_.pop();
      if (g < 0) continue;  // cannot happen for queued ids, but stay safe
      // rotate so the single occurrence leads: w = g^e . tail, so g^e = tail^-1
      std::vector<Letter> tail;
      for (std::size_t i = 1; i < w.size(); ++i)
        tail.push_back(w[(pos + i) % w.size()]);
      std::vector<Letter> def =
          w[pos] > 0 ? inverse_letters(tail) : std::move(tail);
      eliminated_.emplace_back(g, Word(def));
      active_[g] = 0;
      kill(id);
      std::vector<int> touched = occ_[g];
      occ_[g].clear();
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()),
                    touched.end());
      for (int rid : touched) {
        if (rid == id || !rels_[rid].alive) continue;
        std::vector<Letter> nw;
        bool has = false;
        for (Letter l : rels_[rid].w) {
          if (letter_gen(l) != g) {
            nw.push_back(l);
            continue;
          }
          has = true;
          if (l > 0)
            nw.insert(nw.end(), def.begin(), def.end());
          else {
            std::vector<Letter> di = inverse_letters(def);
            nw.insert(nw.end(), di.begin(), di.end());
          }
        }
        if (!has) continue;  // stale occurrence entry
        kill(rid);
        insert(std::move(nw));
      }
      ++moves_;
      return true;
    }
    return false;
  }

  // Substring replacement against another relator s.t (so s equals t^-1 in
  // the group). A strict pass replaces occurrences of s with |s| > |t|,
  // shortening the target. When nothing shortens, an equal-half pass
  // (|s| = |t|) swaps an occurrence only if the canonical form strictly
  // decreases, which untangles interleaved consequences without risking a
  // loop. Deterministic scan order; applies the first replacement found.
  bool shorten_one() {
    std::vector<int> alive;
    for (std::size_t i = 0; i < rels_.size(); ++i)
      if (rels_[i].alive) alive.push_back(static_cast<int>(i));
    std::vector<int> by_len = alive;
    std::sort(by_len.begin(), by_len.end(), [&](int a, int b) {
      return rels_[a].w.size() != rels_[b].w.size()
                 ? rels_[a].w.size() > rels_[b].w.size()
                 : a < b;
    });
    std::vector<int> sources = alive;
    std::sort(sources.begin(), sources.end(), [&](int a, int b) {
      return rels_[a].w.size() != rels_[b].w.size()
                 ? rels_[a].w.size() < rels_[b].w.size()
                 : a < b;
    });
    for (bool equal_pass : {false, true})
      for (int target : by_len) {
        const std::vector<Letter>& tw = rels_[target].w;
        std::vector<Letter> doubled = tw;
        doubled.insert(doubled.end(), tw.begin(), tw.end());
        for (int src : sources) {
          if (src == target) continue;
          const std::vector<Letter>& sw0 = rels_[src].w;
          if (sw0.size() > tw.size()) break;  // sources sorted by length
          for (int inv_pass = 0; inv_pass < 2; ++inv_pass) {
            std::vector<Letter> sw = inv_pass ? inverse_letters(sw0) : sw0;
            std::size_t lo = equal_pass && sw.size() % 2 == 0
                                 ? sw.size() / 2
                                 : sw.size() / 2 + 1;
            std::size_t hi = equal_pass ? lo : sw.size() - 1;
            if (lo > hi || lo == 0) continue;
            for (std::size_t rot = 0; rot < sw.size(); ++rot) {
              std::vector<Letter> v(sw.size());
              for (std::size_t i = 0; i < sw.size(); ++i)
                v[i] = sw[(rot + i) % sw.size()];
              for (std::size_t cut = hi; cut >= lo; --cut) {
                // v = s . t with |s| = cut; find s inside the cyclic target
                for (auto from = doubled.begin();;) {
                  auto hit = std::search(from, doubled.end(), v.begin(),
                                         v.begin() + cut);
                  std::size_t p =
                      static_cast<std::size_t>(hit - doubled.begin());
                  if (p >= tw.size()) break;
                  std::vector<Letter> t(v.begin() + cut, v.end());
                  std::vector<Letter> nw = inverse_letters(t);
                  nw.insert(nw.end(), doubled.begin() + p + cut,
                            doubled.begin() + p + tw.size());
                  bool apply = true;
                  if (equal_pass) {
                    std::vector<Letter> reduced =
                        cyclic_reduce(free_reduce(nw)).letters();
                    apply = reduced.size() < tw.size() ||
                            (reduced.size() == tw.size() &&
                             canonical(reduced) < canonical(tw));
                  }
                  if (apply) {
                    kill(target);
                    insert(std::move(nw));
                    ++moves_;
                    return true;
                  }
                  from = hit + 1;
                }
              }
            }
          }
        }
      }
    return false;
  }
};

}  // namespace

SubgroupPresentation tietze_simplify(const SubgroupPresentation& sp,
                                     std::uint64_t budget) {
  return Tietze(sp, budget).run();
}

}  // namespace polyforge

#include "polyforge/coset_table.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <ostream>
#include <set>
#include <utility>

#include "json.hpp"

namespace polyforge {

namespace {

constexpr std::int32_t UNDEF = -1;

// Working state of a Todd-Coxeter run. Cosets are dense indices; dead ones
// (merged away by coincidences) keep their rows but are never revisited.
class Enumerator {
public:
  Enumerator(const Presentation& p, const std::vector<Word>& subgens,
             const EnumConfig& cfg)
      : cfg_(cfg), ncols_(2 * static_cast<int>(p.alphabet.size())) {
    for (const Word& w : subgens) {
      p.check_word(w);
      Word r = free_reduce(w);
      if (!r.empty()) subgens_.push_back(r);
    }
    for (const Word& r : p.relators) {
      Word c = cyclic_reduce(r);
      if (!c.empty()) relators_.push_back(c);
    }
    if (cfg_.strategy == Strategy::felsch) build_edp();
    new_coset();  // coset 0 = the subgroup itself
  }

  void run() {
    if (cfg_.strategy == Strategy::hlt)
      run_hlt();
    else
      run_felsch();
    check_complete();
  }

  // Accessors used to assemble the final CosetTable.
  std::vector<std::int32_t> take_rows() { return std::move(rows_); }
  std::vector<std::uint8_t> take_live() { return std::move(alive_); }
  std::vector<Word> take_subgens() { return std::move(subgens_); }
  std::uint32_t live_count() const { return live_count_; }
  std::uint64_t defined_count() const { return defined_; }
  bool complete() const { return complete_; }
  int ncols() const { return ncols_; }

private:
  EnumConfig cfg_;
  int ncols_;
  std::vector<Word> subgens_;
  std::vector<Word> relators_;
  std::vector<std::vector<Word>> edp_;  // relator rotations, keyed by first column

  std::vector<std::int32_t> rows_;
  std::vector<Coset> parent_;
  std::vector<std::uint8_t> alive_;
  std::uint32_t live_count_ = 0;
  std::uint64_t defined_ = 0;
  std::uint64_t changes_ = 0;  // entries set + coincidences, for fixpoint tests
  bool complete_ = false;
  std::vector<std::pair<Coset, int>> deductions_;

  static constexpr std::size_t deduction_cap = 1 << 20;

  std::int32_t get(Coset c, int col) const {
    return rows_[std::size_t(c) * ncols_ + col];
  }
  void put(Coset c, int col, std::int32_t v) {
    rows_[std::size_t(c) * ncols_ + col] = v;
  }

  std::optional<Coset> new_coset() {
    if (defined_ >= cfg_.max_cosets) return std::nullopt;
    Coset c = static_cast<Coset>(alive_.size());
    rows_.insert(rows_.end(), ncols_, UNDEF);
    parent_.push_back(c);
    alive_.push_back(1);
    ++live_count_;
    ++defined_;
    return c;
  }

  Coset rep(Coset c) {
    while (parent_[c] != c) {
      parent_[c] = parent_[parent_[c]];
      c = parent_[c];
    }
    return c;
  }

  void set_entry(Coset c, int col, Coset d) {
    put(c, col, static_cast<std::int32_t>(d));
    put(d, col ^ 1, static_cast<std::int32_t>(c));
    ++changes_;
    if (!edp_.empty()) deductions_.emplace_back(c, col);
  }

  void merge(Coset a, Coset b, std::deque<Coset>& q) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    Coset u = std::min(a, b), v = std::max(a, b);
    parent_[v] = u;
    alive_[v] = 0;
    --live_count_;
    ++changes_;
    q.push_back(v);
  }

  // Merges two cosets and propagates all consequences, transferring the row
  // of each dead coset to its surviving representative. Afterwards no live
  // row references a dead coset.
  void coincidence(Coset a, Coset b) {
    std::deque<Coset> q;
    merge(a, b, q);
    while (!q.empty()) {
      Coset e = q.front();
      q.pop_front();
      for (int col = 0; col < ncols_; ++col) {
        std::int32_t t = get(e, col);
        if (t == UNDEF) continue;
        Coset d = static_cast<Coset>(t);
        put(d, col ^ 1, UNDEF);  // drop the back-pointer into the dead row
        Coset mu = rep(e), nu = rep(d);
        std::int32_t tm = get(mu, col);
        if (tm != UNDEF) {
          merge(nu, static_cast<Coset>(tm), q);
        } else {
          std::int32_t tn = get(nu, col ^ 1);
          if (tn != UNDEF)
            merge(mu, static_cast<Coset>(tn), q);
          else
            set_entry(mu, col, nu);
        }
      }
    }
  }

  // Traces w through the table from alpha, from both ends. Fills the one
  // missing entry (deduction), reports a coincidence when both ends meet
  // inconsistently, and when fill is set defines new cosets at the first
  // gap. Returns false iff a definition was blocked by the coset limit.
  bool scan(Coset alpha, const Word& w, bool fill) {
    if (!alive_[alpha]) return true;
    Coset f = alpha, b = alpha;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    for (;;) {
      while (i <= j) {
        std::int32_t t = get(f, letter_col(w[i]));
        if (t == UNDEF) break;
        f = static_cast<Coset>(t);
        ++i;
      }
      if (i > j) {
        if (f != b) coincidence(f, b);
        return true;
      }
      while (j >= i) {
        std::int32_t t = get(b, letter_col(inv(w[j])));
        if (t == UNDEF) break;
        b = static_cast<Coset>(t);
        --j;
      }
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (j == i) {
        set_entry(f, letter_col(w[i]), b);
        return true;
      }
      if (!fill) return true;
      auto n = new_coset();
      if (!n) return false;
      set_entry(f, letter_col(w[i]), *n);
    }
  }

  void run_hlt() {
    for (const Word& w : subgens_)
      if (!scan(0, w, true)) return closing_passes();
    for (Coset a = 0; a < alive_.size(); ++a) {
      if (!alive_[a]) continue;
      for (const Word& r : relators_) {
        if (!scan(a, r, true)) return closing_passes();
        if (!alive_[a]) break;
      }
      if (!alive_[a]) continue;
      for (int col = 0; col < ncols_; ++col) {
        if (get(a, col) != UNDEF) continue;
        auto n = new_coset();
        if (!n) return closing_passes();
        set_entry(a, col, *n);
      }
    }
  }

  void run_felsch() {
    for (const Word& w : subgens_)
      if (!scan(0, w, true)) return closing_passes();
    process_deductions();
    for (Coset a = 0; a < alive_.size(); ++a) {
      for (int col = 0; col < ncols_; ++col) {
        if (!alive_[a]) break;
        if (get(a, col) != UNDEF) continue;
        auto n = new_coset();
        if (!n) return closing_passes();
        set_entry(a, col, *n);
        process_deductions();
      }
    }
  }

  // Follows up every new entry by scanning the relator rotations that start
  // with its column, from both endpoints.
  void process_deductions() {
    while (!deductions_.empty()) {
      if (deductions_.size() > deduction_cap) return closing_passes();
      auto [c, col] = deductions_.back();
      deductions_.pop_back();
      Coset mu = rep(c);
      std::int32_t t = get(mu, col);
      if (t == UNDEF) continue;  // stale: the entry moved or was merged away
      Coset nu = rep(static_cast<Coset>(t));
      for (const Word& w : edp_[col]) {
        scan(mu, w, false);
        if (!alive_[mu]) break;
      }
      for (const Word& w : edp_[col ^ 1]) {
        if (!alive_[nu]) break;
        scan(nu, w, false);
      }
    }
  }

  // Scans every relator at every live coset, repeating until nothing
  // changes. Derives all deductions and coincidences available without
  // defining new cosets; used after the coset limit is hit and as the
  // fallback when the deduction stack overflows.
  void closing_passes() {
    deductions_.clear();
    if (!cfg_.lookahead && cfg_.strategy == Strategy::hlt) return;
    for (;;) {
      std::uint64_t before = changes_;
      for (Coset a = 0; a < alive_.size(); ++a) {
        if (!alive_[a]) continue;
        for (const Word& r : relators_) {
          scan(a, r, false);
          if (!alive_[a]) break;
        }
      }
      deductions_.clear();
      if (changes_ == before) break;
    }
  }

  void build_edp() {
    std::set<Word> rots;
    for (const Word& r : relators_) {
      for (const Word& w : {r, r.inverse()}) {
        std::vector<Letter> v(w.begin(), w.end());
        for (std::size_t i = 0; i < v.size(); ++i) {
          std::vector<Letter> rot(v.begin() + i, v.end());
          rot.insert(rot.end(), v.begin(), v.begin() + i);
          rots.insert(Word(std::move(rot)));
        }
      }
    }
    edp_.assign(ncols_, {});
    for (const Word& w : rots) edp_[letter_col(w[0])].push_back(w);
  }

  // A table counts as complete only if it passes a direct check: no missing
  // entries, every relator closes at every live coset, and every subgroup
  // generator closes at coset 0.
  void check_complete() {
    for (Coset a = 0; a < alive_.size(); ++a) {
      if (!alive_[a]) continue;
      for (int col = 0; col < ncols_; ++col)
        if (get(a, col) == UNDEF) return;
    }
    auto walk = [&](Coset c, const Word& w) -> std::optional<Coset> {
      for (Letter l : w) {
        std::int32_t t = get(c, letter_col(l));
        if (t == UNDEF) return std::nullopt;
        c = static_cast<Coset>(t);
      }
      return c;
    };
    for (Coset a = 0; a < alive_.size(); ++a) {
      if (!alive_[a]) continue;
      for (const Word& r : relators_)
        if (walk(a, r) != std::optional<Coset>(a)) return;
    }
    for (const Word& w : subgens_)
      if (walk(0, w) != std::optional<Coset>(0)) return;
    complete_ = true;
  }
};

}  // namespace

CosetTable enumerate(const Presentation& p, const std::vector<Word>& subgens,
                     const EnumConfig& cfg) {
  if (p.alphabet.size() == 0) throw error("enumerate: empty alphabet");
  if (cfg.max_cosets == 0) throw error("enumerate: max_cosets must be positive");
  Enumerator e(p, subgens, cfg);
  e.run();
  CosetTable t;
  t.pres_ = p;
  t.subgens_ = e.take_subgens();
  t.ncols_ = e.ncols();
  t.rows_ = e.take_rows();
  t.live_ = e.take_live();
  t.complete_ = e.complete();
  t.live_count_ = e.live_count();
  t.defined_count_ = e.defined_count();
  return t;
}

std::vector<Coset> CosetTable::live_cosets() const {
  std::vector<Coset> out;
  out.reserve(live_count_);
  for (Coset c = 0; c < live_.size(); ++c)
    if (live_[c]) out.push_back(c);
  return out;
}

std::optional<Coset> CosetTable::step(Coset c, Letter l) const {
  if (!is_live(c)) throw error("step: dead or out-of-range coset");
  std::int32_t t = entry(c, letter_col(l));
  if (t == UNDEF) return std::nullopt;
  return static_cast<Coset>(t);
}

std::optional<Coset> CosetTable::trace(Coset c, const Word& w) const {
  if (!is_live(c)) throw error("trace: dead or out-of-range coset");
  pres_.check_word(w);
  for (Letter l : w) {
    std::int32_t t = entry(c, letter_col(l));
    if (t == UNDEF) return std::nullopt;
    c = static_cast<Coset>(t);
  }
  return c;
}

bool CosetTable::is_normal() const {
  if (!complete_) throw error("is_normal: table is not complete");
  for (const Word& w : subgens_)
    for (Coset c = 0; c < live_.size(); ++c)
      if (live_[c] && trace(c, w) != std::optional<Coset>(c)) return false;
  return true;
}

CosetTable CosetTable::standardize() const {
  if (!complete_) throw error("standardize: table is not complete");
  std::vector<std::int32_t> newnum(live_.size(), -1);
  std::vector<Coset> order;
  order.reserve(live_count_);
  newnum[0] = 0;
  order.push_back(0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (int col = 0; col < ncols_; ++col) {
      std::int32_t d = entry(order[k], col);
      if (newnum[d] < 0) {
        newnum[d] = static_cast<std::int32_t>(order.size());
        order.push_back(static_cast<Coset>(d));
      }
    }
  }
  if (order.size() != live_count_)
    throw error("standardize: coset table is not transitive");
  CosetTable t;
  t.pres_ = pres_;
  t.subgens_ = subgens_;
  t.ncols_ = ncols_;
  t.rows_.resize(std::size_t(live_count_) * ncols_);
  for (std::size_t c = 0; c < order.size(); ++c)
    for (int col = 0; col < ncols_; ++col)
      t.rows_[c * ncols_ + col] = newnum[entry(order[c], col)];
  t.live_.assign(live_count_, 1);
  t.live_count_ = live_count_;
  t.defined_count_ = live_count_;
  t.complete_ = true;
  t.standardized_ = true;
  return t;
}

void CosetTable::validate() const {
  if (live_.empty() || !live_[0]) throw error("validate: coset 0 is missing");
  if (rows_.size() != live_.size() * std::size_t(ncols_))
    throw error("validate: table size mismatch");
  std::uint32_t n = 0;
  for (auto f : live_) n += f;
  if (n != live_count_) throw error("validate: live count mismatch");
  for (Coset c = 0; c < live_.size(); ++c) {
    if (!live_[c]) continue;
    for (int col = 0; col < ncols_; ++col) {
      std::int32_t t = entry(c, col);
      if (t == UNDEF) {
        if (complete_) throw error("validate: missing entry in complete table");
        continue;
      }
      if (t < 0 || std::size_t(t) >= live_.size() || !live_[t])
        throw error("validate: entry references a dead or invalid coset");
      if (entry(static_cast<Coset>(t), col ^ 1) != std::int32_t(c))
        throw error("validate: inverse entries disagree");
    }
  }
  if (!complete_) return;
  for (Coset c = 0; c < live_.size(); ++c) {
    if (!live_[c]) continue;
    for (const Word& r : pres_.relators)
      if (trace(c, r) != std::optional<Coset>(c))
        throw error("validate: relator does not close at coset " +
                    std::to_string(c + 1));
  }
  for (const Word& w : subgens_)
    if (trace(0, w) != std::optional<Coset>(0))
      throw error("validate: subgroup generator does not fix coset 1");
}

void CosetTable::export_text(std::ostream& os) const {
  std::vector<std::int64_t> ord(live_.size(), 0);
  std::int64_t n = 0;
  for (Coset c = 0; c < live_.size(); ++c)
    if (live_[c]) ord[c] = ++n;
  os << "# coset:";
  for (std::size_t g = 0; g < pres_.alphabet.size(); ++g) {
    os << ' ' << pres_.alphabet[g].name << ' ' << pres_.alphabet[g].name
       << "^-1";
  }
  os << '\n';
  for (Coset c = 0; c < live_.size(); ++c) {
    if (!live_[c]) continue;
    os << ord[c] << ':';
    for (int col = 0; col < ncols_; ++col) {
      std::int32_t t = entry(c, col);
      os << ' ';
      if (t == UNDEF)
        os << '-';
      else
        os << ord[t];
    }
    os << '\n';
  }
}

std::string CosetTable::export_json() const {
  nlohmann::json j;
  for (std::size_t g = 0; g < pres_.alphabet.size(); ++g)
    j["generators"].push_back(pres_.alphabet[g].name);
  for (std::size_t g = 0; g < pres_.alphabet.size(); ++g) {
    j["columns"].push_back(pres_.alphabet[g].name);
    j["columns"].push_back(pres_.alphabet[g].name + "^-1");
  }
  j["complete"] = complete_;
  j["standardized"] = standardized_;
  j["cosets"] = live_count_;
  j["cosets_defined"] = defined_count_;
  std::vector<std::int64_t> ord(live_.size(), 0);
  std::int64_t n = 0;
  for (Coset c = 0; c < live_.size(); ++c)
    if (live_[c]) ord[c] = ++n;
  auto rows = nlohmann::json::array();
  for (Coset c = 0; c < live_.size(); ++c) {
    if (!live_[c]) continue;
    auto row = nlohmann::json::array();
    for (int col = 0; col < ncols_; ++col) {
      std::int32_t t = entry(c, col);
      row.push_back(t == UNDEF ? 0 : ord[t]);  // 1-based, 0 = undefined
    }
    rows.push_back(std::move(row));
  }
  j["table"] = std::move(rows);
  return j.dump(2);
}

CosetTable CosetTable::with_entry(Coset c, int col, std::int32_t value) const {
  if (!is_live(c) || col < 0 || col >= ncols_)
    throw error("with_entry: no such entry");
  CosetTable t = *this;
  t.rows_[std::size_t(c) * ncols_ + col] = value;
  return t;
}

Certificate certify_trivial_word(const Presentation& p, const Word& w,
                                 const EnumConfig& cfg) {
  p.check_word(w);
  EnumConfig c = cfg;
  c.strategy = Strategy::hlt;
  c.lookahead = true;
  CosetTable t = enumerate(p, {}, c);
  auto img = t.trace(0, free_reduce(w));
  return (img && *img == 0) ? Certificate::proven : Certificate::unknown;
}

}  // namespace polyforge

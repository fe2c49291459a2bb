#include "polyforge/word.hpp"

#include <algorithm>

namespace polyforge {

Alphabet::Alphabet(std::vector<std::string> names) {
  gens_.reserve(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) throw error("generator name must not be empty");
    for (const auto& g : gens_)
      if (g.name == names[i]) throw error("duplicate generator name: " + names[i]);
    gens_.push_back(Generator{std::move(names[i]), static_cast<int>(i)});
  }
}

int Alphabet::index_of(const std::string& name) const {
  for (const auto& g : gens_)
    if (g.name == name) return g.index;
  return -1;
}

bool Alphabet::operator==(const Alphabet& other) const {
  if (gens_.size() != other.gens_.size()) return false;
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name != other.gens_[i].name) return false;
  return true;
}

Word free_reduce(const std::vector<Letter>& letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (l == 0) throw error("0 is not a letter");
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word(std::move(out));
}

Word cyclic_reduce(const Word& w) {
  std::vector<Letter> v = free_reduce(w).letters();
  std::size_t lo = 0, hi = v.size();
  while (hi - lo >= 2 && v[lo] == -v[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(std::vector<Letter>(v.begin() + lo, v.begin() + hi));
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(-*it);
  return Word(std::move(out));
}

Word Word::operator*(const Word& o) const {
  std::vector<Letter> cat = letters_;
  cat.insert(cat.end(), o.letters_.begin(), o.letters_.end());
  return free_reduce(cat);
}

Word Word::pow(long long e) const {
  Word base = e < 0 ? inverse() : *this;
  long long n = e < 0 ? -e : e;
  Word out;
  for (long long i = 0; i < n; ++i) out = out * base;
  return out;
}

Word Word::conjugate(const Word& g) const { return g.inverse() * *this * g; }

int Word::max_generator() const {
  int m = -1;
  for (Letter l : letters_) m = std::max(m, letter_gen(l));
  return m;
}

Word substitute(const Word& w, const std::vector<Word>& images) {
  std::vector<Letter> out;
  for (Letter l : w) {
    int g = letter_gen(l);
    if (g >= static_cast<int>(images.size()))
      throw error("substitute: generator " + std::to_string(g) + " has no image");
    const Word& im = images[g];
    if (l > 0) {
      out.insert(out.end(), im.begin(), im.end());
    } else {
      for (auto it = im.letters().rbegin(); it != im.letters().rend(); ++it)
        out.push_back(-*it);
    }
  }
  return free_reduce(out);
}

}  // namespace polyforge

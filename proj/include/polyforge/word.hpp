#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyforge {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A generator of a free group, identified by its 0-based position in an
// ordered alphabet.
struct Generator {
  std::string name;
  int index = 0;
};

// Ordered list of generators with distinct names.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  int size() const { return static_cast<int>(gens_.size()); }
  const Generator& operator[](int i) const { return gens_.at(i); }
  const std::vector<Generator>& generators() const { return gens_; }

  // -1 if no such generator
  int index_of(const std::string& name) const;

  bool operator==(const Alphabet& other) const;

private:
  std::vector<Generator> gens_;
};

// A letter is a signed 1-based generator reference: +k is generator k-1,
// -k its inverse. 0 is not a letter.
using Letter = std::int32_t;

inline int letter_gen(Letter l) { return (l > 0 ? l : -l) - 1; }
inline Letter inv(Letter l) { return -l; }

// A freely reduced word over some alphabet. The empty word is the identity.
// Letters are stored flat, one per position; no exponent compression.
class Word {
public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }

  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  bool operator==(const Word& o) const { return letters_ == o.letters_; }
  bool operator!=(const Word& o) const { return !(*this == o); }
  bool operator<(const Word& o) const { return letters_ < o.letters_; }

  Word inverse() const;
  Word operator*(const Word& o) const;  // concatenate + freely reduce
  Word pow(long long e) const;
  Word conjugate(const Word& g) const;  // g^-1 * (*this) * g

  int max_generator() const;  // largest 0-based generator index used, -1 if empty

private:
  std::vector<Letter> letters_;
};

// Remove all adjacent cancelling pairs. Idempotent.
Word free_reduce(const std::vector<Letter>& letters);
inline Word free_reduce(const Word& w) { return free_reduce(w.letters()); }

// Remove cancelling first/last pairs as well (conjugacy representative).
Word cyclic_reduce(const Word& w);

// Image of w under the free-group endomorphism sending generator i to
// images[i]. Every generator occurring in w must have an image.
Word substitute(const Word& w, const std::vector<Word>& images);

}  // namespace polyforge

#pragma once

#include <string>
#include <vector>

#include "polyforge/parse.hpp"
#include "polyforge/word.hpp"

namespace polyforge {

// A finite presentation: an ordered alphabet plus freely reduced relator
// words over it.
struct Presentation {
  Alphabet alphabet;
  std::vector<Word> relators;

  Presentation() = default;
  Presentation(Alphabet a, std::vector<Word> rels)
      : alphabet(std::move(a)), relators(std::move(rels)) {
    for (const auto& r : relators) check_word(r);
  }

  // Convenience constructor from the word grammar.
  Presentation(std::vector<std::string> generator_names,
               const std::vector<std::string>& relator_texts)
      : alphabet(std::move(generator_names)) {
    relators.reserve(relator_texts.size());
    for (const auto& t : relator_texts) relators.push_back(parse_word(t, alphabet));
  }

  // Throws if w uses a generator outside the alphabet.
  void check_word(const Word& w) const {
    if (w.max_generator() >= alphabet.size())
      throw error("word uses a generator outside the alphabet");
  }

  Word parse(const std::string& text) const { return parse_word(text, alphabet); }
  std::string print(const Word& w) const { return print_word(w, alphabet); }
};

}  // namespace polyforge

#include "polyforge/parse.hpp"

#include <cctype>
#include <cstdlib>

namespace polyforge {

namespace {

class Parser {
public:
  Parser(const std::string& text, const Alphabet& alphabet)
      : s_(text), alpha_(alphabet) {}

  Word parse() {
    skip_ws();
    if (at_end()) return Word();
    Word w = parse_word();
    skip_ws();
    if (!at_end()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return w;
  }

private:
  Word parse_word() {
    Word w = parse_term();
    for (;;) {
      skip_ws();
      if (at_end() || s_[pos_] == ')' || s_[pos_] == ',') break;
      if (s_[pos_] == '*') {
        ++pos_;
        skip_ws();
      }
      w = w * parse_term();
    }
    return w;
  }

  Word parse_term() {
    Word w = parse_atom();
    for (;;) {
      skip_ws();
      if (at_end() || s_[pos_] != '^') break;
      ++pos_;
      skip_ws();
      if (!at_end() && (s_[pos_] == '(' || is_name_start()))
        w = w.conjugate(parse_atom());
      else
        w = w.pow(parse_int());
    }
    return w;
  }

  bool is_name_start() const {
    for (const auto& g : alpha_.generators())
      if (s_.compare(pos_, g.name.size(), g.name) == 0) return true;
    return false;
  }

  Word parse_atom() {
    skip_ws();
    if (at_end()) fail("expected a generator or '('");
    if (s_[pos_] == '(') {
      ++pos_;
      Word u = parse_word();
      skip_ws();
      if (!at_end() && s_[pos_] == ',') {
        ++pos_;
        Word v = parse_word();
        expect(')');
        return u.inverse() * v.inverse() * u * v;
      }
      expect(')');
      return u;
    }
    // longest known generator name at this position
    int best = -1;
    std::size_t best_len = 0;
    for (const auto& g : alpha_.generators()) {
      const std::string& n = g.name;
      if (n.size() > best_len && s_.compare(pos_, n.size(), n) == 0) {
        best = g.index;
        best_len = n.size();
      }
    }
    if (best < 0) {
      if (s_[pos_] == '1') {  // identity
        ++pos_;
        return Word();
      }
      fail("unknown symbol at '" + s_.substr(pos_, 8) + "'");
    }
    pos_ += best_len;
    return Word({static_cast<Letter>(best + 1)});
  }

  long long parse_int() {
    skip_ws();
    std::size_t start = pos_;
    if (!at_end() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) fail("malformed exponent");
    return std::strtoll(s_.substr(start, pos_ - start).c_str(), nullptr, 10);
  }

  void expect(char c) {
    skip_ws();
    if (at_end() || s_[pos_] != c)
      fail(std::string("expected '") + c + "'" + (at_end() ? " before end of input" : ""));
    ++pos_;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool at_end() const { return pos_ >= s_.size(); }

  [[noreturn]] void fail(const std::string& msg) {
    throw parse_error("parse error at position " + std::to_string(pos_) + ": " + msg);
  }

  const std::string& s_;
  const Alphabet& alpha_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(const std::string& text, const Alphabet& alphabet) {
  return Parser(text, alphabet).parse();
}

std::string print_word(const Word& w, const Alphabet& alphabet) {
  if (w.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    Letter l = w[i];
    std::size_t run = 1;
    while (i + run < w.size() && w[i + run] == l) ++run;
    if (!out.empty()) out += '*';
    out += alphabet[letter_gen(l)].name;
    long long e = (l > 0) ? static_cast<long long>(run) : -static_cast<long long>(run);
    if (e != 1) out += "^" + std::to_string(e);
    i += run;
  }
  return out;
}

}  // namespace polyforge

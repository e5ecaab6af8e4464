#ifndef CROSSMOD_WORD_HPP
#define CROSSMOD_WORD_HPP

#include <algorithm>
#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crossmod/base.hpp"

namespace crossmod {

/// Ordered set of generator symbols (the set X of a presentation).
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw InputError("alphabet: no generators");
    for (const auto& s : names_) {
      if (!valid_symbol(s))
        throw InputError("alphabet: bad generator symbol '" + s + "'");
    }
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j])
          throw InputError("alphabet: duplicate generator '" + names_[i] + "'");
  }

  static bool valid_symbol(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin() + 1, s.end(), [](unsigned char c) {
      return std::isalnum(c);
    });
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  int index_of(std::string_view s) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == s) return static_cast<int>(i);
    return -1;
  }

  bool operator==(const Alphabet& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

inline AlphabetPtr make_alphabet(std::vector<std::string> names) {
  return std::make_shared<const Alphabet>(std::move(names));
}

/// One signed generator occurrence.
struct Letter {
  int gen;
  int sign;  // +1 or -1

  friend bool operator==(const Letter& a, const Letter& b) {
    return a.gen == b.gen && a.sign == b.sign;
  }
  friend auto operator<=>(const Letter& a, const Letter& b) = default;
};

/// Freely reduced word in the free group on an alphabet.  Immutable; the
/// class invariant is that letters_ never contains an adjacent x x^-1 pair.
class Word {
 public:
  Word() = default;

  Word(AlphabetPtr alphabet, const std::vector<Letter>& raw)
      : alphabet_(std::move(alphabet)) {
    letters_.reserve(raw.size());
    for (const Letter& l : raw) push_reduce(l);
  }

  static Word identity(AlphabetPtr a) { return Word(std::move(a), {}); }

  static Word generator(AlphabetPtr a, int gen, int sign = 1) {
    if (gen < 0 || gen >= a->size()) throw InputError("word: generator index out of range");
    return Word(std::move(a), {Letter{gen, sign}});
  }

  /// Parses `x*y^-2*t`; `1` and the empty string denote the identity.
  static Word parse(AlphabetPtr a, std::string_view text);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  int size() const { return static_cast<int>(letters_.size()); }

  Word inverse() const {
    Word w;
    w.alphabet_ = alphabet_;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
      w.letters_.push_back(Letter{it->gen, -it->sign});
    return w;  // inverse of a reduced word is reduced
  }

  Word pow(int k) const;

  std::string str() const {
    if (letters_.empty()) return "1";
    std::string out;
    std::size_t i = 0;
    while (i < letters_.size()) {
      std::size_t j = i;
      while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
      int e = static_cast<int>(j - i) * letters_[i].sign;
      if (!out.empty()) out += '*';
      out += alphabet_->name(letters_[i].gen);
      if (e != 1) out += '^' + std::to_string(e);
      i = j;
    }
    return out;
  }

  friend bool operator==(const Word& a, const Word& b) {
    return a.letters_ == b.letters_;
  }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
  // Order used for map keys (group-ring supports on free-group words).
  friend bool operator<(const Word& a, const Word& b) {
    if (a.letters_.size() != b.letters_.size())
      return a.letters_.size() < b.letters_.size();
    return a.letters_ < b.letters_;
  }

 private:
  void push_reduce(const Letter& l) {
    if (l.sign != 1 && l.sign != -1) throw InputError("word: letter sign must be +-1");
    if (!letters_.empty() && letters_.back().gen == l.gen &&
        letters_.back().sign == -l.sign) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }

  friend Word multiply(const Word& a, const Word& b);

  AlphabetPtr alphabet_;
  std::vector<Letter> letters_;
};

namespace detail {
inline void require_same_alphabet(const Word& a, const Word& b) {
  if (a.alphabet() == b.alphabet()) return;
  if (a.alphabet() && b.alphabet() && *a.alphabet() == *b.alphabet()) return;
  throw InputError("word: alphabet mismatch");
}
}  // namespace detail

/// Free reduction of the concatenation a*b.
inline Word multiply(const Word& a, const Word& b) {
  detail::require_same_alphabet(a, b);
  Word w;
  w.alphabet_ = a.alphabet_ ? a.alphabet_ : b.alphabet_;
  w.letters_ = a.letters_;
  for (const Letter& l : b.letters()) w.push_reduce(l);
  return w;
}

/// Reduced g*w*g^-1.
inline Word conjugate(const Word& g, const Word& w) {
  return multiply(multiply(g, w), g.inverse());
}

inline Word Word::pow(int k) const {
  Word r = Word::identity(alphabet_);
  Word base = k < 0 ? inverse() : *this;
  for (int i = 0, n = k < 0 ? -k : k; i < n; ++i) r = multiply(r, base);
  return r;
}

inline Word Word::parse(AlphabetPtr a, std::string_view text) {
  std::vector<Letter> letters;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (pos == text.size() || (text[pos] == '1' && pos + 1 >= text.size()))
    return Word::identity(std::move(a));
  bool expect_factor = true;
  while (pos < text.size()) {
    skip_ws();
    if (pos == text.size()) break;
    if (!expect_factor) {
      if (text[pos] != '*')
        throw InputError("word: expected '*' at position " + std::to_string(pos));
      ++pos;
      skip_ws();
    }
    std::size_t start = pos;
    if (pos >= text.size() || !std::isalpha(static_cast<unsigned char>(text[pos])))
      throw InputError("word: expected generator at position " + std::to_string(pos));
    ++pos;
    while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos]))) ++pos;
    std::string name(text.substr(start, pos - start));
    int gen = a->index_of(name);
    if (gen < 0) throw InputError("word: unknown generator '" + name + "'");
    long exp = 1;
    skip_ws();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      skip_ws();
      std::size_t es = pos;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == es || (pos - es == 1 && !std::isdigit(static_cast<unsigned char>(text[es]))))
        throw InputError("word: bad exponent at position " + std::to_string(es));
      exp = std::stol(std::string(text.substr(es, pos - es)));
    }
    int sign = exp < 0 ? -1 : 1;
    for (long i = 0; i < (exp < 0 ? -exp : exp); ++i) letters.push_back(Letter{gen, sign});
    expect_factor = false;
    skip_ws();
  }
  if (expect_factor) throw InputError("word: trailing '*'");
  return Word(std::move(a), letters);
}

}  // namespace crossmod

#endif

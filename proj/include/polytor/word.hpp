#pragma once

// Freely reduced words in a free group. Letters are (generator index, ±1).

#include "polytor/errors.hpp"

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <vector>

namespace polytor {

struct Letter {
  int gen = 0;
  int sign = 1;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) { reduce(); }

  static Word generator(int g, int sign = 1) { return Word({Letter{g, sign}}); }

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t length() const { return letters_.size(); }

  friend bool operator==(const Word&, const Word&) = default;

  // Total order: by length, then lexicographically. Used for canonical maps.
  friend bool operator<(const Word& a, const Word& b) {
    if (a.letters_.size() != b.letters_.size()) return a.letters_.size() < b.letters_.size();
    return a.letters_ < b.letters_;
  }

  Word inverse() const {
    std::vector<Letter> inv;
    inv.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
      inv.push_back(Letter{it->gen, -it->sign});
    Word w;
    w.letters_ = std::move(inv);  // inverse of a reduced word is reduced
    return w;
  }

  friend Word operator*(const Word& a, const Word& b) {
    std::vector<Letter> cat = a.letters_;
    cat.insert(cat.end(), b.letters_.begin(), b.letters_.end());
    return Word(std::move(cat));
  }

  Word& operator*=(const Word& b) { return *this = *this * b; }

  Word pow(long k) const {
    Word base = k < 0 ? inverse() : *this;
    if (k < 0) k = -k;
    Word acc;
    for (long i = 0; i < k; ++i) acc *= base;
    return acc;
  }

  // Conjugate and cyclically reduce: strips matching first/last letters.
  Word cyclically_reduced() const {
    std::vector<Letter> v = letters_;
    std::size_t lo = 0, hi = v.size();
    while (hi - lo >= 2 && v[lo].gen == v[hi - 1].gen && v[lo].sign == -v[hi - 1].sign) {
      ++lo;
      --hi;
    }
    Word w;
    w.letters_.assign(v.begin() + static_cast<long>(lo), v.begin() + static_cast<long>(hi));
    return w;
  }

  int exponent_sum(int gen) const {
    int s = 0;
    for (const auto& l : letters_)
      if (l.gen == gen) s += l.sign;
    return s;
  }

  int max_generator() const {
    int m = -1;
    for (const auto& l : letters_) m = std::max(m, l.gen);
    return m;
  }

  std::size_t count_occurrences(int gen) const {
    std::size_t c = 0;
    for (const auto& l : letters_)
      if (l.gen == gen) ++c;
    return c;
  }

  // Replaces every occurrence of generator `gen` by `image` (or its inverse),
  // then freely reduces.
  Word substituted(int gen, const Word& image) const {
    std::vector<Letter> out;
    for (const auto& l : letters_) {
      if (l.gen != gen) {
        out.push_back(l);
        continue;
      }
      if (l.sign > 0) {
        out.insert(out.end(), image.letters().begin(), image.letters().end());
      } else {
        Word inv = image.inverse();
        out.insert(out.end(), inv.letters().begin(), inv.letters().end());
      }
    }
    return Word(std::move(out));
  }

  // Renumbers generators through `map`; map[g] < 0 is a misuse guard.
  Word renumbered(const std::vector<int>& map) const {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (const auto& l : letters_) {
      int g = map[static_cast<std::size_t>(l.gen)];
      if (g < 0) throw std::logic_error("renumbering through a deleted generator");
      out.push_back(Letter{g, l.sign});
    }
    return Word(std::move(out));
  }

 private:
  void reduce() {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (const auto& l : letters_) {
      if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign)
        out.pop_back();
      else
        out.push_back(l);
    }
    letters_ = std::move(out);
  }

  std::vector<Letter> letters_;
};

// Tokenized word syntax: whitespace-separated generator names, an
// all-uppercase variant or a ^-1 / ^k suffix denoting inverses and powers,
// e.g. "a b A" or "a b^-1 a^2".
inline Word parse_word(const std::string& text, const std::vector<std::string>& names) {
  auto find_name = [&](const std::string& tok) -> int {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == tok) return static_cast<int>(i);
    return -1;
  };
  auto upper = [](std::string s) {
    for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
  };

  std::vector<Letter> letters;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::string tok = text.substr(start, i - start);

    long power = 1;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      try {
        power = std::stol(tok.substr(caret + 1));
      } catch (const std::exception&) {
        throw ValidationError("bad exponent in token '" + tok + "' at position " +
                              std::to_string(start));
      }
      tok = tok.substr(0, caret);
    }

    int g = find_name(tok);
    int sign = 1;
    if (g < 0) {
      // Upper-case form of a known name denotes its inverse.
      for (std::size_t k = 0; k < names.size(); ++k)
        if (upper(names[k]) == tok && names[k] != tok) {
          g = static_cast<int>(k);
          sign = -1;
          break;
        }
    }
    if (g < 0)
      throw ValidationError("unknown generator '" + tok + "' at position " +
                            std::to_string(start));
    long total = power * sign;
    for (long k = 0; k < std::abs(total); ++k)
      letters.push_back(Letter{g, total > 0 ? 1 : -1});
  }
  return Word(std::move(letters));
}

inline std::string word_to_string(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "";
  std::string out;
  for (const auto& l : w.letters()) {
    if (!out.empty()) out += " ";
    out += names[static_cast<std::size_t>(l.gen)];
    if (l.sign < 0) out += "^-1";
  }
  return out;
}

}  // namespace polytor

#pragma once

// Words in the free group F_k.
//
// A word is a sequence of letters f_i^{+1} or f_i^{-1}.  Word values are
// always freely reduced; every operation returns a fresh reduced word.  In
// text, generator i (1..26) is the i-th lowercase letter and its inverse the
// matching uppercase letter, so "abAB" is the commutator of f_1 and f_2.  For
// ranks above 26 a signed-integer list such as "1 -2 1" is accepted.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace lawless {

struct Letter {
  std::uint32_t generator = 1;  // 1-based
  std::int8_t sign = 1;         // +1 or -1

  constexpr Letter inverse() const noexcept {
    return Letter{generator, static_cast<std::int8_t>(-sign)};
  }
  constexpr bool cancels(const Letter& next) const noexcept {
    return generator == next.generator && sign == -next.sign;
  }
  friend constexpr bool operator==(const Letter&, const Letter&) = default;
};

class Word {
 public:
  Word() = default;

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  std::size_t rank() const noexcept { return rank_; }
  std::span<const Letter> letters() const noexcept { return letters_; }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  friend bool operator==(const Word& a, const Word& b) {
    return a.letters_ == b.letters_;
  }

 private:
  friend Word reduce(std::span<const Letter>, std::size_t);

  std::vector<Letter> letters_;
  std::size_t rank_ = 1;
};

/// Free reduction.  The rank of the result is the largest of `rank`, 1 and
/// every generator index mentioned in `letters`.
inline Word reduce(std::span<const Letter> letters, std::size_t rank = 1) {
  Word w;
  w.rank_ = std::max<std::size_t>(rank, 1);
  for (const Letter& l : letters) {
    if (l.generator == 0 || (l.sign != 1 && l.sign != -1)) {
      throw RangeError("letter with generator 0 or invalid sign");
    }
    w.rank_ = std::max<std::size_t>(w.rank_, l.generator);
    if (!w.letters_.empty() && w.letters_.back().cancels(l)) {
      w.letters_.pop_back();
    } else {
      w.letters_.push_back(l);
    }
  }
  return w;
}

inline Word concat(const Word& u, const Word& v) {
  std::vector<Letter> all(u.letters().begin(), u.letters().end());
  all.insert(all.end(), v.letters().begin(), v.letters().end());
  return reduce(all, std::max(u.rank(), v.rank()));
}

inline Word inverse(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back(it->inverse());
  }
  return reduce(out, w.rank());
}

/// The initial segment v_1 ... v_j.
inline Word prefix(const Word& w, std::size_t j) {
  if (j > w.size()) {
    throw RangeError("prefix length " + std::to_string(j) + " exceeds word length " +
                     std::to_string(w.size()));
  }
  return reduce(w.letters().first(j), w.rank());
}

/// Parses a signed-integer word such as "1 -2 1" (commas also separate).
inline Word parse_word_integers(std::string_view text) {
  std::vector<Letter> letters;
  std::size_t i = 0;
  while (i < text.size()) {
    char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    std::int8_t sign = 1;
    if (ch == '-' || ch == '+') {
      sign = ch == '-' ? -1 : 1;
      ++i;
    }
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw ParseError("expected a generator index", i + 1);
    }
    std::uint64_t value = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      value = value * 10 + static_cast<std::uint64_t>(text[i] - '0');
      if (value > 0xffffffffULL) throw ParseError("generator index too large", start + 1);
      ++i;
    }
    if (value == 0) throw ParseError("generator indices start at 1", start + 1);
    letters.push_back(Letter{static_cast<std::uint32_t>(value), sign});
  }
  return reduce(letters);
}

/// Parses the letter form ("abAB") or, when the text starts with a digit or
/// sign, the signed-integer form.  The empty string is the identity word.
inline Word parse_word(std::string_view text) {
  auto first = std::find_if_not(text.begin(), text.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c));
  });
  if (first != text.end() &&
      (std::isdigit(static_cast<unsigned char>(*first)) || *first == '-' || *first == '+')) {
    return parse_word_integers(text);
  }
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch >= 'a' && ch <= 'z') {
      letters.push_back(Letter{static_cast<std::uint32_t>(ch - 'a' + 1), 1});
    } else if (ch >= 'A' && ch <= 'Z') {
      letters.push_back(Letter{static_cast<std::uint32_t>(ch - 'A' + 1), -1});
    } else {
      throw ParseError(std::string("invalid character '") + ch + "' in word", i + 1);
    }
  }
  return reduce(letters);
}

/// Letter form when every generator fits in a..z, integer form otherwise.
inline std::string to_string(const Word& w) {
  const bool letter_form = std::all_of(w.letters().begin(), w.letters().end(),
                                       [](const Letter& l) { return l.generator <= 26; });
  std::string out;
  if (letter_form) {
    for (const Letter& l : w.letters()) {
      const char base = l.sign > 0 ? 'a' : 'A';
      out.push_back(static_cast<char>(base + l.generator - 1));
    }
    return out;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out.push_back(' ');
    if (w[i].sign < 0) out.push_back('-');
    out += std::to_string(w[i].generator);
  }
  return out;
}

/// Every reduced word of length 1..max_length in F_rank, ordered by length
/// and then lexicographically with f_1 < f_1^{-1} < f_2 < f_2^{-1} < ...
inline std::vector<Word> enumerate_reduced(std::size_t rank, std::size_t max_length) {
  if (rank == 0) throw RangeError("rank must be at least 1");
  std::vector<Letter> alphabet;
  for (std::uint32_t g = 1; g <= rank; ++g) {
    alphabet.push_back(Letter{g, 1});
    alphabet.push_back(Letter{g, -1});
  }
  std::vector<Word> out;
  std::vector<std::vector<Letter>> layer{{}};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<std::vector<Letter>> next;
    next.reserve(layer.size() * (2 * rank - (len > 1 ? 1 : 0)));
    for (const auto& stem : layer) {
      for (const Letter& l : alphabet) {
        if (!stem.empty() && stem.back().cancels(l)) continue;
        auto grown = stem;
        grown.push_back(l);
        next.push_back(std::move(grown));
      }
    }
    for (const auto& letters : next) out.push_back(reduce(letters, rank));
    layer = std::move(next);
  }
  return out;
}

/// w(g_1, ..., g_k), multiplied left to right so that with right actions
/// x^{w(g)} applies v_1 first.
template <class T, class Mul, class Inv>
T evaluate(const Word& w, std::span<const T> tuple, const T& identity, Mul&& mul, Inv&& inv) {
  if (tuple.size() < w.rank()) {
    throw ArityError("word of rank " + std::to_string(w.rank()) + " needs " +
                     std::to_string(w.rank()) + " elements, got " +
                     std::to_string(tuple.size()));
  }
  T result = identity;
  std::vector<const T*> inverse_cache(tuple.size(), nullptr);
  std::vector<T> inverses;
  inverses.reserve(tuple.size());
  for (const Letter& l : w.letters()) {
    const std::size_t m = l.generator - 1;
    if (l.sign > 0) {
      result = mul(result, tuple[m]);
    } else {
      if (!inverse_cache[m]) {
        inverses.push_back(inv(tuple[m]));
        inverse_cache[m] = &inverses.back();
      }
      result = mul(result, *inverse_cache[m]);
    }
  }
  return result;
}

template <class T, class Mul, class Inv>
T evaluate(const Word& w, const std::vector<T>& tuple, const T& identity, Mul&& mul, Inv&& inv) {
  return evaluate(w, std::span<const T>(tuple), identity, std::forward<Mul>(mul),
                  std::forward<Inv>(inv));
}

}  // namespace lawless

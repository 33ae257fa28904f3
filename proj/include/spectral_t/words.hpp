#pragma once

// Free-group words over a_1..a_n and their inverses.
//
// Letters are flattened to codes a_1..a_n -> 1..n, a_1^-1..a_n^-1 -> n+1..2n.
// Canonical order on words of a fixed length is lexicographic on these codes.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "spectral_t/error.hpp"

namespace spectral_t {

struct Letter {
  std::uint32_t generator = 1;  // 1-based
  std::int8_t sign = 1;         // +1 or -1

  constexpr Letter inverse() const noexcept {
    return Letter{generator, static_cast<std::int8_t>(-sign)};
  }
  constexpr bool is_inverse_of(Letter other) const noexcept {
    return generator == other.generator && sign == -other.sign;
  }
  // Flattened code in [1, 2n].
  constexpr std::uint32_t code(std::uint32_t n) const noexcept {
    return sign > 0 ? generator : generator + n;
  }
  static constexpr Letter from_code(std::uint32_t code, std::uint32_t n) noexcept {
    return code <= n ? Letter{code, 1} : Letter{code - n, -1};
  }

  friend constexpr bool operator==(Letter, Letter) = default;
};

// A word over the alphabet of size n. Freely reduced unless produced by
// Word::raw (the input side of reduce()).
class Word {
 public:
  Word() = default;

  // Wraps letters without reducing them.
  static Word raw(std::vector<Letter> letters) {
    Word w;
    w.letters_ = std::move(letters);
    return w;
  }

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  std::span<const Letter> letters() const noexcept { return letters_; }

  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  bool is_freely_reduced() const noexcept {
    for (std::size_t i = 1; i < letters_.size(); ++i) {
      if (letters_[i].is_inverse_of(letters_[i - 1])) return false;
    }
    return true;
  }

  Word subword(std::size_t pos, std::size_t len) const {
    return raw(std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                                   letters_.begin() + static_cast<std::ptrdiff_t>(pos + len)));
  }

  // Plain concatenation; no cancellation.
  Word concat(const Word& other) const {
    std::vector<Letter> out = letters_;
    out.insert(out.end(), other.letters_.begin(), other.letters_.end());
    return raw(std::move(out));
  }

  std::uint32_t max_generator() const noexcept {
    std::uint32_t m = 0;
    for (auto l : letters_) m = std::max(m, l.generator);
    return m;
  }

  friend bool operator==(const Word& a, const Word& b) = default;

 private:
  std::vector<Letter> letters_;
};

// Lexicographic on flattened codes; shorter words first when one is a prefix.
inline bool canonical_less(const Word& a, const Word& b, std::uint32_t n) {
  const std::size_t m = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < m; ++i) {
    auto ca = a[i].code(n), cb = b[i].code(n);
    if (ca != cb) return ca < cb;
  }
  return a.size() < b.size();
}

// Stack-based free reduction.
inline Word reduce(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (!out.empty() && out.back().is_inverse_of(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return Word::raw(std::move(out));
}

inline Word reduce(const Word& w) { return reduce(w.letters()); }

inline Word invert(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back(it->inverse());
  }
  return Word::raw(std::move(out));
}

inline Word cyclic_reduce(const Word& w) {
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo].is_inverse_of(w[hi - 1])) {
    ++lo;
    --hi;
  }
  return w.subword(lo, hi - lo);
}

inline bool is_cyclically_reduced(const Word& w) {
  if (w.empty()) return false;
  return w.size() == 1 || !w.front().is_inverse_of(w.back());
}

// Code of the first letter, in [1, 2n].
inline std::uint32_t class_index(const Word& w, std::uint32_t n) {
  if (w.empty()) throw InputError("class_index: empty word");
  return w.front().code(n);
}

// i such that the last letter equals a_i^-1 (with a_{i+n} := a_i^-1).
inline std::uint32_t last_class_index(const Word& w, std::uint32_t n) {
  if (w.empty()) throw InputError("last_class_index: empty word");
  return w.back().inverse().code(n);
}

// ---------------------------------------------------------------------------
// Counting and enumeration

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw ResourceError("integer overflow in word count");
  }
  return a * b;
}

inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

}  // namespace detail

// |W_l| = 2n(2n-1)^(l-1).
inline std::uint64_t reduced_word_count(std::uint32_t n, std::uint32_t l) {
  if (n == 0 || l == 0) return l == 0 ? 1 : 0;
  return detail::checked_mul(2ULL * n, detail::checked_pow(2ULL * n - 1, l - 1));
}

// 2n(2n-1)^(l-2): bound on the index of the subgroup generated by W_l.
inline std::uint64_t index_bound(std::uint32_t n, std::uint32_t l) {
  if (n < 1 || l < 2) throw InputError("index_bound requires n >= 1, l >= 2");
  return detail::checked_mul(2ULL * n, detail::checked_pow(2ULL * n - 1, l - 2));
}

// Position of a freely reduced word of length l in the canonical order of W_l.
inline std::uint64_t word_rank(const Word& w, std::uint32_t n) {
  if (w.empty()) throw InputError("word_rank: empty word");
  const std::uint64_t branch = 2ULL * n - 1;
  std::uint64_t r = w[0].code(n) - 1;
  for (std::size_t i = 1; i < w.size(); ++i) {
    const std::uint32_t forbidden = w[i - 1].inverse().code(n);
    const std::uint32_t c = w[i].code(n);
    r = r * branch + (c - 1) - (c > forbidden ? 1 : 0);
  }
  return r;
}

// Inverse of word_rank for words of length l.
inline Word word_unrank(std::uint64_t rank, std::uint32_t n, std::uint32_t l) {
  const std::uint64_t branch = 2ULL * n - 1;
  std::vector<std::uint64_t> digits(l);
  for (std::uint32_t i = l; i-- > 1;) {
    digits[i] = rank % branch;
    rank /= branch;
  }
  digits[0] = rank;
  std::vector<Letter> out;
  out.reserve(l);
  out.push_back(Letter::from_code(static_cast<std::uint32_t>(digits[0] + 1), n));
  for (std::uint32_t i = 1; i < l; ++i) {
    const std::uint32_t forbidden = out.back().inverse().code(n);
    std::uint32_t c = static_cast<std::uint32_t>(digits[i] + 1);
    if (c >= forbidden) ++c;
    out.push_back(Letter::from_code(c, n));
  }
  return Word::raw(std::move(out));
}

// Visits W_l in canonical order without materializing it. The visitor
// returns void; enumeration is not capped.
template <typename Visitor>
void for_each_reduced(std::uint32_t n, std::uint32_t l, Visitor&& visit) {
  if (n < 1 || l < 1) throw InputError("for_each_reduced requires n >= 1, l >= 1");
  const std::uint32_t alpha = 2 * n;
  std::vector<std::uint32_t> codes(l, 0);
  std::vector<Letter> letters(l);
  // Odometer over codes with the reduction constraint.
  auto valid_next = [&](std::size_t pos, std::uint32_t start) -> std::uint32_t {
    for (std::uint32_t c = start; c <= alpha; ++c) {
      if (pos == 0) return c;
      if (!Letter::from_code(c, n).is_inverse_of(letters[pos - 1])) return c;
    }
    return 0;
  };
  std::size_t pos = 0;
  codes[0] = 0;
  while (true) {
    std::uint32_t c = valid_next(pos, codes[pos] + 1);
    if (c == 0) {
      if (pos == 0) return;
      codes[pos] = 0;
      --pos;
      continue;
    }
    codes[pos] = c;
    letters[pos] = Letter::from_code(c, n);
    if (pos + 1 == l) {
      visit(Word::raw(letters));
    } else {
      ++pos;
      codes[pos] = 0;
    }
  }
}

inline std::vector<Word> enumerate_reduced(std::uint32_t n, std::uint32_t l,
                                           std::uint64_t cap = limits::kDefaultEnumerationCap) {
  if (n < 1 || l < 1) throw InputError("enumerate_reduced requires n >= 1, l >= 1");
  const std::uint64_t count = reduced_word_count(n, l);
  if (count > cap) {
    throw ResourceError("|W_" + std::to_string(l) + "| = " + std::to_string(count) +
                        " exceeds enumeration cap " + std::to_string(cap));
  }
  std::vector<Word> out;
  out.reserve(count);
  for_each_reduced(n, l, [&](Word w) { out.push_back(std::move(w)); });
  return out;
}

inline std::vector<Word> enumerate_cyclically_reduced(
    std::uint32_t n, std::uint32_t k, std::uint64_t cap = limits::kDefaultEnumerationCap) {
  if (n < 1 || k < 1) throw InputError("enumerate_cyclically_reduced requires n >= 1, k >= 1");
  const std::uint64_t count = reduced_word_count(n, k);
  if (count > cap) {
    throw ResourceError("enumerating C(" + std::to_string(n) + "," + std::to_string(k) +
                        ") scans " + std::to_string(count) + " words, above cap " +
                        std::to_string(cap));
  }
  std::vector<Word> out;
  for_each_reduced(n, k, [&](Word w) {
    if (is_cyclically_reduced(w)) out.push_back(std::move(w));
  });
  return out;
}

// ---------------------------------------------------------------------------
// Relator splitting and density thresholds

struct RelatorPieces {
  Word x, y, z;
};

// Piece lengths (|r_x|, |r_y|, |r_z|) for a relator of length k >= 3.
inline std::tuple<std::size_t, std::size_t, std::size_t> piece_lengths(std::size_t k) {
  switch (k % 3) {
    case 0: return {k / 3, k / 3, k / 3};
    case 1: return {(k - 1) / 3, (k - 1) / 3, (k + 2) / 3};
    default: return {(k + 1) / 3, (k + 1) / 3, (k - 2) / 3};
  }
}

inline RelatorPieces split_relator(const Word& r, std::size_t k) {
  if (k < 3) throw InputError("split_relator requires k >= 3");
  if (r.size() != k) {
    throw InputError("split_relator: relator length " + std::to_string(r.size()) +
                     " != k = " + std::to_string(k));
  }
  auto [lx, ly, lz] = piece_lengths(k);
  return RelatorPieces{r.subword(0, lx), r.subword(lx, ly), r.subword(lx + ly, lz)};
}

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den) {
    const std::int64_t g = std::gcd(num, den);
    return Rational{num / g, den / g};
  }
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// d_k = (k + (-k mod 3)) / 3k.
inline Rational critical_density(std::int64_t k) {
  if (k < 3) throw InputError("critical_density requires k >= 3");
  const std::int64_t neg_mod = ((-k) % 3 + 3) % 3;
  return Rational::make(k + neg_mod, 3 * k);
}

// ---------------------------------------------------------------------------
// Text format: tokens g<i> (a_i) and G<i> (a_i^-1), whitespace separated.

namespace detail {

inline Letter parse_letter_token(std::string_view tok, std::size_t pos_hint) {
  auto fail = [&](const std::string& why) -> Letter {
    throw InputError("bad letter token '" + std::string(tok) + "' at " +
                     std::to_string(pos_hint) + ": " + why);
  };
  if (tok.size() < 2 || (tok[0] != 'g' && tok[0] != 'G')) return fail("expected g<i> or G<i>");
  std::uint64_t idx = 0;
  for (std::size_t i = 1; i < tok.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return fail("non-digit index");
    idx = idx * 10 + static_cast<std::uint64_t>(tok[i] - '0');
    if (idx > std::numeric_limits<std::uint32_t>::max()) return fail("index too large");
  }
  if (idx < 1) return fail("generator index must be >= 1");
  return Letter{static_cast<std::uint32_t>(idx), static_cast<std::int8_t>(tok[0] == 'g' ? 1 : -1)};
}

}  // namespace detail

// Parses a word in text format without reducing it.
inline Word parse_word(std::string_view text) {
  std::vector<Letter> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    out.push_back(detail::parse_letter_token(text.substr(i, j - i), i));
    i = j;
  }
  return Word::raw(std::move(out));
}

inline std::string to_string(Letter l) {
  return (l.sign > 0 ? "g" : "G") + std::to_string(l.generator);
}

inline std::string to_string(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += to_string(w[i]);
  }
  return s;
}

// Space-free form used as a graph vertex label, e.g. "g1g2G1".
inline std::string to_label(const Word& w) {
  std::string s;
  for (auto l : w) s += to_string(l);
  return s;
}

// Inverse of to_label. Tokens are delimited by the g/G markers.
inline Word parse_label(std::string_view label) {
  std::vector<Letter> out;
  std::size_t i = 0;
  while (i < label.size()) {
    std::size_t j = i + 1;
    while (j < label.size() && std::isdigit(static_cast<unsigned char>(label[j]))) ++j;
    out.push_back(detail::parse_letter_token(label.substr(i, j - i), i));
    i = j;
  }
  return Word::raw(std::move(out));
}

}  // namespace spectral_t

#pragma once

/**
 * @file words.hpp
 * @brief Digit alphabets, finite words and eventually periodic digit sequences.
 *
 * Sequences are indexed from 0 in code; x.at(0) is the first digit x_1.
 */

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace univoque {

enum class ErrorKind {
  OutOfRange,
  NotAdmissible,
  PrecisionExhausted,
  NotInXiRange,
  NotGenerating,
  BoundsInverted,
  ParseError,
  NotPrimitive,
};

inline const char* error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::NotInXiRange: return "NotInXiRange";
    case ErrorKind::NotGenerating: return "NotGenerating";
    case ErrorKind::BoundsInverted: return "BoundsInverted";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

using Digit = int;
using Word = std::vector<Digit>;

/// Digit set {0, ..., M}.
class Alphabet {
 public:
  explicit Alphabet(int max_digit) : max_digit_(max_digit) {
    if (max_digit < 1) throw Error(ErrorKind::OutOfRange, "alphabet needs M >= 1");
  }
  int max_digit() const noexcept { return max_digit_; }
  int size() const noexcept { return max_digit_ + 1; }
  /// k with M = 2k or M = 2k + 1.
  int half() const noexcept { return max_digit_ / 2; }
  bool even() const noexcept { return max_digit_ % 2 == 0; }
  Digit reflect(Digit d) const noexcept { return max_digit_ - d; }
  bool contains(Digit d) const noexcept { return d >= 0 && d <= max_digit_; }
  bool operator==(const Alphabet&) const = default;

 private:
  int max_digit_;
};

// ---------------------------------------------------------------- words

inline std::strong_ordering word_cmp(std::span<const Digit> a, std::span<const Digit> b) {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

inline Word reflect(std::span<const Digit> w, Alphabet alphabet) {
  Word out(w.size());
  std::transform(w.begin(), w.end(), out.begin(),
                 [&](Digit d) { return alphabet.reflect(d); });
  return out;
}

/// w⁺: last digit plus one.
inline Word incremented(std::span<const Digit> w, Alphabet alphabet) {
  if (w.empty() || w.back() >= alphabet.max_digit())
    throw Error(ErrorKind::OutOfRange, "cannot increment last digit");
  Word out(w.begin(), w.end());
  ++out.back();
  return out;
}

/// w⁻: last digit minus one.
inline Word decremented(std::span<const Digit> w) {
  if (w.empty() || w.back() <= 0)
    throw Error(ErrorKind::OutOfRange, "cannot decrement last digit");
  Word out(w.begin(), w.end());
  --out.back();
  return out;
}

inline Word concat(std::span<const Digit> a, std::span<const Digit> b) {
  Word out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Word repeat(std::span<const Digit> w, std::size_t times) {
  Word out;
  out.reserve(w.size() * times);
  for (std::size_t i = 0; i < times; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

inline void validate(std::span<const Digit> w, Alphabet alphabet) {
  for (Digit d : w)
    if (!alphabet.contains(d))
      throw Error(ErrorKind::OutOfRange, "digit " + std::to_string(d) + " outside alphabet");
}

// ---------------------------------------------------------------- sequences

/// Eventually periodic sequence u v^∞, kept in canonical form: v primitive and
/// u as short as possible. Canonical forms are equal iff the sequences are.
class DigitSeq {
 public:
  DigitSeq(Word preperiod, Word period) : pre_(std::move(preperiod)), per_(std::move(period)) {
    if (per_.empty()) throw Error(ErrorKind::OutOfRange, "period must be nonempty");
    canonicalize();
  }

  static DigitSeq periodic(Word period) { return DigitSeq({}, std::move(period)); }
  static DigitSeq constant(Digit d) { return DigitSeq({}, Word{d}); }

  const Word& preperiod() const noexcept { return pre_; }
  const Word& period() const noexcept { return per_; }
  std::size_t pre_length() const noexcept { return pre_.size(); }
  std::size_t period_length() const noexcept { return per_.size(); }
  /// Number of distinct shifts σ^0 … σ^{p+m-1}.
  std::size_t orbit_size() const noexcept { return pre_.size() + per_.size(); }

  Digit at(std::size_t i) const noexcept {
    if (i < pre_.size()) return pre_[i];
    return per_[(i - pre_.size()) % per_.size()];
  }

  Word prefix(std::size_t n) const {
    Word out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = at(i);
    return out;
  }

  DigitSeq shifted(std::size_t n) const {
    if (n <= pre_.size()) return DigitSeq(Word(pre_.begin() + static_cast<std::ptrdiff_t>(n), pre_.end()), per_);
    std::size_t r = (n - pre_.size()) % per_.size();
    Word rotated(per_.begin() + static_cast<std::ptrdiff_t>(r), per_.end());
    rotated.insert(rotated.end(), per_.begin(), per_.begin() + static_cast<std::ptrdiff_t>(r));
    return DigitSeq({}, std::move(rotated));
  }

  bool is_purely_periodic() const noexcept { return pre_.empty(); }
  bool ends_in(Digit d) const noexcept { return per_.size() == 1 && per_[0] == d; }

  bool operator==(const DigitSeq&) const = default;

 private:
  void canonicalize() {
    const std::size_t m = per_.size();
    for (std::size_t d = 1; d < m; ++d) {
      if (m % d != 0) continue;
      bool ok = true;
      for (std::size_t i = d; i < m && ok; ++i) ok = per_[i] == per_[i - d];
      if (ok) {
        per_.resize(d);
        break;
      }
    }
    while (!pre_.empty() && pre_.back() == per_.back()) {
      std::rotate(per_.rbegin(), per_.rbegin() + 1, per_.rend());
      pre_.pop_back();
    }
  }

  Word pre_;
  Word per_;
};

/// Digits past this index cannot change the comparison of x and y.
inline std::size_t comparison_horizon(const DigitSeq& x, const DigitSeq& y) {
  return std::max(x.pre_length(), y.pre_length()) +
         std::lcm(x.period_length(), y.period_length());
}

inline std::strong_ordering lex_cmp(const DigitSeq& x, const DigitSeq& y) {
  const std::size_t horizon = comparison_horizon(x, y);
  for (std::size_t i = 0; i < horizon; ++i) {
    if (auto c = x.at(i) <=> y.at(i); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

inline std::strong_ordering operator<=>(const DigitSeq& x, const DigitSeq& y) {
  return lex_cmp(x, y);
}

/// Compares the finite word w with the first |w| digits of s starting at offset.
inline std::strong_ordering compare_with_prefix(std::span<const Digit> w, const DigitSeq& s,
                                                std::size_t offset = 0) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (auto c = w[i] <=> s.at(offset + i); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

inline DigitSeq reflect(const DigitSeq& s, Alphabet alphabet) {
  return DigitSeq(reflect(s.preperiod(), alphabet), reflect(s.period(), alphabet));
}

inline void validate(const DigitSeq& s, Alphabet alphabet) {
  validate(s.preperiod(), alphabet);
  validate(s.period(), alphabet);
}

/// Thue–Morse τ_i: parity of the binary digit sum of i.
inline int thue_morse(std::uint64_t i) noexcept { return std::popcount(i) & 1; }

// ---------------------------------------------------------------- text form
//
// Words print as bare digits when M <= 9 and comma separated otherwise; the
// empty word prints as "ε". Sequences print as pre(per), e.g. 5(43).

namespace detail {

inline Word parse_digits(std::string_view text, Alphabet alphabet) {
  Word out;
  if (text.empty() || text == "ε") return out;
  const bool separated = alphabet.max_digit() > 9 || text.find(',') != std::string_view::npos;
  if (!separated) {
    for (char c : text) {
      if (c < '0' || c > '9') throw Error(ErrorKind::ParseError, "bad digit '" + std::string(1, c) + "'");
      out.push_back(c - '0');
    }
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find(',', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view token = text.substr(start, end - start);
      if (token.empty() || token.size() > 9 ||
          !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw Error(ErrorKind::ParseError, "bad digit token '" + std::string(token) + "'");
      out.push_back(std::stoi(std::string(token)));
      start = end + 1;
    }
  }
  validate(out, alphabet);
  return out;
}

}  // namespace detail

inline Word parse_word(std::string_view text, Alphabet alphabet) {
  return detail::parse_digits(text, alphabet);
}

inline std::string format_word(std::span<const Digit> w, Alphabet alphabet) {
  if (w.empty()) return "ε";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (alphabet.max_digit() > 9 && i > 0) out += ',';
    out += std::to_string(w[i]);
  }
  return out;
}

inline DigitSeq parse_seq(std::string_view text, Alphabet alphabet) {
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.empty() || text.back() != ')')
    throw Error(ErrorKind::ParseError, "sequence must look like pre(per)");
  std::string_view pre = text.substr(0, open);
  if (!pre.empty() && pre.back() == ',') pre.remove_suffix(1);
  Word per = detail::parse_digits(text.substr(open + 1, text.size() - open - 2), alphabet);
  if (per.empty()) throw Error(ErrorKind::ParseError, "empty period");
  return DigitSeq(detail::parse_digits(pre, alphabet), std::move(per));
}

inline std::string format_seq(const DigitSeq& s, Alphabet alphabet) {
  std::string pre = s.preperiod().empty() ? "" : format_word(s.preperiod(), alphabet);
  return pre + "(" + format_word(s.period(), alphabet) + ")";
}

inline std::ostream& operator<<(std::ostream& os, const DigitSeq& s) {
  Digit top = 0;
  for (Digit d : s.preperiod()) top = std::max(top, d);
  for (Digit d : s.period()) top = std::max(top, d);
  return os << format_seq(s, Alphabet(std::max(1, top)));
}

}  // namespace univoque

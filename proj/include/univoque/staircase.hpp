#pragma once

/**
 * @file staircase.hpp
 * @brief Guaranteed brackets for H(q) at arbitrary bases, and plot data for
 * the devil's staircase q ↦ H(q).
 *
 * H is nondecreasing, and V̂ grows with its upper bound. For α(q) not known
 * to be eventually periodic, the shifts bounded by α_1…α_n 0^∞ and
 * α_1…α_n M^∞ sandwich V̂_q; plateau endpoints with known entropy tighten
 * the bracket further.
 */

#include <future>
#include <span>

#include "univoque/plateaus.hpp"

namespace univoque {

namespace detail {

inline EntropyResult entropy_or_zero(const DigitSeq& upper, Alphabet alphabet) {
  try {
    return entropy(ShiftSpec::of_expansion(upper, alphabet));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BoundsInverted) throw;
    EntropyResult r = make_entropy(0, 0, alphabet, EntropyMethod::Spectral);
    r.empty_language = true;
    return r;
  }
}

}  // namespace detail

/// Interval containing h(V̂_q) = h(Û_q), in natural log; n ≥ 2 digits of α(q).
inline EntropyResult entropy_brackets(const Base& q, Alphabet alphabet, std::size_t n,
                                      std::span<const PlateauInterval> catalog = {}) {
  if (n < 2) throw Error(ErrorKind::OutOfRange, "n must be at least 2");
  const int M = alphabet.max_digit();
  if (q <= Rational(1) || q > Rational(M + 1)) throw Error(ErrorKind::OutOfRange, "q must lie in (1, M+1]");
  const double ln_full = std::log(static_cast<double>(alphabet.size()));
  auto finish = [&](double lo, double hi, EntropyMethod method) {
    EntropyResult r = make_entropy(lo, std::max(lo, hi), alphabet, method);
    r.n_used = n;
    return r;
  };
  if (q == Rational(M + 1)) return finish(ln_full, ln_full, EntropyMethod::Spectral);
  const RealApprox qc = ConstantCatalog::shared().critical(alphabet).bracket;
  if (q <= qc.lo) return finish(0, 0, EntropyMethod::Spectral);

  if (auto exact = exact_expansion(q, alphabet, std::max<std::size_t>(64, 2 * n))) {
    EntropyResult r = entropy(ShiftSpec::of_expansion(*exact, alphabet));
    return finish(r.h_lo, r.h_hi, EntropyMethod::Spectral);
  }

  Word a = quasi_greedy(q, alphabet, n);
  double lo = detail::entropy_or_zero(DigitSeq(a, {0}), alphabet).h_lo;
  double hi = detail::entropy_or_zero(DigitSeq(a, {M}), alphabet).h_hi;
  hi = std::min(hi, log_big(count_prefix_admissible(a, reflect(a, alphabet), alphabet, n)) / static_cast<double>(n));
  if (q < qc.hi) lo = 0;
  for (const auto& p : catalog) {
    const bool above_left = q >= p.p_left;
    const bool below_right = q <= p.p_right;
    if (above_left) lo = std::max(lo, p.entropy.h_lo);
    if (below_right) hi = std::min(hi, p.entropy.h_hi);
  }
  return finish(lo, hi, EntropyMethod::Bracket);
}

struct StaircaseRow {
  Base q;
  bool injected = false;  // a plateau endpoint, not a grid point
  EntropyResult h;
  std::optional<Word> plateau;  // generator of a catalog plateau containing q
};

/// Uniform grid of `samples` points on [q_lo, q_hi] plus the endpoints of the
/// catalog plateaus inside it, sorted by q.
inline std::vector<StaircaseRow> staircase(Alphabet alphabet, const Rational& q_lo, const Rational& q_hi,
                                           std::size_t samples, std::size_t n,
                                           std::span<const PlateauInterval> catalog) {
  if (!(q_lo < q_hi)) throw Error(ErrorKind::OutOfRange, "need q_lo < q_hi");
  if (q_lo <= 1 || q_hi > alphabet.max_digit() + 1) throw Error(ErrorKind::OutOfRange, "range must lie in (1, M+1]");
  if (samples < 2) throw Error(ErrorKind::OutOfRange, "need at least two samples");
  std::vector<StaircaseRow> rows;
  for (std::size_t i = 0; i < samples; ++i) {
    Rational t = make_rational(BigInt(static_cast<unsigned long>(i)), BigInt(static_cast<unsigned long>(samples - 1)));
    rows.push_back({Base::rational(q_lo + (q_hi - q_lo) * t), false, {}, std::nullopt});
  }
  for (const auto& p : catalog)
    for (const Base* end : {&p.p_left, &p.p_right})
      if (*end >= q_lo && *end <= q_hi) rows.push_back({*end, true, {}, std::nullopt});
  std::stable_sort(rows.begin(), rows.end(), [](const StaircaseRow& x, const StaircaseRow& y) { return x.q < y.q; });

  const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < rows.size(); i += workers) {
        rows[i].h = entropy_brackets(rows[i].q, alphabet, n, catalog);
        for (const auto& p : catalog)
          if (rows[i].q >= p.p_left && rows[i].q <= p.p_right) rows[i].plateau = p.generator;
      }
    }));
  }
  for (auto& j : jobs) j.get();
  return rows;
}

}  // namespace univoque

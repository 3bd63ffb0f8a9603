#pragma once

/**
 * @file subshift.hpp
 * @brief Deterministic presentations of the lexicographic shifts V̂_q, 𝐖_q, Û_q;
 * word counts, topological entropy and transitivity.
 *
 * A word read so far leaves a set of live constraints: positions whose tail
 * still agrees with the upper (resp. lower) bound. A constraint is stored as
 * the index t of the remaining bound σ^t(bound); indices past the preperiod
 * wrap with the period, so the state space is finite. The presentation is
 * trimmed to states with an admissible infinite future, minimized, and then
 * describes B_n exactly.
 *
 * In the strict modes an infinite run is admissible only if no constraint
 * agrees with its bound forever. Such a run ends in one simple cycle of the
 * state graph whose states hold a constraint equal to the cycle's label
 * sequence; cycles inside larger components always leave room to escape,
 * because they carry uncountably many runs and the bad ones are countable.
 */

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "univoque/words.hpp"
#include "univoque/polynomial.hpp"

namespace univoque {

enum class ShiftMode { V, W, U };

inline const char* mode_name(ShiftMode m) {
  switch (m) {
    case ShiftMode::V: return "V";
    case ShiftMode::W: return "W";
    case ShiftMode::U: return "U";
  }
  return "?";
}

/// mode V: lower ⪯ σ^n x ⪯ upper (n ≥ 0); W: strict on both sides (n ≥ 0);
/// U: σ^n x ≺ upper if x_n < M and σ^n x ≻ lower if x_n > 0 (n ≥ 1).
struct ShiftSpec {
  DigitSeq upper;
  DigitSeq lower;
  Alphabet alphabet;
  ShiftMode mode;

  static ShiftSpec of_expansion(const DigitSeq& alpha, Alphabet alphabet,
                                ShiftMode mode = ShiftMode::V) {
    return {alpha, reflect(alpha, alphabet), alphabet, mode};
  }
};

namespace detail {

/// Live constraint indices into the upper and lower bounds, sorted.
struct ConstraintState {
  std::vector<int> upper;
  std::vector<int> lower;
  auto operator<=>(const ConstraintState&) const = default;
};

/// Successor of `s` on digit d, or false if d violates a constraint.
/// `digit_of(bound, t)` and `next_of(bound, t)` describe the bounds.
template <class DigitOf, class NextOf>
bool step_constraints(const ConstraintState& s, Digit d, ShiftMode mode, int max_digit,
                      DigitOf digit_of, NextOf next_of, ConstraintState& out) {
  out.upper.clear();
  out.lower.clear();
  for (int t : s.upper) {
    Digit c = digit_of(0, t);
    if (d > c) return false;
    if (d == c) {
      int nt = next_of(0, t);
      if (nt >= 0) out.upper.push_back(nt);
    }
  }
  for (int t : s.lower) {
    Digit c = digit_of(1, t);
    if (d < c) return false;
    if (d == c) {
      int nt = next_of(1, t);
      if (nt >= 0) out.lower.push_back(nt);
    }
  }
  if (mode == ShiftMode::U) {
    if (d < max_digit) out.upper.push_back(0);
    if (d > 0) out.lower.push_back(0);
  } else {
    out.upper.push_back(0);
    out.lower.push_back(0);
  }
  for (auto* v : {&out.upper, &out.lower}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  return true;
}

inline ConstraintState initial_constraints(ShiftMode mode) {
  if (mode == ShiftMode::U) return {};
  return {{0}, {0}};
}

/// Strongly connected components (iterative Tarjan); returns component id per node.
inline std::vector<int> strong_components(const std::vector<std::vector<int>>& adj, int& count) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<bool> on_stack(n, false);
  int next_index = 0;
  count = 0;
  struct Frame {
    int node;
    std::size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.edge < adj[f.node].size()) {
        int w = adj[f.node][f.edge++];
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
      } else {
        int v = f.node;
        call.pop_back();
        if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
        if (low[v] == index[v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = count;
            if (w == v) break;
          }
          ++count;
        }
      }
    }
  }
  return comp;
}

}  // namespace detail

/// Minimal deterministic automaton for B(X): every state is reachable from the
/// start and has an admissible infinite future.
class MatchAutomaton {
 public:
  static MatchAutomaton build(const ShiftSpec& spec);

  Alphabet alphabet() const noexcept { return alphabet_; }
  ShiftMode mode() const noexcept { return mode_; }
  bool empty() const noexcept { return delta_.empty(); }
  std::size_t state_count() const noexcept { return delta_.size(); }
  /// Start state; only meaningful when !empty().
  int start() const noexcept { return 0; }
  /// Target of state on digit d, or −1.
  int next(int state, Digit d) const noexcept {
    return delta_[static_cast<std::size_t>(state)][static_cast<std::size_t>(d)];
  }
  /// Number of raw constraint states explored before trimming.
  std::size_t explored_states() const noexcept { return explored_; }

  const std::vector<int>& component() const noexcept { return comp_; }
  int component_count() const noexcept { return comp_count_; }
  /// Components containing a cycle.
  bool cyclic(int component) const { return cyclic_[static_cast<std::size_t>(component)]; }
  /// States lying on a bi-infinite path.
  bool essential(int state) const { return essential_[static_cast<std::size_t>(state)]; }

  std::vector<std::vector<int>> successors() const {
    std::vector<std::vector<int>> adj(delta_.size());
    for (std::size_t s = 0; s < delta_.size(); ++s)
      for (int t : delta_[s])
        if (t >= 0) adj[s].push_back(t);
    return adj;
  }

 private:
  void finish();

  Alphabet alphabet_{1};
  ShiftMode mode_ = ShiftMode::V;
  std::vector<std::vector<int>> delta_;
  std::vector<int> comp_;
  std::vector<bool> cyclic_;
  std::vector<bool> essential_;
  int comp_count_ = 0;
  std::size_t explored_ = 0;
};

inline MatchAutomaton MatchAutomaton::build(const ShiftSpec& spec) {
  validate(spec.upper, spec.alphabet);
  validate(spec.lower, spec.alphabet);
  if (lex_cmp(spec.upper, spec.lower) < 0)
    throw Error(ErrorKind::BoundsInverted, "upper bound lies below lower bound");
  const int M = spec.alphabet.max_digit();
  const DigitSeq* bounds[2] = {&spec.upper, &spec.lower};
  auto digit_of = [&](int b, int t) { return bounds[b]->at(static_cast<std::size_t>(t)); };
  auto next_of = [&](int b, int t) {
    const DigitSeq& s = *bounds[b];
    int nt = t + 1;
    return nt < static_cast<int>(s.orbit_size()) ? nt : static_cast<int>(s.pre_length());
  };

  // Explore constraint states.
  std::map<detail::ConstraintState, int> ids;
  std::vector<detail::ConstraintState> states;
  std::vector<std::vector<int>> raw;
  states.push_back(detail::initial_constraints(spec.mode));
  ids.emplace(states[0], 0);
  detail::ConstraintState succ;
  for (std::size_t i = 0; i < states.size(); ++i) {
    std::vector<int> row(static_cast<std::size_t>(M + 1), -1);
    for (Digit d = 0; d <= M; ++d) {
      if (!detail::step_constraints(states[i], d, spec.mode, M, digit_of, next_of, succ)) continue;
      auto [it, inserted] = ids.emplace(succ, static_cast<int>(states.size()));
      if (inserted) states.push_back(succ);
      row[static_cast<std::size_t>(d)] = it->second;
    }
    raw.push_back(std::move(row));
  }
  const std::size_t n = states.size();

  // Live states: some infinite run exists.
  std::vector<std::vector<int>> preds(n);
  std::vector<int> out_degree(n, 0);
  for (std::size_t s = 0; s < n; ++s)
    for (int t : raw[s])
      if (t >= 0) {
        preds[static_cast<std::size_t>(t)].push_back(static_cast<int>(s));
        ++out_degree[s];
      }
  std::vector<bool> live(n, true);
  std::vector<int> queue;
  for (std::size_t s = 0; s < n; ++s)
    if (out_degree[s] == 0) {
      live[s] = false;
      queue.push_back(static_cast<int>(s));
    }
  while (!queue.empty()) {
    int s = queue.back();
    queue.pop_back();
    for (int p : preds[static_cast<std::size_t>(s)]) {
      if (live[static_cast<std::size_t>(p)] && --out_degree[static_cast<std::size_t>(p)] == 0) {
        live[static_cast<std::size_t>(p)] = false;
        queue.push_back(p);
      }
    }
  }

  // Good states: an admissible infinite run exists.
  std::vector<std::vector<int>> live_adj(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (!live[s]) continue;
    for (int t : raw[s])
      if (t >= 0 && live[static_cast<std::size_t>(t)]) live_adj[s].push_back(t);
  }
  int comp_count = 0;
  std::vector<int> comp = detail::strong_components(live_adj, comp_count);
  std::vector<int> nodes(static_cast<std::size_t>(comp_count), 0);
  std::vector<int> inner_edges(static_cast<std::size_t>(comp_count), 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (!live[s]) continue;
    ++nodes[static_cast<std::size_t>(comp[s])];
    for (int t : live_adj[s])
      if (comp[static_cast<std::size_t>(t)] == comp[s]) ++inner_edges[static_cast<std::size_t>(comp[s])];
  }
  std::vector<bool> good_comp(static_cast<std::size_t>(comp_count), false);
  for (int c = 0; c < comp_count; ++c) {
    const auto cu = static_cast<std::size_t>(c);
    if (inner_edges[cu] == 0) continue;
    good_comp[cu] = spec.mode == ShiftMode::V || inner_edges[cu] > nodes[cu];
  }
  if (spec.mode != ShiftMode::V) {
    for (std::size_t s = 0; s < n; ++s) {
      if (!live[s]) continue;
      const auto c = static_cast<std::size_t>(comp[s]);
      if (inner_edges[c] == 0 || inner_edges[c] != nodes[c] || good_comp[c]) continue;
      // Simple cycle: inspect it once, from its smallest state.
      bool smallest = true;
      for (std::size_t r = 0; r < s && smallest; ++r) smallest = !(live[r] && comp[r] == comp[s]);
      if (!smallest) continue;
      std::vector<int> cycle{static_cast<int>(s)};
      Word labels;
      int cur = static_cast<int>(s);
      do {
        int nxt = -1;
        for (Digit d = 0; d <= M; ++d) {
          int t = raw[static_cast<std::size_t>(cur)][static_cast<std::size_t>(d)];
          if (t >= 0 && live[static_cast<std::size_t>(t)] &&
              comp[static_cast<std::size_t>(t)] == comp[s]) {
            labels.push_back(d);
            nxt = t;
            break;
          }
        }
        cur = nxt;
        if (cur != static_cast<int>(s)) cycle.push_back(cur);
      } while (cur != static_cast<int>(s));
      bool clean = true;
      for (std::size_t j = 0; j < cycle.size() && clean; ++j) {
        Word rotated(labels.begin() + static_cast<std::ptrdiff_t>(j), labels.end());
        rotated.insert(rotated.end(), labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(j));
        DigitSeq ahead = DigitSeq::periodic(rotated);
        const auto& st = states[static_cast<std::size_t>(cycle[j])];
        for (int t : st.upper)
          if (spec.upper.shifted(static_cast<std::size_t>(t)) == ahead) clean = false;
        for (int t : st.lower)
          if (spec.lower.shifted(static_cast<std::size_t>(t)) == ahead) clean = false;
      }
      good_comp[c] = clean;
    }
  }
  std::vector<bool> good(n, false);
  queue.clear();
  for (std::size_t s = 0; s < n; ++s)
    if (live[s] && good_comp[static_cast<std::size_t>(comp[s])]) {
      good[s] = true;
      queue.push_back(static_cast<int>(s));
    }
  while (!queue.empty()) {
    int s = queue.back();
    queue.pop_back();
    for (int p : preds[static_cast<std::size_t>(s)]) {
      if (live[static_cast<std::size_t>(p)] && !good[static_cast<std::size_t>(p)]) {
        good[static_cast<std::size_t>(p)] = true;
        queue.push_back(p);
      }
    }
  }

  MatchAutomaton a;
  a.alphabet_ = spec.alphabet;
  a.mode_ = spec.mode;
  a.explored_ = n;
  if (!good[0]) return a;

  // Moore minimization over good states reachable from the start.
  std::vector<int> order;
  std::vector<int> position(n, -1);
  order.push_back(0);
  position[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int t : raw[static_cast<std::size_t>(order[i])]) {
      if (t >= 0 && good[static_cast<std::size_t>(t)] && position[static_cast<std::size_t>(t)] < 0) {
        position[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  }
  const std::size_t g = order.size();
  std::vector<int> block(g, 0);
  std::size_t blocks = 1;
  while (true) {
    std::map<std::vector<int>, int> signature_ids;
    std::vector<int> refined(g);
    for (std::size_t i = 0; i < g; ++i) {
      std::vector<int> sig{block[i]};
      for (int t : raw[static_cast<std::size_t>(order[i])]) {
        int p = (t >= 0 && good[static_cast<std::size_t>(t)]) ? position[static_cast<std::size_t>(t)] : -1;
        sig.push_back(p < 0 ? -1 : block[static_cast<std::size_t>(p)]);
      }
      auto [it, inserted] = signature_ids.emplace(std::move(sig), static_cast<int>(signature_ids.size()));
      refined[i] = it->second;
    }
    const std::size_t count = signature_ids.size();
    block = std::move(refined);
    if (count == blocks) break;
    blocks = count;
  }
  // Renumber blocks in first-visit order so the start is state 0.
  std::vector<int> rename(blocks, -1);
  int next_id = 0;
  for (std::size_t i = 0; i < g; ++i)
    if (rename[static_cast<std::size_t>(block[i])] < 0) rename[static_cast<std::size_t>(block[i])] = next_id++;
  a.delta_.assign(blocks, std::vector<int>(static_cast<std::size_t>(M + 1), -1));
  for (std::size_t i = 0; i < g; ++i) {
    auto& row = a.delta_[static_cast<std::size_t>(rename[static_cast<std::size_t>(block[i])])];
    for (Digit d = 0; d <= M; ++d) {
      int t = raw[static_cast<std::size_t>(order[i])][static_cast<std::size_t>(d)];
      if (t >= 0 && good[static_cast<std::size_t>(t)])
        row[static_cast<std::size_t>(d)] =
            rename[static_cast<std::size_t>(block[static_cast<std::size_t>(position[static_cast<std::size_t>(t)])])];
    }
  }
  a.finish();
  return a;
}

inline void MatchAutomaton::finish() {
  auto adj = successors();
  comp_ = detail::strong_components(adj, comp_count_);
  cyclic_.assign(static_cast<std::size_t>(comp_count_), false);
  for (std::size_t s = 0; s < adj.size(); ++s)
    for (int t : adj[s])
      if (comp_[static_cast<std::size_t>(t)] == comp_[s]) cyclic_[static_cast<std::size_t>(comp_[s])] = true;
  // Every state reaches a cycle, so essential = reachable from a cycle.
  essential_.assign(adj.size(), false);
  std::vector<int> queue;
  for (std::size_t s = 0; s < adj.size(); ++s)
    if (cyclic_[static_cast<std::size_t>(comp_[s])]) {
      essential_[s] = true;
      queue.push_back(static_cast<int>(s));
    }
  while (!queue.empty()) {
    int s = queue.back();
    queue.pop_back();
    for (int t : adj[static_cast<std::size_t>(s)])
      if (!essential_[static_cast<std::size_t>(t)]) {
        essential_[static_cast<std::size_t>(t)] = true;
        queue.push_back(t);
      }
  }
}

// ---------------------------------------------------------------- counting

/// #B_n, the number of admissible words of length n.
inline BigInt count_words(const MatchAutomaton& a, std::size_t n) {
  if (a.empty()) return 0;
  std::vector<BigInt> cur(a.state_count(), BigInt(0)), nxt(a.state_count());
  cur[0] = 1;
  const int M = a.alphabet().max_digit();
  for (std::size_t step = 0; step < n; ++step) {
    std::fill(nxt.begin(), nxt.end(), BigInt(0));
    for (std::size_t s = 0; s < cur.size(); ++s) {
      if (cur[s] == 0) continue;
      for (Digit d = 0; d <= M; ++d) {
        int t = a.next(static_cast<int>(s), d);
        if (t >= 0) nxt[static_cast<std::size_t>(t)] += cur[s];
      }
    }
    std::swap(cur, nxt);
  }
  BigInt total = 0;
  for (const auto& c : cur) total += c;
  return total;
}

/// Words of length n whose every suffix lies between the equally long prefixes
/// of `lower` and `upper`. This over-counts B_n of V̂ and is submultiplicative.
inline BigInt count_prefix_admissible(std::span<const Digit> upper, std::span<const Digit> lower,
                                      Alphabet alphabet, std::size_t n) {
  if (upper.size() < n || lower.size() < n)
    throw Error(ErrorKind::OutOfRange, "bound prefixes shorter than the word length");
  const int M = alphabet.max_digit();
  auto digit_of = [&](int b, int t) {
    return b == 0 ? upper[static_cast<std::size_t>(t)] : lower[static_cast<std::size_t>(t)];
  };
  // Index n is never read: a word of length n matches at most n digits.
  auto next_of = [&](int, int t) { return t + 1 < static_cast<int>(n) ? t + 1 : -1; };
  std::map<detail::ConstraintState, BigInt> layer{{detail::initial_constraints(ShiftMode::V), BigInt(1)}};
  detail::ConstraintState succ;
  for (std::size_t step = 0; step < n; ++step) {
    std::map<detail::ConstraintState, BigInt> next;
    for (const auto& [state, count] : layer)
      for (Digit d = 0; d <= M; ++d)
        if (detail::step_constraints(state, d, ShiftMode::V, M, digit_of, next_of, succ))
          next[succ] += count;
    layer = std::move(next);
  }
  BigInt total = 0;
  for (const auto& [state, count] : layer) total += count;
  return total;
}

inline double log_big(const BigInt& x) {
  if (x <= 0) return -INFINITY;
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

// ---------------------------------------------------------------- entropy

enum class EntropyMethod { Spectral, Bracket };

struct EntropyResult {
  double h_lo = 0;  // natural log
  double h_hi = 0;
  double norm_lo = 0;  // divided by ln(M+1)
  double norm_hi = 0;
  EntropyMethod method = EntropyMethod::Spectral;
  std::size_t n_used = 0;
  bool empty_language = false;

  double h_mid() const { return (h_lo + h_hi) / 2; }
  double norm_mid() const { return (norm_lo + norm_hi) / 2; }
};

inline EntropyResult make_entropy(double lo, double hi, Alphabet alphabet, EntropyMethod method) {
  const double ln_base = std::log(static_cast<double>(alphabet.size()));
  EntropyResult r;
  r.h_lo = lo;
  r.h_hi = hi;
  r.norm_lo = std::clamp(lo / ln_base, 0.0, 1.0);
  r.norm_hi = std::clamp(hi / ln_base, 0.0, 1.0);
  r.method = method;
  return r;
}

/// Perron root of one strongly connected component, bracketed by
/// Collatz–Wielandt bounds on A + I (primitive, same eigenvector).
inline std::pair<double, double> component_perron_root(const MatchAutomaton& a, int component,
                                                       double tol) {
  std::vector<int> members;
  for (std::size_t s = 0; s < a.state_count(); ++s)
    if (a.component()[s] == component) members.push_back(static_cast<int>(s));
  std::vector<int> local(a.state_count(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) local[static_cast<std::size_t>(members[i])] = static_cast<int>(i);
  std::vector<std::vector<int>> edges(members.size());
  const int M = a.alphabet().max_digit();
  for (std::size_t i = 0; i < members.size(); ++i)
    for (Digit d = 0; d <= M; ++d) {
      int t = a.next(members[i], d);
      if (t >= 0 && local[static_cast<std::size_t>(t)] >= 0) edges[i].push_back(local[static_cast<std::size_t>(t)]);
    }
  const std::size_t k = members.size();
  if (k == 1) {
    double c = static_cast<double>(edges[0].size());
    return {c, c};
  }
  std::vector<long double> x(k, 1.0L), y(k);
  long double lo = 0, hi = 0;
  for (int iter = 0; iter < 4'000'000; ++iter) {
    // y = (A + I) x with A_{ij} = edges i → j; x is a right eigenvector.
    for (std::size_t i = 0; i < k; ++i) {
      long double sum = x[i];
      for (int j : edges[i]) sum += x[static_cast<std::size_t>(j)];
      y[i] = sum;
    }
    lo = INFINITY;
    hi = 0;
    long double norm = 0;
    for (std::size_t i = 0; i < k; ++i) {
      long double r = y[i] / x[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      norm = std::max(norm, y[i]);
    }
    for (std::size_t i = 0; i < k; ++i) x[i] = y[i] / norm;
    if (hi - lo <= static_cast<long double>(tol) * (lo - 1)) break;
  }
  return {static_cast<double>(lo - 1), static_cast<double>(hi - 1)};
}

/// h = ln ρ, ρ the largest Perron root over cyclic components.
inline EntropyResult entropy(const MatchAutomaton& a, double tol = 1e-12) {
  if (a.empty()) {
    EntropyResult r = make_entropy(0, 0, a.alphabet(), EntropyMethod::Spectral);
    r.empty_language = true;
    return r;
  }
  double lo = 1, hi = 1;
  for (int c = 0; c < a.component_count(); ++c) {
    if (!a.cyclic(c)) continue;
    auto [l, h] = component_perron_root(a, c, tol);
    lo = std::max(lo, l);
    hi = std::max(hi, h);
  }
  return make_entropy(std::log(lo), std::log(hi), a.alphabet(), EntropyMethod::Spectral);
}

inline EntropyResult entropy(const ShiftSpec& spec, double tol = 1e-12) {
  return entropy(MatchAutomaton::build(spec), tol);
}

// ---------------------------------------------------------------- transitivity

/// True iff for all u, w ∈ B(X) some δ gives uδw ∈ B(X).
///
/// Every run eventually enters a bottom component; X is transitive iff from
/// each bottom component every word of B(X) can still be read.
inline bool is_transitive(const MatchAutomaton& a) {
  if (a.empty()) return false;
  const int M = a.alphabet().max_digit();
  const auto adj = a.successors();
  std::vector<bool> bottom(static_cast<std::size_t>(a.component_count()), true);
  for (std::size_t s = 0; s < adj.size(); ++s)
    for (int t : adj[s])
      if (a.component()[static_cast<std::size_t>(t)] != a.component()[s])
        bottom[static_cast<std::size_t>(a.component()[s])] = false;
  for (int c = 0; c < a.component_count(); ++c) {
    if (!bottom[static_cast<std::size_t>(c)]) continue;
    std::vector<int> members;
    for (std::size_t s = 0; s < adj.size(); ++s)
      if (a.component()[s] == c) members.push_back(static_cast<int>(s));
    // Pair (state of w from the start, states of w from the component).
    using Pair = std::pair<int, std::vector<int>>;
    std::set<Pair> seen;
    std::vector<Pair> work{{a.start(), members}};
    seen.insert(work.back());
    while (!work.empty()) {
      Pair cur = std::move(work.back());
      work.pop_back();
      for (Digit d = 0; d <= M; ++d) {
        int s = a.next(cur.first, d);
        if (s < 0) continue;
        std::vector<int> targets;
        for (int t : cur.second) {
          int u = a.next(t, d);
          if (u >= 0) targets.push_back(u);
        }
        if (targets.empty()) return false;
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        Pair p{s, std::move(targets)};
        if (seen.insert(p).second) work.push_back(std::move(p));
      }
    }
  }
  return true;
}

/// The single-component criterion: essential states form one strongly
/// connected component. Sufficient for transitivity; reported for comparison.
inline bool essential_part_strongly_connected(const MatchAutomaton& a) {
  if (a.empty()) return false;
  int found = -1;
  for (std::size_t s = 0; s < a.state_count(); ++s) {
    if (!a.essential(static_cast<int>(s))) continue;
    if (found < 0) found = a.component()[s];
    else if (a.component()[s] != found) return false;
  }
  return found >= 0;
}

}  // namespace univoque

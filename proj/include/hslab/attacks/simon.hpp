#pragma once

// Simon's period finding, simulated exactly. One run of the circuit on
// f : (Z/2)^n -> labels yields y with probability
//   2^-2n * sum_z | sum_{x in f^-1(z)} (-1)^{x.y} |^2,
// which equals 2^-2n * WHT(C)(y) for the collision autocorrelation
// C(d) = #{(a, b) : f(a) = f(b), a xor b = d}.

#include <cmath>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hslab/attacks/gf2_basis.hpp"
#include "hslab/error.hpp"
#include "hslab/oracle.hpp"

namespace hslab {

inline constexpr unsigned kSimonMaxBits = 14;

using BitOracle = Oracle<std::uint64_t, std::uint64_t>;

namespace detail {
// In-place Walsh-Hadamard transform, unnormalized.
inline void walsh_hadamard(std::vector<std::int64_t>& a) {
  for (std::size_t h = 1; h < a.size(); h <<= 1)
    for (std::size_t i = 0; i < a.size(); i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        const auto u = a[j], v = a[j + h];
        a[j] = u + v;
        a[j + h] = u - v;
      }
}
}  // namespace detail

struct SimonDistribution {
  unsigned n = 0;
  std::vector<std::int64_t> weight;  // 2^2n * Pr[y]
  std::vector<double> prob;

  double total() const {
    double t = 0;
    for (double p : prob) t += p;
    return t;
  }
  // Mass on {y : y . s = 0}.
  double mass_orthogonal_to(std::uint64_t s) const {
    double t = 0;
    for (std::uint64_t y = 0; y < prob.size(); ++y)
      if (!Gf2Basis::dot(y, s)) t += prob[y];
    return t;
  }
};

// Queries f on all 2^n points.
inline SimonDistribution simon_distribution(unsigned n, const std::function<std::uint64_t(std::uint64_t)>& f) {
  if (n < 1 || n > kSimonMaxBits) throw BudgetError("simon_distribution: n must be in [1, 14]");
  const std::uint64_t size = std::uint64_t{1} << n;
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> buckets;
  for (std::uint64_t x = 0; x < size; ++x) buckets[f(x)].push_back(x);

  std::vector<std::int64_t> corr(size, 0), direct(size, 0);
  const auto wht_cost = static_cast<std::uint64_t>(n) * size;
  for (const auto& [label, xs] : buckets) {
    const std::uint64_t k = xs.size();
    if (k * k <= wht_cost) {
      for (auto a : xs)
        for (auto b : xs) ++corr[a ^ b];
    } else {
      // Large bucket: square its own transform.
      std::vector<std::int64_t> ind(size, 0);
      for (auto a : xs) ind[a] = 1;
      detail::walsh_hadamard(ind);
      for (std::uint64_t y = 0; y < size; ++y) direct[y] += ind[y] * ind[y];
    }
  }
  detail::walsh_hadamard(corr);
  SimonDistribution d;
  d.n = n;
  d.weight.resize(size);
  d.prob.resize(size);
  const double norm = std::ldexp(1.0, -2 * static_cast<int>(n));
  for (std::uint64_t y = 0; y < size; ++y) {
    d.weight[y] = corr[y] + direct[y];
    d.prob[y] = static_cast<double>(d.weight[y]) * norm;
  }
  return d;
}

inline SimonDistribution simon_distribution(unsigned n, const BitOracle& f) {
  return simon_distribution(n, [&f](std::uint64_t x) { return f(x); });
}

// Vose's alias method over nonnegative integer weights.
class AliasSampler {
 public:
  explicit AliasSampler(const std::vector<std::int64_t>& weights) : prob_(weights.size()), alias_(weights.size()) {
    const std::size_t k = weights.size();
    if (k == 0) throw UsageError("AliasSampler: no outcomes");
    long double total = 0;
    for (auto w : weights) {
      if (w < 0) throw UsageError("AliasSampler: negative weight");
      total += static_cast<long double>(w);
    }
    if (total <= 0) throw UsageError("AliasSampler: zero total weight");
    std::vector<long double> scaled(k);
    std::vector<std::size_t> small, large;
    for (std::size_t i = 0; i < k; ++i) {
      scaled[i] = static_cast<long double>(weights[i]) * static_cast<long double>(k) / total;
      (scaled[i] < 1 ? small : large).push_back(i);
    }
    while (!small.empty() && !large.empty()) {
      const auto s = small.back(), l = large.back();
      small.pop_back();
      prob_[s] = static_cast<double>(scaled[s]);
      alias_[s] = l;
      scaled[l] -= 1 - scaled[s];
      if (scaled[l] < 1) {
        large.pop_back();
        small.push_back(l);
      }
    }
    for (auto i : large) prob_[i] = 1.0, alias_[i] = i;
    for (auto i : small) prob_[i] = 1.0, alias_[i] = i;
  }

  std::uint64_t operator()(Rng& rng) const {
    const std::size_t i = rng.below(prob_.size());
    return rng.uniform() < prob_[i] ? i : alias_[i];
  }

 private:
  std::vector<double> prob_;
  std::vector<std::size_t> alias_;
};

struct SimonOptions {
  std::uint64_t samples_per_attempt = 0;  // 0: 4n + 8
  int attempts = 3;
};

struct SimonResult {
  std::optional<std::uint64_t> period;
  std::uint64_t samples = 0;  // circuit runs, i.e. quantum queries
  int attempts = 0;
  std::string status;  // "ok", "no period", "verification failed"
  // Basis of the vectors orthogonal to every sample of the last attempt when
  // that attempt stalled below rank n-1 (a hidden subgroup larger than {0, s}).
  std::vector<std::uint64_t> stalled_subgroup;
};

// Collects samples into a GF(2) basis until rank n-1, takes the unique nonzero
// vector orthogonal to all of them, and keeps it if `verify` accepts.
inline SimonResult simon_recover(unsigned n, const std::function<std::uint64_t(Rng&)>& sample,
                                 const std::function<bool(std::uint64_t)>& verify, Rng& rng, SimonOptions opt = {}) {
  const std::uint64_t budget = opt.samples_per_attempt ? opt.samples_per_attempt : 4 * n + 8;
  SimonResult res;
  res.status = "no period";
  for (int a = 0; a < opt.attempts; ++a) {
    ++res.attempts;
    Gf2Basis basis(n);
    std::uint64_t used = 0;
    while (basis.rank() < n - 1 && used < budget) {
      basis.insert(sample(rng));
      ++used;
    }
    res.samples += used;
    if (basis.rank() < n - 1) res.stalled_subgroup = basis.orthogonal_complement();
    if (basis.rank() != n - 1) continue;
    const auto comp = basis.orthogonal_complement();
    const std::uint64_t s = comp.front();
    if (verify(s)) {
      res.period = s;
      res.status = "ok";
      return res;
    }
    res.status = "verification failed";
  }
  return res;
}

// Classical check: f(x) = f(x xor s) on `points` random inputs.
inline bool verify_period(unsigned n, const std::function<std::uint64_t(std::uint64_t)>& f, std::uint64_t s, Rng& rng,
                          int points = 32) {
  if (s == 0) return false;
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  for (int i = 0; i < points; ++i) {
    const std::uint64_t x = rng.next() & mask;
    if (f(x) != f(x ^ s)) return false;
  }
  return true;
}

// Runs the whole pipeline on f with the exact distribution as sampler.
inline SimonResult simon_attack(unsigned n, const std::function<std::uint64_t(std::uint64_t)>& f, Rng& rng,
                                SimonOptions opt = {}) {
  const auto dist = simon_distribution(n, f);
  const AliasSampler sampler(dist.weight);
  return simon_recover(
      n, [&sampler](Rng& r) { return sampler(r); }, [&](std::uint64_t s) { return verify_period(n, f, s, rng); }, rng,
      opt);
}

struct CollisionDiagnostics {
  double rate_at_s = 0;           // Pr_x[f(x) = f(x xor s)]
  double max_unwanted_rate = 0;   // max over s' not in {0, s}
  std::uint64_t worst_unwanted = 0;
};

// Exhaustive over all pairs; n <= 12.
inline CollisionDiagnostics collision_diagnostics(unsigned n, const std::function<std::uint64_t(std::uint64_t)>& f,
                                                  std::uint64_t s) {
  if (n < 1 || n > 12) throw BudgetError("collision_diagnostics: n must be in [1, 12]");
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<std::uint64_t> val(size);
  for (std::uint64_t x = 0; x < size; ++x) val[x] = f(x);
  std::vector<std::uint64_t> count(size, 0);
  for (std::uint64_t a = 0; a < size; ++a)
    for (std::uint64_t b = 0; b < size; ++b)
      if (val[a] == val[b]) ++count[a ^ b];
  CollisionDiagnostics d;
  const double inv = 1.0 / static_cast<double>(size);
  d.rate_at_s = static_cast<double>(count[s & (size - 1)]) * inv;
  for (std::uint64_t t = 1; t < size; ++t) {
    if (t == s) continue;
    const double r = static_cast<double>(count[t]) * inv;
    if (d.worst_unwanted == 0 || r > d.max_unwanted_rate) {
      d.max_unwanted_rate = r;
      d.worst_unwanted = t;
    }
  }
  return d;
}

// Default acceptance threshold for unwanted collisions: 2^(-n/2).
inline double default_unwanted_threshold(unsigned n) { return std::exp2(-static_cast<double>(n) / 2); }

inline bool simon_promise_holds(const CollisionDiagnostics& d, double threshold) {
  return d.max_unwanted_rate <= threshold;
}

}  // namespace hslab

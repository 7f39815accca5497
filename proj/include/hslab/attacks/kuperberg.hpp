#pragma once

// A toy Kuperberg sieve on Z/2^n, simulated on labels. Each coset sample is
// the qubit (|0> + e^{2 pi i s y / N}|1>)/sqrt2 with a uniform public label y;
// the simulator keeps the phase (it knows s). Combining two samples yields
// label y_a + y_b or y_a - y_b with probability 1/2 each. A sample with label
// N/2 measures to s mod 2 deterministically. Bits are peeled one at a time by
// halving the instance: f'(x) = f(2x), g'(x) = g(2x - s0).

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <vector>

#include <json.hpp>

#include "hslab/error.hpp"
#include "hslab/instance.hpp"

namespace hslab {

inline constexpr unsigned kKuperbergMaxBits = 16;
inline constexpr std::uint64_t kKuperbergMaxBudget = std::uint64_t{1} << 24;

struct CosetSample {
  std::uint64_t label = 0;
};

// Issues coset samples for a pair on Z/2^m whose shift is known only here.
// Without a shift (wrong peeled bits) every measurement is a fair coin.
class CosetSimulator {
 public:
  CosetSimulator(unsigned m, std::optional<std::uint64_t> secret) : m_(m), secret_(secret) {
    if (m < 1 || m > 63) throw UsageError("CosetSimulator: m must be in [1, 63]");
  }

  unsigned bits() const { return m_; }
  std::uint64_t modulus() const { return std::uint64_t{1} << m_; }
  std::uint64_t issued() const { return issued_; }

  CosetSample sample(Rng& rng) {
    ++issued_;
    return {rng.below(modulus())};
  }

  struct Combined {
    CosetSample sample;
    bool minus = false;
  };

  // Label arithmetic only; the branch coin does not depend on s.
  Combined combine(const CosetSample& a, const CosetSample& b, Rng& rng) const {
    const std::uint64_t mask = modulus() - 1;
    const bool minus = rng.coin();
    return {{(minus ? a.label - b.label : a.label + b.label) & mask}, minus};
  }

  // 0 with probability cos^2(pi s y / N).
  int measure(const CosetSample& c, Rng& rng) const {
    if (!secret_) return rng.coin() ? 1 : 0;
    const std::uint64_t num = (*secret_ * c.label) & (modulus() - 1);
    if (num == 0) return 0;
    if (num == modulus() / 2) return 1;
    const double a = std::numbers::pi * static_cast<double>(num) / static_cast<double>(modulus());
    return rng.bernoulli(std::cos(a) * std::cos(a)) ? 0 : 1;
  }

 private:
  unsigned m_;
  std::optional<std::uint64_t> secret_;
  std::uint64_t issued_ = 0;
};

struct SieveResult {
  std::optional<int> bit;  // s mod 2
  std::uint64_t samples = 0;
};

// Zeroes the low m-1 bits in blocks of ceil(sqrt(m-1)), keeping only
// difference branches, until a label N/2 appears. Batches double on failure.
inline SieveResult sieve_low_bit(CosetSimulator& sim, std::uint64_t budget, Rng& rng) {
  const unsigned m = sim.bits();
  const std::uint64_t half = sim.modulus() / 2;
  SieveResult res;
  const std::uint64_t start = sim.issued();
  auto spent = [&] { return sim.issued() - start; };
  if (m == 1) {
    while (spent() < budget) {
      const auto c = sim.sample(rng);
      if (c.label == 1) {
        res.bit = sim.measure(c, rng);
        break;
      }
    }
    res.samples = spent();
    return res;
  }
  const unsigned low = m - 1;
  const unsigned block = static_cast<unsigned>(std::ceil(std::sqrt(static_cast<double>(low))));
  const unsigned stages = (low + block - 1) / block;
  std::uint64_t batch = (std::uint64_t{1} << block) << (2 * stages);
  while (spent() < budget) {
    const std::uint64_t take = std::min(batch, budget - spent());
    std::vector<CosetSample> pool;
    pool.reserve(take);
    for (std::uint64_t i = 0; i < take; ++i) pool.push_back(sim.sample(rng));
    for (unsigned st = 0; st < stages && !pool.empty(); ++st) {
      const unsigned lo = st * block;
      const unsigned hi = std::min(low, lo + block);
      const std::uint64_t field = ((std::uint64_t{1} << (hi - lo)) - 1) << lo;
      std::map<std::uint64_t, std::vector<CosetSample>> buckets;
      for (const auto& c : pool) buckets[c.label & field].push_back(c);
      std::vector<CosetSample> next;
      for (auto& [key, items] : buckets) {
        if (key == 0) {
          next.insert(next.end(), items.begin(), items.end());
          continue;
        }
        for (std::size_t i = 0; i + 1 < items.size(); i += 2) {
          const auto r = sim.combine(items[i], items[i + 1], rng);
          if (r.minus) next.push_back(r.sample);
        }
      }
      pool = std::move(next);
    }
    for (const auto& c : pool)
      if (c.label == half) {
        res.bit = sim.measure(c, rng);
        res.samples = spent();
        return res;
      }
    batch *= 2;
  }
  res.samples = spent();
  return res;
}

struct KuperbergResult {
  std::optional<std::uint64_t> shift;
  std::uint64_t samples = 0;            // coset samples = quantum queries
  std::uint64_t classical_queries = 0;  // final check
  std::vector<std::uint64_t> samples_per_bit;
  std::string status;
};

// Recovers s for g(x) = f(s + x) on Z/2^n. The instance secret is opened
// inside the simulator only; the sieve sees labels and outcomes.
inline KuperbergResult kuperberg_toy(const HSInstance<CyclicPow2Group>& inst, std::uint64_t budget, Rng& rng,
                                     int check = 24) {
  const unsigned n = inst.group().bits();
  if (n < 1 || n > kKuperbergMaxBits) throw BudgetError("kuperberg_toy: n must be in [1, 16]");
  if (budget > kKuperbergMaxBudget) throw BudgetError("kuperberg_toy: budget above 2^24");
  const std::uint64_t planted = inst.open_shift();
  const std::uint64_t full = inst.group().mask();

  KuperbergResult res;
  std::uint64_t known = 0;  // s mod 2^j
  for (unsigned j = 0; j < n; ++j) {
    // The pair f_j(x) = f(2^j x), g_j(x) = g(2^j x - known) on Z/2^(n-j) has
    // shift (s - known) / 2^j when the peeled bits are right.
    const std::uint64_t diff = (planted - known) & full;
    std::optional<std::uint64_t> sub;
    if ((diff & ((std::uint64_t{1} << j) - 1)) == 0) sub = diff >> j;
    CosetSimulator sim(n - j, sub);
    const auto r = sieve_low_bit(sim, budget - res.samples, rng);
    res.samples += r.samples;
    res.samples_per_bit.push_back(r.samples);
    if (!r.bit) {
      res.status = "budget exhausted";
      return res;
    }
    known |= static_cast<std::uint64_t>(*r.bit) << j;
  }
  const auto& grp = inst.group();
  for (int i = 0; i < check; ++i) {
    const auto x = grp.sample(rng);
    res.classical_queries += 2;
    if (inst.g()(x) != inst.f()(grp.mul(known, x))) {
      res.status = "verification failed";
      return res;
    }
  }
  res.shift = known;
  res.status = "ok";
  return res;
}

}  // namespace hslab

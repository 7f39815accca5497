#pragma once

// One seeded end-to-end trial per attack, shared by the CLI and the test
// binaries. Each scheme is built either over xor:<n> (where the Simon
// pipeline should win) or over z2n:<n> (where the same pipeline should not
// find a period). Success means "recovered the planted secret"; on z2n the
// interesting quantity is whether the pipeline accepted at all.

#include <cmath>

#include "hslab/attacks/kuperberg.hpp"
#include "hslab/attacks/xor_attacks.hpp"
#include "hslab/ciphers/cbc_mac.hpp"
#include "hslab/ciphers/even_mansour.hpp"
#include "hslab/ciphers/feistel.hpp"
#include "hslab/ciphers/slide.hpp"
#include "hslab/stats.hpp"
#include "hslab/trial.hpp"

namespace hslab {

enum class SchemeDomain { Xor, Z2n };

inline std::string to_string(SchemeDomain d) { return d == SchemeDomain::Xor ? "xor" : "z2n"; }

inline SchemeDomain parse_scheme_domain(std::string_view s) {
  if (s == "xor") return SchemeDomain::Xor;
  if (s == "z2n") return SchemeDomain::Z2n;
  throw UsageError("domain must be xor or z2n, got '" + std::string(s) + "'");
}

namespace detail {

inline nlohmann::json simon_json(const SimonResult& r) {
  nlohmann::json j = {{"status", r.status}, {"samples", r.samples}, {"attempts", r.attempts}};
  if (r.period) j["period"] = *r.period;
  return j;
}

template <class Fn>
auto with_domain(SchemeDomain d, unsigned n, Fn&& fn) {
  if (d == SchemeDomain::Xor) return fn(XorGroup(n));
  return fn(CyclicPow2Group(n));
}

inline std::pair<std::uint64_t, std::uint64_t> distinct_pair(unsigned n, Rng& rng) {
  const std::uint64_t mask = word_mask(n);
  const std::uint64_t a0 = rng.next() & mask;
  std::uint64_t a1 = a0;
  while (a1 == a0) a1 = rng.next() & mask;
  return {a0, a1};
}

}  // namespace detail

inline TrialOutcome em_simon_trial(SchemeDomain d, unsigned n, std::uint64_t seed) {
  return detail::with_domain(d, n, [&](const auto& g) {
    const auto p = random_permutation(g, derive_seed(seed, "em-p"));
    const auto key = em_keygen(g, derive_seed(seed, "em-key"));
    const auto e = em_oracle(g, p, key);
    Rng rng(derive_seed(seed, "em-attack"));
    const auto r = attack_em_xor(n, p, e, rng);
    TrialOutcome out;
    out.success = r.k1 && *r.k1 == key.k1 && *r.k2 == key.k2;
    out.queries = p.queries() + e.queries();
    out.detail = {{"accepted", r.k1.has_value()}, {"quantum_queries", r.simon.samples}, {"simon", detail::simon_json(r.simon)}};
    return out;
  });
}

// Success needs the recovered pair to collide on `verify` fresh suffixes.
inline TrialOutcome cbc_simon_trial(SchemeDomain d, unsigned n, std::uint64_t seed, int verify = 100) {
  return detail::with_domain(d, n, [&](const auto& g) {
    using E = element_t<std::decay_t<decltype(g)>>;
    const CbcMac<std::decay_t<decltype(g)>> mac(g, mac_keygen(derive_seed(seed, "cbc-key")));
    const MacOracle oracle([mac](const std::vector<E>& m) { return mac.tag(m); }, n);
    Rng rng(derive_seed(seed, "cbc-attack"));
    const auto [a0, a1] = detail::distinct_pair(n, rng);
    const auto r = attack_cbc_xor(n, oracle, a0, a1, rng);
    TrialOutcome out;
    int held = 0;
    if (r.s_k) {
      for (int i = 0; i < verify; ++i) {
        const std::uint64_t x = rng.next() & detail::word_mask(n);
        held += oracle({a0, x}) == oracle({a1, x ^ *r.s_k});
      }
    }
    out.success = r.s_k && held == verify;
    out.queries = oracle.queries();
    out.detail = {{"accepted", r.s_k.has_value()}, {"verified_suffixes", held}, {"quantum_queries", r.simon.samples},
                  {"simon", detail::simon_json(r.simon)}};
    return out;
  });
}

// `feistel` picks a real 3-round Feistel or a random 2n-bit permutation; success
// is the correct verdict (and, for a real Feistel, the right shift).
inline TrialOutcome feistel_simon_trial(SchemeDomain d, unsigned n, bool feistel, std::uint64_t seed) {
  return detail::with_domain(d, n, [&](const auto& half) {
    using H = std::decay_t<decltype(half)>;
    Rng rng(derive_seed(seed, "feistel-attack"));
    const auto [a0, a1] = detail::distinct_pair(n, rng);
    std::optional<FeistelSpec<H>> spec;
    Oracle<std::uint64_t, std::uint64_t> cipher;
    if (feistel) {
      spec = feistel_keygen(half, derive_seed(seed, "feistel-key"));
      cipher = feistel_oracle(*spec);
    } else {
      cipher = random_permutation(XorGroup(2 * n), derive_seed(seed, "feistel-random"));
    }
    const auto r = attack_feistel_xor(n, cipher, a0, a1, rng);
    TrialOutcome out;
    if (feistel) {
      const auto want = spec->r1()(a0) ^ spec->r1()(a1);
      out.success = r.verdict == FeistelVerdict::Feistel && r.shift == want;
    } else {
      out.success = r.verdict == FeistelVerdict::Random;
    }
    out.queries = cipher.queries();
    out.detail = {{"cipher", feistel ? "feistel" : "random"}, {"verdict", to_string(r.verdict)},
                  {"accepted", r.verdict == FeistelVerdict::Feistel}, {"quantum_queries", r.simon.samples},
                  {"simon", detail::simon_json(r.simon)}};
    return out;
  });
}

inline TrialOutcome slide_simon_trial(SchemeDomain d, unsigned n, std::uint64_t rounds, std::uint64_t seed) {
  return detail::with_domain(d, n, [&](const auto& g) {
    using G = std::decay_t<decltype(g)>;
    Rng rng(derive_seed(seed, "slide-key"));
    const auto r = random_permutation(g, derive_seed(seed, "slide-r"));
    const SlideSpec<G> spec(g, r, g.sample(rng), rounds);
    const auto e = slide_oracle(spec);
    Rng arng(derive_seed(seed, "slide-attack"));
    const auto res = attack_slide_xor(n, e, r, arng);
    TrialOutcome out;
    out.success = res.key && *res.key == spec.key();
    out.queries = e.queries() + r.queries();
    out.detail = {{"accepted", res.key.has_value()}, {"rounds", rounds}, {"quantum_queries", res.simon.samples},
                  {"simon", detail::simon_json(res.simon)}};
    return out;
  });
}

inline TrialOutcome kuperberg_trial(unsigned n, std::uint64_t budget, std::uint64_t seed) {
  const auto inst = gen_instance(Variant::RHS, CyclicPow2Group(n), 40, derive_seed(seed, "kuperberg-instance"));
  Rng rng(derive_seed(seed, "kuperberg-sieve"));
  const auto r = kuperberg_toy(inst, budget, rng);
  TrialOutcome out;
  out.success = r.shift && *r.shift == inst.open_shift();
  out.queries = r.samples + r.classical_queries;
  out.detail = {{"status", r.status}, {"coset_samples", r.samples}, {"classical_queries", r.classical_queries},
                {"samples_per_bit", r.samples_per_bit}};
  return out;
}

// Mean coset samples against n, and least-squares fits of log2(samples)
// to c*sqrt(n) and to c*n.
struct ScalingFit {
  std::vector<unsigned> n;
  std::vector<double> mean_samples;
  stats::LineFit sqrt_model, linear_model;

  bool subexponential_wins() const { return sqrt_model.rss < linear_model.rss; }

  nlohmann::json to_json() const {
    return {{"n", n},
            {"mean_samples", mean_samples},
            {"sqrt_model", {{"c", sqrt_model.slope}, {"rss", sqrt_model.rss}}},
            {"linear_model", {{"c", linear_model.slope}, {"rss", linear_model.rss}}},
            {"subexponential_fits_better", subexponential_wins()}};
  }
};

inline ScalingFit kuperberg_scaling(unsigned n_lo, unsigned n_hi, std::uint64_t trials, std::uint64_t seed,
                                    unsigned threads = 1) {
  ScalingFit fit;
  std::vector<double> xs, rs, ys;
  for (unsigned n = n_lo; n <= n_hi; ++n) {
    const auto rep = run_trials("kuperberg-scaling-" + std::to_string(n), trials, seed,
                                [n](std::uint64_t, std::uint64_t s) { return kuperberg_trial(n, kKuperbergMaxBudget, s); },
                                threads);
    double total = 0;
    for (const auto& o : rep.outcomes) total += o.detail.at("coset_samples").get<double>();
    const double mean = total / static_cast<double>(trials);
    fit.n.push_back(n);
    fit.mean_samples.push_back(mean);
    xs.push_back(static_cast<double>(n));
    rs.push_back(std::sqrt(static_cast<double>(n)));
    ys.push_back(std::log2(mean));
  }
  fit.sqrt_model = stats::fit_through_origin(rs, ys);
  fit.linear_model = stats::fit_through_origin(xs, ys);
  return fit;
}

}  // namespace hslab

#pragma once

// Exhaustive Hidden Shift solvers; the reference oracle for everything else.

#include <unordered_map>
#include <vector>

#include "hslab/error.hpp"
#include "hslab/instance.hpp"
#include "hslab/reductions/solver.hpp"

namespace hslab {

inline constexpr std::uint64_t kBruteForceLimit = std::uint64_t{1} << 20;

template <FiniteGroup G>
struct BruteForceOptions {
  std::uint64_t samples = 0;  // 0: ceil(log2 |H|) + 20
  bool first_only = false;    // stop at the first accepted shift
};

// Every c in the domain with g(x_i) = f(c x_i) on all sample points.
template <FiniteGroup G>
std::vector<element_t<G>> brute_force_shifts(const SubgroupView<G>& dom, const LabelOracle<G>& f, const LabelOracle<G>& g,
                                             Rng& rng, BruteForceOptions<G> opt = {}) {
  const std::uint64_t order = dom.order();
  if (order > kBruteForceLimit) throw BudgetError("brute force needs |H| <= 2^20");
  const std::uint64_t k = opt.samples ? opt.samples : default_check_samples(order);
  const auto& grp = dom.group();
  std::vector<element_t<G>> xs;
  std::vector<Label> gx;
  xs.reserve(k);
  gx.reserve(k);
  for (std::uint64_t i = 0; i < k; ++i) {
    xs.push_back(dom.sample(rng));
    gx.push_back(g(xs.back()));
  }
  std::vector<element_t<G>> found;
  for (std::uint64_t r = 0; r < order; ++r) {
    const auto c = dom.element_at(r);
    bool ok = true;
    for (std::uint64_t i = 0; i < k && ok; ++i) ok = f(grp.mul(c, xs[i])) == gx[i];
    if (ok) {
      found.push_back(c);
      if (opt.first_only) break;
    }
  }
  return found;
}

template <FiniteGroup G>
std::vector<element_t<G>> brute_force_hs(const HSInstance<G>& inst, Rng& rng, BruteForceOptions<G> opt = {}) {
  inst.require_sealed("brute_force_hs");
  return brute_force_shifts(SubgroupView<G>(inst.group()), inst.f(), inst.g(), rng, opt);
}

template <FiniteGroup G>
bool brute_force_drhs(const HSInstance<G>& inst, Rng& rng, std::uint64_t samples = 0) {
  inst.require_sealed("brute_force_drhs");
  return !brute_force_shifts(SubgroupView<G>(inst.group()), inst.f(), inst.g(), rng, {samples, true}).empty();
}

template <FiniteGroup G>
RhsSolver<G> brute_force_rhs_solver(std::uint64_t samples = 0) {
  RhsSolver<G> s;
  s.name = "brute-force";
  s.run = [samples](const SubgroupView<G>& dom, const LabelOracle<G>& f, const LabelOracle<G>& g,
                    Rng& rng) -> std::optional<element_t<G>> {
    auto found = brute_force_shifts(dom, f, g, rng, {samples, true});
    if (found.empty()) return std::nullopt;
    return found.front();
  };
  return s;
}

// Exact decider: "shifted" iff some shift passes the sample check.
template <FiniteGroup G>
DrhsDecider<G> brute_force_decider(std::uint64_t samples = 0) {
  DrhsDecider<G> d;
  d.name = "brute-force";
  d.run = [samples](const SubgroupView<G>& dom, const LabelOracle<G>& f, const LabelOracle<G>& g, Rng& rng) {
    return !brute_force_shifts(dom, f, g, rng, {samples, true}).empty();
  };
  return d;
}

// Flips the wrapped decider's verdict with probability p.
template <FiniteGroup G>
DrhsDecider<G> noisy_decider(DrhsDecider<G> inner, double p) {
  if (p < 0 || p > 1) throw UsageError("noise rate must be in [0, 1]");
  DrhsDecider<G> d;
  d.name = inner.name + "+noise";
  d.query_bound = inner.query_bound;
  d.completeness_error = inner.completeness_error + p;
  d.soundness_error = inner.soundness_error + p;
  d.run = [inner, p](const SubgroupView<G>& dom, const LabelOracle<G>& f, const LabelOracle<G>& g, Rng& rng) {
    const bool verdict = inner.run(dom, f, g, rng);
    return rng.bernoulli(p) ? !verdict : verdict;
  };
  return d;
}

// Reads f and g on the whole domain once (2|H| queries), then matches the
// tables offline. Useful where a tight query bound matters.
template <FiniteGroup G>
RhsSolver<G> tabulating_rhs_solver(std::uint64_t domain_order) {
  RhsSolver<G> s;
  s.name = "tabulating";
  s.query_bound = 2 * domain_order;
  s.run = [](const SubgroupView<G>& dom, const LabelOracle<G>& f, const LabelOracle<G>& g,
             Rng&) -> std::optional<element_t<G>> {
    const std::uint64_t order = dom.order();
    if (order > kBruteForceLimit) throw BudgetError("tabulation needs |H| <= 2^20");
    const auto& grp = dom.group();
    std::vector<element_t<G>> elems;
    std::vector<Label> fv, gv;
    std::unordered_map<Label, std::vector<std::uint64_t>> preimages;
    std::unordered_map<std::uint64_t, std::uint64_t> index_of;
    for (std::uint64_t r = 0; r < order; ++r) {
      elems.push_back(dom.element_at(r));
      fv.push_back(f(elems.back()));
      gv.push_back(g(elems.back()));
      preimages[fv.back()].push_back(r);
      index_of[grp.rank(elems.back())] = r;
    }
    // g(x0) = f(c x0) pins c x0 to a preimage of g(x0); x0 = first element.
    const auto x0inv = grp.inv(elems[0]);
    auto it = preimages.find(gv[0]);
    if (it == preimages.end()) return std::nullopt;
    for (std::uint64_t r : it->second) {
      const auto c = grp.mul(elems[r], x0inv);
      bool ok = true;
      for (std::uint64_t i = 0; i < order && ok; ++i) {
        const auto j = index_of.find(grp.rank(grp.mul(c, elems[i])));
        ok = j != index_of.end() && fv[j->second] == gv[i];
      }
      if (ok) return c;
    }
    return std::nullopt;
  };
  return s;
}

// Runs `inner` only when a keyed hash of (f(e), g(e)) falls in the lowest
// `percent` of its range; otherwise gives up. Under blinding the pass/fail
// pattern is a fresh coin per instance, making a solver with a known success
// rate for amplification experiments.
template <FiniteGroup G>
RhsSolver<G> filtered_solver(RhsSolver<G> inner, unsigned percent, std::uint64_t key) {
  if (percent > 100) throw UsageError("filtered_solver: percent must be <= 100");
  RhsSolver<G> s;
  s.name = "filtered" + std::to_string(percent) + "(" + inner.name + ")";
  s.query_bound = inner.query_bound + 2;
  s.run = [inner, percent, key](const SubgroupView<G>& dom, const LabelOracle<G>& f, const LabelOracle<G>& g,
                                Rng& rng) -> std::optional<element_t<G>> {
    const auto e = dom.group().identity();
    if (keyed_hash_words(key, {f(e), g(e)}) % 100 >= percent) return std::nullopt;
    return inner.run(dom, f, g, rng);
  };
  return s;
}

// Returns a uniformly random element; never looks at the oracles.
template <FiniteGroup G>
RhsSolver<G> guessing_solver() {
  RhsSolver<G> s;
  s.name = "guess";
  s.run = [](const SubgroupView<G>& dom, const LabelOracle<G>&, const LabelOracle<G>&, Rng& rng)
      -> std::optional<element_t<G>> { return dom.sample(rng); };
  return s;
}

}  // namespace hslab

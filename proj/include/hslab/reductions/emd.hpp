#pragma once

// Deciding shifts with an Even-Mansour distinguisher: f plays the public
// permutation and L_{t2} o g o L_{t1} plays the keyed cipher.

#include "hslab/ciphers/even_mansour.hpp"
#include "hslab/reductions/solver.hpp"

namespace hslab {

// true: "the second oracle is Even-Mansour over the first".
template <FiniteGroup G>
struct EmdDistinguisher {
  std::string name;
  std::uint64_t query_bound = 0;
  std::function<bool(const G&, const GroupOracle<G>& p, const GroupOracle<G>& e, Rng&)> run;
};

template <FiniteGroup G>
struct EmdWrapping {
  GroupOracle<G> p, e;
  element_t<G> t1, t2;
};

// P = f, E = L_{t2} o g o L_{t1}. If g = f o L_s then E = L_{t2} o f o L_{s t1}.
template <FiniteGroup G>
EmdWrapping<G> wrap_for_emd(const G& grp, const GroupOracle<G>& f, const GroupOracle<G>& g, const element_t<G>& t1,
                            const element_t<G>& t2) {
  GroupOracle<G> e([grp, g, t1, t2](const element_t<G>& x) { return grp.mul(t2, g(grp.mul(t1, x))); },
                   grp.element_bits());
  return {f, e, t1, t2};
}

template <FiniteGroup G>
DrhsDecider<G> emd_from_drhs(EmdDistinguisher<G> dist) {
  DrhsDecider<G> d;
  d.name = "emd(" + dist.name + ")";
  d.query_bound = dist.query_bound;
  d.run = [dist](const SubgroupView<G>& dom, const LabelOracle<G>& f, const LabelOracle<G>& g, Rng& rng) {
    if (!dom.is_full()) throw UsageError("emd_from_drhs: needs the whole group");
    const auto& grp = dom.group();
    const auto t1 = grp.sample(rng);
    const auto t2 = grp.sample(rng);
    const auto w = wrap_for_emd(grp, group_valued(grp, f), group_valued(grp, g), t1, t2);
    return dist.run(grp, w.p, w.e, rng);
  };
  return d;
}

// Tries every k1 under both conventions, P(x k1) k2 and k2 P(k1 x), deriving k2
// from one point and checking the rest.
template <FiniteGroup G>
EmdDistinguisher<G> brute_force_emd(std::uint64_t samples = 0) {
  EmdDistinguisher<G> d;
  d.name = "brute-force-key-search";
  d.run = [samples](const G& grp, const GroupOracle<G>& p, const GroupOracle<G>& e, Rng& rng) {
    const std::uint64_t n = order_u64(grp);
    const std::uint64_t k = samples ? samples : default_check_samples(n);
    std::vector<element_t<G>> xs;
    std::vector<element_t<G>> ex;
    for (std::uint64_t i = 0; i <= k; ++i) {
      xs.push_back(grp.sample(rng));
      ex.push_back(e(xs.back()));
    }
    for (std::uint64_t r = 0; r < n; ++r) {
      const auto k1 = grp.unrank(r);
      const auto right_k2 = grp.mul(grp.inv(p(grp.mul(xs[0], k1))), ex[0]);
      const auto left_k2 = grp.mul(ex[0], grp.inv(p(grp.mul(k1, xs[0]))));
      bool right = true, left = true;
      for (std::uint64_t i = 1; i <= k && (right || left); ++i) {
        right = right && grp.mul(p(grp.mul(xs[i], k1)), right_k2) == ex[i];
        left = left && grp.mul(left_k2, p(grp.mul(k1, xs[i]))) == ex[i];
      }
      if (right || left) return true;
    }
    return false;
  };
  return d;
}

// Ignores its oracles.
template <FiniteGroup G>
EmdDistinguisher<G> coin_flip_emd() {
  EmdDistinguisher<G> d;
  d.name = "coin-flip";
  d.run = [](const G&, const GroupOracle<G>&, const GroupOracle<G>&, Rng& rng) { return rng.coin(); };
  return d;
}

}  // namespace hslab

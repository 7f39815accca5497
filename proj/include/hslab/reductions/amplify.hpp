#pragma once

// Worst-case to average-case blinding and success amplification for the
// random hidden shift problem.

#include "hslab/instance.hpp"
#include "hslab/kwise.hpp"
#include "hslab/reductions/solver.hpp"

namespace hslab {

template <FiniteGroup G>
struct Rerandomized {
  LabelOracle<G> f;  // h o f
  LabelOracle<G> g;  // h o g o L_t
  KWiseMember h;
  element_t<G> t;
};

// f' = h o f, g' = h o g o L_t. If g = f o L_s then g' = f' o L_{st}.
template <FiniteGroup G>
Rerandomized<G> rerandomize_with(const G& grp, const LabelOracle<G>& f, const LabelOracle<G>& g, const KWiseMember& h,
                                 const element_t<G>& t) {
  return {compose_left(h, f), compose_left(h, precompose_shift(grp, g, t)), h, t};
}

template <FiniteGroup G>
Rerandomized<G> rerandomize(const G& grp, const LabelOracle<G>& f, const LabelOracle<G>& g, std::uint64_t k, Rng& rng) {
  const KWiseFamily family(k, static_cast<unsigned>(f.out_bits()));
  auto h = family.draw(rng);
  const auto t = grp.sample(rng);
  return rerandomize_with(grp, f, g, h, t);
}

template <FiniteGroup G>
Rerandomized<G> rerandomize(const HSInstance<G>& inst, std::uint64_t k, std::uint64_t seed) {
  if (inst.variant() != Variant::HS && inst.variant() != Variant::RHS)
    throw UsageError("rerandomize: instance must be HS or RHS, got " + to_string(inst.variant()));
  Rng rng(derive_seed(seed, "rerandomize"));
  return rerandomize(inst.group(), inst.f(), inst.g(), k, rng);
}

// Solver answer r for the blinded pair maps back to r t^-1.
template <FiniteGroup G>
element_t<G> unblind(const G& grp, const element_t<G>& r, const element_t<G>& t) {
  return grp.mul(r, grp.inv(t));
}

// g(x) = f(c x) on `samples` random points of the domain.
template <FiniteGroup G>
bool check_shift(const SubgroupView<G>& dom, const LabelOracle<G>& f, const LabelOracle<G>& g, const element_t<G>& c,
                 std::uint64_t samples, Rng& rng) {
  const auto& grp = dom.group();
  for (std::uint64_t i = 0; i < samples; ++i) {
    const auto x = dom.sample(rng);
    if (g(x) != f(grp.mul(c, x))) return false;
  }
  return true;
}

// Repeats {rerandomize, run weak, verify, unblind} up to m rounds. Blinding
// draws t from the whole domain, so the domain must be a group in its own right
// (a full group or a tower level).
template <FiniteGroup G>
RhsSolver<G> amplify_rhs(RhsSolver<G> weak, std::uint64_t m, std::uint64_t check) {
  if (m < 1) throw UsageError("amplify_rhs: need at least one round");
  RhsSolver<G> s;
  s.name = "amplified(" + weak.name + ")";
  s.query_bound = m * (weak.query_bound + 2 * check);
  s.run = [weak, m, check](const SubgroupView<G>& dom, const LabelOracle<G>& f, const LabelOracle<G>& g,
                           Rng& rng) -> std::optional<element_t<G>> {
    const auto& grp = dom.group();
    const KWiseFamily family(std::max<std::uint64_t>(weak.query_bound, 1), static_cast<unsigned>(f.out_bits()));
    for (std::uint64_t round = 0; round < m; ++round) {
      const auto h = family.draw(rng);
      const auto t = dom.sample(rng);
      const auto blinded = rerandomize_with(grp, f, g, h, t);
      const auto r = weak.run(dom, blinded.f, blinded.g, rng);
      if (!r || !dom.contains(*r)) continue;
      if (check_shift(dom, blinded.f, blinded.g, *r, check, rng)) return unblind(grp, *r, t);
    }
    return std::nullopt;
  };
  return s;
}

}  // namespace hslab

#pragma once

// Even-Mansour over a group: Enc(m) = P(m k1) k2, Dec(c) = P^-1(c k2^-1) k1^-1.

#include "hslab/error.hpp"
#include "hslab/groups.hpp"
#include "hslab/oracle.hpp"

namespace hslab {

template <FiniteGroup G>
struct EmKey {
  element_t<G> k1, k2;
};

template <FiniteGroup G>
EmKey<G> em_keygen(const G& g, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "em-keygen"));
  auto k1 = g.sample(rng);
  return {std::move(k1), g.sample(rng)};
}

namespace detail {
template <class In, class Out>
void require_permutation(const Oracle<In, Out>& p) {
  if (!p.valid() || !p.invertible()) throw UsageError("Even-Mansour needs a permutation oracle with inverse");
}
}  // namespace detail

template <FiniteGroup G>
element_t<G> em_enc(const G& g, const GroupOracle<G>& p, const EmKey<G>& key, const element_t<G>& m) {
  detail::require_permutation(p);
  return g.mul(p(g.mul(m, key.k1)), key.k2);
}

template <FiniteGroup G>
element_t<G> em_dec(const G& g, const GroupOracle<G>& p, const EmKey<G>& key, const element_t<G>& c) {
  detail::require_permutation(p);
  return g.mul(p.inverse(g.mul(c, g.inv(key.k2))), g.inv(key.k1));
}

// The keyed cipher as an invertible oracle.
template <FiniteGroup G>
GroupOracle<G> em_oracle(const G& g, const GroupOracle<G>& p, const EmKey<G>& key) {
  detail::require_permutation(p);
  return GroupOracle<G>([g, p, key](const element_t<G>& m) { return em_enc(g, p, key, m); }, g.element_bits(),
                        [g, p, key](const element_t<G>& c) { return em_dec(g, p, key, c); });
}

// Second key from the first: k2 = P(x k1)^-1 E(x) for any x.
template <FiniteGroup G>
element_t<G> em_k2_from_k1(const G& g, const GroupOracle<G>& p, const GroupOracle<G>& e, const element_t<G>& k1,
                           const element_t<G>& x) {
  return g.mul(g.inv(p(g.mul(x, k1))), e(x));
}

}  // namespace hslab

#pragma once

// Encrypted CBC-MAC over a group, folded left to right:
//   state_1 = E_k(m_1), state_j = E_k(m_j * state_{j-1}), tag = E_k'(state_l).

#include <span>
#include <vector>

#include "hslab/error.hpp"
#include "hslab/groups.hpp"
#include "hslab/oracle.hpp"

namespace hslab {

struct MacKey {
  std::uint64_t k = 0, k_prime = 0;
};

inline MacKey mac_keygen(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "mac-keygen"));
  const std::uint64_t k = rng.next();
  std::uint64_t kp = rng.next();
  while (kp == k) kp = rng.next();
  return {k, kp};
}

template <FiniteGroup G>
class CbcMac {
 public:
  CbcMac(G g, const MacKey& key) : g_(std::move(g)), inner_(inner_prp(key.k, g_)), outer_(inner_prp(key.k_prime, g_)) {}

  const G& group() const { return g_; }
  const GroupOracle<G>& inner() const { return inner_; }
  const GroupOracle<G>& outer() const { return outer_; }

  // Chaining state after all of `blocks` (identity for no blocks).
  element_t<G> chain(std::span<const element_t<G>> blocks) const {
    if (blocks.empty()) return g_.identity();
    element_t<G> state = inner_(blocks[0]);
    for (std::size_t j = 1; j < blocks.size(); ++j) state = inner_(g_.mul(blocks[j], state));
    return state;
  }

  element_t<G> tag(std::span<const element_t<G>> blocks) const {
    if (blocks.empty()) throw UsageError("cbc_mac: empty message");
    return outer_(chain(blocks));
  }

  element_t<G> tag(const std::vector<element_t<G>>& blocks) const { return tag(std::span<const element_t<G>>(blocks)); }

 private:
  G g_;
  GroupOracle<G> inner_, outer_;
};

template <FiniteGroup G>
element_t<G> cbc_mac(const G& g, const MacKey& key, const std::vector<element_t<G>>& blocks) {
  return CbcMac<G>(g, key).tag(blocks);
}

}  // namespace hslab

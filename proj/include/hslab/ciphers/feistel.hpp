#pragma once

// Feistel networks with the half-block operation taken from XOR or Z/2^n:
// one round maps (x, y) to (y + f(x), x).

#include <type_traits>
#include <utility>

#include "hslab/error.hpp"
#include "hslab/groups.hpp"
#include "hslab/oracle.hpp"

namespace hslab {

template <class G>
inline constexpr bool is_feistel_half_v = std::is_same_v<G, XorGroup> || std::is_same_v<G, CyclicPow2Group>;

using HalfPair = std::pair<std::uint64_t, std::uint64_t>;

template <FiniteGroup G>
class FeistelSpec {
 public:
  FeistelSpec(G half, GroupOracle<G> r1, GroupOracle<G> r2, GroupOracle<G> r3)
      : half_(std::move(half)), r1_(std::move(r1)), r2_(std::move(r2)), r3_(std::move(r3)) {
    if constexpr (!is_feistel_half_v<G>) throw UnsupportedError("Feistel half-domain must be xor:<n> or z2n:<n>");
  }

  const G& half() const { return half_; }
  const GroupOracle<G>& r1() const { return r1_; }
  const GroupOracle<G>& r2() const { return r2_; }
  const GroupOracle<G>& r3() const { return r3_; }

 private:
  G half_;
  GroupOracle<G> r1_, r2_, r3_;
};

// Independent random round functions.
template <FiniteGroup G>
FeistelSpec<G> feistel_keygen(const G& half, std::uint64_t seed) {
  return FeistelSpec<G>(half, random_function_to_group(half, derive_seed(seed, "feistel-r", 1)),
                        random_function_to_group(half, derive_seed(seed, "feistel-r", 2)),
                        random_function_to_group(half, derive_seed(seed, "feistel-r", 3)));
}

template <FiniteGroup G>
HalfPair feistel_round(const G& half, const GroupOracle<G>& f, const HalfPair& xy) {
  return {half.mul(xy.second, f(xy.first)), xy.first};
}

// (u, v) = (y + f(x), x)  ->  (x, y) = (v, u - f(v))
template <FiniteGroup G>
HalfPair feistel_round_inverse(const G& half, const GroupOracle<G>& f, const HalfPair& uv) {
  return {uv.second, half.mul(uv.first, half.inv(f(uv.second)))};
}

template <FiniteGroup G>
HalfPair feistel3(const FeistelSpec<G>& spec, const HalfPair& xy) {
  const auto& h = spec.half();
  return feistel_round(h, spec.r3(), feistel_round(h, spec.r2(), feistel_round(h, spec.r1(), xy)));
}

template <FiniteGroup G>
HalfPair feistel3_inverse(const FeistelSpec<G>& spec, const HalfPair& uv) {
  const auto& h = spec.half();
  return feistel_round_inverse(h, spec.r1(), feistel_round_inverse(h, spec.r2(), feistel_round_inverse(h, spec.r3(), uv)));
}

// The 2n-bit permutation x||y -> u||v, as an invertible oracle on xor:2n words.
template <FiniteGroup G>
Oracle<std::uint64_t, std::uint64_t> feistel_oracle(const FeistelSpec<G>& spec) {
  const unsigned n = spec.half().bits();
  if (2 * n > 64) throw UsageError("feistel_oracle: 2n must be <= 64");
  const std::uint64_t mask = spec.half().mask();
  auto split = [n, mask](std::uint64_t w) { return HalfPair{(w >> n) & mask, w & mask}; };
  auto join = [n](const HalfPair& p) { return (p.first << n) | p.second; };
  return Oracle<std::uint64_t, std::uint64_t>([spec, split, join](const std::uint64_t& w) { return join(feistel3(spec, split(w))); },
                                              2 * n,
                                              [spec, split, join](const std::uint64_t& w) { return join(feistel3_inverse(spec, split(w))); });
}

// f_b(y) = (second half of F(alpha_b, y)) - alpha_b; for a Feistel F this is R2(y + R1(alpha_b)).
template <FiniteGroup G>
GroupOracle<G> feistel_probe(const G& half, const Oracle<std::uint64_t, std::uint64_t>& cipher, std::uint64_t alpha) {
  const unsigned n = half.bits();
  return GroupOracle<G>(
      [half, cipher, alpha, n](const std::uint64_t& y) {
        const std::uint64_t w = cipher((alpha << n) | y);
        return half.mul(w & half.mask(), half.inv(alpha));
      },
      n);
}

}  // namespace hslab

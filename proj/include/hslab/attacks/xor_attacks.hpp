#pragma once

// Simon attacks on XOR-based schemes. Each driver builds a function whose
// XOR period is the secret, runs the exact Simon simulation on it, and
// finishes classically.

#include <optional>
#include <utility>
#include <vector>

#include "hslab/attacks/simon.hpp"

namespace hslab {

using MacOracle = Oracle<std::vector<std::uint64_t>, std::uint64_t>;

namespace detail {
inline std::uint64_t word_mask(unsigned n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

inline void require_simon_width(unsigned bits) {
  if (bits < 1 || bits > kSimonMaxBits) throw BudgetError("Simon simulation needs 1 <= bits <= 14");
}
}  // namespace detail

struct EmXorResult {
  std::optional<std::uint64_t> k1, k2;
  SimonResult simon;
};

// f(x) = P(x) xor E(x) = P(x) xor P(x xor k1) xor k2 has period k1; then
// k2 = E(x) xor P(x xor k1). The key pair is checked on `check` points.
// If the samples stall below rank n-1 (k1 = 0 makes f constant) every vector
// of the stalled subgroup, up to 2^10 of them, is tried as k1.
inline EmXorResult attack_em_xor(unsigned n, const BitOracle& p, const BitOracle& e, Rng& rng, int check = 16) {
  detail::require_simon_width(n);
  const std::uint64_t mask = detail::word_mask(n);
  EmXorResult res;
  res.simon = simon_attack(n, [&](std::uint64_t x) { return p(x) ^ e(x); }, rng);
  auto try_k1 = [&](std::uint64_t k1) {
    const std::uint64_t x0 = rng.next() & mask;
    const std::uint64_t k2 = e(x0) ^ p(x0 ^ k1);
    for (int i = 0; i < check; ++i) {
      const std::uint64_t x = rng.next() & mask;
      if (e(x) != (p(x ^ k1) ^ k2)) return false;
    }
    res.k1 = k1;
    res.k2 = k2;
    return true;
  };
  if (res.simon.period) {
    try_k1(*res.simon.period);
    return res;
  }
  const auto& sub = res.simon.stalled_subgroup;
  if (sub.empty() || sub.size() > 10) return res;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << sub.size()); ++m) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < sub.size(); ++i)
      if ((m >> i) & 1) c ^= sub[i];
    if (try_k1(c)) break;
  }
  return res;
}

struct CbcXorResult {
  std::optional<std::uint64_t> s_k;  // E_k(alpha_0) xor E_k(alpha_1)
  std::optional<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>> collision;
  SimonResult simon;
};

// F(b || x) = MAC(alpha_b || x) has period 1 || s_k. Output: the forged pair
// (alpha_0 || x, alpha_1 || x xor s_k) for a random x, checked by querying.
inline CbcXorResult attack_cbc_xor(unsigned n, const MacOracle& mac, std::uint64_t a0, std::uint64_t a1, Rng& rng) {
  detail::require_simon_width(n + 1);
  const std::uint64_t mask = detail::word_mask(n);
  CbcXorResult res;
  auto F = [&](std::uint64_t w) { return mac({(w >> n) ? a1 : a0, w & mask}); };
  res.simon = simon_attack(n + 1, F, rng);
  if (!res.simon.period || !((*res.simon.period >> n) & 1)) return res;
  const std::uint64_t s = *res.simon.period & mask;
  const std::uint64_t x = rng.next() & mask;
  std::vector<std::uint64_t> m0{a0, x}, m1{a1, x ^ s};
  if (mac(m0) != mac(m1)) return res;
  res.s_k = s;
  res.collision = std::make_pair(std::move(m0), std::move(m1));
  return res;
}

enum class FeistelVerdict { Feistel, Random };

inline std::string to_string(FeistelVerdict v) { return v == FeistelVerdict::Feistel ? "feistel" : "random"; }

struct FeistelXorResult {
  FeistelVerdict verdict = FeistelVerdict::Random;
  std::optional<std::uint64_t> shift;  // R1(alpha_0) xor R1(alpha_1)
  SimonResult simon;
};

// On 2n-bit words x || y: f_b(y) = low half of F(alpha_b || y) xor alpha_b.
// A verified period 1 || s of (b, y) -> f_b(y) means "Feistel".
inline FeistelXorResult attack_feistel_xor(unsigned n, const BitOracle& cipher, std::uint64_t a0, std::uint64_t a1,
                                           Rng& rng) {
  detail::require_simon_width(n + 1);
  const std::uint64_t mask = detail::word_mask(n);
  FeistelXorResult res;
  auto F = [&](std::uint64_t w) {
    const std::uint64_t a = (w >> n) ? a1 : a0;
    return (cipher((a << n) | (w & mask)) & mask) ^ a;
  };
  res.simon = simon_attack(n + 1, F, rng);
  if (res.simon.period && ((*res.simon.period >> n) & 1)) {
    res.verdict = FeistelVerdict::Feistel;
    res.shift = *res.simon.period & mask;
  }
  return res;
}

struct SlideXorResult {
  std::optional<std::uint64_t> key;
  SimonResult simon;
};

// F(b || x) = f_b(x) with f_0(x) = E(R(x)) xor x, f_1(x) = R(E(x)) xor x has
// period 1 || k.
inline SlideXorResult attack_slide_xor(unsigned n, const BitOracle& e, const BitOracle& r, Rng& rng) {
  detail::require_simon_width(n + 1);
  const std::uint64_t mask = detail::word_mask(n);
  SlideXorResult res;
  auto F = [&](std::uint64_t w) {
    const std::uint64_t x = w & mask;
    return ((w >> n) ? r(e(x)) : e(r(x))) ^ x;
  };
  res.simon = simon_attack(n + 1, F, rng);
  if (res.simon.period && ((*res.simon.period >> n) & 1)) res.key = *res.simon.period & mask;
  return res;
}

}  // namespace hslab

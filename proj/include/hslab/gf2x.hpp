#pragma once

// Polynomial arithmetic over GF(2) and binary extension fields GF(2^d), d <= 64.

#include <array>
#include <cstdint>
#include <mutex>
#include <vector>

#include "hslab/error.hpp"

namespace hslab::gf2x {

// Bit i holds the coefficient of x^i.
using Poly = unsigned __int128;

inline int degree(Poly p) {
  const auto hi = static_cast<std::uint64_t>(p >> 64);
  const auto lo = static_cast<std::uint64_t>(p);
  if (hi) return 127 - __builtin_clzll(hi);
  if (lo) return 63 - __builtin_clzll(lo);
  return -1;
}

inline Poly mod(Poly a, Poly m) {
  const int dm = degree(m);
  if (dm < 0) throw UsageError("gf2x::mod by zero polynomial");
  for (int da = degree(a); da >= dm; da = degree(a)) a ^= m << (da - dm);
  return a;
}

inline Poly gcd(Poly a, Poly b) {
  while (b != 0) {
    a = mod(a, b);
    std::swap(a, b);
  }
  return a;
}

// Arithmetic in GF(2)[x] / (x^d + tail) for d in [1, 64]. Elements are the
// residues of degree < d stored in the low d bits.
class Field {
 public:
  Field(int d, std::uint64_t tail) : degree_(d), tail_(tail) {
    if (d < 1 || d > 64) throw UsageError("gf2x::Field degree must be in [1,64]");
    mask_ = d == 64 ? ~0ULL : (1ULL << d) - 1;
    if ((tail & ~mask_) != 0) throw UsageError("gf2x::Field tail has degree >= d");
  }

  int degree() const { return degree_; }
  std::uint64_t tail() const { return tail_; }
  std::uint64_t mask() const { return mask_; }
  Poly modulus() const { return (Poly{1} << degree_) | tail_; }

  std::uint64_t times_x(std::uint64_t a) const {
    const bool top = (a >> (degree_ - 1)) & 1u;
    a = (a << 1) & mask_;
    return top ? a ^ tail_ : a;
  }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t r = 0;
    while (b) {
      if (b & 1u) r ^= a;
      b >>= 1;
      a = times_x(a);
    }
    return r;
  }

  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1u) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  // Inverse via a^(2^d - 2).
  std::uint64_t inv(std::uint64_t a) const {
    if (a == 0) throw UsageError("gf2x::Field::inv of zero");
    std::uint64_t r = 1, sq = a;
    for (int i = 1; i < degree_; ++i) {
      sq = mul(sq, sq);
      r = mul(r, sq);
    }
    return r;
  }

 private:
  int degree_;
  std::uint64_t tail_;
  std::uint64_t mask_;
};

// Multiplication by a fixed element using 4-bit windows; used by Horner loops.
class FixedMultiplier {
 public:
  FixedMultiplier(const Field& f, std::uint64_t x) : nibbles_((f.degree() + 3) / 4) {
    std::uint64_t base = x;
    for (int j = 0; j < nibbles_; ++j) {
      auto& t = table_[j];
      t[0] = 0;
      t[1] = base;
      t[2] = f.times_x(t[1]);
      t[4] = f.times_x(t[2]);
      t[8] = f.times_x(t[4]);
      for (unsigned v = 3; v < 16; ++v)
        if (v & (v - 1)) t[v] = t[v & (v - 1)] ^ t[v & -v];
      base = f.times_x(t[8]);
    }
  }

  std::uint64_t operator()(std::uint64_t a) const {
    std::uint64_t r = 0;
    for (int j = 0; j < nibbles_; ++j) r ^= table_[j][(a >> (4 * j)) & 0xF];
    return r;
  }

 private:
  int nibbles_;
  std::array<std::array<std::uint64_t, 16>, 16> table_{};
};

namespace detail {
inline std::vector<int> prime_factors(int n) {
  std::vector<int> ps;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}
}  // namespace detail

// Rabin's test: p of degree d is irreducible iff x^(2^d) = x (mod p) and
// gcd(x^(2^(d/r)) - x, p) = 1 for every prime r | d.
inline bool is_irreducible(Poly p) {
  const int d = degree(p);
  if (d < 1 || d > 64) throw UsageError("is_irreducible: degree must be in [1,64]");
  if (d == 1) return true;
  if ((p & 1) == 0) return false;
  const Field f(d, static_cast<std::uint64_t>(p ^ (Poly{1} << d)));
  auto frob = [&](int k) {  // x^(2^k) mod p
    std::uint64_t v = 2;
    for (int i = 0; i < k; ++i) v = f.mul(v, v);
    return v;
  };
  if (frob(d) != 2) return false;
  for (int r : detail::prime_factors(d)) {
    const Poly t = Poly{frob(d / r)} ^ Poly{2};
    if (degree(gcd(p, t)) != 0) return false;
  }
  return true;
}

// Low-weight irreducible polynomials, degrees 1..16 (x^d term included).
inline constexpr std::array<std::uint32_t, 17> kIrreducibleTable = {
    0,        0x3,    0x7,    0xB,    0x13,   0x25,   0x43,   0x83,   0x11B,
    0x203,    0x409,  0x805,  0x1009, 0x201B, 0x4021, 0x8003, 0x1002B,
};

// Fixed modulus for GF(2^d): the table entry for d <= 16, otherwise the
// irreducible x^d + tail with the numerically smallest tail.
inline Poly irreducible(int d) {
  if (d < 1 || d > 64) throw UsageError("irreducible: degree must be in [1,64]");
  if (d <= 16) return Poly{kIrreducibleTable[d]};
  static std::mutex mu;
  static std::array<std::uint64_t, 65> tails{};
  std::lock_guard lock(mu);
  if (tails[d] == 0) {
    for (std::uint64_t tail = 1;; tail += 2) {
      if (is_irreducible((Poly{1} << d) | tail)) {
        tails[d] = tail;
        break;
      }
    }
  }
  return (Poly{1} << d) | tails[d];
}

inline Field field(int d) {
  const Poly p = irreducible(d);
  return Field(d, static_cast<std::uint64_t>(p ^ (Poly{1} << d)));
}

}  // namespace hslab::gf2x

#pragma once

#include <cstdint>
#include <string>

#include "hslab/error.hpp"
#include "hslab/gf2x.hpp"

namespace hslab {

// GF(q) for q prime (< 2^16, integer residues) or q = 2^e with e <= 16
// (polynomial basis over the fixed table modulus). Elements are 0..q-1.
class FiniteField {
 public:
  explicit FiniteField(std::uint32_t q) : q_(q) {
    if (q < 2 || q > 65536) throw UsageError("GF(q): q must be in [2, 65536]");
    if ((q & (q - 1)) == 0) {
      binary_ = true;
      const int e = __builtin_ctz(q);
      bin_ = gf2x::field(e);
      return;
    }
    if (!is_prime(q)) throw UnsupportedError("GF(q): q must be prime or a power of two, got " + std::to_string(q));
  }

  std::uint32_t order() const { return q_; }
  bool is_binary() const { return binary_; }
  std::uint32_t characteristic() const { return binary_ ? 2 : q_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    return binary_ ? (a ^ b) : static_cast<std::uint32_t>((a + b) % q_);
  }
  std::uint32_t neg(std::uint32_t a) const { return binary_ ? a : (a == 0 ? 0 : q_ - a); }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (binary_) return static_cast<std::uint32_t>(bin_.mul(a, b));
    return static_cast<std::uint32_t>((std::uint64_t{a} * b) % q_);
  }
  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw UsageError("GF(q): inverse of zero");
    if (binary_) return static_cast<std::uint32_t>(bin_.inv(a));
    std::uint64_t r = 1, base = a, e = q_ - 2;
    while (e) {
      if (e & 1) r = r * base % q_;
      base = base * base % q_;
      e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
  }
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }

  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  friend bool operator==(const FiniteField& a, const FiniteField& b) { return a.q_ == b.q_; }

 private:
  std::uint32_t q_;
  bool binary_ = false;
  gf2x::Field bin_{1, 1};
};

}  // namespace hslab

#pragma once

// Moving a shift problem on Z/n into a larger cyclic group Z/m by reading
// inputs mod n, and mapping answers back.

#include "hslab/instance.hpp"

namespace hslab {

struct LiftSpec {
  std::uint64_t n = 0, m = 0;
  CyclicGroup target{1};
  LabelOracle<CyclicGroup> f, g;  // f(x mod n), g(x mod n)
};

inline LiftSpec cyclic_lift(const CyclicGroup& src, const LabelOracle<CyclicGroup>& f, const LabelOracle<CyclicGroup>& g,
                            std::uint64_t m, std::uint64_t margin = 4) {
  const std::uint64_t n = src.modulus();
  if (m != n && m < margin * n)
    throw UsageError("cyclic_lift: target modulus " + std::to_string(m) + " is below " + std::to_string(margin) +
                     " x " + std::to_string(n));
  LiftSpec spec;
  spec.n = n;
  spec.m = m;
  spec.target = CyclicGroup(m);
  spec.f = LabelOracle<CyclicGroup>([f, n](const std::uint64_t& x) { return f(x % n); }, f.out_bits());
  spec.g = LabelOracle<CyclicGroup>([g, n](const std::uint64_t& x) { return g(x % n); }, g.out_bits());
  return spec;
}

inline LiftSpec cyclic_lift(const HSInstance<CyclicGroup>& inst, std::uint64_t m, std::uint64_t margin = 4) {
  return cyclic_lift(inst.group(), inst.f(), inst.g(), m, margin);
}

// #{x in Z/m : g^(x) = f^(c + x)}.
inline std::uint64_t lift_agreement(const LiftSpec& spec, std::uint64_t c) {
  std::uint64_t agree = 0;
  for (std::uint64_t x = 0; x < spec.m; ++x) agree += spec.g(x) == spec.f(spec.target.mul(c, x)) ? 1 : 0;
  return agree;
}

// Candidates near the top of Z/m agree on the wrapped part only, so they are
// read as negative before reducing mod n.
inline std::uint64_t unlift(std::uint64_t c, std::uint64_t n, std::uint64_t m) {
  if (n == 0 || m == 0 || c >= m) throw UsageError("unlift: candidate outside Z/m");
  if (2 * c > m) {
    const std::uint64_t back = m - c;  // c = -back in Z/m
    return (n - back % n) % n;
  }
  return c % n;
}

}  // namespace hslab

#pragma once

// Hidden shift as hidden subgroup: the wreath product (G x G) x| Z/2 with the
// swap action, plus two direct lifts for (Z/2)^n.

#include <utility>

#include "hslab/instance.hpp"

namespace hslab {

template <class E>
struct WreathElement {
  E x, y;
  int b = 0;
  bool operator==(const WreathElement&) const = default;
};

// ((a, b), p) ((c, d), q) = ((a, b) sigma^p(c, d), p xor q), sigma swapping.
template <FiniteGroup G>
class WreathZ2 {
 public:
  using base_element = element_t<G>;
  using element_type = WreathElement<base_element>;

  explicit WreathZ2(G base) : base_(std::move(base)) {}

  const G& base() const { return base_; }
  GroupKind kind() const { return base_.kind(); }
  element_type identity() const { return {base_.identity(), base_.identity(), 0}; }
  element_type mul(const element_type& u, const element_type& v) const {
    const auto& c = u.b ? v.y : v.x;
    const auto& d = u.b ? v.x : v.y;
    return {base_.mul(u.x, c), base_.mul(u.y, d), u.b ^ v.b};
  }
  element_type inv(const element_type& u) const {
    // ((a, b), p)^-1 = (sigma^p(a^-1, b^-1), p)
    auto ai = base_.inv(u.x), bi = base_.inv(u.y);
    if (u.b) std::swap(ai, bi);
    return {std::move(ai), std::move(bi), u.b};
  }
  element_type sample(Rng& rng) const {
    auto x = base_.sample(rng);
    auto y = base_.sample(rng);
    return {std::move(x), std::move(y), static_cast<int>(rng.coin())};
  }
  BitString encode(const element_type& u) const {
    BitString out = base_.encode(u.x);
    const BitString yb = base_.encode(u.y);
    for (std::size_t i = 0; i < yb.width(); ++i) out.append(yb.bit(i), 1);
    out.append(static_cast<std::uint64_t>(u.b), 1);
    return out;
  }
  element_type decode(const BitString& bits) const {
    const std::size_t w = base_.element_bits();
    if (bits.width() != 2 * w + 1) throw DecodeError("wreath: codeword width mismatch");
    BitString a, c;
    for (std::size_t i = 0; i < w; ++i) a.append(bits.bit(i), 1);
    for (std::size_t i = 0; i < w; ++i) c.append(bits.bit(w + i), 1);
    return {base_.decode(a), base_.decode(c), static_cast<int>(bits.bit(2 * w))};
  }
  bool contains(const element_type& u) const {
    return (u.b == 0 || u.b == 1) && base_.contains(u.x) && base_.contains(u.y);
  }
  BigUInt order() const { return base_.order() * base_.order() * 2; }
  std::size_t element_bits() const { return 2 * base_.element_bits() + 1; }
  std::string descriptor() const { return base_.descriptor() + "wrZ2"; }
  std::string format(const element_type& u) const {
    return "((" + base_.format(u.x) + ", " + base_.format(u.y) + "), " + std::to_string(u.b) + ")";
  }
  std::uint64_t rank(const element_type& u) const {
    return (base_.rank(u.x) * order_u64(base_) + base_.rank(u.y)) * 2 + static_cast<std::uint64_t>(u.b);
  }
  element_type unrank(std::uint64_t r) const {
    const std::uint64_t n = order_u64(base_);
    const int b = static_cast<int>(r & 1);
    r >>= 1;
    return {base_.unrank(r / n), base_.unrank(r % n), b};
  }
  bool is_abelian() const { return order_u64(base_) == 1; }

 private:
  G base_;
};

static_assert(FiniteGroup<WreathZ2<CyclicGroup>>);

template <FiniteGroup G>
struct WreathInstance {
  WreathZ2<G> group;
  Oracle<element_t<WreathZ2<G>>, std::pair<Label, Label>> phi;

  // The order-2 element ((s, s^-1), 1) whose cosets phi separates.
  element_t<WreathZ2<G>> generator(const element_t<G>& s) const {
    const auto& b = group.base();
    return {s, b.inv(s), 1};
  }
};

// phi((x, y), b) = (f_b(x), f_{1-b}(y)) with f_0(x) = f(x^-1), f_1(x) = g(x^-1).
// From g(x) = f(s x): f_0(x) = f_1(x s), so phi is invariant under right
// multiplication by ((s, s^-1), 1).
template <FiniteGroup G>
WreathInstance<G> wreath_lift(const G& grp, const LabelOracle<G>& f, const LabelOracle<G>& g) {
  WreathZ2<G> k(grp);
  const auto f0 = precompose_inverse(grp, f);
  const auto f1 = precompose_inverse(grp, g);
  using E = element_t<WreathZ2<G>>;
  Oracle<E, std::pair<Label, Label>> phi(
      [f0, f1](const E& u) {
        return u.b ? std::pair<Label, Label>{f1(u.x), f0(u.y)} : std::pair<Label, Label>{f0(u.x), f1(u.y)};
      },
      2 * f.out_bits());
  return {k, phi};
}

template <FiniteGroup G>
WreathInstance<G> wreath_lift(const HSInstance<G>& inst) {
  return wreath_lift(inst.group(), inst.f(), inst.g());
}

// A function on (Z/2)^m hiding a subgroup of order 2.
struct PeriodicLift {
  XorGroup group;
  LabelOracle<XorGroup> oracle;
};

// F(b || x) = f_b(x) with f_0 = f, f_1 = g; hides {0, 1 || s}.
inline PeriodicLift bit_prefix_lift(const XorGroup& grp, const LabelOracle<XorGroup>& f, const LabelOracle<XorGroup>& g) {
  if (grp.bits() >= 64) throw UnsupportedError("bit-prefix lift needs n < 64");
  const unsigned n = grp.bits();
  XorGroup up(n + 1);
  const std::uint64_t low = grp.mask();
  LabelOracle<XorGroup> F([f, g, n, low](const std::uint64_t& v) { return (v >> n) ? g(v & low) : f(v & low); },
                          f.out_bits());
  return {up, F};
}

// (f xor g)(x); invariant under x -> x xor s.
inline PeriodicLift xor_sum_lift(const XorGroup& grp, const LabelOracle<XorGroup>& f, const LabelOracle<XorGroup>& g) {
  LabelOracle<XorGroup> F([f, g](const std::uint64_t& x) { return f(x) ^ g(x); }, f.out_bits());
  return {grp, F};
}

inline PeriodicLift bit_prefix_lift(const HSInstance<XorGroup>& inst) {
  return bit_prefix_lift(inst.group(), inst.f(), inst.g());
}
inline PeriodicLift xor_sum_lift(const HSInstance<XorGroup>& inst) {
  return xor_sum_lift(inst.group(), inst.f(), inst.g());
}

}  // namespace hslab

#pragma once

// The functions the XOR attacks probe, formed over Z/2^n (or a general group)
// instead. They give hidden shift instances over the group, not XOR periods.

#include "hslab/ciphers/cbc_mac.hpp"
#include "hslab/ciphers/feistel.hpp"
#include "hslab/ciphers/slide.hpp"
#include "hslab/instance.hpp"

namespace hslab {

// g(x) = f(shift x), as group-valued oracles.
template <FiniteGroup G>
struct HsForm {
  G group;
  GroupOracle<G> f, g;
  element_t<G> shift;  // from the scheme's secrets
};

// Labels are ranks where those fit, hashes otherwise.
template <FiniteGroup G>
LabelOracle<G> label_oracle(const G& grp, const GroupOracle<G>& f) {
  if (has_u64_order(grp))
    return LabelOracle<G>([grp, f](const element_t<G>& x) { return grp.rank(f(x)); }, grp.element_bits());
  return LabelOracle<G>([grp, f](const element_t<G>& x) { return element_hash(grp, 0, f(x)); }, 64);
}

template <FiniteGroup G>
HSInstance<G> to_instance(const HsForm<G>& form, std::uint64_t seed = 0) {
  auto secret = std::make_shared<typename HSInstance<G>::Secret>();
  secret->shift = form.shift;
  const auto f = label_oracle(form.group, form.f);
  return HSInstance<G>(Variant::HS, form.group, static_cast<unsigned>(f.out_bits()), seed, f,
                       label_oracle(form.group, form.g), secret);
}

// f_b(y) = R2(y + R1(alpha_b)): f_1(y) = f_0(s + y) with s = R1(alpha_1) - R1(alpha_0).
template <FiniteGroup G>
HsForm<G> feistel_hs_form(const FeistelSpec<G>& spec, std::uint64_t a0, std::uint64_t a1) {
  const auto& h = spec.half();
  const auto cipher = feistel_oracle(spec);
  return {h, feistel_probe(h, cipher, a0), feistel_probe(h, cipher, a1),
          h.mul(spec.r1()(a1), h.inv(spec.r1()(a0)))};
}

// f_0(k + x) = f_1(x).
template <FiniteGroup G>
HsForm<G> slide_hs_form(const SlideSpec<G>& spec) {
  auto [f0, f1] = slide_probes(spec.group(), slide_oracle(spec), spec.r());
  return {spec.group(), f0, f1, spec.key()};
}

// f_b(x) = MAC(alpha_b, x) satisfies f_1(x) = f_0(x E(alpha_1) E(alpha_0)^-1),
// a right shift; reading inputs inverted turns it into the left shift
// s = E(alpha_0) E(alpha_1)^-1.
template <FiniteGroup G>
HsForm<G> cbc_hs_form(const G& grp, const MacKey& key, const element_t<G>& a0, const element_t<G>& a1) {
  const CbcMac<G> mac(grp, key);
  auto probe = [grp, mac](const element_t<G>& a) {
    return GroupOracle<G>(
        [grp, mac, a](const element_t<G>& x) { return mac.tag(std::vector<element_t<G>>{a, grp.inv(x)}); },
        grp.element_bits());
  };
  return {grp, probe(a0), probe(a1), grp.mul(mac.inner()(a0), grp.inv(mac.inner()(a1)))};
}

}  // namespace hslab

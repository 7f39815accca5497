#pragma once

// Iterated keyed cipher E_{k,t}(x) = k + R_k^t(x) with R_k(x) = R(x + k),
// over XOR or Z/2^n.

#include "hslab/ciphers/feistel.hpp"
#include "hslab/error.hpp"
#include "hslab/oracle.hpp"

namespace hslab {

template <FiniteGroup G>
class SlideSpec {
 public:
  static constexpr std::uint64_t kMaxRounds = std::uint64_t{1} << 16;

  SlideSpec(G group, GroupOracle<G> r, std::uint64_t key, std::uint64_t rounds)
      : g_(std::move(group)), r_(std::move(r)), key_(key), rounds_(rounds) {
    if constexpr (!is_feistel_half_v<G>) throw UnsupportedError("slide cipher domain must be xor:<n> or z2n:<n>");
    if (rounds < 1 || rounds > kMaxRounds) throw UsageError("slide cipher round count must be in [1, 2^16]");
    require_member(g_, key, "SlideSpec");
  }

  const G& group() const { return g_; }
  const GroupOracle<G>& r() const { return r_; }
  std::uint64_t key() const { return key_; }
  std::uint64_t rounds() const { return rounds_; }

 private:
  G g_;
  GroupOracle<G> r_;
  std::uint64_t key_;
  std::uint64_t rounds_;
};

template <FiniteGroup G>
std::uint64_t slide_enc(const SlideSpec<G>& spec, std::uint64_t x) {
  const auto& g = spec.group();
  for (std::uint64_t i = 0; i < spec.rounds(); ++i) x = spec.r()(g.mul(x, spec.key()));
  return g.mul(spec.key(), x);
}

// Needs an invertible R.
template <FiniteGroup G>
std::uint64_t slide_dec(const SlideSpec<G>& spec, std::uint64_t c) {
  const auto& g = spec.group();
  const auto kinv = g.inv(spec.key());
  std::uint64_t x = g.mul(kinv, c);
  for (std::uint64_t i = 0; i < spec.rounds(); ++i) x = g.mul(spec.r().inverse(x), kinv);
  return x;
}

template <FiniteGroup G>
GroupOracle<G> slide_oracle(const SlideSpec<G>& spec) {
  return GroupOracle<G>([spec](const std::uint64_t& x) { return slide_enc(spec, x); }, spec.group().bits());
}

// f_0(x) = E(R(x)) - x and f_1(x) = R(E(x)) - x; for the slide cipher f_0(x + k) = f_1(x).
template <FiniteGroup G>
std::pair<GroupOracle<G>, GroupOracle<G>> slide_probes(const G& g, const GroupOracle<G>& e, const GroupOracle<G>& r) {
  GroupOracle<G> f0([g, e, r](const std::uint64_t& x) { return g.mul(e(r(x)), g.inv(x)); }, g.bits());
  GroupOracle<G> f1([g, e, r](const std::uint64_t& x) { return g.mul(r(e(x)), g.inv(x)); }, g.bits());
  return {f0, f1};
}

}  // namespace hslab

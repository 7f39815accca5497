#pragma once

// Hidden shift from Even-Mansour key recovery over G x G, using the
// permutations P_f(x, y) = (x, y f(x)).

#include <array>

#include <json.hpp>

#include "hslab/ciphers/even_mansour.hpp"
#include "hslab/instance.hpp"
#include "hslab/reductions/solver.hpp"

namespace hslab {

template <FiniteGroup G>
using PairElement = element_t<DirectSquare<G>>;

// P_f(x, y) = (x, y f(x)); inverse (x, y f(x)^-1).
template <FiniteGroup G>
GroupOracle<DirectSquare<G>> pair_permutation(const DirectSquare<G>& gg, const GroupOracle<G>& f) {
  const G base = gg.base();
  return GroupOracle<DirectSquare<G>>(
      [base, f](const PairElement<G>& v) { return PairElement<G>{v.first, base.mul(v.second, f(v.first))}; },
      gg.element_bits(),
      [base, f](const PairElement<G>& v) {
        return PairElement<G>{v.first, base.mul(v.second, base.inv(f(v.first)))};
      });
}

// Given (E, E^-1, P_g, P_g^-1) returns keys (K1, K2) with E = EM^{P_g}_{K1,K2}.
template <FiniteGroup G>
struct EmKeyRecoverer {
  using fn_type = std::function<std::optional<EmKey<DirectSquare<G>>>(
      const DirectSquare<G>&, const GroupOracle<DirectSquare<G>>& e, const GroupOracle<DirectSquare<G>>& p, Rng&)>;
  std::string name;
  fn_type run;
};

// The simulated cipher. F(x) and H(x) read f(x^-1), g(x^-1) as group elements;
// from g(x) = f(s x) they satisfy F(x) = H(x s), which is the relation the
// rewrite chain below uses.
template <FiniteGroup G>
struct KeyRecoveryChallenge {
  DirectSquare<G> gg;
  GroupOracle<G> F, H;
  GroupOracle<DirectSquare<G>> p_f, p_g, e;
  EmKey<DirectSquare<G>> key;  // k1 = (x1, y1), k2 = (x2, y2) for E over P_F
};

template <FiniteGroup G>
KeyRecoveryChallenge<G> make_key_recovery_challenge(const G& grp, const LabelOracle<G>& f, const LabelOracle<G>& g,
                                                    std::uint64_t seed) {
  DirectSquare<G> gg(grp);
  auto F = group_valued(grp, precompose_inverse(grp, f));
  auto H = group_valued(grp, precompose_inverse(grp, g));
  auto p_f = pair_permutation(gg, F);
  auto p_g = pair_permutation(gg, H);
  auto key = em_keygen(gg, derive_seed(seed, "keyrec-keys"));
  auto e = em_oracle(gg, p_f, key);
  return {gg, F, H, p_f, p_g, e, key};
}

// The keys of E relative to P_g: (x1 s, y1) and (s^-1 x2, y2).
template <FiniteGroup G>
EmKey<DirectSquare<G>> keys_relative_to_shifted(const KeyRecoveryChallenge<G>& c, const element_t<G>& s) {
  const auto& b = c.gg.base();
  return {{b.mul(c.key.k1.first, s), c.key.k1.second}, {b.mul(b.inv(s), c.key.k2.first), c.key.k2.second}};
}

// The six expressions of the rewrite chain at (x, y); all are equal when
// F(z) = H(z s).
template <FiniteGroup G>
std::array<PairElement<G>, 6> rewrite_chain(const KeyRecoveryChallenge<G>& c, const element_t<G>& s,
                                            const PairElement<G>& point) {
  const auto& b = c.gg.base();
  const auto& [x, y] = point;
  const auto& [x1, y1] = c.key.k1;
  const auto& [x2, y2] = c.key.k2;
  const PairElement<G> k2s{b.mul(b.inv(s), x2), y2};
  const auto xx1 = b.mul(x, x1);
  const auto yy1 = b.mul(y, y1);
  const auto xx1s = b.mul(xx1, s);
  return {c.e(point),
          c.gg.mul(c.p_f(PairElement<G>{xx1, yy1}), c.key.k2),
          c.gg.mul(PairElement<G>{xx1, b.mul(yy1, c.F(xx1))}, c.key.k2),
          c.gg.mul(PairElement<G>{xx1s, b.mul(yy1, c.F(xx1))}, k2s),
          c.gg.mul(PairElement<G>{xx1s, b.mul(yy1, c.H(xx1s))}, k2s),
          c.gg.mul(c.p_g(PairElement<G>{xx1s, yy1}), k2s)};
}

template <FiniteGroup G>
struct KeyRecoveryResult {
  std::optional<element_t<G>> shift;
  std::string failure;
  nlohmann::json diagnostics = nlohmann::json::object();
};

// Reads s from the first coordinates of K1 and checks the other three
// coordinates against the challenge keys. The y-keys are only determined up to
// (y1 z, z^-1 y2) with z commuting with every value of F, so that slack is allowed.
template <FiniteGroup G>
KeyRecoveryResult<G> extract_shift_from_keys(const KeyRecoveryChallenge<G>& c, const EmKey<DirectSquare<G>>& got) {
  const auto& b = c.gg.base();
  KeyRecoveryResult<G> res;
  if (!c.gg.contains(got.k1) || !c.gg.contains(got.k2)) {
    res.failure = "keys outside G x G";
    return res;
  }
  const auto s = b.mul(b.inv(c.key.k1.first), got.k1.first);
  const auto z = b.mul(b.inv(c.key.k1.second), got.k1.second);
  const bool y1_ok = z == b.identity();
  const bool y2_ok = got.k2.second == b.mul(b.inv(z), c.key.k2.second);
  const bool x2_ok = got.k2.first == b.mul(b.inv(s), c.key.k2.first);
  bool z_ok = y1_ok || b.is_abelian();
  if (!z_ok) {
    Rng rng(derive_seed(0, "keyrec-center"));
    z_ok = true;
    for (int i = 0; i < 32 && z_ok; ++i) {
      const auto v = c.F(b.sample(rng));
      z_ok = b.mul(z, v) == b.mul(v, z);
    }
  }
  if (!(y2_ok && x2_ok && z_ok)) {
    res.failure = "keys inconsistent with the planted cipher";
    res.diagnostics = {{"candidate_shift", b.format(s)}, {"y1_matches", y1_ok}, {"y2_matches", y2_ok},
                       {"x2_matches", x2_ok}, {"y_slack_commutes", z_ok}};
    return res;
  }
  res.shift = s;
  return res;
}

template <FiniteGroup G>
KeyRecoveryResult<G> hs_from_em_keyrecovery(const EmKeyRecoverer<G>& adversary, const G& grp, const LabelOracle<G>& f,
                                            const LabelOracle<G>& g, std::uint64_t seed) {
  const auto c = make_key_recovery_challenge(grp, f, g, seed);
  Rng rng(derive_seed(seed, "keyrec-adversary"));
  const auto keys = adversary.run(c.gg, c.e, c.p_g, rng);
  if (!keys) return {std::nullopt, "adversary gave no keys", nlohmann::json::object()};
  return extract_shift_from_keys(c, *keys);
}

template <FiniteGroup G>
KeyRecoveryResult<G> hs_from_em_keyrecovery(const EmKeyRecoverer<G>& adversary, const HSInstance<G>& inst,
                                            std::uint64_t seed) {
  return hs_from_em_keyrecovery(adversary, inst.group(), inst.f(), inst.g(), seed);
}

// Black-box key search: every K1 in G x G, K2 from one query pair, then checked
// on `samples` further points. |G|^2 <= 2^20.
template <FiniteGroup G>
EmKeyRecoverer<G> brute_force_key_recoverer(std::uint64_t samples = 24) {
  EmKeyRecoverer<G> a;
  a.name = "brute-force-key-search";
  a.run = [samples](const DirectSquare<G>& gg, const GroupOracle<DirectSquare<G>>& e,
                    const GroupOracle<DirectSquare<G>>& p, Rng& rng) -> std::optional<EmKey<DirectSquare<G>>> {
    const std::uint64_t n = order_u64(gg);
    if (n > (std::uint64_t{1} << 20)) throw BudgetError("key search needs |G|^2 <= 2^20");
    std::vector<PairElement<G>> xs, ex;
    for (std::uint64_t i = 0; i <= samples; ++i) {
      xs.push_back(gg.sample(rng));
      ex.push_back(e(xs.back()));
    }
    for (std::uint64_t r = 0; r < n; ++r) {
      const auto k1 = gg.unrank(r);
      const auto k2 = gg.mul(gg.inv(p(gg.mul(xs[0], k1))), ex[0]);
      bool ok = true;
      for (std::uint64_t i = 1; i <= samples && ok; ++i) ok = gg.mul(p(gg.mul(xs[i], k1)), k2) == ex[i];
      if (ok) return EmKey<DirectSquare<G>>{k1, k2};
    }
    return std::nullopt;
  };
  return a;
}

}  // namespace hslab

#pragma once

// Hidden Shift challenge generators.
//
// Shifts act on the left: a planted instance satisfies g(x) = f(s x).
// The secret sits behind open_*() accessors that flip a shared "opened" flag;
// solver harnesses call require_sealed() before handing out the oracles.

#include <atomic>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "hslab/error.hpp"
#include "hslab/groups.hpp"
#include "hslab/oracle.hpp"

namespace hslab {

enum class Variant { HS, RHS, DRHS, RHSP, APPROX };

inline std::string to_string(Variant v) {
  switch (v) {
    case Variant::HS: return "hs";
    case Variant::RHS: return "rhs";
    case Variant::DRHS: return "drhs";
    case Variant::RHSP: return "rhsp";
    case Variant::APPROX: return "approx";
  }
  return "?";
}

inline Variant parse_variant(std::string_view s) {
  if (s == "hs") return Variant::HS;
  if (s == "rhs") return Variant::RHS;
  if (s == "drhs") return Variant::DRHS;
  if (s == "rhsp") return Variant::RHSP;
  if (s == "approx") return Variant::APPROX;
  throw UsageError("unknown variant '" + std::string(s) + "'");
}

template <FiniteGroup G>
struct InstanceOptions {
  std::optional<element_t<G>> shift;  // HS: planted shift (default: sampled)
  std::optional<bool> shifted;        // DRHS: override the seeded coin
  double delta = 0.0;                 // APPROX: fraction of corrupted points
};

template <FiniteGroup G>
class HSInstance {
 public:
  struct Secret {
    bool shifted = true;
    std::optional<element_t<G>> shift;
    std::atomic<bool> opened{false};
  };

  HSInstance(Variant variant, G group, unsigned ell, std::uint64_t seed, LabelOracle<G> f, LabelOracle<G> g,
             std::shared_ptr<Secret> secret, double delta = 0.0)
      : variant_(variant), group_(std::move(group)), ell_(ell), seed_(seed), delta_(delta), f_(std::move(f)),
        g_(std::move(g)), secret_(std::move(secret)) {}

  Variant variant() const { return variant_; }
  const G& group() const { return group_; }
  unsigned ell() const { return ell_; }
  std::uint64_t seed() const { return seed_; }
  double delta() const { return delta_; }
  const LabelOracle<G>& f() const { return f_; }
  const LabelOracle<G>& g() const { return g_; }

  // Planted shift (or subgroup generator for RHSP). Marks the instance opened.
  element_t<G> open_shift() const {
    secret_->opened = true;
    if (!secret_->shift) throw UsageError("instance has no planted shift (independent pair)");
    return *secret_->shift;
  }

  bool open_is_shifted() const {
    secret_->opened = true;
    return secret_->shifted;
  }

  bool opened() const { return secret_->opened.load(); }

  void require_sealed(const char* who) const {
    if (opened()) throw UsageError(std::string(who) + ": instance secret was opened before solving");
  }

  nlohmann::json to_json() const {
    return {{"variant", to_string(variant_)}, {"group", group_.descriptor()}, {"ell", ell_}, {"seed", seed_},
            {"opened", opened()}};
  }

 private:
  Variant variant_;
  G group_;
  unsigned ell_;
  std::uint64_t seed_;
  double delta_;
  LabelOracle<G> f_, g_;
  std::shared_ptr<Secret> secret_;
};

// Instance from caller-supplied f and shift: g = f o L_s.
template <FiniteGroup G>
HSInstance<G> planted_instance(const G& g, const LabelOracle<G>& f, const element_t<G>& s, Variant variant = Variant::HS,
                               std::uint64_t seed = 0) {
  auto secret = std::make_shared<typename HSInstance<G>::Secret>();
  secret->shift = s;
  return HSInstance<G>(variant, g, static_cast<unsigned>(f.out_bits()), seed, f, shift_oracle(g, f, s), secret);
}

namespace detail {

template <FiniteGroup G>
HSInstance<G> gen_rhsp(const G& grp, unsigned ell, std::uint64_t seed, const InstanceOptions<G>& opt) {
  if constexpr (!std::is_same_v<G, XorGroup>) {
    throw UnsupportedError("rhsp instances are defined on xor groups only");
  } else {
    Rng rng(derive_seed(seed, "instance-shift"));
    std::uint64_t s = opt.shift ? *opt.shift : 0;
    while (!opt.shift && s == 0) s = grp.sample(rng);
    require_member(grp, s, "gen_instance");
    const auto base = random_oracle(grp, ell, derive_seed(seed, "instance-f"));
    // f is constant on {x, x ^ s}: evaluate the base function on the smaller representative.
    auto f = LabelOracle<G>([base, s](const std::uint64_t& x) { return base(std::min(x, x ^ s)); }, ell);
    auto secret = std::make_shared<typename HSInstance<G>::Secret>();
    secret->shift = s;
    return HSInstance<G>(Variant::RHSP, grp, ell, seed, f, f, secret);
  }
}

// Corruption predicate hitting exactly floor(delta |G|) points when |G| < 2^64.
template <FiniteGroup G>
std::function<bool(const element_t<G>&)> corruption_set(const G& grp, double delta, std::uint64_t seed) {
  if (delta < 0 || delta > 1) throw UsageError("delta must be in [0, 1]");
  const std::uint64_t key = derive_seed(seed, "instance-corrupt");
  if (has_u64_order(grp)) {
    const std::uint64_t n = order_u64(grp);
    const auto cutoff = static_cast<std::uint64_t>(std::floor(delta * static_cast<double>(n)));
    auto perm = std::make_shared<RankFeistel>(key, bits_for_count(n), n);
    return [grp, perm, cutoff](const element_t<G>& x) { return perm->forward(grp.rank(x)) < cutoff; };
  }
  const long double scaled = static_cast<long double>(delta) * 18446744073709551616.0L;
  const std::uint64_t threshold = scaled >= 18446744073709551615.0L ? ~0ULL : static_cast<std::uint64_t>(scaled);
  return [grp, key, threshold](const element_t<G>& x) { return element_hash(grp, key, x) < threshold; };
}

}  // namespace detail

template <FiniteGroup G>
HSInstance<G> gen_instance(Variant variant, const G& grp, unsigned ell, std::uint64_t seed,
                           const InstanceOptions<G>& opt = {}) {
  if (variant == Variant::RHSP) return detail::gen_rhsp(grp, ell, seed, opt);

  Rng rng(derive_seed(seed, "instance-shift"));
  const element_t<G> s = (variant == Variant::HS && opt.shift) ? *opt.shift : grp.sample(rng);
  require_member(grp, s, "gen_instance");
  const auto f = random_oracle(grp, ell, derive_seed(seed, "instance-f"));
  auto secret = std::make_shared<typename HSInstance<G>::Secret>();

  if (variant == Variant::DRHS) {
    const bool shifted = opt.shifted ? *opt.shifted : Rng(derive_seed(seed, "instance-coin")).coin();
    secret->shifted = shifted;
    if (!shifted)
      return HSInstance<G>(variant, grp, ell, seed, f, random_oracle(grp, ell, derive_seed(seed, "instance-g")), secret);
  }
  secret->shift = s;

  if (variant == Variant::APPROX) {
    const auto noise = random_oracle(grp, ell, derive_seed(seed, "instance-noise"));
    const auto bad = detail::corruption_set(grp, opt.delta, seed);
    auto g = LabelOracle<G>(
        [grp, f, noise, bad, s](const element_t<G>& x) { return bad(x) ? noise(x) : f(grp.mul(s, x)); }, ell);
    return HSInstance<G>(variant, grp, ell, seed, f, g, secret, opt.delta);
  }
  return HSInstance<G>(variant, grp, ell, seed, f, shift_oracle(grp, f, s), secret);
}

}  // namespace hslab

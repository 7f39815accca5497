#pragma once

// Counted black-box functions on groups.
//
// An Oracle wraps a pure evaluation closure plus an atomic query counter.
// Copies share the counter, so a handle passed to a solver and the handle
// kept by the harness report the same tally.

#include <algorithm>
#include <array>
#include <atomic>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "hslab/error.hpp"
#include "hslab/groups.hpp"
#include "hslab/rng.hpp"

namespace hslab {

using Label = std::uint64_t;

template <class In, class Out>
class Oracle {
 public:
  using forward_fn = std::function<Out(const In&)>;
  using backward_fn = std::function<In(const Out&)>;

  Oracle() = default;
  Oracle(forward_fn fwd, std::size_t out_bits, backward_fn bwd = {})
      : state_(std::make_shared<State>(std::move(fwd), std::move(bwd), out_bits)) {}

  Out operator()(const In& x) const {
    state_->queries.fetch_add(1, std::memory_order_relaxed);
    return state_->forward(x);
  }

  In inverse(const Out& y) const {
    if (!state_->backward) throw UsageError("oracle has no inverse");
    state_->queries.fetch_add(1, std::memory_order_relaxed);
    return state_->backward(y);
  }

  bool valid() const { return state_ != nullptr; }
  bool invertible() const { return state_ && static_cast<bool>(state_->backward); }
  std::size_t out_bits() const { return state_->out_bits; }
  std::uint64_t queries() const { return state_->queries.load(std::memory_order_relaxed); }
  void reset_queries() const { state_->queries.store(0, std::memory_order_relaxed); }

 private:
  struct State {
    State(forward_fn f, backward_fn b, std::size_t bits) : forward(std::move(f)), backward(std::move(b)), out_bits(bits) {}
    forward_fn forward;
    backward_fn backward;
    std::size_t out_bits;
    std::atomic<std::uint64_t> queries{0};
  };
  std::shared_ptr<State> state_;
};

// G -> {0,1}^ell
template <FiniteGroup G>
using LabelOracle = Oracle<element_t<G>, Label>;

// G -> G (permutations, round functions, group-valued f)
template <FiniteGroup G>
using GroupOracle = Oracle<element_t<G>, element_t<G>>;

// 2 * ceil(log2 |G|) + 16, capped at 64.
template <FiniteGroup G>
unsigned default_ell(const G& g) {
  return static_cast<unsigned>(std::min<std::size_t>(64, 2 * bits_for_count(g.order()) + 16));
}

// Keyed hash of an element's canonical encoding.
template <FiniteGroup G>
std::uint64_t element_hash(const G& g, std::uint64_t key, const element_t<G>& x) {
  if constexpr (std::is_same_v<element_t<G>, std::uint64_t>) {
    if (!g.contains(x)) throw UsageError("oracle input is not in " + g.descriptor());
    return keyed_hash_words(key, {x});
  } else {
    const BitString b = g.encode(x);
    return keyed_hash_words(key, {keyed_hash(key ^ b.width(), b.bytes())});
  }
}

namespace detail {
template <FiniteGroup G>
std::uint64_t domain_key(const G& g, std::uint64_t seed, std::string_view role) {
  return keyed_hash_words(derive_seed(seed, role), {keyed_hash(0, g.descriptor())});
}

inline std::uint64_t low_bits(std::uint64_t v, std::size_t bits) { return bits >= 64 ? v : v & ((1ULL << bits) - 1); }
}  // namespace detail

// Deterministic pseudorandom function G -> {0,1}^ell.
template <FiniteGroup G>
LabelOracle<G> random_oracle(const G& g, unsigned ell, std::uint64_t seed) {
  if (ell < 1 || ell > 64) throw UsageError("random_oracle: ell must be in [1, 64]");
  const std::uint64_t key = detail::domain_key(g, seed, "random-oracle");
  return LabelOracle<G>([g, key, ell](const element_t<G>& x) { return detail::low_bits(element_hash(g, key, x), ell); },
                        ell);
}

// Draws a uniform element deterministically from a 64-bit hash value.
template <FiniteGroup G>
element_t<G> element_from_hash(const G& g, std::uint64_t h) {
  if (has_u64_order(g)) {
    const std::uint64_t n = order_u64(g);
    const std::size_t bits = bits_for_count(n);
    for (std::uint64_t attempt = 0;; ++attempt) {
      const std::uint64_t v = detail::low_bits(attempt == 0 ? h : keyed_hash_words(h, {attempt}), bits);
      if (v < n) return g.unrank(v);
    }
  }
  Rng rng(h);
  return g.sample(rng);
}

// Deterministic pseudorandom function G -> G (uniform images via rank rejection).
template <FiniteGroup G>
GroupOracle<G> random_function_to_group(const G& g, std::uint64_t seed) {
  const std::uint64_t key = detail::domain_key(g, seed, "random-function");
  return GroupOracle<G>([g, key](const element_t<G>& x) { return element_from_hash(g, element_hash(g, key, x)); },
                        g.element_bits());
}

// Reads labels as group elements: x -> element_from_hash(f(x)). Applying the
// same map to both halves of a shift pair keeps the shift.
template <FiniteGroup G>
GroupOracle<G> group_valued(const G& g, const LabelOracle<G>& f) {
  return GroupOracle<G>([g, f](const element_t<G>& x) { return element_from_hash(g, f(x)); }, g.element_bits());
}

// Keyed permutation of [0, limit) with limit <= 2^bits: a 10-round balanced
// Feistel network on an even width >= bits, cycle-walking back into range.
class RankFeistel {
 public:
  static constexpr int kRounds = 10;

  RankFeistel(std::uint64_t key, std::size_t bits, unsigned __int128 limit) : key_(key), limit_(limit) {
    if (bits > 64) throw UsageError("RankFeistel: width > 64");
    width_ = std::max<std::size_t>(2, bits + (bits & 1));
    half_ = width_ / 2;
    half_mask_ = half_ == 64 ? ~0ULL : (1ULL << half_) - 1;
    if (limit_ == 0 || limit_ > (static_cast<unsigned __int128>(1) << width_))
      throw UsageError("RankFeistel: bad domain size");
    for (int i = 0; i < kRounds; ++i) round_keys_[i] = keyed_hash_words(key, {static_cast<std::uint64_t>(i)});
  }

  std::uint64_t forward(std::uint64_t v) const {
    check(v);
    do v = encrypt_once(v);
    while (v >= limit_);
    return v;
  }

  std::uint64_t backward(std::uint64_t v) const {
    check(v);
    do v = decrypt_once(v);
    while (v >= limit_);
    return v;
  }

 private:
  void check(std::uint64_t v) const {
    if (v >= limit_) throw UsageError("RankFeistel: input out of range");
  }
  std::uint64_t round(int i, std::uint64_t r) const { return keyed_hash_words(round_keys_[i], {r}) & half_mask_; }
  std::uint64_t encrypt_once(std::uint64_t v) const {
    std::uint64_t l = (v >> half_) & half_mask_, r = v & half_mask_;
    for (int i = 0; i < kRounds; ++i) {
      const std::uint64_t t = l ^ round(i, r);
      l = r;
      r = t;
    }
    return join(l, r);
  }
  std::uint64_t decrypt_once(std::uint64_t v) const {
    std::uint64_t l = (v >> half_) & half_mask_, r = v & half_mask_;
    for (int i = kRounds - 1; i >= 0; --i) {
      const std::uint64_t t = r ^ round(i, l);
      r = l;
      l = t;
    }
    return join(l, r);
  }
  std::uint64_t join(std::uint64_t l, std::uint64_t r) const { return (l << half_) | r; }

  std::uint64_t key_;
  unsigned __int128 limit_;
  std::size_t width_ = 0, half_ = 0;
  std::uint64_t half_mask_ = 0;
  std::array<std::uint64_t, kRounds> round_keys_{};
};

namespace detail {

// Domain size for rank-based permutations: |G| when it fits, 2^64 for the
// 64-bit word groups, otherwise unsupported.
template <FiniteGroup G>
unsigned __int128 rank_domain(const G& g, std::size_t& bits) {
  const BigUInt n = g.order();
  bits = bits_for_count(n);
  if (bits > 64) throw UnsupportedError(g.descriptor() + ": permutations need a rank below 2^64");
  if (n == (BigUInt(1) << 64)) return static_cast<unsigned __int128>(1) << 64;
  return static_cast<unsigned __int128>(static_cast<std::uint64_t>(n));
}

template <FiniteGroup G>
GroupOracle<G> feistel_permutation(const G& g, std::uint64_t key) {
  std::size_t bits = 0;
  const auto limit = rank_domain(g, bits);
  auto prp = std::make_shared<RankFeistel>(key, bits, limit);
  return GroupOracle<G>([g, prp](const element_t<G>& x) { return g.unrank(prp->forward(g.rank(x))); },
                        g.element_bits(),
                        [g, prp](const element_t<G>& y) { return g.unrank(prp->backward(g.rank(y))); });
}

}  // namespace detail

inline constexpr std::uint64_t kPermutationTableLimit = std::uint64_t{1} << 20;

// Seeded random permutation of G with inverse: a Fisher-Yates table for
// |G| <= 2^20, otherwise a Feistel network on ranks.
template <FiniteGroup G>
GroupOracle<G> random_permutation(const G& g, std::uint64_t seed) {
  if (g.order() > kPermutationTableLimit)
    return detail::feistel_permutation(g, detail::domain_key(g, seed, "permutation-feistel"));
  const std::uint64_t n = order_u64(g);
  struct Table {
    std::vector<std::uint32_t> fwd, bwd;
  };
  auto t = std::make_shared<Table>();
  t->fwd.resize(n);
  t->bwd.resize(n);
  std::iota(t->fwd.begin(), t->fwd.end(), 0u);
  Rng rng(detail::domain_key(g, seed, "permutation-table"));
  for (std::uint64_t i = n; i > 1; --i) std::swap(t->fwd[i - 1], t->fwd[rng.below(i)]);
  for (std::uint64_t i = 0; i < n; ++i) t->bwd[t->fwd[i]] = static_cast<std::uint32_t>(i);
  return GroupOracle<G>([g, t](const element_t<G>& x) { return g.unrank(t->fwd[g.rank(x)]); }, g.element_bits(),
                        [g, t](const element_t<G>& y) { return g.unrank(t->bwd[g.rank(y)]); });
}

// Keyed permutation used as a block cipher E_k on G.
template <FiniteGroup G>
GroupOracle<G> inner_prp(std::uint64_t key_seed, const G& g) {
  return detail::feistel_permutation(g, detail::domain_key(g, key_seed, "inner-prp"));
}

// x -> f(s x)
template <FiniteGroup G, class Out>
Oracle<element_t<G>, Out> shift_oracle(const G& g, const Oracle<element_t<G>, Out>& f, const element_t<G>& s) {
  require_member(g, s, "shift_oracle");
  return Oracle<element_t<G>, Out>([g, f, s](const element_t<G>& x) { return f(g.mul(s, x)); }, f.out_bits());
}

// x -> f(t x); same as shift_oracle, named for the blinding step.
template <FiniteGroup G, class Out>
Oracle<element_t<G>, Out> precompose_shift(const G& g, const Oracle<element_t<G>, Out>& f, const element_t<G>& t) {
  return shift_oracle(g, f, t);
}

// x -> f(x^-1)
template <FiniteGroup G, class Out>
Oracle<element_t<G>, Out> precompose_inverse(const G& g, const Oracle<element_t<G>, Out>& f) {
  return Oracle<element_t<G>, Out>([g, f](const element_t<G>& x) { return f(g.inv(x)); }, f.out_bits());
}

// x -> h(f(x)); h must accept f's output width.
template <class In, class Mid, class H>
auto compose_left(const H& h, const Oracle<In, Mid>& f) {
  if (h.in_bits() != f.out_bits())
    throw UsageError("compose_left: width mismatch (" + std::to_string(h.in_bits()) + " vs " +
                     std::to_string(f.out_bits()) + ")");
  using Out = std::invoke_result_t<const H&, const Mid&>;
  return Oracle<In, Out>([h, f](const In& x) { return h(f(x)); }, h.out_bits());
}

// Left translation L_k(x) = k x and right translation R_k(x) = x k as permutation oracles.
template <FiniteGroup G>
GroupOracle<G> left_translation(const G& g, const element_t<G>& k) {
  require_member(g, k, "left_translation");
  const auto ki = g.inv(k);
  return GroupOracle<G>([g, k](const element_t<G>& x) { return g.mul(k, x); }, g.element_bits(),
                        [g, ki](const element_t<G>& y) { return g.mul(ki, y); });
}

template <FiniteGroup G>
GroupOracle<G> right_translation(const G& g, const element_t<G>& k) {
  require_member(g, k, "right_translation");
  const auto ki = g.inv(k);
  return GroupOracle<G>([g, k](const element_t<G>& x) { return g.mul(x, k); }, g.element_bits(),
                        [g, ki](const element_t<G>& y) { return g.mul(y, ki); });
}

// Oracle wrapper over an arbitrary callable, for tests and adapters.
template <class In, class Out, class Fn>
Oracle<In, Out> make_oracle(Fn fn, std::size_t out_bits) {
  return Oracle<In, Out>(std::function<Out(const In&)>(std::move(fn)), out_bits);
}

}  // namespace hslab

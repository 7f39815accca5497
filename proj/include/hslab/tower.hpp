#pragma once

// Subgroup towers {1} = G^(0) < G^(1) < ... < G^(s) = G with left transversals,
// and SubgroupView, a group-like handle on one level of a tower.
//
//   Z/2^n: G^(t) = multiples of 2^(n-t); transversal of G^(t-1) in G^(t) is {0, 2^(n-t)}.
//   S_n:   G^(t) = S_t fixing letters t+1..n; transversal is {id} plus the
//          transpositions (j t), j < t, i.e. one element sending t to each letter.

#include <optional>
#include <type_traits>
#include <vector>

#include "hslab/error.hpp"
#include "hslab/groups.hpp"

namespace hslab {

template <class G>
struct has_tower : std::false_type {};
template <>
struct has_tower<CyclicPow2Group> : std::true_type {};
template <>
struct has_tower<SymmetricGroup> : std::true_type {};

template <class G>
inline constexpr bool has_tower_v = has_tower<G>::value;

template <FiniteGroup G>
class SubgroupTower {
 public:
  explicit SubgroupTower(G g) : g_(std::move(g)) {
    if constexpr (!has_tower_v<G>) throw UnsupportedError(g_.descriptor() + ": no subgroup tower for this family");
  }

  const G& group() const { return g_; }

  // Number of proper steps s; level s is the whole group.
  int height() const {
    if constexpr (std::is_same_v<G, CyclicPow2Group>) return static_cast<int>(g_.bits());
    else if constexpr (std::is_same_v<G, SymmetricGroup>) return g_.degree();
    else return 0;
  }

  // [G^(t) : G^(t-1)] for t in [1, height].
  std::uint64_t index(int t) const {
    check_step(t);
    if constexpr (std::is_same_v<G, CyclicPow2Group>) return 2;
    else return static_cast<std::uint64_t>(t);
  }

  std::vector<std::uint64_t> indices() const {
    std::vector<std::uint64_t> v;
    for (int t = 1; t <= height(); ++t) v.push_back(index(t));
    return v;
  }

  // Left transversal of G^(t-1) in G^(t); the first element is the identity.
  std::vector<element_t<G>> transversal(int t) const {
    check_step(t);
    std::vector<element_t<G>> reps{g_.identity()};
    if constexpr (std::is_same_v<G, CyclicPow2Group>) {
      reps.push_back(std::uint64_t{1} << (g_.bits() - static_cast<unsigned>(t)));
    } else if constexpr (std::is_same_v<G, SymmetricGroup>) {
      for (int j = 1; j < t; ++j) reps.push_back(g_.transposition(j, t));
    }
    return reps;
  }

  bool contains(int level, const element_t<G>& a) const {
    check_level(level);
    if (!g_.contains(a)) return false;
    if constexpr (std::is_same_v<G, CyclicPow2Group>) {
      const unsigned low = g_.bits() - static_cast<unsigned>(level);
      return low == 0 || (a & ((std::uint64_t{1} << low) - 1)) == 0;
    } else if constexpr (std::is_same_v<G, SymmetricGroup>) {
      for (int x = level; x < g_.degree(); ++x)
        if (a.images[x] != x) return false;
      return true;
    } else {
      return false;
    }
  }

  std::uint64_t level_order(int level) const {
    check_level(level);
    if constexpr (std::is_same_v<G, CyclicPow2Group>) {
      if (level == 64) throw BudgetError("level order does not fit in 64 bits");
      return std::uint64_t{1} << level;
    } else {
      if (level > lehmer::kMaxRankedDegree) throw BudgetError("level order does not fit in 64 bits");
      return lehmer::factorial(level);
    }
  }

  // Dense enumeration of level `level` by index in [0, level_order).
  element_t<G> element_at(int level, std::uint64_t idx) const {
    check_level(level);
    if constexpr (std::is_same_v<G, CyclicPow2Group>) {
      return idx << (g_.bits() - static_cast<unsigned>(level));
    } else if constexpr (std::is_same_v<G, SymmetricGroup>) {
      Permutation p = g_.identity();
      const auto head = lehmer::unrank(idx, level);
      std::copy(head.begin(), head.end(), p.images.begin());
      return p;
    } else {
      return g_.identity();
    }
  }

  element_t<G> sample(int level, Rng& rng) const {
    check_level(level);
    if constexpr (std::is_same_v<G, CyclicPow2Group>) {
      if (level == 0) return 0;
      const std::uint64_t m = level == 64 ? ~0ULL : (std::uint64_t{1} << level) - 1;
      return (rng.next() & m) << (g_.bits() - static_cast<unsigned>(level));
    } else if constexpr (std::is_same_v<G, SymmetricGroup>) {
      Permutation p = g_.identity();
      for (int i = level - 1; i > 0; --i) std::swap(p.images[i], p.images[rng.below(static_cast<std::uint64_t>(i) + 1)]);
      return p;
    } else {
      return g_.identity();
    }
  }

 private:
  void check_step(int t) const {
    if (t < 1 || t > height()) throw UsageError("tower step out of range");
  }
  void check_level(int level) const {
    if (level < 0 || level > height()) throw UsageError("tower level out of range");
  }
  G g_;
};

// One level of a tower (or the whole group when built from the group alone).
template <FiniteGroup G>
class SubgroupView {
 public:
  explicit SubgroupView(G g) : g_(std::move(g)) {}
  SubgroupView(SubgroupTower<G> tower, int level) : g_(tower.group()), tower_(std::move(tower)), level_(level) {
    if (level < 0 || level > tower_->height()) throw UsageError("tower level out of range");
  }

  const G& group() const { return g_; }
  bool is_full() const { return !tower_ || level_ == tower_->height(); }

  std::uint64_t order() const { return tower_ ? tower_->level_order(level_) : order_u64(g_); }
  element_t<G> element_at(std::uint64_t i) const { return tower_ ? tower_->element_at(level_, i) : g_.unrank(i); }
  element_t<G> sample(Rng& rng) const { return tower_ ? tower_->sample(level_, rng) : g_.sample(rng); }
  bool contains(const element_t<G>& a) const { return tower_ ? tower_->contains(level_, a) : g_.contains(a); }

 private:
  G g_;
  std::optional<SubgroupTower<G>> tower_;
  int level_ = 0;
};

}  // namespace hslab

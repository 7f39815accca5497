#pragma once

// Pluggable solver callbacks. Each receives the domain it works on (a whole
// group or one level of a subgroup tower), the oracle pair, and a random source.

#include <functional>
#include <optional>
#include <string>

#include "hslab/groups.hpp"
#include "hslab/oracle.hpp"
#include "hslab/tower.hpp"

namespace hslab {

// Finds s with g(x) = f(s x), or returns nothing.
template <FiniteGroup G>
struct RhsSolver {
  using result_type = std::optional<element_t<G>>;
  using fn_type = std::function<result_type(const SubgroupView<G>&, const LabelOracle<G>&, const LabelOracle<G>&, Rng&)>;

  std::string name;
  std::uint64_t query_bound = 0;  // upper bound on oracle queries per call
  fn_type run;
};

// Decides "shifted" (true) versus "independent" (false).
template <FiniteGroup G>
struct DrhsDecider {
  using fn_type = std::function<bool(const SubgroupView<G>&, const LabelOracle<G>&, const LabelOracle<G>&, Rng&)>;

  std::string name;
  std::uint64_t query_bound = 0;
  double completeness_error = 0;  // P[says independent | shifted]
  double soundness_error = 0;     // P[says shifted | independent]
  bool degenerate = false;        // accepts without looking at the oracles
  fn_type run;
};

// Sample budget for classical shift checks: ceil(log2 |H|) + 20.
inline std::uint64_t default_check_samples(std::uint64_t domain_order) { return bits_for_count(domain_order) + 20; }

}  // namespace hslab

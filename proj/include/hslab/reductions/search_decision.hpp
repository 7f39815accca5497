#pragma once

// Decision from search (verify the solver's claim) and search from decision
// (descend a subgroup tower one coset at a time).

#include <sstream>

#include <json.hpp>

#include "hslab/reductions/amplify.hpp"

namespace hslab {

// "shifted" iff the solver returns a shift that survives `check` sample points.
// check = 0 accepts unconditionally and marks the decider degenerate.
template <FiniteGroup G>
DrhsDecider<G> drhs_from_rhs(RhsSolver<G> solver, std::uint64_t check) {
  DrhsDecider<G> d;
  d.name = "verified(" + solver.name + ")";
  d.query_bound = solver.query_bound + 2 * check;
  d.degenerate = check == 0;
  d.run = [solver, check](const SubgroupView<G>& dom, const LabelOracle<G>& f, const LabelOracle<G>& g, Rng& rng) {
    if (check == 0) return true;
    const auto r = solver.run(dom, f, g, rng);
    return r && dom.contains(*r) && check_shift(dom, f, g, *r, check, rng);
  };
  return d;
}

template <FiniteGroup G>
struct TowerSearchResult {
  std::optional<element_t<G>> shift;
  std::string failure;  // empty on success
  std::uint64_t decider_calls = 0;
  std::uint64_t reruns = 0;
  int levels_decided = 0;
  nlohmann::json diagnostics = nlohmann::json::object();
};

// Error bound for the descent: sum over non-trivial steps t of
// index(t) * soundness + completeness.
template <FiniteGroup G>
double tower_error_bound(const SubgroupTower<G>& tower, double completeness_error, double soundness_error) {
  double b = 0;
  for (int t = 1; t <= tower.height(); ++t) {
    const auto idx = tower.index(t);
    if (idx > 1) b += static_cast<double>(idx) * soundness_error + completeness_error;
  }
  return b;
}

// At step t the current pair satisfies g_cur(x) = f(sigma x) with sigma in G^(t).
// The coset rep alpha with sigma alpha in G^(t-1) is the one where f and
// x -> g_cur(alpha x) are shifts of each other on G^(t-1). Then
// s = (alpha_top ... alpha_1)^-1.
template <FiniteGroup G>
TowerSearchResult<G> search_via_tower(const DrhsDecider<G>& decider, const SubgroupTower<G>& tower,
                                      const LabelOracle<G>& f, const LabelOracle<G>& g, Rng& rng) {
  const auto& grp = tower.group();
  TowerSearchResult<G> res;
  auto g_cur = g;
  auto acc = grp.identity();  // alpha_top ... alpha_t
  for (int t = tower.height(); t >= 1; --t) {
    const auto reps = tower.transversal(t);
    if (reps.size() == 1) continue;
    const SubgroupView<G> below(tower, t - 1);
    std::vector<std::size_t> accepted;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      ++res.decider_calls;
      if (decider.run(below, f, precompose_shift(grp, g_cur, reps[i]), rng)) accepted.push_back(i);
    }
    if (accepted.size() > 1) {
      std::vector<std::size_t> again;
      for (auto i : accepted) {
        ++res.decider_calls;
        ++res.reruns;
        Rng fresh = rng.fork("tower-rerun");
        if (decider.run(below, f, precompose_shift(grp, g_cur, reps[i]), fresh)) again.push_back(i);
      }
      if (again.size() != 1) {
        res.failure = "ambiguous";
        res.diagnostics = {{"level", t}, {"accepted", accepted}, {"accepted_on_rerun", again}};
        return res;
      }
      accepted = again;
    }
    if (accepted.empty()) {
      res.failure = "no coset accepted";
      res.diagnostics = {{"level", t}, {"candidates", reps.size()}};
      return res;
    }
    const auto& alpha = reps[accepted.front()];
    g_cur = precompose_shift(grp, g_cur, alpha);
    acc = grp.mul(acc, alpha);
    ++res.levels_decided;
  }
  res.shift = grp.inv(acc);
  return res;
}

template <FiniteGroup G>
RhsSolver<G> rhs_from_drhs(DrhsDecider<G> decider, SubgroupTower<G> tower) {
  RhsSolver<G> s;
  s.name = "tower(" + decider.name + ")";
  std::uint64_t calls = 0;
  for (auto idx : tower.indices()) calls += idx > 1 ? 2 * idx : 0;
  s.query_bound = calls * decider.query_bound;
  s.run = [decider, tower](const SubgroupView<G>& dom, const LabelOracle<G>& f, const LabelOracle<G>& g,
                           Rng& rng) -> std::optional<element_t<G>> {
    if (!dom.is_full()) throw UsageError("rhs_from_drhs: needs the whole group");
    return search_via_tower(decider, tower, f, g, rng).shift;
  };
  return s;
}

}  // namespace hslab

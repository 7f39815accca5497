// Search from decision: walks the subgroup tower of S6 with an exact decider
// and then with one that lies 1% of the time.

#include <cstdio>

#include "hslab/hslab.hpp"

using namespace hslab;

int main() {
  const SymmetricGroup g(6);
  const SubgroupTower<SymmetricGroup> tower(g);
  const auto inst = gen_instance(Variant::RHS, g, 40, 11);
  Rng rng(1);

  const auto exact = search_via_tower(brute_force_decider<SymmetricGroup>(), tower, inst.f(), inst.g(), rng);
  std::printf("planted %s\n", g.format(inst.open_shift()).c_str());
  if (exact.shift)
    std::printf("found   %s with %llu decider calls over %d levels\n", g.format(*exact.shift).c_str(),
                static_cast<unsigned long long>(exact.decider_calls), exact.levels_decided);

  const auto noisy = noisy_decider(brute_force_decider<SymmetricGroup>(), 0.01);
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto i = gen_instance(Variant::RHS, g, 40, seed);
    ok += search_via_tower(noisy, tower, i.f(), i.g(), rng).shift == i.open_shift();
  }
  std::printf("1%% noisy decider: %d/200 recovered, failure bound %.3f\n", ok,
              tower_error_bound(tower, noisy.completeness_error, noisy.soundness_error));
  return exact.shift == inst.open_shift() ? 0 : 1;
}

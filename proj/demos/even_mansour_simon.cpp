// Recovers both Even-Mansour keys over xor:10 with Simon's algorithm, then
// shows the same pipeline finding nothing once XOR is replaced by addition
// mod 2^10.

#include <cstdio>

#include "hslab/hslab.hpp"

using namespace hslab;

int main() {
  const unsigned n = 10;
  const XorGroup g(n);
  const auto p = random_permutation(g, 1);
  const auto key = em_keygen(g, 2);
  const auto e = em_oracle(g, p, key);

  Rng rng(3);
  const auto r = attack_em_xor(n, p, e, rng);
  std::printf("planted k1=%03llx k2=%03llx\n", static_cast<unsigned long long>(key.k1),
              static_cast<unsigned long long>(key.k2));
  if (r.k1)
    std::printf("found   k1=%03llx k2=%03llx after %llu Simon samples\n", static_cast<unsigned long long>(*r.k1),
                static_cast<unsigned long long>(*r.k2), static_cast<unsigned long long>(r.simon.samples));
  else
    std::printf("attack failed: %s\n", r.simon.status.c_str());

  const auto z = run_trials("em-z2n", 50, 4, [n](std::uint64_t, std::uint64_t s) { return em_simon_trial(SchemeDomain::Z2n, n, s); });
  std::uint64_t accepted = 0;
  for (const auto& o : z.outcomes) accepted += o.detail.at("accepted").get<bool>();
  std::printf("z2n:%u variant: pipeline accepted %llu of 50 instances\n", n, static_cast<unsigned long long>(accepted));
  return r.k1 ? 0 : 1;
}

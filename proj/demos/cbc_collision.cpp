// Reads a hidden shift off one CBC-MAC collision over S5.

#include <cstdio>

#include "hslab/hslab.hpp"

using namespace hslab;

int main() {
  const SymmetricGroup g(5);
  const auto inst = gen_instance(Variant::RHS, g, 40, 5);
  const auto mac = instrument_mac(g, inst.f(), inst.g(), 3, 5);
  Rng rng(5);

  // Built from the secret here; a real adversary would have to find it.
  const auto [m1, m2] = synthetic_mac_collision(mac, inst.open_shift(), rng);
  std::printf("tags %s and %s\n", g.format(mac.tag(m1)).c_str(), g.format(mac.tag(m2)).c_str());

  const auto ex = extract_shift_from_mac_collision(mac, m1, m2);
  std::printf("extraction: %s\n", to_string(ex.status).c_str());
  if (!ex.shift) return 1;
  std::printf("planted %s, extracted %s\n", g.format(inst.open_shift()).c_str(), g.format(*ex.shift).c_str());
  return *ex.shift == inst.open_shift() ? 0 : 1;
}

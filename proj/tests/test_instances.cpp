#include <gtest/gtest.h>

#include "hslab/hslab.hpp"

using namespace hslab;

TEST(Instances, RhsOnS4IsExactShiftEverywhere) {
  const SymmetricGroup g(4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = gen_instance(Variant::RHS, g, 32, seed);
    const auto s = inst.open_shift();
    for_each_element(g, [&](const Permutation& x) { ASSERT_EQ(inst.g()(x), inst.f()(g.mul(s, x))); });
  }
}

TEST(Instances, HsUsesRequestedShift) {
  const CyclicPow2Group g(8);
  InstanceOptions<CyclicPow2Group> opt;
  opt.shift = 77;
  const auto inst = gen_instance(Variant::HS, g, 32, 4, opt);
  EXPECT_EQ(inst.open_shift(), 77u);
  for (std::uint64_t x = 0; x < 256; ++x) ASSERT_EQ(inst.g()(x), inst.f()((x + 77) & 255));
}

TEST(Instances, RhsShiftsLookUniform) {
  const SymmetricGroup g(3);
  std::vector<double> counts(6, 0);
  for (std::uint64_t seed = 0; seed < 6000; ++seed)
    counts[g.rank(gen_instance(Variant::RHS, g, 16, seed).open_shift())] += 1;
  const std::vector<double> expect(6, 1000.0);
  EXPECT_GT(stats::chi_square_pvalue(counts, expect), 1e-4);
}

TEST(Instances, DrhsCoinIsFair) {
  const CyclicPow2Group g(6);
  int shifted = 0;
  const int trials = 2000;
  for (int seed = 0; seed < trials; ++seed)
    shifted += gen_instance(Variant::DRHS, g, 32, static_cast<std::uint64_t>(seed)).open_is_shifted();
  EXPECT_LE(std::abs(shifted - trials / 2.0), 3 * std::sqrt(trials / 4.0));
}

TEST(Instances, DrhsIndependentPairHasNoFittingShift) {
  const CyclicPow2Group g(6);
  InstanceOptions<CyclicPow2Group> opt;
  opt.shifted = false;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = gen_instance(Variant::DRHS, g, 32, seed, opt);
    EXPECT_FALSE(inst.open_is_shifted());
    EXPECT_THROW(inst.open_shift(), UsageError);
    std::uint64_t best = 0;
    for (std::uint64_t s = 0; s < 64; ++s) {
      std::uint64_t agree = 0;
      for (std::uint64_t x = 0; x < 64; ++x) agree += inst.g()(x) == inst.f()((s + x) & 63);
      best = std::max(best, agree);
    }
    EXPECT_LT(best, 64u);
    EXPECT_LE(best, 2u);
  }
}

TEST(Instances, DrhsShiftedPairIsShift) {
  const SymmetricGroup g(4);
  InstanceOptions<SymmetricGroup> opt;
  opt.shifted = true;
  const auto inst = gen_instance(Variant::DRHS, g, 32, 3, opt);
  ASSERT_TRUE(inst.open_is_shifted());
  const auto s = inst.open_shift();
  for_each_element(g, [&](const Permutation& x) { ASSERT_EQ(inst.g()(x), inst.f()(g.mul(s, x))); });
}

TEST(Instances, RhspOnXor4HidesPair) {
  const XorGroup g(4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = gen_instance(Variant::RHSP, g, 32, seed);
    const auto s = inst.open_shift();
    ASSERT_NE(s, 0u);
    std::set<std::uint64_t> classes;
    for (std::uint64_t x = 0; x < 16; ++x) {
      ASSERT_EQ(inst.f()(x), inst.f()(x ^ s));
      classes.insert(inst.f()(x));
    }
    EXPECT_EQ(classes.size(), 8u);
  }
  EXPECT_THROW(gen_instance(Variant::RHSP, CyclicPow2Group(4), 32, 1), UnsupportedError);
}

TEST(Instances, ApproxDisagreesOnExactlyDeltaFraction) {
  const CyclicPow2Group g(10);
  InstanceOptions<CyclicPow2Group> opt;
  opt.delta = 0.1;
  const auto inst = gen_instance(Variant::APPROX, g, 40, 9, opt);
  const auto s = inst.open_shift();
  std::uint64_t agree = 0;
  for (std::uint64_t x = 0; x < 1024; ++x) agree += inst.g()(x) == inst.f()(g.mul(s, x));
  EXPECT_GE(static_cast<double>(agree) / 1024.0, 1.0 - 0.1);
  EXPECT_EQ(agree, 1024u - 102u);
  EXPECT_DOUBLE_EQ(inst.delta(), 0.1);
}

TEST(Instances, ApproxOnHugeGroupUsesHashThreshold) {
  const CyclicPow2Group g(64);
  InstanceOptions<CyclicPow2Group> opt;
  opt.delta = 0.25;
  const auto inst = gen_instance(Variant::APPROX, g, 64, 9, opt);
  const auto s = inst.open_shift();
  Rng rng(1);
  int bad = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const auto x = g.sample(rng);
    bad += inst.g()(x) != inst.f()(g.mul(s, x));
  }
  EXPECT_LE(std::abs(bad - 0.25 * n), 3 * std::sqrt(n * 0.25 * 0.75));
}

TEST(Instances, DeterministicPerSeed) {
  const SymmetricGroup g(6);
  const auto a = gen_instance(Variant::RHS, g, 40, 123);
  const auto b = gen_instance(Variant::RHS, g, 40, 123);
  EXPECT_EQ(a.open_shift(), b.open_shift());
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto x = g.sample(rng);
    EXPECT_EQ(a.f()(x), b.f()(x));
    EXPECT_EQ(a.g()(x), b.g()(x));
  }
}

TEST(Instances, SecretAccessIsRecorded) {
  const auto inst = gen_instance(Variant::RHS, CyclicPow2Group(8), 32, 1);
  EXPECT_FALSE(inst.opened());
  EXPECT_NO_THROW(inst.require_sealed("solver"));
  Rng rng(1);
  EXPECT_NO_THROW(brute_force_hs(inst, rng));
  (void)inst.open_shift();
  EXPECT_TRUE(inst.opened());
  EXPECT_THROW(inst.require_sealed("solver"), UsageError);
  EXPECT_THROW(brute_force_hs(inst, rng), UsageError);
}

TEST(Instances, JsonCarriesNoSecret) {
  const auto inst = gen_instance(Variant::DRHS, SymmetricGroup(5), 24, 42);
  const auto j = inst.to_json();
  EXPECT_EQ(j.at("variant"), "drhs");
  EXPECT_EQ(j.at("group"), "sym:5");
  EXPECT_EQ(j.at("ell"), 24);
  EXPECT_EQ(j.at("seed"), 42);
  EXPECT_EQ(j.at("opened"), false);
  EXPECT_EQ(j.size(), 5u);
}

TEST(Instances, VariantNames) {
  for (auto v : {Variant::HS, Variant::RHS, Variant::DRHS, Variant::RHSP, Variant::APPROX})
    EXPECT_EQ(parse_variant(to_string(v)), v);
  EXPECT_THROW(parse_variant("nope"), UsageError);
}

TEST(Instances, PlantedInstanceOnLargeFamilies) {
  const ProductS5Group g(30);
  Rng rng(8);
  const auto f = random_oracle(g, 64, 2);
  const auto s = g.sample(rng);
  const auto inst = planted_instance(g, f, s);
  for (int i = 0; i < 100; ++i) {
    const auto x = g.sample(rng);
    ASSERT_EQ(inst.g()(x), inst.f()(g.mul(s, x)));
  }
  const auto big = gen_instance(Variant::RHS, Gl2Group(16), 64, 5);
  const auto t = big.open_shift();
  const auto x = Gl2Group(16).sample(rng);
  EXPECT_EQ(big.g()(x), big.f()(Gl2Group(16).mul(t, x)));
}

TEST(Instances, SingletonGroup) {
  const CyclicGroup g(1);
  const auto inst = gen_instance(Variant::RHS, g, 16, 1);
  EXPECT_EQ(inst.open_shift(), 0u);
  EXPECT_EQ(inst.g()(0), inst.f()(0));
}

#include <gtest/gtest.h>

#include "hslab/hslab.hpp"

using namespace hslab;

namespace {

// f(x) = f(x ^ s) and nothing else collides.
std::function<std::uint64_t(std::uint64_t)> exact_period(std::uint64_t s) {
  return [s](std::uint64_t x) { return std::min(x, x ^ s); };
}

std::uint64_t accepted(const TrialReport& rep) {
  std::uint64_t n = 0;
  for (const auto& o : rep.outcomes) n += o.detail.at("accepted").get<bool>();
  return n;
}

}  // namespace

// ---- exact Simon distribution

TEST(SimonDistribution, ThreeBitsPeriod011) {
  const auto d = simon_distribution(3, exact_period(0b011));
  for (std::uint64_t y = 0; y < 8; ++y) {
    const bool in = y == 0b000 || y == 0b100 || y == 0b011 || y == 0b111;
    EXPECT_NEAR(d.prob[y], in ? 0.25 : 0.0, 1e-12) << y;
  }
}

TEST(SimonDistribution, InjectiveIsUniform) {
  const auto d = simon_distribution(6, [](std::uint64_t x) { return x * 37 % 64; });
  for (double p : d.prob) EXPECT_NEAR(p, 1.0 / 64, 1e-12);
}

TEST(SimonDistribution, ExactPeriodUniformOnPerp) {
  Rng rng(4);
  for (unsigned n = 1; n <= 10; ++n) {
    std::uint64_t s = 0;
    while (s == 0) s = rng.next() & ((1ULL << n) - 1);
    // Hash the class representative so labels are not ordered.
    const auto d = simon_distribution(n, [s](std::uint64_t x) { return detail::splitmix64(std::min(x, x ^ s)); });
    const double level = n == 1 ? 1.0 : std::ldexp(1.0, -static_cast<int>(n - 1));
    double max_dev = 0;
    for (std::uint64_t y = 0; y < d.prob.size(); ++y) {
      const double want = Gf2Basis::dot(y, s) ? 0.0 : level;
      if (Gf2Basis::dot(y, s)) {
        ASSERT_EQ(d.weight[y], 0) << "n=" << n;
      }
      max_dev = std::max(max_dev, std::abs(d.prob[y] - want));
    }
    EXPECT_LE(max_dev, 1e-12) << "n=" << n;
    EXPECT_NEAR(d.total(), 1.0, 1e-12);
  }
}

TEST(SimonDistribution, NormalizedForArbitraryFunctions) {
  for (unsigned n : {4u, 9u, 12u}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto f = random_oracle(XorGroup(n), 3 + seed, seed);  // few labels: large buckets
      EXPECT_NEAR(simon_distribution(n, f).total(), 1.0, 1e-12);
    }
  }
  const auto flat = simon_distribution(8, [](std::uint64_t) { return std::uint64_t{0}; });
  EXPECT_NEAR(flat.prob[0], 1.0, 1e-12);
}

TEST(SimonDistribution, EvenMansourMassOnHalfSpace) {
  const XorGroup g(8);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = random_permutation(g, seed);
    const auto key = em_keygen(g, seed);
    const auto e = em_oracle(g, p, key);
    const auto d = simon_distribution(8, [&](std::uint64_t x) { return p(x) ^ e(x); });
    EXPECT_GE(d.mass_orthogonal_to(key.k1), 0.99);
  }
}

TEST(SimonDistribution, BudgetEnforced) {
  EXPECT_THROW(simon_distribution(15, exact_period(1)), BudgetError);
  EXPECT_THROW(simon_distribution(0, exact_period(1)), BudgetError);
}

// ---- sampling and recovery

TEST(AliasSampler, MatchesWeights) {
  const AliasSampler s({1, 0, 3, 4});
  Rng rng(1);
  std::vector<double> counts(4, 0);
  const int n = 80000;
  for (int i = 0; i < n; ++i) counts[s(rng)] += 1;
  EXPECT_EQ(counts[1], 0);
  const std::vector<double> obs{counts[0], counts[2], counts[3]}, want{n / 8.0, 3 * n / 8.0, 4 * n / 8.0};
  EXPECT_GT(stats::chi_square_pvalue(obs, want), 1e-4);
  EXPECT_THROW(AliasSampler({0, 0}), UsageError);
}

TEST(Gf2Basis, ComplementIsOrthogonal) {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned n = 1 + static_cast<unsigned>(rng.below(20));
    Gf2Basis b(n);
    std::vector<std::uint64_t> rows;
    for (unsigned i = 0; i < n; ++i) {
      const std::uint64_t v = rng.next() & ((1ULL << n) - 1);
      if (b.insert(v)) rows.push_back(v);
      ASSERT_TRUE(b.in_span(v));
    }
    const auto comp = b.orthogonal_complement();
    ASSERT_EQ(comp.size() + b.rank(), n);
    for (auto s : comp)
      for (auto r : rows) ASSERT_EQ(Gf2Basis::dot(r, s), 0);
  }
}

TEST(SimonRecover, ExactPeriodWithin3nMinus1Samples) {
  const unsigned n = 10;
  int ok = 0;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    Rng rng(static_cast<std::uint64_t>(t));
    std::uint64_t s = 0;
    while (s == 0) s = rng.next() & 1023;
    const auto d = simon_distribution(n, exact_period(s));
    const AliasSampler sampler(d.weight);
    SimonOptions opt;
    opt.samples_per_attempt = 3 * (n - 1);
    opt.attempts = 1;
    const auto r = simon_recover(
        n, [&](Rng& r2) { return sampler(r2); }, [&](std::uint64_t c) { return c == s; }, rng, opt);
    ok += r.period == s;
  }
  EXPECT_GE(ok, trials * 99 / 100);
}

TEST(SimonRecover, UniformSamplerGivesNoPeriod) {
  Rng rng(3);
  const auto r = simon_recover(
      8, [](Rng& r2) { return r2.below(256); }, [](std::uint64_t) { return false; }, rng);
  EXPECT_FALSE(r.period);
  EXPECT_NE(r.status, "ok");
  const auto random_fn = random_oracle(XorGroup(8), 40, 5);
  const auto r2 = simon_attack(8, [&](std::uint64_t x) { return random_fn(x); }, rng);
  EXPECT_FALSE(r2.period);
}

TEST(CollisionDiagnostics, ExactRandomAndConstant) {
  const auto d = collision_diagnostics(8, exact_period(0x35), 0x35);
  EXPECT_DOUBLE_EQ(d.rate_at_s, 1.0);
  EXPECT_DOUBLE_EQ(d.max_unwanted_rate, 0.0);
  EXPECT_TRUE(simon_promise_holds(d, default_unwanted_threshold(8)));

  const auto f = random_oracle(XorGroup(10), 40, 1);
  const auto r = collision_diagnostics(10, [&](std::uint64_t x) { return f(x); }, 1);
  EXPECT_LE(r.max_unwanted_rate, 8.0 / 1024);
  EXPECT_LE(r.rate_at_s, 8.0 / 1024);

  const auto c = collision_diagnostics(6, [](std::uint64_t) { return std::uint64_t{9}; }, 3);
  EXPECT_DOUBLE_EQ(c.rate_at_s, 1.0);
  EXPECT_DOUBLE_EQ(c.max_unwanted_rate, 1.0);
  EXPECT_FALSE(simon_promise_holds(c, default_unwanted_threshold(6)));
}

// ---- XOR scheme drivers

TEST(XorAttacks, EvenMansourRecoversBothKeys) {
  const auto rep = run_trials("em", 50, 1, [](std::uint64_t, std::uint64_t s) { return em_simon_trial(SchemeDomain::Xor, 8, s); });
  EXPECT_GE(rep.successes, 49u);
}

TEST(XorAttacks, CbcCollisionHoldsOnFreshSuffixes) {
  const auto rep = run_trials("cbc", 30, 2, [](std::uint64_t, std::uint64_t s) { return cbc_simon_trial(SchemeDomain::Xor, 8, s); });
  EXPECT_EQ(rep.successes, 30u);
}

TEST(XorAttacks, CbcShiftIsInnerCipherDifference) {
  const XorGroup g(8);
  const CbcMac<XorGroup> mac(g, mac_keygen(4));
  const MacOracle oracle([mac](const std::vector<std::uint64_t>& m) { return mac.tag(m); }, 8);
  Rng rng(4);
  const auto r = attack_cbc_xor(8, oracle, 17, 99, rng);
  ASSERT_TRUE(r.s_k);
  EXPECT_EQ(*r.s_k, mac.inner()(17) ^ mac.inner()(99));
}

TEST(XorAttacks, FeistelBothDirections) {
  const auto real = run_trials("f", 100, 3, [](std::uint64_t, std::uint64_t s) {
    return feistel_simon_trial(SchemeDomain::Xor, 8, true, s);
  });
  const auto rnd = run_trials("r", 100, 3, [](std::uint64_t, std::uint64_t s) {
    return feistel_simon_trial(SchemeDomain::Xor, 8, false, s);
  });
  EXPECT_GE(real.successes, 95u);
  EXPECT_GE(rnd.successes, 95u);
}

TEST(XorAttacks, SlideRecoversKey) {
  const auto rep = run_trials("slide", 100, 4, [](std::uint64_t, std::uint64_t s) {
    return slide_simon_trial(SchemeDomain::Xor, 10, 7, s);
  });
  EXPECT_EQ(rep.successes, 100u);
}

TEST(XorAttacks, WidthLimits) {
  const auto p = random_permutation(XorGroup(16), 1);
  Rng rng(1);
  EXPECT_THROW(attack_em_xor(15, p, p, rng), BudgetError);
  EXPECT_THROW(attack_slide_xor(14, p, p, rng), BudgetError);
}

TEST(XorAttacks, PipelinesRejectAdditiveAdaptations) {
  const unsigned n = 8;
  const std::uint64_t trials = 100;
  const auto em = run_trials("em", trials, 5, [](std::uint64_t, std::uint64_t s) { return em_simon_trial(SchemeDomain::Z2n, 8, s); });
  const auto cbc = run_trials("cbc", trials, 5, [](std::uint64_t, std::uint64_t s) { return cbc_simon_trial(SchemeDomain::Z2n, 8, s); });
  const auto fe = run_trials("fe", trials, 5, [](std::uint64_t, std::uint64_t s) {
    return feistel_simon_trial(SchemeDomain::Z2n, 8, true, s);
  });
  const auto sl = run_trials("sl", trials, 5, [](std::uint64_t, std::uint64_t s) {
    return slide_simon_trial(SchemeDomain::Z2n, 8, 7, s);
  });
  for (const auto* rep : {&em, &cbc, &fe, &sl}) EXPECT_LE(accepted(*rep), trials * 5 / 100) << rep->name << " n=" << n;
}

// ---- the same schemes as hidden shift instances over the group

TEST(GroupForms, FeistelOverZ2n8Exhaustive) {
  const CyclicPow2Group h(8);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto spec = feistel_keygen(h, seed);
    const auto form = feistel_hs_form(spec, 3, 200);
    EXPECT_EQ(form.shift, h.mul(spec.r1()(200), h.inv(spec.r1()(3))));
    for (std::uint64_t y = 0; y < 256; ++y) ASSERT_EQ(form.g(y), form.f(h.mul(form.shift, y)));
    Rng rng(seed);
    const auto inst = to_instance(form, seed);
    const auto found = brute_force_hs(inst, rng);
    EXPECT_NE(std::find(found.begin(), found.end(), form.shift), found.end());
  }
}

TEST(GroupForms, SlideOverZ2n10ShiftIsKey) {
  const CyclicPow2Group g(10);
  Rng rng(6);
  const SlideSpec<CyclicPow2Group> spec(g, random_permutation(g, 6), g.sample(rng), 5);
  const auto form = slide_hs_form(spec);
  EXPECT_EQ(form.shift, spec.key());
  for (std::uint64_t x = 0; x < 1024; ++x) ASSERT_EQ(form.g(x), form.f(g.mul(form.shift, x)));
}

TEST(GroupForms, CbcOverSymmetricGroup) {
  const SymmetricGroup g(4);
  Rng rng(7);
  const auto a0 = g.sample(rng);
  auto a1 = g.sample(rng);
  while (a1 == a0) a1 = g.sample(rng);
  const auto form = cbc_hs_form(g, mac_keygen(7), a0, a1);
  for_each_element(g, [&](const Permutation& x) { ASSERT_EQ(form.g(x), form.f(g.mul(form.shift, x))); });
}

TEST(GroupForms, XorPipelineFailsOnFeistelZ2n8) {
  int rejected = 0;
  const int trials = 200;
  for (int i = 0; i < trials; ++i) {
    const CyclicPow2Group h(8);
    const auto spec = feistel_keygen(h, static_cast<std::uint64_t>(i));
    const auto form = feistel_hs_form(spec, 1, 2);
    // Bit-prefix combination of the two probes, the function the XOR driver would build.
    auto F = [&](std::uint64_t w) { return (w >> 8) ? form.g(w & 255) : form.f(w & 255); };
    Rng rng(static_cast<std::uint64_t>(i));
    const auto r = simon_attack(9, F, rng);
    rejected += !r.period;
  }
  EXPECT_GE(rejected, trials * 99 / 100);
}

// ---- brute force

TEST(BruteForce, UniqueShiftOnS5) {
  const SymmetricGroup g(5);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto inst = gen_instance(Variant::RHS, g, 40, seed);
    Rng rng(seed);
    const auto found = brute_force_hs(inst, rng);
    ASSERT_EQ(found.size(), 1u);
    EXPECT_EQ(found[0], inst.open_shift());
    if (seed < 5)
      for_each_element(g, [&](const Permutation& x) { ASSERT_EQ(inst.g()(x), inst.f()(g.mul(found[0], x))); });
  }
}

TEST(BruteForce, IndependentOnZ2n10) {
  const CyclicPow2Group g(10);
  InstanceOptions<CyclicPow2Group> opt;
  opt.shifted = false;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto inst = gen_instance(Variant::DRHS, g, 40, seed, opt);
    Rng rng(seed);
    ASSERT_FALSE(brute_force_drhs(inst, rng));
  }
}

TEST(BruteForce, SingletonAndStructuredF) {
  const auto one = gen_instance(Variant::RHS, SymmetricGroup(1), 40, 1);
  Rng rng(1);
  const auto found = brute_force_hs(one, rng);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0], SymmetricGroup(1).identity());
  // f constant: every shift fits and all are returned.
  const CyclicPow2Group g(4);
  const LabelOracle<CyclicPow2Group> flat([](const std::uint64_t&) { return Label{1}; }, 8);
  const auto inst = planted_instance(g, flat, 3);
  EXPECT_EQ(brute_force_hs(inst, rng).size(), 16u);
  EXPECT_THROW(brute_force_hs(gen_instance(Variant::RHS, CyclicPow2Group(21), 40, 1), rng), BudgetError);
}

// ---- Kuperberg toy sieve

TEST(Kuperberg, RecoversAtEightBits) {
  const auto rep = run_trials("kuperberg", 100, 8, [](std::uint64_t, std::uint64_t s) { return kuperberg_trial(8, 1 << 14, s); });
  EXPECT_GE(rep.successes, 90u);
  for (const auto& o : rep.outcomes) EXPECT_LE(o.detail.at("coset_samples").get<std::uint64_t>(), 1u << 14);
}

TEST(Kuperberg, CombineBranchIsFairAndLabelsAdd) {
  for (std::optional<std::uint64_t> s : {std::optional<std::uint64_t>{0}, std::optional<std::uint64_t>{77}}) {
    CosetSimulator sim(10, s);
    Rng rng(9);
    int minus = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      const auto a = sim.sample(rng), b = sim.sample(rng);
      const auto c = sim.combine(a, b, rng);
      const std::uint64_t want = c.minus ? (a.label - b.label) & 1023 : (a.label + b.label) & 1023;
      ASSERT_EQ(c.sample.label, want);
      minus += c.minus;
    }
    EXPECT_LE(std::abs(minus - n / 2.0), 3 * std::sqrt(n / 4.0));
  }
}

TEST(Kuperberg, HalfLabelMeasuresLowBit) {
  Rng rng(1);
  for (std::uint64_t s = 0; s < 64; ++s) {
    const CosetSimulator sim(6, s);
    EXPECT_EQ(sim.measure({32}, rng), static_cast<int>(s & 1));
    EXPECT_EQ(sim.measure({0}, rng), 0);
  }
}

TEST(Kuperberg, SubexponentialScaling) {
  const auto fit = kuperberg_scaling(6, 14, 10, 1);
  EXPECT_TRUE(fit.subexponential_wins()) << fit.to_json().dump();
}

TEST(Kuperberg, Limits) {
  Rng rng(1);
  EXPECT_THROW(kuperberg_toy(gen_instance(Variant::RHS, CyclicPow2Group(17), 40, 1), 1000, rng), BudgetError);
  EXPECT_THROW(kuperberg_toy(gen_instance(Variant::RHS, CyclicPow2Group(8), 40, 1), (1ULL << 24) + 1, rng), BudgetError);
  const auto starved = kuperberg_toy(gen_instance(Variant::RHS, CyclicPow2Group(12), 40, 1), 10, rng);
  EXPECT_FALSE(starved.shift);
  EXPECT_EQ(starved.status, "budget exhausted");
}

TEST(XorAttacks, EvenMansourZeroFirstKey) {
  // k1 = 0 makes P xor E constant: no unique period, the stalled subgroup is searched.
  const XorGroup g(8);
  const auto p = random_permutation(g, 3);
  const auto e = em_oracle(g, p, EmKey<XorGroup>{0, 77});
  Rng rng(3);
  const auto r = attack_em_xor(8, p, e, rng);
  ASSERT_TRUE(r.k1);
  EXPECT_EQ(*r.k1, 0u);
  EXPECT_EQ(*r.k2, 77u);
  EXPECT_EQ(r.simon.stalled_subgroup.size(), 8u);
}

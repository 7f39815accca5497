#include <gtest/gtest.h>

#include <set>

#include "hslab/hslab.hpp"

using namespace hslab;

TEST(EvenMansour, RoundTripOnZ2n16) {
  const CyclicPow2Group g(16);
  const auto p = random_permutation(g, 1);
  Rng rng(2);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto key = em_keygen(g, i);
    const auto m = g.sample(rng);
    ASSERT_EQ(em_dec(g, p, key, em_enc(g, p, key, m)), m);
  }
}

TEST(EvenMansour, IdentityKeysGiveP) {
  const XorGroup g(10);
  const auto p = random_permutation(g, 4);
  const EmKey<XorGroup> key{0, 0};
  for (std::uint64_t x = 0; x < 1024; ++x) ASSERT_EQ(em_enc(g, p, key, x), p(x));
}

TEST(EvenMansour, SecondKeyFromFirstOnS4) {
  const SymmetricGroup g(4);
  const auto p = random_permutation(g, 5);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto key = em_keygen(g, seed);
    const auto e = em_oracle(g, p, key);
    for_each_element(g, [&](const Permutation& x) { ASSERT_EQ(em_k2_from_k1(g, p, e, key.k1, x), key.k2); });
  }
}

TEST(EvenMansour, TranslationFormAbelianExhaustive) {
  // On abelian groups P(m k1) k2 = k2 P(k1 m): L_{k2} o P o L_{k1}.
  for (auto g : {CyclicPow2Group(12), CyclicPow2Group(6)}) {
    const auto p = random_permutation(g, 3);
    const auto key = em_keygen(g, 9);
    const auto l1 = left_translation(g, key.k1), l2 = left_translation(g, key.k2);
    for (std::uint64_t m = 0; m < order_u64(g); ++m) ASSERT_EQ(em_enc(g, p, key, m), l2(p(l1(m))));
  }
  const XorGroup x(12);
  const auto p = random_permutation(x, 3);
  const auto key = em_keygen(x, 9);
  for (std::uint64_t m = 0; m < 4096; ++m) ASSERT_EQ(em_enc(x, p, key, m), key.k2 ^ p(key.k1 ^ m));
}

TEST(EvenMansour, RightTranslationFormAllFamilies) {
  const SymmetricGroup g(6);
  const auto p = random_permutation(g, 3);
  const auto key = em_keygen(g, 2);
  const auto r1 = right_translation(g, key.k1), r2 = right_translation(g, key.k2);
  for_each_element(g, [&](const Permutation& m) { ASSERT_EQ(em_enc(g, p, key, m), r2(p(r1(m)))); });
}

TEST(EvenMansour, NeedsInvertibleP) {
  const CyclicPow2Group g(8);
  const auto f = random_function_to_group(g, 1);
  EXPECT_THROW(em_enc(g, f, em_keygen(g, 1), 3), UsageError);
  EXPECT_THROW(em_oracle(g, f, em_keygen(g, 1)), UsageError);
}

TEST(InnerPrp, BijectiveAndDeterministic) {
  const SymmetricGroup g(4);
  const auto e = inner_prp(11, g);
  std::set<std::uint64_t> images;
  for_each_element(g, [&](const Permutation& x) {
    images.insert(g.rank(e(x)));
    EXPECT_EQ(e.inverse(e(x)), x);
    EXPECT_EQ(inner_prp(11, g)(x), e(x));
  });
  EXPECT_EQ(images.size(), 24u);
  int differ = 0;
  const auto e2 = inner_prp(12, g);
  for_each_element(g, [&](const Permutation& x) { differ += !(e2(x) == e(x)); });
  EXPECT_GT(differ, 12);
}

TEST(InnerPrp, InverseOnLargeGroup) {
  const CyclicPow2Group g(20);
  const auto e = inner_prp(3, g);
  Rng rng(1);
  for (int i = 0; i < 5000; ++i) {
    const auto x = g.sample(rng);
    ASSERT_EQ(e.inverse(e(x)), x);
  }
  const Gl2Group h(5);
  const auto eh = inner_prp(3, h);
  for (int i = 0; i < 200; ++i) {
    const auto x = h.sample(rng);
    ASSERT_TRUE(h.contains(eh(x)));
    ASSERT_EQ(eh.inverse(eh(x)), x);
  }
}

TEST(CbcMac, SingleBlockIsOuterOfInner) {
  const SymmetricGroup g(5);
  const auto key = mac_keygen(4);
  const CbcMac<SymmetricGroup> mac(g, key);
  const auto e = inner_prp(key.k, g), ep = inner_prp(key.k_prime, g);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto m = g.sample(rng);
    ASSERT_EQ(mac.tag(std::vector<Permutation>{m}), ep(e(m)));
  }
}

TEST(CbcMac, StraightLineXorReference) {
  const XorGroup g(12);
  const auto key = mac_keygen(8);
  const auto e = inner_prp(key.k, g), ep = inner_prp(key.k_prime, g);
  Rng rng(1);
  for (std::size_t len = 1; len <= 6; ++len)
    for (int i = 0; i < 50; ++i) {
      std::vector<std::uint64_t> m(len);
      for (auto& b : m) b = g.sample(rng);
      std::uint64_t state = 0;
      for (auto b : m) state = e(b ^ state);
      ASSERT_EQ(cbc_mac(g, key, m), ep(state));
    }
}

TEST(CbcMac, NonAbelianFoldOrder) {
  // state_j = E(m_j state_{j-1}) with the block on the left.
  const SymmetricGroup g(6);
  const auto key = mac_keygen(2);
  const CbcMac<SymmetricGroup> mac(g, key);
  const auto e = inner_prp(key.k, g), ep = inner_prp(key.k_prime, g);
  Rng rng(5);
  const auto a = g.sample(rng), b = g.sample(rng), c = g.sample(rng);
  EXPECT_EQ(mac.tag(std::vector<Permutation>{a, b, c}), ep(e(g.mul(c, e(g.mul(b, e(a)))))));
}

TEST(CbcMac, PrefixSensitivity) {
  // 32-bit blocks: a changed block keeps the tag only by chance (2^-32 each).
  const CyclicPow2Group g(32);
  const CbcMac<CyclicPow2Group> mac(g, mac_keygen(6));
  Rng rng(7);
  int changed = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    std::vector<std::uint64_t> m(4);
    for (auto& b : m) b = g.sample(rng);
    auto m2 = m;
    const auto j = rng.below(4);
    do m2[j] = g.sample(rng);
    while (m2[j] == m[j]);
    changed += mac.tag(m) != mac.tag(m2);
  }
  EXPECT_GE(changed, trials * 99 / 100);
}

TEST(CbcMac, EmptyMessageRejectedAndKeysDiffer) {
  const CbcMac<XorGroup> mac(XorGroup(8), mac_keygen(1));
  EXPECT_THROW(mac.tag(std::vector<std::uint64_t>{}), UsageError);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto k = mac_keygen(s);
    EXPECT_NE(k.k, k.k_prime);
  }
}

TEST(Feistel, HandUnrolledOnXor4) {
  const XorGroup h(4);
  const auto spec = feistel_keygen(h, 3);
  const auto& r1 = spec.r1();
  const auto& r2 = spec.r2();
  const auto& r3 = spec.r3();
  for (std::uint64_t x = 0; x < 16; ++x)
    for (std::uint64_t y = 0; y < 16; ++y) {
      // (x, y) -> (y ^ R1(x), x) -> (x ^ R2(y ^ R1(x)), y ^ R1(x)) -> ...
      const std::uint64_t a = y ^ r1(x);
      const std::uint64_t b = x ^ r2(a);
      const std::uint64_t c = a ^ r3(b);
      ASSERT_EQ(feistel3(spec, {x, y}), (HalfPair{c, b}));
    }
}

TEST(Feistel, BijectionAndInverseOnSmallHalves) {
  for (unsigned n : {3u, 6u}) {
    const CyclicPow2Group h(n);
    const auto spec = feistel_keygen(h, n);
    const auto F = feistel_oracle(spec);
    std::set<std::uint64_t> images;
    for (std::uint64_t w = 0; w < (1ULL << (2 * n)); ++w) {
      images.insert(F(w));
      ASSERT_EQ(F.inverse(F(w)), w);
    }
    EXPECT_EQ(images.size(), 1ULL << (2 * n));
  }
}

TEST(Feistel, ProbeIsShiftedRoundFunctionOnZ2n6) {
  const CyclicPow2Group h(6);
  const auto spec = feistel_keygen(h, 4);
  const auto F = feistel_oracle(spec);
  for (std::uint64_t a = 0; a < 64; a += 9) {
    const auto probe = feistel_probe(h, F, a);
    for (std::uint64_t y = 0; y < 64; ++y) ASSERT_EQ(probe(y), spec.r2()(h.mul(y, spec.r1()(a))));
  }
}

TEST(Feistel, OtherHalfDomainsRejected) {
  const SymmetricGroup g(4);
  const auto f = random_function_to_group(g, 1);
  EXPECT_THROW(FeistelSpec<SymmetricGroup>(g, f, f, f), UnsupportedError);
}

TEST(Slide, OneRoundZeroKeyIsR) {
  const CyclicPow2Group g(8);
  const auto r = random_permutation(g, 2);
  const SlideSpec<CyclicPow2Group> spec(g, r, 0, 1);
  for (std::uint64_t x = 0; x < 256; ++x) ASSERT_EQ(slide_enc(spec, x), r(x));
}

TEST(Slide, ProbeShiftIdentityOnZ2n8) {
  const CyclicPow2Group g(8);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    const auto r = random_permutation(g, seed);
    const SlideSpec<CyclicPow2Group> spec(g, r, g.sample(rng), 1 + rng.below(9));
    const auto [f0, f1] = slide_probes(g, slide_oracle(spec), r);
    for (std::uint64_t x = 0; x < 256; ++x) ASSERT_EQ(f0(g.mul(x, spec.key())), f1(x));
  }
}

TEST(Slide, ProbeShiftIdentityOnXor8) {
  const XorGroup g(8);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    const auto r = random_permutation(g, seed);
    const SlideSpec<XorGroup> spec(g, r, g.sample(rng), 7);
    const auto [f0, f1] = slide_probes(g, slide_oracle(spec), r);
    for (std::uint64_t x = 0; x < 256; ++x) ASSERT_EQ(f0(x ^ spec.key()), f1(x));
  }
}

TEST(Slide, RecursionMatchesLoop) {
  // E_{k,t}(x) = k + R_k(E_{k,t-1}(x) - k).
  const CyclicPow2Group g(10);
  const auto r = random_permutation(g, 8);
  const std::uint64_t k = 345;
  for (std::uint64_t t = 2; t <= 12; ++t) {
    const SlideSpec<CyclicPow2Group> cur(g, r, k, t), prev(g, r, k, t - 1);
    for (std::uint64_t x = 0; x < 1024; x += 7) {
      const auto inner = g.mul(slide_enc(prev, x), g.inv(k));
      ASSERT_EQ(slide_enc(cur, x), g.mul(k, r(g.mul(inner, k))));
    }
  }
}

TEST(Slide, RoundBounds) {
  const XorGroup g(4);
  const auto r = random_permutation(g, 1);
  EXPECT_THROW(SlideSpec<XorGroup>(g, r, 1, 0), UsageError);
  EXPECT_THROW(SlideSpec<XorGroup>(g, r, 1, (1ULL << 16) + 1), UsageError);
  EXPECT_THROW(SlideSpec<XorGroup>(g, r, 16, 1), UsageError);
}

TEST(Slide, DecryptInverts) {
  for (std::uint64_t t : {1u, 3u, 8u}) {
    const CyclicPow2Group g(9);
    const SlideSpec<CyclicPow2Group> spec(g, random_permutation(g, t), 301, t);
    for (std::uint64_t x = 0; x < 512; ++x) ASSERT_EQ(slide_dec(spec, slide_enc(spec, x)), x);
    const XorGroup h(6);
    const SlideSpec<XorGroup> xs(h, random_permutation(h, t), 45, t);
    for (std::uint64_t x = 0; x < 64; ++x) ASSERT_EQ(slide_dec(xs, slide_enc(xs, x)), x);
  }
}

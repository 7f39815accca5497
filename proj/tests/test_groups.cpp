#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "hslab/any_group.hpp"
#include "hslab/stats.hpp"
#include "hslab/tower.hpp"

using namespace hslab;

namespace {

const std::vector<std::string> kFamilies = {"xor:16",  "xor:64", "z2n:8",  "z2n:64",  "zn:1",    "zn:97",
                                            "zn:1000003", "sym:1", "sym:4", "sym:7", "sym:21", "sym:40",
                                            "gl2:2",   "gl2:3",  "gl2:4",  "gl2:16",  "gl2:257", "sl2:2",
                                            "sl2:3",   "sl2:4",  "sl2:31", "prods5:1", "prods5:3", "prods5:12"};

// GF(4) = {0, 1, w, w+1} with w^2 = w + 1, written out by hand.
std::uint32_t gf4_mul(std::uint32_t a, std::uint32_t b) {
  static const std::uint32_t t[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
  return t[a][b];
}

std::uint32_t naive_det(std::uint32_t q, const Mat2& m) {
  if (q == 4) return gf4_mul(m.a, m.d) ^ gf4_mul(m.b, m.c);
  if (q == 2) return (m.a * m.d + m.b * m.c) % 2;
  return ((m.a * m.d) % q + q - (m.b * m.c) % q) % q;
}

}  // namespace

TEST(GroupArithmetic, SmallWorkedValues) {
  CyclicPow2Group z(3);
  EXPECT_EQ(z.mul(3, 5), 0u);

  SymmetricGroup s3(3);
  const auto prod = s3.mul(s3.transposition(1, 2), s3.transposition(2, 3));
  EXPECT_EQ(prod, s3.from_one_line({2, 3, 1}));  // 1->2, 2->3, 3->1

  Sl2Group sl(3);
  EXPECT_EQ(sl.inv(Mat2{1, 1, 0, 1}), (Mat2{1, 2, 0, 1}));
}

TEST(GroupArithmetic, EncodingsOfNamedElements) {
  SymmetricGroup s3(3);
  EXPECT_EQ(s3.encode(s3.identity()).to_string(), "000");
  CyclicPow2Group z8(8);
  EXPECT_EQ(z8.encode(255).to_string(), "11111111");
}

TEST(GroupArithmetic, AxiomsOnRandomTriples) {
  for (const auto& desc : kFamilies) {
    std::visit(
        [&](const auto& g) {
          Rng rng(derive_seed(11, desc));
          for (int i = 0; i < 10000; ++i) {
            const auto a = g.sample(rng), b = g.sample(rng), c = g.sample(rng);
            ASSERT_EQ(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c))) << desc;
            ASSERT_EQ(g.mul(a, g.identity()), a) << desc;
            ASSERT_EQ(g.mul(g.identity(), a), a) << desc;
            ASSERT_EQ(g.mul(a, g.inv(a)), g.identity()) << desc;
            ASSERT_TRUE(g.contains(a)) << desc;
          }
        },
        parse_group(desc));
  }
}

TEST(GroupCodec, BijectiveOnSmallGroupsRoundTripsOnLarge) {
  for (const auto& desc : kFamilies) {
    std::visit(
        [&](const auto& g) {
          if (g.order() <= 10000) {
            std::set<std::string> codes;
            for_each_element(g, [&](const auto& x) {
              const BitString b = g.encode(x);
              ASSERT_EQ(b.width(), g.element_bits()) << desc;
              ASSERT_EQ(g.decode(b), x) << desc;
              codes.insert(b.to_string());
            });
            EXPECT_EQ(BigUInt(codes.size()), g.order()) << desc;
          } else {
            Rng rng(derive_seed(12, desc));
            for (int i = 0; i < 10000; ++i) {
              const auto x = g.sample(rng);
              ASSERT_EQ(g.decode(g.encode(x)), x) << desc;
            }
          }
        },
        parse_group(desc));
  }
}

TEST(GroupCodec, LehmerRankMatchesLexicographicOrder) {
  for (int n : {1, 3, 4, 6}) {
    SymmetricGroup g(n);
    std::vector<std::uint8_t> p(n);
    std::iota(p.begin(), p.end(), std::uint8_t{0});
    std::uint64_t idx = 0;
    do {
      EXPECT_EQ(g.rank(Permutation{p}), idx);
      EXPECT_EQ(g.unrank(idx).images, p);
      ++idx;
    } while (std::next_permutation(p.begin(), p.end()));
    EXPECT_EQ(BigUInt(idx), g.order());
  }
}

TEST(GroupCodec, RankUnrankRoundTripSym4) {
  SymmetricGroup g(4);
  for (std::uint64_t r = 0; r < 24; ++r) EXPECT_EQ(g.rank(g.unrank(r)), r);
}

TEST(GroupCodec, InvalidCodewordsRejected) {
  SymmetricGroup s3(3);
  EXPECT_THROW(s3.decode(BitString::from_string("110")), DecodeError);  // rank 6
  EXPECT_THROW(s3.decode(BitString::from_string("11")), DecodeError);   // wrong width
  SymmetricGroup s22(22);
  BitString dup;
  for (int i = 0; i < 22; ++i) dup.append(1, 8);
  EXPECT_THROW(s22.decode(dup), DecodeError);
  CyclicGroup z5(5);
  EXPECT_THROW(z5.decode(BitString::from_uint(7, 3)), DecodeError);
  Gl2Group gl3(3);
  BitString big;
  big.append(0, 3);
  big.append(7, 3);  // second-column rank >= q^2 - q
  EXPECT_THROW(gl3.decode(big), DecodeError);
  ProductS5Group p2(2);
  EXPECT_THROW(p2.decode(BitString::from_uint(127 << 7, 14)), DecodeError);
}

TEST(GroupCodec, WideSymmetricUsesLetterEncoding) {
  SymmetricGroup g(30);
  EXPECT_EQ(g.element_bits(), 240u);
  const auto x = g.transposition(1, 30);
  const BitString b = g.encode(x);
  EXPECT_EQ(b.read(0, 8), 30u);
  EXPECT_EQ(b.read(8, 8), 2u);
  EXPECT_EQ(g.decode(b), x);
}

TEST(MatrixGroups, EnumeratedOrdersMatchFormula) {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    Gl2Group gl(q);
    Sl2Group sl(q);
    std::uint64_t invertible = 0, unimodular = 0;
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b)
        for (std::uint32_t c = 0; c < q; ++c)
          for (std::uint32_t d = 0; d < q; ++d) {
            const Mat2 m{a, b, c, d};
            const std::uint32_t det = naive_det(q, m);
            invertible += det != 0;
            unimodular += det == 1;
            EXPECT_EQ(gl.contains(m), det != 0);
            EXPECT_EQ(sl.contains(m), det == 1);
          }
    const std::uint64_t q2 = q * q;
    EXPECT_EQ(invertible, (q2 - 1) * (q2 - q));
    EXPECT_EQ(unimodular, q * q2 - q);
    EXPECT_EQ(gl.order(), BigUInt(invertible));
    EXPECT_EQ(sl.order(), BigUInt(unimodular));
  }
}

TEST(MatrixGroups, BinaryFieldProductMatchesHandTable) {
  Gl2Group gl(4);
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const Mat2 x = gl.sample(rng), y = gl.sample(rng);
    const Mat2 want{gf4_mul(x.a, y.a) ^ gf4_mul(x.b, y.c), gf4_mul(x.a, y.b) ^ gf4_mul(x.b, y.d),
                    gf4_mul(x.c, y.a) ^ gf4_mul(x.d, y.c), gf4_mul(x.c, y.b) ^ gf4_mul(x.d, y.d)};
    ASSERT_EQ(gl.mul(x, y), want);
  }
}

TEST(MatrixGroups, OddPrimePowerUnsupported) {
  EXPECT_THROW(Gl2Group(9), UnsupportedError);
  EXPECT_THROW(Sl2Group(1), UsageError);
}

TEST(ProductGroup, CoordinatesComposeAsS5) {
  ProductS5Group g(3);
  SymmetricGroup s5(5);
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    const auto x = g.sample(rng), y = g.sample(rng);
    const auto z = g.mul(x, y);
    for (int k = 0; k < 3; ++k) {
      const auto want = s5.mul(s5.unrank(x.codes[k]), s5.unrank(y.codes[k]));
      ASSERT_EQ(s5.unrank(z.codes[k]), want);
    }
  }
  EXPECT_EQ(g.element_bits(), 21u);
  EXPECT_EQ(g.order(), BigUInt(1728000));
}

TEST(Sampling, UniformOnS3ByChiSquare) {
  SymmetricGroup g(3);
  Rng rng(2024);
  std::vector<double> counts(6, 0.0), expected(6, 1000.0);
  for (int i = 0; i < 6000; ++i) counts[g.rank(g.sample(rng))] += 1;
  EXPECT_GT(stats::chi_square_pvalue(counts, expected), 0.001);
}

TEST(Sampling, SingletonGroupAndDeterminism) {
  CyclicGroup one(1);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(one.sample(rng), 0u);
  EXPECT_EQ(one.element_bits(), 0u);
  EXPECT_EQ(one.decode(one.encode(0)), 0u);

  Gl2Group g(5);
  Rng a(77), b(77);
  for (int i = 0; i < 200; ++i) EXPECT_EQ(g.sample(a), g.sample(b));
}

TEST(GroupArithmetic, ForeignElementsRejected) {
  SymmetricGroup s3(3), s4(4);
  EXPECT_THROW(s3.mul(s3.identity(), s4.identity()), UsageError);
  CyclicPow2Group z3(3);
  EXPECT_THROW(z3.mul(9, 1), UsageError);
  CyclicGroup z7(7);
  EXPECT_THROW(z7.inv(7), UsageError);
  Sl2Group sl(3);
  EXPECT_THROW(sl.inv(Mat2{1, 5, 0, 1}), UsageError);
}

TEST(Descriptors, ParseAndPrint) {
  for (const auto& d : kFamilies) EXPECT_EQ(descriptor(parse_group(d)), d);
  for (const char* bad : {"sym", "sym:0", "xor:65", "foo:3", "z2n:x", "gl2:6", "zn:-1", "sym:256", "z2n:"}) {
    EXPECT_ANY_THROW(parse_group(bad)) << bad;
  }
  EXPECT_THROW(parse_group("foo:3"), UsageError);
  EXPECT_THROW(parse_group("gl2:6"), UnsupportedError);
}

TEST(Tower, IndicesAndTransversalSizes) {
  SubgroupTower<CyclicPow2Group> tz(CyclicPow2Group(3));
  EXPECT_EQ(tz.indices(), (std::vector<std::uint64_t>{2, 2, 2}));
  EXPECT_EQ(tz.transversal(1), (std::vector<std::uint64_t>{0, 4}));
  EXPECT_EQ(tz.transversal(3), (std::vector<std::uint64_t>{0, 1}));

  SubgroupTower<SymmetricGroup> ts(SymmetricGroup(3));
  std::vector<std::size_t> sizes;
  std::uint64_t product = 1;
  for (int t = 1; t <= ts.height(); ++t) {
    sizes.push_back(ts.transversal(t).size());
    product *= sizes.back();
  }
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(product, 6u);
}

TEST(Tower, S4CosetsPartitionTheGroup) {
  SymmetricGroup g(4);
  SubgroupTower<SymmetricGroup> tower(g);
  std::map<std::uint64_t, int> hits;
  for (const auto& rep : tower.transversal(4))
    for (std::uint64_t i = 0; i < tower.level_order(3); ++i) ++hits[g.rank(g.mul(rep, tower.element_at(3, i)))];
  EXPECT_EQ(hits.size(), 24u);
  for (const auto& [r, n] : hits) EXPECT_EQ(n, 1) << r;
}

template <class G>
void check_unique_factorization(const G& g) {
  SubgroupTower<G> tower(g);
  for (int t = 1; t <= tower.height(); ++t) {
    const auto reps = tower.transversal(t);
    for (std::uint64_t i = 0; i < tower.level_order(t); ++i) {
      const auto x = tower.element_at(t, i);
      ASSERT_TRUE(tower.contains(t, x));
      int factorizations = 0;
      for (const auto& a : reps) factorizations += tower.contains(t - 1, g.mul(g.inv(a), x));
      ASSERT_EQ(factorizations, 1) << g.descriptor() << " level " << t;
    }
  }
  EXPECT_TRUE(tower.contains(0, g.identity()));
  EXPECT_EQ(tower.level_order(0), 1u);
}

TEST(Tower, UniqueFactorizationPerLevel) {
  check_unique_factorization(CyclicPow2Group(10));
  check_unique_factorization(SymmetricGroup(6));
  check_unique_factorization(SymmetricGroup(7));
}

TEST(Tower, SamplesStayInLevel) {
  SubgroupTower<SymmetricGroup> ts(SymmetricGroup(8));
  SubgroupTower<CyclicPow2Group> tz(CyclicPow2Group(12));
  Rng rng(3);
  for (int t = 0; t <= 8; ++t)
    for (int i = 0; i < 200; ++i) ASSERT_TRUE(ts.contains(t, ts.sample(t, rng)));
  for (int t = 0; t <= 12; ++t)
    for (int i = 0; i < 200; ++i) ASSERT_TRUE(tz.contains(t, tz.sample(t, rng)));
}

TEST(Tower, UnsupportedFamiliesAndBadLevels) {
  EXPECT_THROW(SubgroupTower<XorGroup>(XorGroup(4)), UnsupportedError);
  EXPECT_THROW(SubgroupTower<Gl2Group>(Gl2Group(3)), UnsupportedError);
  SubgroupTower<CyclicPow2Group> tz(CyclicPow2Group(4));
  EXPECT_THROW(tz.transversal(0), UsageError);
  EXPECT_THROW(tz.transversal(5), UsageError);
  EXPECT_THROW(tz.contains(-1, 0), UsageError);
}

#include "latbound/lattice.hpp"
#include "latbound/number.hpp"
#include "latbound/surd.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

using namespace latbound;

TEST(Number, ParsesAndPrintsRationals) {
  EXPECT_EQ(parse_rational("7/3"), Rational(7, 3));
  EXPECT_EQ(parse_rational("-4/6"), Rational(-2, 3));
  EXPECT_EQ(to_string(parse_rational("10/5")), "2");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/-2"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_integer(""), std::invalid_argument);
}

TEST(Number, FloorCeilAndDecimals) {
  EXPECT_EQ(floor(Rational(-1, 2)), -1);
  EXPECT_EQ(ceil(Rational(-1, 2)), 0);
  EXPECT_EQ(floor(Rational(7, 3)), 2);
  EXPECT_EQ(ceil(Rational(6, 3)), 2);
  EXPECT_EQ(to_decimal(Rational(1, 3), 4), "0.3333");
  EXPECT_EQ(to_decimal(Rational(2, 3), 4), "0.6667");
  EXPECT_EQ(to_decimal(Rational(-1, 8), 2, Rounding::Down), "-0.13");
  EXPECT_EQ(to_decimal(Rational(-1, 8), 2, Rounding::Up), "-0.12");
  EXPECT_EQ(isqrt(BigInt(26)), 5);
}

TEST(Surd, ExactSignAndOrdering) {
  Surd r2 = Surd::sqrt(2);
  EXPECT_EQ((r2 * r2), Surd(2));
  EXPECT_EQ(Surd::sqrt(8), Surd(0, 2, 2));
  EXPECT_EQ((r2 - Surd(Rational(141421, 100000))).sign(), 1);
  EXPECT_EQ((r2 - Surd(Rational(141422, 100000))).sign(), -1);
  EXPECT_EQ((Surd(1) / (Surd(1) + r2)), Surd(-1, 1, 2));
  EXPECT_EQ(Surd(Rational(7), 3, 5).floor(), 13);  // 7 + 3 sqrt 5 = 13.708...
  EXPECT_EQ((-Surd(Rational(7), 3, 5)).floor(), -14);
  EXPECT_EQ(parse_surd("1+2*sqrt(3)"), Surd(1, 2, 3));
  EXPECT_EQ(parse_surd("-sqrt(2)"), Surd(0, -1, 2));
  EXPECT_THROW(Surd::sqrt(2) + Surd::sqrt(3), std::domain_error);
}

TEST(Surd, EnclosureBracketsValue) {
  oracle::Gen gen(11);
  for (int i = 0; i < 200; ++i) {
    Surd s(gen.rational(-5, 5), gen.rational(-5, 5), gen.integer(2, 30));
    auto [lo, hi] = s.enclose(40);
    EXPECT_LE(Surd(lo), s);
    EXPECT_LE(s, Surd(hi));
    EXPECT_LE(hi - lo, Rational(1, BigInt(1) << 40));
    EXPECT_LE(Surd(s.floor()), s);
    EXPECT_GT(Surd(s.floor() + 1), s);
  }
}

TEST(Lattice, WordMetricExamples) {
  EXPECT_EQ(word_metric({0, 0}, {3, 3}), 6);
  EXPECT_EQ(word_metric({4, -9}, {4, -9}), 0);
  EXPECT_EQ(word_metric({2, -1}, {-3, 5}), 11);
  BigInt big("123456789012345678901234567890");
  EXPECT_EQ(word_metric({big, 0}, {-big, 0}), 2 * big);
}

TEST(Lattice, WordMetricMatchesBfsOracle) {
  auto lengths = oracle::word_lengths({{1, 0}, {0, 1}}, 8);
  for (const auto& [offset, d] : lengths) {
    EXPECT_EQ(word_metric({}, {offset.first, offset.second}), d);
  }
  oracle::Gen gen(3);
  for (int i = 0; i < 200; ++i) {
    LatticePoint p{gen.integer(-20, 20), gen.integer(-20, 20)};
    LatticePoint q{p.x + gen.integer(-4, 4), p.y + gen.integer(-4, 4)};
    if (word_metric(p, q) > 8) continue;
    EXPECT_EQ(*bfs_metric(GeneratingSet::standard(), p, q, 20), word_metric(p, q));
  }
}

TEST(Lattice, MetricSymmetryAndTranslation) {
  oracle::Gen gen(5);
  for (int i = 0; i < 300; ++i) {
    LatticePoint p{gen.integer(-1000, 1000), gen.integer(-1000, 1000)};
    LatticePoint q{gen.integer(-1000, 1000), gen.integer(-1000, 1000)};
    LatticePoint v{gen.integer(-1000, 1000), gen.integer(-1000, 1000)};
    EXPECT_EQ(word_metric(p, q), word_metric(q, p));
    EXPECT_EQ(word_metric(p + v, q + v), word_metric(p, q));
  }
}

TEST(Lattice, BfsMetricExamples) {
  GeneratingSet skew({{1, 0}, {1, 1}});
  EXPECT_EQ(bfs_metric(GeneratingSet::standard(), {0, 0}, {3, 3}, 20), 6);
  EXPECT_EQ(bfs_metric(skew, {0, 0}, {1, 1}, 20), 1);
  EXPECT_EQ(bfs_metric(skew, {0, 0}, {0, 1}, 20), 2);
  EXPECT_EQ(bfs_metric(skew, {0, 0}, {30, 0}, 20), std::nullopt);
  EXPECT_EQ(bfs_metric(skew, {5, 5}, {5, 6}, 20), 2);
}

TEST(Lattice, BfsMetricMatchesOracleForOtherSets) {
  std::vector<std::vector<oracle::Offset>> sets = {{{1, 0}, {1, 1}}, {{2, 0}, {0, 1}, {1, 1}}, {{3, 1}, {1, 0}, {0, 2}, {1, 1}}};
  for (const auto& gens : sets) {
    std::vector<GeneratingSet::Vector> vs;
    for (auto [x, y] : gens) vs.push_back({x, y});
    GeneratingSet set(vs);
    auto lengths = oracle::word_lengths(gens, 6);
    for (const auto& [offset, d] : lengths) {
      EXPECT_EQ(bfs_metric(set, {}, {offset.first, offset.second}, 6), d);
    }
  }
}

TEST(Lattice, GeneratingSetRejectsNonGenerators) {
  EXPECT_THROW(GeneratingSet({{2, 0}, {0, 1}}), std::invalid_argument);
  EXPECT_THROW(GeneratingSet({{1, 1}, {1, -1}}), std::invalid_argument);
  EXPECT_THROW(GeneratingSet({}), std::invalid_argument);
  EXPECT_THROW(GeneratingSet({{0, 0}, {1, 0}}), std::invalid_argument);
  EXPECT_NO_THROW(GeneratingSet({{2, 0}, {3, 0}, {0, 1}}));
  EXPECT_EQ(parse_generating_set("standard").symmetric().size(), 4u);
  EXPECT_EQ(to_string(parse_generating_set("1,0;1,1")), "1,0;1,1");
}

TEST(Lattice, GeodesicCountExamples) {
  EXPECT_EQ(geodesic_count({0, 0}, {3, 3}), 20);
  EXPECT_EQ(geodesic_count({0, 0}, {5, 0}), 1);
  EXPECT_EQ(geodesic_count({0, 0}, {2, 1}), 3);
  EXPECT_EQ(geodesic_count({0, 0}, {50, 50}), BigInt("100891344545564193334812497256"));
}

TEST(Lattice, CountIsOneExactlyOnAxes) {
  for (int dx = -6; dx <= 6; ++dx) {
    for (int dy = -6; dy <= 6; ++dy) {
      EXPECT_EQ(geodesic_count({}, {dx, dy}) == 1, dx == 0 || dy == 0);
    }
  }
}

TEST(Lattice, EnumerationExamples) {
  auto two = enumerate_geodesics({0, 0}, {1, 1}, 10);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].digits(), "01");
  EXPECT_EQ(two[1].digits(), "10");
  EXPECT_EQ(enumerate_geodesics({0, 0}, {3, 3}, 100).size(), 20u);
  auto first = enumerate_geodesics({0, 0}, {2, 1}, 2);
  ASSERT_EQ(first.size(), 2u);
  EXPECT_EQ(first[0].digits(), "001");
  EXPECT_EQ(first[1].digits(), "010");
}

TEST(Lattice, EnumerationMatchesBruteForce) {
  for (int dx = -4; dx <= 4; ++dx) {
    for (int dy = -4; dy <= 4; ++dy) {
      if (std::abs(dx) + std::abs(dy) > 8) continue;
      auto brute = oracle::brute_geodesics(dx, dy);
      auto words = enumerate_geodesics({7, -2}, {7 + dx, -2 + dy}, kUnlimited);
      ASSERT_EQ(words.size(), brute.size());
      for (std::size_t i = 0; i < words.size(); ++i) EXPECT_EQ(words[i].digits(), brute[i]);
    }
  }
}

TEST(Lattice, EnumerationAgreesWithCountUpToTwelve) {
  for (int dx = -12; dx <= 12; ++dx) {
    for (int dy = -12; dy <= 12; ++dy) {
      if (std::abs(dx) + std::abs(dy) > 12) continue;
      LatticePoint p{1, 1}, q{1 + dx, 1 + dy};
      auto words = enumerate_geodesics(p, q, kUnlimited);
      ASSERT_EQ(BigInt(words.size()), geodesic_count(p, q));
      for (std::size_t i = 0; i < words.size(); ++i) {
        EXPECT_TRUE(is_geodesic_word(words[i]));
        EXPECT_EQ(words[i].endpoint(p), q);
        EXPECT_EQ(BigInt(words[i].length()), word_metric(p, q));
        if (i > 0) EXPECT_LT(words[i - 1], words[i]);
      }
    }
  }
}

TEST(Lattice, GeodesicWordExamples) {
  EXPECT_TRUE(is_geodesic_word(Word("0011")));
  EXPECT_FALSE(is_geodesic_word(Word("02")));
  EXPECT_FALSE(is_geodesic_word(Word("0103")));
  EXPECT_TRUE(is_geodesic_word(Word("4343")));
  EXPECT_EQ(Word("44").digits(), "00");
  EXPECT_THROW(Word("05"), std::invalid_argument);
}

TEST(Lattice, GeodesicWordIffLengthEqualsDistance) {
  oracle::Gen gen(8);
  for (int i = 0; i < 500; ++i) {
    std::string digits;
    auto n = gen.integer(0, 10);
    for (int k = 0; k < n; ++k) digits += static_cast<char>('0' + gen.integer(0, 3));
    Word w(digits);
    EXPECT_EQ(is_geodesic_word(w), BigInt(w.length()) == word_metric({}, w.endpoint())) << digits;
  }
}

TEST(Lattice, LipschitzConstants) {
  auto standard = GeneratingSet::standard();
  EXPECT_EQ(generating_set_lipschitz(standard, standard, 64), (LipschitzConstants{1, 1}));
  // (0,1) costs two letters of {(1,0),(1,1)}; (1,1) costs two standard letters.
  EXPECT_EQ(generating_set_lipschitz(standard, GeneratingSet({{1, 0}, {1, 1}}), 64), (LipschitzConstants{2, 2}));
  // (2,0) costs two standard letters; (1,0) = (1,1) - (0,1) costs two letters of S.
  EXPECT_EQ(generating_set_lipschitz(GeneratingSet({{2, 0}, {0, 1}, {1, 1}}), standard, 64), (LipschitzConstants{2, 2}));
  EXPECT_THROW(generating_set_lipschitz(GeneratingSet({{40, 0}, {1, 0}, {0, 1}}), standard, 10), RadiusExceeded);
}

TEST(Lattice, LipschitzConstantsCertifyBothInequalities) {
  std::vector<std::vector<oracle::Offset>> sets = {{{1, 0}, {1, 1}}, {{2, 0}, {0, 1}, {1, 1}}, {{1, 2}, {1, 0}, {0, 3}}};
  for (const auto& gens : sets) {
    std::vector<GeneratingSet::Vector> vs;
    for (auto [x, y] : gens) vs.push_back({x, y});
    auto c = generating_set_lipschitz(GeneratingSet::standard(), GeneratingSet(vs), 64);
    auto other = oracle::word_lengths(gens, 30);
    for (int x = -10; x <= 10; ++x) {
      for (int y = -10; y <= 10; ++y) {
        if (std::abs(x) + std::abs(y) > 10) continue;
        std::int64_t d = std::abs(x) + std::abs(y);
        std::int64_t d2 = other.at({x, y});
        EXPECT_LE(d, c.n * d2);
        EXPECT_LE(d2, c.m * d);
      }
    }
  }
}

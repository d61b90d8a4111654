#include "generators.hpp"
#include "ordinal_laws.hpp"
#include "small_ordinal.hpp"

#include "ordflow/error.hpp"
#include "ordflow/ordinal.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace ordflow;

namespace {

Ordinal P(const char* s) { return parse_ordinal(s); }
const Ordinal w = Ordinal::omega();

}  // namespace

TEST(OrdinalCompare, Examples) {
  EXPECT_EQ(compare(Ordinal::zero(), w), Ordering::less);
  EXPECT_EQ(compare(P("w*2"), P("w^(2)")), Ordering::less);
  EXPECT_EQ(compare(P("w + 3"), P("w + 3")), Ordering::equal);
  // later summand decides when the prefixes agree
  EXPECT_EQ(compare(P("w^(2) + w"), P("w^(2) + w*2")), Ordering::less);
  EXPECT_EQ(compare(P("w^(2) + 5"), P("w^(2)")), Ordering::greater);
}

TEST(OrdinalAdd, Examples) {
  EXPECT_EQ(add(Ordinal::zero(), P("w + 1")), P("w + 1"));
  EXPECT_EQ(add(from_nat(1), w), w);
  EXPECT_EQ(add(P("w*2 + 3"), P("w + 5")), P("w*3 + 5"));
  EXPECT_EQ(add(P("w^(2) + w + 4"), P("w*2")), P("w^(2) + w*3"));
  EXPECT_EQ(add(P("w^(w) + 3"), P("w^(2)")), P("w^(w) + w^(2)"));
}

TEST(OrdinalMul, Examples) {
  EXPECT_EQ(mul(P("w + 7"), Ordinal::one()), P("w + 7"));
  EXPECT_EQ(mul(from_nat(2), w), w);
  EXPECT_EQ(mul(P("w + 1"), from_nat(2)), P("w*2 + 1"));
  EXPECT_EQ(mul(P("w + 1"), P("w + 2")), P("w^(2) + w*2 + 1"));
  EXPECT_EQ(mul(w, Ordinal::zero()), Ordinal::zero());
  EXPECT_EQ(mul(Ordinal::zero(), w), Ordinal::zero());
}

TEST(OrdinalMonus, Examples) {
  EXPECT_EQ(monus(P("w^(2) + 1"), P("w^(2) + 1")), Ordinal::zero());
  EXPECT_EQ(monus(w, from_nat(1)), w);
  EXPECT_EQ(monus(P("w*3 + 2"), w), P("w*2 + 2"));
  EXPECT_EQ(monus(from_nat(3), w), Ordinal::zero());
  EXPECT_EQ(monus(P("w*3"), P("w*2 + 5")), w);
  EXPECT_EQ(monus(P("w + 2"), w), from_nat(2));
}

TEST(OrdinalDiv, Examples) {
  EXPECT_EQ(div_left(P("w^(w) + 4"), Ordinal::one()), P("w^(w) + 4"));
  EXPECT_EQ(div_left(P("w*2 + 3"), w), from_nat(2));
  EXPECT_EQ(div_left(P("w^(2)"), w), w);
  EXPECT_EQ(div_left(P("w^(2) + w"), P("w + 1")), w);
  EXPECT_EQ(div_left(from_nat(7), from_nat(2)), from_nat(3));
  EXPECT_EQ(div_left(from_nat(3), w), Ordinal::zero());
  EXPECT_THROW(div_left(w, Ordinal::zero()), DivisionByZeroOrdinal);
}

TEST(OrdinalMisc, PowersAndNaturals) {
  EXPECT_EQ(omega_pow(Ordinal::zero()), Ordinal::one());
  EXPECT_EQ(omega_pow(Ordinal::one()), w);
  EXPECT_EQ(omega_pow(from_nat(2)), P("w^(2)"));
  EXPECT_EQ(from_nat(0), Ordinal::zero());
  EXPECT_EQ(from_nat(1), Ordinal::one());
  EXPECT_EQ(print(from_nat(3)), "3");
  EXPECT_EQ(to_nat(from_nat(12345)), 12345);
  EXPECT_THROW(to_nat(w), NotFinite);
}

TEST(OrdinalMisc, LimitsAndSuccessors) {
  EXPECT_TRUE(is_limit(w));
  EXPECT_FALSE(is_successor(w));
  EXPECT_TRUE(is_successor(P("w + 1")));
  EXPECT_EQ(pred(P("w + 1")), w);
  EXPECT_EQ(pred(P("w + 3")), P("w + 2"));
  EXPECT_FALSE(is_limit(Ordinal::zero()));
  EXPECT_FALSE(is_successor(Ordinal::zero()));
  EXPECT_THROW(pred(w), NotSuccessor);
  EXPECT_THROW(pred(Ordinal::zero()), NotSuccessor);
}

TEST(OrdinalText, ParseAndPrint) {
  Ordinal a = P("w^(w)*2 + w + 3");
  ASSERT_EQ(a.terms().size(), 3u);
  EXPECT_EQ(a.terms()[0].exponent, w);
  EXPECT_EQ(a.terms()[0].coefficient, 2);
  EXPECT_EQ(a.terms()[1].exponent, Ordinal::one());
  EXPECT_EQ(a.terms()[2].exponent, Ordinal::zero());
  EXPECT_EQ(a.terms()[2].coefficient, 3);
  EXPECT_EQ(print(P("w^(0)*5")), "5");
  EXPECT_EQ(print(P("w^(1)")), "w");
  EXPECT_EQ(print(P("  w ^ ( w ) *2+w+3 ")), "w^(w)*2 + w + 3");
  EXPECT_EQ(print(P("0")), "0");
}

TEST(OrdinalText, RejectsNonCanonical) {
  EXPECT_THROW(P("w + w^(w)"), ParseError);
  EXPECT_THROW(P("w + w"), ParseError);
  EXPECT_THROW(P("3 + 4"), ParseError);
  EXPECT_THROW(P("w*0"), ParseError);
  EXPECT_THROW(P("w + 0"), ParseError);
  EXPECT_THROW(P("007"), ParseError);
  EXPECT_THROW(P(""), ParseError);
  EXPECT_THROW(P("w^w"), ParseError);
  EXPECT_THROW(P("w^(2"), ParseError);
  try {
    P("w + w^(w)");
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(OrdinalCode, SmallCodes) {
  EXPECT_EQ(encode(Ordinal::zero()), 0);
  EXPECT_EQ(encode(Ordinal::one()), 11);
  EXPECT_EQ(encode(from_nat(2)), 51);
  EXPECT_EQ(encode(from_nat(3)), 52);
  EXPECT_EQ(encode(w), 111);
  EXPECT_TRUE(is_valid_code(encode(Ordinal::zero())));
  EXPECT_FALSE(is_valid_code(1));
  EXPECT_THROW(decode(1), InvalidCode);
}

TEST(OrdinalCode, RoundTrip) {
  Ordinal a = P("w^(2) + w*2 + 1");
  EXPECT_EQ(decode(encode(a)), a);
}

// Every code up to the limit is valid exactly when it is the encoding of an
// ordinal; the ordinals with small codes are found by a separate enumeration.
TEST(OrdinalCode, ValidCodesAreExactlyEncodings) {
  const unsigned limit = 5000;
  std::set<Natural> encodings;
  std::vector<Ordinal> pool{Ordinal::zero()};
  // Enumerate ordinals with small syntax: exponents from the pool, coefficients
  // up to 63, up to three summands, pruned to codes below 2^13 at every stage.
  const Natural prune = 1 << 13;
  for (int round = 0; round < 3; ++round) {
    std::vector<Ordinal> next = pool;
    for (const Ordinal& e : pool)
      for (unsigned c = 1; c <= 63; ++c) {
        Ordinal m = Ordinal::from_terms({CnfTerm{e, c}});
        if (encode(m) <= prune) next.push_back(m);
      }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    std::vector<Ordinal> sums = next;
    for (const Ordinal& a : next)
      for (const Ordinal& b : next)
        if (!a.is_zero() && !b.is_zero() && b.terms()[0].exponent < a.terms().back().exponent) {
          auto t = a.terms();
          t.insert(t.end(), b.terms().begin(), b.terms().end());
          Ordinal o = Ordinal::from_terms(t);
          if (t.size() <= 3 && encode(o) <= prune) sums.push_back(o);
        }
    pool.clear();
    for (auto& o : sums)
      if (encode(o) <= prune) pool.push_back(o);
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  }
  for (const Ordinal& o : pool)
    if (encode(o) <= limit) encodings.insert(encode(o));
  Natural smallest_invalid = -1;
  for (unsigned c = 0; c <= limit; ++c) {
    bool valid = is_valid_code(c);
    EXPECT_EQ(valid, encodings.count(c) == 1) << "code " << c;
    if (!valid && smallest_invalid < 0) smallest_invalid = c;
    if (valid) EXPECT_EQ(encode(decode(c)), c);
  }
  EXPECT_EQ(smallest_invalid, 1);
}

TEST(OrdinalCode, LengthLinearInSymbols) {
  gen::Rng rng(11);
  for (int i = 0; i < 3000; ++i) {
    Ordinal a = gen::ordinal(rng, 3, 3, 1000);
    EXPECT_LE(bitlen(encode(a)), 10 * symbol_count(a) + 2) << print(a);
  }
}

TEST(OrdinalText, PrintParseRoundTrip) {
  gen::Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    Ordinal a = gen::ordinal(rng, 3, 3, 50);
    EXPECT_EQ(parse_ordinal(print(a)), a);
    EXPECT_EQ(decode(encode(a)), a);
  }
}

TEST(OrdinalOracle, EmbedRestrict) {
  EXPECT_EQ(oracle::embed({1, 2, 3}), P("w^(2) + w*2 + 3"));
  EXPECT_EQ(oracle::restrict(oracle::embed({4, 0, 1})), (oracle::SmallOrdinal{4, 0, 1}));
  EXPECT_THROW(oracle::restrict(omega_pow(from_nat(3))), oracle::TooLarge);
  EXPECT_EQ(oracle::oracle_add({0, 2, 3}, {0, 1, 5}), (oracle::SmallOrdinal{0, 3, 5}));
  EXPECT_EQ(oracle::oracle_cmp({0, 2, 0}, {1, 0, 0}), std::strong_ordering::less);
  EXPECT_EQ(oracle::oracle_monus({0, 3, 2}, {0, 1, 0}), (oracle::SmallOrdinal{0, 2, 2}));
}

// Spot check against the oracle; the exhaustive sweep lives in the acceptance suite.
TEST(OrdinalOracle, AgreesOnSample) {
  gen::Rng rng(5);
  std::uniform_int_distribution<unsigned> c(0, 4);
  for (int i = 0; i < 4000; ++i) {
    oracle::SmallOrdinal x{c(rng), c(rng), c(rng)}, y{c(rng), c(rng), c(rng)};
    Ordinal a = oracle::embed(x), b = oracle::embed(y);
    EXPECT_EQ(add(a, b), oracle::embed(oracle::oracle_add(x, y)));
    EXPECT_EQ(monus(a, b), oracle::embed(oracle::oracle_monus(x, y)));
    EXPECT_EQ(compare(a, b) == Ordering::less, oracle::oracle_cmp(x, y) < 0);
    if (auto p = oracle::oracle_mul(x, y)) EXPECT_EQ(mul(a, b), oracle::embed(*p));
    if (!b.is_zero()) EXPECT_EQ(div_left(a, b), oracle::embed(oracle::oracle_div(x, y)));
  }
}

TEST(OrdinalLaws, RandomTriples) {
  gen::Rng rng(2024);
  for (int i = 0; i < 1500; ++i) {
    Ordinal a = gen::ordinal(rng, 3), b = gen::ordinal(rng, 3), c = gen::ordinal(rng, 3);
    for (const auto& f : laws::check_triple(a, b, c)) ADD_FAILURE() << f;
  }
}

TEST(OrdinalLaws, NaturalEmbedding) {
  for (const auto& f : laws::check_naturals(200)) ADD_FAILURE() << f;
}

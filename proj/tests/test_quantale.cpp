#include <gtest/gtest.h>

#include <algorithm>

#include "tvcat/error.hpp"
#include "tvcat/quantale.hpp"

using namespace tvcat;

namespace {

// Residual by definition: the join of every b with a * b <= c, found as the
// unique upper bound of that set lying below every other upper bound.
std::size_t residual(const QuantaleTables& t, std::size_t a, std::size_t c) {
  const std::size_t n = t.size();
  std::vector<std::size_t> below;
  for (std::size_t b = 0; b < n; ++b)
    if (t.le(t.mul(a, b), c)) below.push_back(b);
  for (std::size_t u = 0; u < n; ++u) {
    if (!std::all_of(below.begin(), below.end(), [&](std::size_t b) { return t.le(b, u); }))
      continue;
    bool least = true;
    for (std::size_t w = 0; w < n; ++w)
      if (std::all_of(below.begin(), below.end(), [&](std::size_t b) { return t.le(b, w); }) &&
          !t.le(u, w))
        least = false;
    if (least) return u;
  }
  return n;
}

std::string hom(const Quantale& q, const char* a, const char* c) {
  return q.label(q.hom(q.at(a), q.at(c)));
}

}  // namespace

TEST(Quantale, TruncatedChainIsAdditionCappedAtInfinity) {
  for (int n = 0; n <= 4; ++n) {
    const QuantaleTables t = builtin_tables("truncated_chain", n);
    ASSERT_EQ(t.size(), static_cast<std::size_t>(n) + 2);
    EXPECT_EQ(t.elements.back(), "inf");
    EXPECT_EQ(t.unit, 0u);
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t b = 0; b < t.size(); ++b) {
        EXPECT_EQ(t.le(a, b), a >= b);
        EXPECT_EQ(t.mul(a, b), std::min<std::size_t>(a + b, n + 1));
      }
  }
}

TEST(Quantale, LukasiewiczChainIsTruncatedSum) {
  for (int n = 1; n <= 4; ++n) {
    const QuantaleTables t = builtin_tables("lukasiewicz_chain", n);
    ASSERT_EQ(t.size(), static_cast<std::size_t>(n) + 1);
    EXPECT_EQ(t.unit, static_cast<std::size_t>(n));
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t b = 0; b < t.size(); ++b) {
        EXPECT_EQ(t.le(a, b), a <= b);
        const long s = static_cast<long>(a + b) - n;
        EXPECT_EQ(t.mul(a, b), static_cast<std::size_t>(s < 0 ? 0 : s));
      }
  }
}

TEST(Quantale, PowersetFrameIsIntersection) {
  for (int n = 1; n <= 3; ++n) {
    const QuantaleTables t = builtin_tables("powerset_frame", n);
    ASSERT_EQ(t.size(), std::size_t{1} << n);
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t b = 0; b < t.size(); ++b) {
        EXPECT_EQ(t.le(a, b), (a & ~b) == 0);
        EXPECT_EQ(t.mul(a, b), a & b);
      }
  }
  EXPECT_EQ(builtin_tables("powerset_frame", 2).elements,
            (std::vector<std::string>{"{}", "{0}", "{1}", "{0,1}"}));
}

TEST(Quantale, HomIsTheResidualOfTensor) {
  for (auto [name, n] : std::vector<std::pair<const char*, int>>{
           {"boolean", 0}, {"truncated_chain", 3}, {"lukasiewicz_chain", 3}, {"powerset_frame", 3}}) {
    const QuantalePtr q = build_quantale(name, n);
    for (Value a : q->elements())
      for (Value c : q->elements())
        EXPECT_EQ(q->hom(a, c).index, residual(q->tables(), a.index, c.index)) << name;
  }
}

TEST(Quantale, FrozenHomValues) {
  const QuantalePtr t = build_quantale("truncated_chain", 2);
  EXPECT_EQ(hom(*t, "1", "2"), "1");
  EXPECT_EQ(hom(*t, "2", "1"), "0");
  EXPECT_EQ(hom(*t, "inf", "0"), "0");
  EXPECT_EQ(hom(*t, "0", "inf"), "inf");
  EXPECT_EQ(t->label(t->top()), "0");
  EXPECT_EQ(t->label(t->bottom()), "inf");

  const QuantalePtr l = build_quantale("lukasiewicz_chain", 2);
  EXPECT_EQ(l->label(l->tensor(l->at("1"), l->at("1"))), "0");
  EXPECT_EQ(hom(*l, "2", "1"), "1");
  EXPECT_EQ(hom(*l, "1", "0"), "1");
  EXPECT_EQ(hom(*l, "0", "0"), "2");
}

TEST(Quantale, BuiltinsSatisfyEveryLaw) {
  for (auto [name, n] : std::vector<std::pair<const char*, int>>{
           {"boolean", 0}, {"truncated_chain", 0}, {"truncated_chain", 2},
           {"lukasiewicz_chain", 1}, {"lukasiewicz_chain", 2}, {"powerset_frame", 2}}) {
    const LawReport r = check_quantale_laws(builtin_tables(name, n));
    EXPECT_TRUE(r.passed()) << name << "\n" << r.to_text();
    EXPECT_EQ(r.skips(), 0u);
  }
}

TEST(Quantale, EveryBooleanTensorMutationIsRejected) {
  const QuantaleTables base = builtin_tables("boolean");
  int mutants = 0;
  for (std::size_t cell = 0; cell < base.tensor.size(); ++cell) {
    QuantaleTables t = base;
    t.tensor[cell] = static_cast<std::uint16_t>(1 - t.tensor[cell]);
    ++mutants;
    const LawReport r = check_quantale_laws(t);
    EXPECT_FALSE(r.passed()) << "mutation of cell " << cell << " accepted";
    EXPECT_THROW(Quantale{t}, ValidationError);
  }
  EXPECT_EQ(mutants, 4);
}

TEST(Quantale, ValidationErrorNamesLawAndWitness) {
  QuantaleTables t = builtin_tables("boolean");
  t.tensor[3] = 0;  // 1 * 1 = 0 breaks the unit law
  try {
    Quantale q(t);
    FAIL() << "accepted";
  } catch (const ValidationError& e) {
    EXPECT_FALSE(e.law().empty());
    EXPECT_FALSE(e.witness().empty());
  }
}

TEST(Quantale, SuppliedHomTableIsChecked) {
  QuantaleTables t = builtin_tables("boolean");
  t.hom = std::vector<std::uint16_t>{1, 1, 0, 0};  // hom(1, 1) should be 1
  const LawReport r = check_quantale_laws(t);
  EXPECT_FALSE(r.passed());
  t.hom = std::vector<std::uint16_t>{1, 1, 0, 1};
  EXPECT_TRUE(check_quantale_laws(t).passed());
}

TEST(Quantale, ExplicitTables) {
  // the three-element chain 0 < h < 1 with min as tensor
  std::map<std::pair<std::string, std::string>, std::string> tensor;
  const std::vector<std::string> els = {"0", "h", "1"};
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) tensor[{els[a], els[b]}] = els[std::min(a, b)];
  const QuantaleTables t = explicit_tables("min3", els, {{"0", "h"}, {"h", "1"}}, tensor, "1");
  EXPECT_TRUE(t.le(0, 2));  // closed under transitivity
  const Quantale q(t);
  EXPECT_EQ(q.label(q.hom(q.at("1"), q.at("h"))), "h");
  EXPECT_EQ(q.label(q.hom(q.at("h"), q.at("0"))), "0");
  EXPECT_EQ(q.label(q.hom(q.at("h"), q.at("h"))), "1");

  EXPECT_THROW(explicit_tables("x", els, {{"0", "h"}, {"h", "0"}}, tensor, "1"), InputError);
  EXPECT_THROW(explicit_tables("x", els, {{"0", "q"}}, tensor, "1"), InputError);
  auto partial = tensor;
  partial.erase({"h", "1"});
  EXPECT_THROW(explicit_tables("x", els, {{"0", "h"}, {"h", "1"}}, partial, "1"), InputError);
  EXPECT_THROW(explicit_tables("x", els, {{"0", "h"}, {"h", "1"}}, tensor, "2"), InputError);
}

TEST(Quantale, UnknownBuiltinsAndBadSizes) {
  EXPECT_THROW(builtin_tables("nope"), InputError);
  EXPECT_THROW(builtin_tables("lukasiewicz_chain", 0), InputError);
  EXPECT_THROW(builtin_tables("powerset_frame", 7), InputError);
  EXPECT_THROW(build_quantale("boolean")->at("2"), InputError);
}

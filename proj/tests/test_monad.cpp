#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "tvcat/error.hpp"
#include "tvcat/monad.hpp"

using namespace tvcat;

namespace {

const std::vector<std::pair<const char*, int>> kQuantales = {
    {"boolean", 0}, {"truncated_chain", 2}, {"lukasiewicz_chain", 2}, {"powerset_frame", 2}};

// The identity monad with e_X sending everything to the first point.
class SquashedUnit final : public Monad {
 public:
  using Monad::Monad;
  std::string kind() const override { return "squashed"; }
  std::size_t object_size(std::size_t n) const override { return n; }
  std::vector<std::size_t> unit_table(std::size_t n) const override {
    return std::vector<std::size_t>(n, 0);
  }
  std::vector<std::size_t> mult_table(std::size_t n) const override { return iota(n); }
  std::vector<std::size_t> map_table(const std::vector<std::size_t>& f,
                                     std::size_t) const override {
    return f;
  }
  std::vector<Value> xi_table() const override { return quantale()->elements(); }
  std::string element_label(std::size_t, std::size_t t,
                            const std::vector<std::string>& labels) const override {
    return labels.at(t);
  }

 private:
  static std::vector<std::size_t> iota(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
  }
};

}  // namespace

TEST(Monad, LawsHoldForEveryInstance) {
  for (const char* kind : {"identity", "finite_ultrafilter"})
    for (auto [name, n] : kQuantales) {
      const MonadPtr m = instantiate_monad(kind, build_quantale(name, n));
      const LawReport r = check_monad_laws(*m);
      EXPECT_TRUE(r.passed()) << kind << " / " << name << "\n" << r.to_text();
      EXPECT_EQ(r.skips(), 0u) << kind << " / " << name << "\n" << r.to_text();
      for (const char* law : {"condition C inequality", "(BC): T preserves weak pullbacks",
                              "lax extension agrees with transport along points"}) {
        const LawCheck* c = r.find(law);
        ASSERT_NE(c, nullptr) << law;
        EXPECT_GT(c->checked, 0u) << law;
      }
    }
}

TEST(Monad, UltrafiltersOnFiniteSetsArePrincipal) {
  const MonadPtr m = instantiate_monad("finite_ultrafilter", build_quantale("boolean"));
  for (std::size_t n = 0; n <= 5; ++n) {
    ASSERT_EQ(m->object_size(n), n);
    const auto e = m->unit_table(n);
    EXPECT_EQ(std::set<std::size_t>(e.begin(), e.end()).size(), n);
    for (std::size_t t = 0; t < n; ++t) EXPECT_TRUE(m->point_table(n)[t].has_value());
  }
}

TEST(Monad, UltrafilterAlgebraFixesPrincipalElements) {
  for (auto [name, n] : kQuantales) {
    const QuantalePtr q = build_quantale(name, n);
    const MonadPtr m = instantiate_monad("finite_ultrafilter", q);
    const auto xi = m->xi_table();
    const auto e = m->unit_table(q->size());
    for (Value v : q->elements()) EXPECT_EQ(xi[e[v.index]], v) << name;
  }
}

TEST(Monad, LaxExtensionOfIdentityIsIdentity) {
  const QuantalePtr q = build_quantale("lukasiewicz_chain", 2);
  const MonadPtr m = instantiate_monad("identity", q);
  VRelation r(q, 2, 3, q->bottom());
  r.set(0, 1, q->at("1"));
  r.set(1, 2, q->at("2"));
  EXPECT_EQ(lax_extend(*m, r), r);
}

TEST(Monad, BrokenUnitIsReported) {
  const SquashedUnit m(build_quantale("boolean"));
  const LawReport r = check_monad_laws(m);
  EXPECT_FALSE(r.passed());
  const LawCheck* unit = r.find("monad unit laws");
  ASSERT_NE(unit, nullptr);
  EXPECT_EQ(unit->status, Status::fail);
  EXPECT_FALSE(unit->witness.empty());
}

TEST(Monad, UnknownKind) {
  EXPECT_THROW(instantiate_monad("filter", build_quantale("boolean")), InputError);
}

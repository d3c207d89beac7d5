#include <gtest/gtest.h>

#include "oracle.hpp"
#include "tvcat/corpus.hpp"
#include "tvcat/error.hpp"
#include "tvcat/presheaf.hpp"

using namespace tvcat;

namespace {

MonadPtr ord() { return instantiate_monad("identity", build_quantale("boolean")); }

std::vector<bool> indicator(const Quantale& q, const std::vector<Value>& phi) {
  std::vector<bool> out;
  for (Value v : phi) out.push_back(v == q.top());
  return out;
}

// Bimodules with at least one entry above bottom. Composites of two such can
// vanish, so the class is not closed under composition.
class NonzeroClass final : public SaturatedClass {
 public:
  std::string name() const override { return "nonzero"; }
  bool contains(const Bimodule& psi) const override {
    for (Value v : psi.rel.data())
      if (v != psi.rel.q().bottom()) return true;
    return false;
  }
};

// Only the identity bimodules: misses the f^* of non-identity functors.
class IdentitiesOnly final : public SaturatedClass {
 public:
  std::string name() const override { return "identities"; }
  bool contains(const Bimodule& psi) const override {
    return psi.source == psi.target && psi.rel == psi.source->structure();
  }
};

SaturationCorpus small_corpus(std::size_t n) {
  const Corpus c = build_corpus(ord(), {.max_size = n});
  return {c.objects, c.functors};
}

}  // namespace

TEST(Presheaf, AllPresheavesOnAPosetAreItsDownSets) {
  const MonadPtr m = ord();
  const ClassPtr all = saturated_class("all");
  for (const auto& p : oracle::posets(3)) {
    const CategoryPtr x = oracle::category(m, p, "x");
    const SpacePtr s = presheaf_space(x, all);
    const auto expected = oracle::down_sets(p);
    ASSERT_EQ(s->size(), expected.size());
    std::set<std::vector<bool>> got;
    for (const auto& phi : s->presheaves()) got.insert(indicator(*m->quantale(), phi));
    EXPECT_EQ(got, std::set<std::vector<bool>>(expected.begin(), expected.end()));
    // y(x) is the principal down-set
    for (std::size_t a = 0; a < p.n; ++a) {
      const auto phi = indicator(*m->quantale(), s->presheaf(s->yoneda()(a)));
      for (std::size_t b = 0; b < p.n; ++b) EXPECT_EQ(phi[b], p(b, a));
    }
  }
}

TEST(Presheaf, RepresentableAndRightAdjointSpacesOnPosets) {
  const MonadPtr m = ord();
  for (const char* kind : {"representable", "right_adjoint", "lawvere"}) {
    const ClassPtr cls = saturated_class(kind);
    for (const auto& p : oracle::posets(3)) {
      const CategoryPtr x = oracle::category(m, p, "x");
      EXPECT_EQ(presheaf_space(x, cls)->size(), p.n) << kind;
    }
  }
  EXPECT_THROW(saturated_class("finite"), InputError);
}

TEST(Presheaf, ChainFrozenSpace) {
  const MonadPtr m = ord();
  const CategoryPtr two = oracle::category(m, oracle::chain(2), "two");
  const SpacePtr s = presheaf_space(two, saturated_class("all"));
  std::vector<std::string> labels;
  for (const auto& phi : s->presheaves()) labels.push_back(presheaf_label(*m->quantale(), phi));
  EXPECT_EQ(labels, (std::vector<std::string>{"[0;0]", "[1;0]", "[1;1]"}));
}

TEST(Presheaf, YonedaAndMonadLaws) {
  const MonadPtr m = ord();
  for (const char* kind : {"all", "representable", "right_adjoint"}) {
    const ClassPtr cls = saturated_class(kind);
    SpaceCache cache;
    for (const auto& p : oracle::posets(3)) {
      const CategoryPtr x = oracle::category(m, p, "x");
      EXPECT_TRUE(yoneda_lemma_check(*cache.get(x, cls)).passed());
      const LawReport r = check_presheaf_monad(x, cls, cache);
      EXPECT_TRUE(r.passed()) << kind << "\n" << r.to_text();
      EXPECT_EQ(r.skips(), 0u);
    }
  }
}

TEST(Presheaf, MonadLawsOverOtherQuantales) {
  for (auto [name, n] : std::vector<std::pair<const char*, int>>{
           {"truncated_chain", 2}, {"lukasiewicz_chain", 2}, {"powerset_frame", 2}}) {
    const MonadPtr m = instantiate_monad("identity", build_quantale(name, n));
    const Corpus c = build_corpus(m, {.max_size = 2});
    SpaceCache cache;
    for (const char* kind : {"all", "representable", "right_adjoint"}) {
      const ClassPtr cls = saturated_class(kind);
      for (const CategoryPtr& x : c.objects)
        EXPECT_TRUE(check_presheaf_monad(x, cls, cache).passed()) << name << " " << kind;
      for (const Functor& f : c.functors)
        EXPECT_TRUE(check_presheaf_naturality(f, cls, cache).passed()) << name << " " << kind;
    }
  }
}

TEST(Presheaf, UltrafilterMonadOnFiniteSetsBehavesLikeIdentity) {
  const MonadPtr m = instantiate_monad("finite_ultrafilter", build_quantale("boolean"));
  const Corpus c = build_corpus(m, {.max_size = 3});
  EXPECT_EQ(c.objects.size(), 8u);
  EXPECT_EQ(c.functors.size(), 476u);
  SpaceCache cache;
  for (const CategoryPtr& x : c.objects)
    EXPECT_EQ(cache.get(x, saturated_class("all"))->size(),
              oracle::down_sets(oracle::poset_of(*x)).size());
}

TEST(Presheaf, AlgebrasExistExactlyOnCompleteLattices) {
  const MonadPtr m = ord();
  for (const auto& p : oracle::posets(3)) {
    const CategoryPtr x = oracle::category(m, p, "x");
    const SpacePtr s = presheaf_space(x, saturated_class("all"));
    const RetractionSearch r = has_algebra(x, *s);
    EXPECT_EQ(r.algebra.has_value(), oracle::complete_lattice(p));
    if (r.algebra) {
      // the algebra sends a down-set to its supremum
      for (std::size_t i = 0; i < s->size(); ++i) {
        const auto d = indicator(*m->quantale(), s->presheaf(i));
        const std::size_t sup = (*r.algebra)(i);
        for (std::size_t a = 0; a < p.n; ++a)
          if (d[a]) EXPECT_TRUE(p(a, sup));
      }
    }
  }
}

TEST(Presheaf, LeftAdjointSearchAgreesWithFormula) {
  const MonadPtr m = ord();
  const auto ps = oracle::posets(2);
  for (const auto& p : ps)
    for (const auto& r : ps) {
      const CategoryPtr x = oracle::category(m, p, "x"), y = oracle::category(m, r, "y");
      for (const Bimodule& psi : enumerate_bimodules(x, y))
        EXPECT_EQ(find_left_adjoint(psi).has_value(),
                  find_left_adjoint_by_search(psi).has_value());
    }
}

TEST(Presheaf, BuiltinClassesAreSaturated) {
  const SaturationCorpus c = small_corpus(2);
  for (const char* kind : {"all", "representable", "right_adjoint"}) {
    const LawReport r = check_saturated(saturated_class(kind), c);
    EXPECT_TRUE(r.passed()) << kind << "\n" << r.to_text();
    EXPECT_EQ(r.skips(), 0u);
  }
}

TEST(Presheaf, BrokenClassesAreRejected) {
  const SaturationCorpus c = small_corpus(2);
  const LawReport nonzero = check_saturated(std::make_shared<NonzeroClass>(), c);
  const LawCheck* s1 = nonzero.find("(S1) closed under composition");
  ASSERT_NE(s1, nullptr);
  EXPECT_EQ(s1->status, Status::fail);
  EXPECT_FALSE(s1->witness.empty());

  const LawReport ids = check_saturated(std::make_shared<IdentitiesOnly>(), c);
  const LawCheck* s2 = ids.find("(S2) contains every f^*");
  ASSERT_NE(s2, nullptr);
  EXPECT_EQ(s2->status, Status::fail);
  EXPECT_FALSE(s2->witness.empty());
}

TEST(Presheaf, SizeCapIsEnforced) {
  const MonadPtr m = ord();
  const CategoryPtr d = oracle::category(m, oracle::discrete(3), "d");
  EXPECT_THROW(presheaf_space(d, saturated_class("all"), 7), SizeCapExceeded);
  EXPECT_EQ(presheaf_space(d, saturated_class("all"), 8)->size(), 8u);
}

#include <gtest/gtest.h>

#include <random>

#include "tvcat/error.hpp"
#include "tvcat/vrel.hpp"

using namespace tvcat;

namespace {

VRelation naive_compose(const VRelation& s, const VRelation& r) {
  const Quantale& q = r.q();
  VRelation out(r.quantale(), r.rows(), s.cols(), q.bottom());
  for (std::size_t x = 0; x < r.rows(); ++x)
    for (std::size_t z = 0; z < s.cols(); ++z) {
      Value acc = q.bottom();
      for (std::size_t y = 0; y < r.cols(); ++y) acc = q.join(acc, q.tensor(r(x, y), s(y, z)));
      out.set(x, z, acc);
    }
  return out;
}

std::vector<VRelation> all_relations(const QuantalePtr& q, std::size_t rows, std::size_t cols) {
  std::vector<VRelation> out;
  const std::size_t cells = rows * cols;
  std::vector<std::size_t> digits(cells, 0);
  while (true) {
    VRelation r(q, rows, cols);
    for (std::size_t i = 0; i < cells; ++i) r.set(i / cols, i % cols, q->value(digits[i]));
    out.push_back(r);
    std::size_t i = 0;
    while (i < cells && ++digits[i] == q->size()) digits[i++] = 0;
    if (i == cells) break;
  }
  return out;
}

VRelation random_relation(const QuantalePtr& q, std::size_t rows, std::size_t cols,
                          std::mt19937_64& rng) {
  VRelation r(q, rows, cols);
  std::uniform_int_distribution<std::size_t> pick(0, q->size() - 1);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) r.set(i, j, q->value(pick(rng)));
  return r;
}

}  // namespace

TEST(VRelation, CompositionMatchesDefinition) {
  std::mt19937_64 rng(7);
  for (auto [name, n] : std::vector<std::pair<const char*, int>>{
           {"boolean", 0}, {"truncated_chain", 2}, {"lukasiewicz_chain", 2}, {"powerset_frame", 2}}) {
    const QuantalePtr q = build_quantale(name, n);
    for (int i = 0; i < 200; ++i) {
      const VRelation r = random_relation(q, 1 + i % 3, 1 + (i / 3) % 3, rng);
      const VRelation s = random_relation(q, r.cols(), 1 + (i / 9) % 3, rng);
      EXPECT_EQ(compose(s, r), naive_compose(s, r)) << name;
    }
  }
}

TEST(VRelation, ResidualsAreLargestSolutionsOverBoolean) {
  // exhaustive over boolean relations between sets of at most two points
  const QuantalePtr q = build_quantale("boolean");
  for (std::size_t x = 1; x <= 2; ++x)
    for (std::size_t y = 1; y <= 2; ++y)
      for (std::size_t z = 1; z <= 2; ++z)
        for (const VRelation& r : all_relations(q, x, y))
          for (const VRelation& t : all_relations(q, x, z)) {
            // s: Y -/-> Z with s.r <= t
            VRelation best(q, y, z, q->bottom());
            for (const VRelation& s : all_relations(q, y, z))
              if (leq(naive_compose(s, r), t)) best = join(best, s);
            EXPECT_TRUE(leq(naive_compose(best, r), t));
            EXPECT_EQ(left_residual(t, r), best);
          }
  for (std::size_t x = 1; x <= 2; ++x)
    for (std::size_t y = 1; y <= 2; ++y)
      for (std::size_t z = 1; z <= 2; ++z)
        for (const VRelation& r : all_relations(q, x, y))
          for (const VRelation& t : all_relations(q, z, y)) {
            VRelation best(q, z, x, q->bottom());
            for (const VRelation& u : all_relations(q, z, x))
              if (leq(naive_compose(r, u), t)) best = join(best, u);
            EXPECT_EQ(right_residual(r, t), best);
          }
}

TEST(VRelation, ResidualAdjunctionOnRandomChains) {
  std::mt19937_64 rng(20240611);
  for (auto [name, n] : std::vector<std::pair<const char*, int>>{
           {"truncated_chain", 2}, {"lukasiewicz_chain", 2}}) {
    const QuantalePtr q = build_quantale(name, n);
    for (int i = 0; i < 1000; ++i) {
      std::uniform_int_distribution<std::size_t> size(1, 3);
      const std::size_t x = size(rng), y = size(rng), z = size(rng);
      const VRelation r = random_relation(q, x, y, rng);
      const VRelation s = random_relation(q, y, z, rng);
      const VRelation t = random_relation(q, x, z, rng);
      EXPECT_EQ(leq(compose(s, r), t), leq(s, left_residual(t, r))) << name;
      const VRelation u = random_relation(q, z, x, rng);
      const VRelation t2 = random_relation(q, z, y, rng);
      EXPECT_EQ(leq(compose(r, u), t2), leq(u, right_residual(r, t2))) << name;
    }
  }
}

TEST(VRelation, IdentityInvolutionAndGraphs) {
  const QuantalePtr q = build_quantale("lukasiewicz_chain", 2);
  std::mt19937_64 rng(3);
  const VRelation r = random_relation(q, 2, 3, rng);
  EXPECT_EQ(compose(r, VRelation::identity(q, 2)), r);
  EXPECT_EQ(compose(VRelation::identity(q, 3), r), r);
  EXPECT_EQ(involution(involution(r)), r);
  const VRelation s = random_relation(q, 3, 2, rng);
  EXPECT_EQ(involution(compose(s, r)), compose(involution(r), involution(s)));

  const VRelation g = VRelation::from_map(q, {1, 0, 1}, 2);
  EXPECT_EQ(g(0, 1), q->unit());
  EXPECT_EQ(g(0, 0), q->bottom());
  EXPECT_THROW(VRelation::from_map(q, {2}, 2), InputError);
}

TEST(VRelation, MixedQuantalesAreRejected) {
  const VRelation a(build_quantale("boolean"), 1, 1);
  const VRelation b(build_quantale("lukasiewicz_chain", 2), 1, 1);
  EXPECT_THROW(compose(a, b), InputError);
}

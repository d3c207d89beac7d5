#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "tvcat/verify.hpp"

using namespace tvcat;

TEST(Verify, DefaultConfiguration) {
  const VerifyConfig c = VerifyConfig::defaults();
  ASSERT_EQ(c.corpora.size(), 5u);
  EXPECT_EQ(c.corpora[0].quantale, "boolean");
  EXPECT_EQ(c.corpora[0].max_size, 3u);
  EXPECT_EQ(c.random_cases, 1000u);
  EXPECT_EQ(c.classes.size(), 3u);
}

TEST(Verify, SmallCorpusPassesEveryRow) {
  std::vector<std::string> streamed;
  VerifyConfig c = VerifyConfig::defaults();
  c.limit_size(2);
  c.on_row = [&](const VerifyRow& row) { streamed.push_back(row.id); };
  const VerifyReport r = verify(c);
  ASSERT_EQ(r.rows.size(), 12u);
  EXPECT_EQ(streamed.size(), 12u);
  for (const VerifyRow& row : r.rows) {
    EXPECT_TRUE(row.passed()) << row.id << "\n" << row.detail.to_text();
    EXPECT_FALSE(row.bound.empty()) << row.id;
  }
  EXPECT_TRUE(r.passed());
  const auto j = nlohmann::json::parse(r.to_json());
  EXPECT_EQ(j["status"], "pass");
}

TEST(Verify, CorruptionIsConfinedToTheQuantaleRow) {
  VerifyConfig c = VerifyConfig::defaults();
  c.limit_size(1);
  c.corrupt_builtin = "truncated_chain(2)";
  const VerifyReport r = verify(c);
  EXPECT_FALSE(r.passed());
  for (const VerifyRow& row : r.rows) EXPECT_EQ(row.passed(), row.id != "quantale-laws") << row.id;
}

TEST(Verify, WfsCrossCheckOnSmallOrdCorpus) {
  SpaceCache cache;
  const Corpus c = build_corpus(instantiate_monad("identity", build_quantale("boolean")),
                                {.max_size = 2});
  const LawReport r = wfs_cross_check(c, saturated_class("all"), cache, true);
  EXPECT_TRUE(r.passed()) << r.to_text();
  for (const char* law : {"L = order-embeddings", "every f in L lifts against every g in R",
                          "no non-member of L lifts against all of R",
                          "no non-member of R lifts against all of L"})
    ASSERT_NE(r.find(law), nullptr) << law;
}

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "oracle.hpp"
#include "tvcat/corpus.hpp"
#include "tvcat/error.hpp"
#include "tvcat/io.hpp"

using namespace tvcat;

namespace {

const char* kTwo = R"({
  "name": "two", "quantale": "boolean", "monad": "identity",
  "carrier": ["0", "1"],
  "structure": [["0", "0", "1"], ["0", "1", "1"], ["1", "1", "1"]],
  "default": "bot"
})";

std::string error_of(const std::string& text) {
  Workspace ws;
  try {
    ws.load_text(text, "in.json");
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Io, LoadsCategoriesAndFunctors) {
  Workspace ws;
  ws.load_text(kTwo, "two.json");
  ws.load_text(R"({"name": "top", "source": {"name": "pt", "quantale": "boolean",
    "monad": "identity", "carrier": ["*"], "structure": [], "default": "top"},
    "target": "two", "map": {"*": "1"}})", "top.json");
  const CategoryPtr two = ws.category("two");
  EXPECT_EQ(two->labels(), (std::vector<std::string>{"0", "1"}));
  EXPECT_TRUE(point_leq(*two, 0, 1));
  EXPECT_FALSE(point_leq(*two, 1, 0));
  const Functor f = ws.functor("top");
  EXPECT_EQ(f.map, (std::vector<std::size_t>{1}));
  EXPECT_EQ(f.target, two);
  EXPECT_EQ(ws.entries().size(), 4u);  // boolean, two, pt, top
}

TEST(Io, CategoryDocumentsRoundTrip) {
  for (auto [name, n] : std::vector<std::pair<const char*, int>>{
           {"boolean", 0}, {"lukasiewicz_chain", 2}, {"powerset_frame", 2}})
    for (const char* kind : {"identity", "finite_ultrafilter"}) {
      const Corpus c = build_corpus(instantiate_monad(kind, build_quantale(name, n)), {.max_size = 2});
      for (const CategoryPtr& x : c.objects) {
        Workspace ws;
        ws.load_text(category_document(*x), "doc.json");
        const CategoryPtr y = ws.category(x->name());
        EXPECT_EQ(y->labels(), x->labels());
        EXPECT_EQ(y->structure(), x->structure()) << name << " " << kind;
        EXPECT_TRUE(y->q().same_as(x->q()));
        EXPECT_EQ(y->t().kind(), x->t().kind());
      }
    }
}

TEST(Io, ExplicitQuantaleRoundTrip) {
  const char* doc = R"({"name": "min3", "elements": ["0", "h", "1"],
    "leq": [["0", "h"], ["h", "1"]],
    "tensor": {"0|0": "0", "0|h": "0", "0|1": "0", "h|0": "0", "h|h": "h", "h|1": "h",
               "1|0": "0", "1|h": "h", "1|1": "1"},
    "unit": "1"})";
  Workspace ws;
  ws.load_text(doc, "q.json");
  const QuantalePtr q = ws.quantale("min3");
  Workspace again;
  again.load_text(quantale_document(*q), "q2.json");
  EXPECT_TRUE(again.quantale("min3")->same_as(*q));
  EXPECT_EQ(nlohmann::json::parse(quantale_document(*build_quantale("truncated_chain", 2)))["builtin"],
            "truncated_chain");
}

TEST(Io, BundlesRoundTrip) {
  const Corpus c = build_corpus(instantiate_monad("identity", build_quantale("boolean")),
                                {.max_size = 2});
  const std::vector<Functor> fs(c.functors.begin(), c.functors.begin() + 4);
  const std::string doc = bundle_document(c.objects, fs);
  Workspace ws;
  ws.load_text(doc, "bundle.json");
  for (const Functor& f : fs) {
    const Functor g = ws.functor(f.name);
    EXPECT_EQ(g.map, f.map);
    EXPECT_EQ(g.source->structure(), f.source->structure());
  }
}

TEST(Io, UnknownCarrierElementNamesTheEntry) {
  const std::string msg = error_of(R"({"name": "x", "quantale": "boolean", "monad": "identity",
    "carrier": ["a", "b"], "structure": [["a", "c", "1"]], "default": "bot"})");
  EXPECT_NE(msg.find("in.json"), std::string::npos) << msg;
  EXPECT_NE(msg.find("'x'"), std::string::npos) << msg;
  EXPECT_NE(msg.find("'c'"), std::string::npos) << msg;
  EXPECT_NE(msg.find("[\"a\",\"c\",\"1\"]"), std::string::npos) << msg;
}

TEST(Io, NonTransitiveCategoryReportsTriple) {
  Workspace ws;
  try {
    ws.load_text(R"({"name": "nt", "quantale": "boolean", "monad": "identity",
      "carrier": ["a", "b", "c"], "structure": [["a", "b", "1"], ["b", "c", "1"],
      ["a", "a", "1"], ["b", "b", "1"], ["c", "c", "1"]], "default": "bot"})", "nt.json");
    FAIL() << "accepted";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.law(), "transitivity");
    EXPECT_NE(e.witness().find("(a,b,c)"), std::string::npos) << e.witness();
    EXPECT_NE(e.context().find("nt.json"), std::string::npos);
  }
}

TEST(Io, MalformedInputs) {
  EXPECT_NE(error_of("{"), "");
  EXPECT_NE(error_of(R"({"kind": "widget"})").find("unrecognised"), std::string::npos);
  EXPECT_NE(error_of(R"({"name": "x", "quantale": "boolean", "monad": "identity",
    "carrier": ["a"], "structure": []})").find("default"), std::string::npos);
  EXPECT_NE(error_of(R"({"name": "x", "quantale": "bool", "monad": "identity",
    "carrier": ["a"], "structure": [], "default": "top"})"), "");
  EXPECT_NE(error_of(R"({"name": "x", "quantale": "boolean", "monad": "state",
    "carrier": ["a"], "structure": [], "default": "top"})"), "");
  EXPECT_NE(error_of(R"({"objects": [)" + std::string(kTwo) + "," + kTwo + "]}").find("twice"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"name": "f", "source": )" + std::string(kTwo) +
                     R"(, "target": "two", "map": {"0": "1", "1": "0"}})"),
            "");
  EXPECT_NE(error_of(R"({"name": "f", "source": )" + std::string(kTwo) +
                     R"(, "target": "two", "map": {"0": "1"}})"),
            "");
}

TEST(Io, InputErrorsAndValidationErrorsAreDistinct) {
  Workspace ws;
  EXPECT_THROW(ws.load_text(R"({"name": "x", "quantale": "boolean", "monad": "identity",
    "carrier": ["a"], "structure": [["a", "z", "1"]], "default": "bot"})", "a.json"),
               InputError);
  EXPECT_THROW(ws.load_text(R"({"name": "flip", "source": )" + std::string(kTwo) +
                                R"(, "target": "two", "map": {"0": "1", "1": "0"}})",
                            "b.json"),
               ValidationError);
}

TEST(Io, ReportsJson) {
  LawReport r("subject");
  r.add("law", "bound").checked = 3;
  const auto j = nlohmann::json::parse(reports_json("check", {r}, {{"file", "x.json"}}));
  EXPECT_EQ(j["command"], "check");
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["file"], "x.json");
  EXPECT_EQ(j["reports"][0]["checks"][0]["checked"], 3);
}

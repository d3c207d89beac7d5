// Acceptance table: one PASS/FAIL line per criterion.
//
// Runs `tvcat --output json verify-paper` twice through the real executable,
// reads the rows of the first run and adds a few independent spot checks.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "tvcat/corpus.hpp"
#include "tvcat/presheaf.hpp"
#include "tvcat/vrel.hpp"

using json = nlohmann::json;
using namespace tvcat;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& command) {
  Run r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const json* row(const json& report, const std::string& id) {
  for (const json& r : report["rows"])
    if (r["id"] == id) return &r;
  return nullptr;
}

// "": fine; otherwise the reason the row does not back the criterion.
std::string row_ok(const json& report, const std::string& id,
                   std::initializer_list<const char*> laws = {}) {
  const json* r = row(report, id);
  if (!r) return "row " + id + " missing";
  if ((*r)["status"] != "pass") return "row " + id + " failed";
  for (const char* law : laws) {
    bool found = false;
    for (const json& c : (*r)["checks"])
      if (c["law"] == law) {
        found = true;
        if (c["status"] != "pass") return std::string(law) + ": " + c["status"].get<std::string>();
        if (c["checked"].get<std::uint64_t>() == 0) return std::string(law) + ": nothing checked";
      }
    if (!found) return std::string(law) + ": not reported";
  }
  return {};
}

std::size_t skips(const json& report, const std::string& id) {
  const json* r = row(report, id);
  std::size_t n = 0;
  if (r)
    for (const json& c : (*r)["checks"]) n += c["status"] == "skip";
  return n;
}

std::string both(std::string a, std::string b) { return a.empty() ? b : a; }

VRelation random_relation(const QuantalePtr& q, std::size_t rows, std::size_t cols,
                          std::mt19937_64& rng) {
  VRelation r(q, rows, cols);
  std::uniform_int_distribution<std::size_t> pick(0, q->size() - 1);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) r.set(i, j, q->value(pick(rng)));
  return r;
}

// s.r <= t iff s <= t / r, with composition written out from the tables.
std::string residual_spot_check() {
  std::mt19937_64 rng(20240611);
  for (const char* name : {"truncated_chain", "lukasiewicz_chain"}) {
    const QuantalePtr q = build_quantale(name, 2);
    for (int i = 0; i < 1000; ++i) {
      std::uniform_int_distribution<std::size_t> size(1, 3);
      const std::size_t x = size(rng), y = size(rng), z = size(rng);
      const VRelation r = random_relation(q, x, y, rng), s = random_relation(q, y, z, rng),
                      t = random_relation(q, x, z, rng);
      bool below = true;
      for (std::size_t a = 0; a < x; ++a)
        for (std::size_t c = 0; c < z; ++c) {
          Value acc = q->bottom();
          for (std::size_t b = 0; b < y; ++b) acc = q->join(acc, q->tensor(r(a, b), s(b, c)));
          below = below && q->leq(acc, t(a, c));
        }
      if (below != leq(s, left_residual(t, r)))
        return std::string(name) + ": residual adjunction fails at case " + std::to_string(i);
    }
  }
  return {};
}

class NonzeroClass final : public SaturatedClass {
 public:
  std::string name() const override { return "nonzero"; }
  bool contains(const Bimodule& psi) const override {
    for (Value v : psi.rel.data())
      if (v != psi.rel.q().bottom()) return true;
    return false;
  }
};

std::string broken_class_rejected() {
  const Corpus c = build_corpus(instantiate_monad("identity", build_quantale("boolean")),
                                {.max_size = 2});
  const LawReport r = check_saturated(std::make_shared<NonzeroClass>(), {c.objects, c.functors});
  if (r.passed()) return "a class not closed under composition was accepted";
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: tvcat_acceptance <path to tvcat>\n";
    return 2;
  }
  const std::string cmd = std::string("'") + argv[1] + "' --output json verify-paper";
  const Run first = run(cmd);
  const Run second = run(cmd);

  json report;
  try {
    report = json::parse(first.out);
  } catch (const json::exception& e) {
    std::cout << "FAIL  verify-paper output is not JSON: " << e.what() << "\n";
    return 1;
  }

  struct Criterion {
    const char* title;
    std::function<std::string()> check;
  };
  const std::vector<Criterion> table = {
      {"quantale laws; every boolean tensor mutation is caught",
       [&] {
         return row_ok(report, "quantale-laws",
                       {"associativity", "unit", "join-distributivity",
                        "every single-entry tensor mutation of boolean is rejected"});
       }},
      {"V-relation composition and residuals",
       [&] {
         return both(row_ok(report, "calculus",
                            {"V-relations: composition is associative",
                             "V-relations: s.r <= t iff s <= t / r",
                             "V-relations: r.u <= t iff u <= r \\ t"}),
                     residual_spot_check());
       }},
      {"monad laws, condition C, (BC), ultrafilter transport",
       [&] {
         return row_ok(report, "monad-laws",
                       {"monad associativity", "condition C inequality",
                        "(BC): T preserves weak pullbacks",
                        "lax extension agrees with transport along points"});
       }},
      {"Yoneda lemma", [&] { return row_ok(report, "yoneda", {"a^(Ty(x), psi) = psi(x)"}); }},
      {"presheaf monad, lax idempotency, units on preorders",
       [&] {
         return row_ok(report, "presheaf-monad",
                       {"lax idempotency Py <= yP", "associativity",
                        "unit is an isomorphism on preorders"});
       }},
      {"simplicity", [&] {
         return both(row_ok(report, "simplicity", {"(Lf)_* = q^* o (y_X)_*"}),
                     row_ok(report, "submonad-simplicity", {"(Lf)_* = q^* o (y_X)_*"}));
       }},
      {"R.L = f, L fully faithful and dense, R-factor has an algebra",
       [&] {
         return row_ok(report, "l-class",
                       {"R.L = f", "L-factor fully faithful", "L-factor dense",
                        "R-factor admits an algebra"});
       }},
      {"AWFS laws with no skipped case",
       [&] {
         const std::string r = row_ok(report, "awfs", {"comonad coassociativity", "distributivity"});
         if (!r.empty()) return r;
         const std::size_t s = skips(report, "awfs");
         return s == 0 ? std::string() : std::to_string(s) + " skipped laws";
       }},
      {"KZ filler minimality",
       [&] { return row_ok(report, "kz-minimality", {"canonical filler is the least filler"}); }},
      {"WFS cross-check on preorders",
       [&] {
         const std::string r = row_ok(report, "wfs",
                                      {"L = order-embeddings",
                                       "every f in L lifts against every g in R",
                                       "no non-member of L lifts against all of R",
                                       "no non-member of R lifts against all of L"});
         if (!r.empty()) return r;
         const json* w = row(report, "wfs");
         return (*w)["bound"].get<std::string>().find("in L") == std::string::npos
                    ? std::string("bound not stated")
                    : std::string();
       }},
      {"saturated classes (S1)-(S3); a broken class is rejected",
       [&] {
         return both(row_ok(report, "saturation",
                            {"(S1) closed under composition", "(S2) contains every f^*",
                             "(S3) detected by representables"}),
                     broken_class_rejected());
       }},
      {"verify-paper exits 0 and is deterministic",
       [&] {
         if (first.code != 0) return "first run exited " + std::to_string(first.code);
         if (second.code != 0) return "second run exited " + std::to_string(second.code);
         return first.out == second.out ? std::string() : std::string("outputs differ");
       }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    std::string reason;
    try {
      reason = table[i].check();
    } catch (const std::exception& e) {
      reason = e.what();
    }
    std::cout << (reason.empty() ? "PASS" : "FAIL") << "  " << (i + 1 < 10 ? " " : "") << i + 1
              << "  " << table[i].title << (reason.empty() ? "" : ": " + reason) << "\n";
    failed += !reason.empty();
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail")
            << "\n";
  return failed == 0 ? 0 : 1;
}

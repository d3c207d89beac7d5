#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tvcat/corpus.hpp"
#include "tvcat/lofs.hpp"
#include "tvcat/report.hpp"

namespace tvcat {

/// One corpus of the acceptance run: a quantale, a monad and a carrier bound.
struct CorpusSpec {
  std::string quantale;  // builtin reference, e.g. "truncated_chain(2)"
  std::string monad;     // "identity" or "finite_ultrafilter"
  std::size_t max_size = 3;
};

struct VerifyRow;

struct VerifyConfig {
  std::vector<CorpusSpec> corpora;
  std::vector<std::string> classes{"all", "representable", "right_adjoint"};
  std::size_t max_space = kDefaultMaxSpace;
  std::uint64_t seed = 20240611;
  std::size_t random_cases = 1000;
  /// Test hook: a builtin whose tensor gets one entry flipped before the
  /// quantale laws are scanned. Nothing else sees the corrupted copy.
  std::string corrupt_builtin;
  /// Called after each row, in table order.
  std::function<void(const VerifyRow&)> on_row;

  /// boolean up to 3 points; the two-element chains and the powerset frame
  /// up to 2; finite_ultrafilter over boolean only.
  static VerifyConfig defaults();
  /// Caps every carrier bound at n.
  void limit_size(std::size_t n);
};

/// A row of the verification table: one result, the checks backing it and
/// the scanned space.
struct VerifyRow {
  std::string id;
  std::string title;
  std::string bound;
  LawReport detail;  // checks aggregated by law over every scanned subject

  bool passed() const noexcept { return detail.passed(); }
};

struct VerifyReport {
  std::vector<VerifyRow> rows;

  bool passed() const noexcept;
  std::string to_text() const;
  std::string to_json() const;
};

VerifyReport verify(const VerifyConfig& config);

/// Folds the checks of `part` into `into` by law name: counts add up, the
/// first failure wins and its witness is prefixed with the part's subject.
void accumulate(LawReport& into, const LawReport& part);

/// x <= y iff f x <= f y on points, for functors between ordered sets.
bool order_embedding(const Functor& f);

/// L against order-embeddings, lifting of L against R on every commuting
/// square of the corpus, and a failed lifting for every non-member of L or R.
LawReport wfs_cross_check(const Corpus& corpus, const ClassPtr& cls, SpaceCache& cache,
                          bool compare_with_embeddings);

}  // namespace tvcat

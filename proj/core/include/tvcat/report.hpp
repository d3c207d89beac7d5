#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tvcat {

enum class Status { pass, fail, skip };

std::string_view to_string(Status s) noexcept;

/// Outcome of one law, evaluated by exhaustive scan up to a stated bound.
struct LawCheck {
  std::string law;
  Status status = Status::pass;
  std::string witness;     // first counterexample, or the reason for a skip
  std::uint64_t checked = 0;
  std::string bound;       // human readable description of the scanned space

  bool passed() const noexcept { return status != Status::fail; }
};

class LawReport {
 public:
  LawReport() = default;
  explicit LawReport(std::string subject) : subject_(std::move(subject)) {}

  const std::string& subject() const noexcept { return subject_; }
  const std::vector<LawCheck>& checks() const noexcept { return checks_; }

  /// Adds a check; returns it for further adjustment.
  LawCheck& add(std::string law, std::string bound = {});
  void add(LawCheck check) { checks_.push_back(std::move(check)); }

  /// Appends every check of `other`, prefixing law names with `prefix`.
  void merge(const LawReport& other, const std::string& prefix = {});

  /// True when no check failed. Skips do not count as failures.
  bool passed() const noexcept;
  std::size_t failures() const noexcept;
  std::size_t skips() const noexcept;

  const LawCheck* find(std::string_view law) const noexcept;

  std::string to_text() const;

  LawCheck& mutable_check(std::size_t i) { return checks_.at(i); }

 private:
  std::string subject_;
  std::vector<LawCheck> checks_;
};

/// Incrementally evaluates a law: records the first witness, counts cases.
class LawScan {
 public:
  LawScan(LawReport& report, std::string law, std::string bound = {})
      : report_(&report), index_(report.checks().size()) {
    report.add(std::move(law), std::move(bound));
  }

  /// Records one evaluated case. Returns `ok`.
  template <class WitnessFn>
  bool expect(bool ok, WitnessFn&& witness) {
    LawCheck& c = check();
    ++c.checked;
    if (!ok && c.status != Status::fail) {
      c.status = Status::fail;
      c.witness = witness();
    }
    return ok;
  }

  bool failed() { return check().status == Status::fail; }
  void skip(std::string reason) {
    LawCheck& c = check();
    if (c.status != Status::fail) {
      c.status = Status::skip;
      c.witness = std::move(reason);
    }
  }
  LawCheck& check() { return report_->mutable_check(index_); }

 private:
  LawReport* report_;
  std::size_t index_;
};

}  // namespace tvcat

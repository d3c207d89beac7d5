#include "tvcat/report.hpp"

#include <algorithm>

namespace tvcat {

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skip: return "skip";
  }
  return "?";
}

LawCheck& LawReport::add(std::string law, std::string bound) {
  LawCheck c;
  c.law = std::move(law);
  c.bound = std::move(bound);
  checks_.push_back(std::move(c));
  return checks_.back();
}

void LawReport::merge(const LawReport& other, const std::string& prefix) {
  for (LawCheck c : other.checks_) {
    c.law = prefix + c.law;
    checks_.push_back(std::move(c));
  }
}

bool LawReport::passed() const noexcept { return failures() == 0; }

std::size_t LawReport::failures() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      checks_.begin(), checks_.end(), [](const LawCheck& c) { return c.status == Status::fail; }));
}

std::size_t LawReport::skips() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      checks_.begin(), checks_.end(), [](const LawCheck& c) { return c.status == Status::skip; }));
}

const LawCheck* LawReport::find(std::string_view law) const noexcept {
  for (const LawCheck& c : checks_)
    if (c.law == law) return &c;
  return nullptr;
}

std::string LawReport::to_text() const {
  std::string out;
  if (!subject_.empty()) out += subject_ + "\n";
  for (const LawCheck& c : checks_) {
    out += "  [" + std::string(to_string(c.status)) + "] " + c.law;
    if (c.status == Status::pass) {
      out += " (" + std::to_string(c.checked) + " cases";
      if (!c.bound.empty()) out += ", " + c.bound;
      out += ")";
    } else {
      out += ": " + c.witness;
      if (!c.bound.empty()) out += " [" + c.bound + "]";
    }
    out += "\n";
  }
  return out;
}

}  // namespace tvcat

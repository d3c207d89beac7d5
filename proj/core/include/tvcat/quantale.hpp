#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tvcat/report.hpp"

namespace tvcat {

/// An element of a finite quantale, identified by its canonical index.
/// Comparison operators compare indices, not the lattice order.
struct Value {
  std::uint16_t index = 0;

  friend constexpr bool operator==(Value, Value) = default;
  friend constexpr auto operator<=>(Value, Value) = default;
};

/// Raw quantale data as read from a builtin or a file, before validation.
/// `leq` and `tensor` are dense row-major n*n tables over element indices.
struct QuantaleTables {
  std::string name;
  std::vector<std::string> elements;
  std::vector<std::uint8_t> leq;
  std::vector<std::uint16_t> tensor;
  std::size_t unit = 0;
  std::optional<std::vector<std::uint16_t>> hom;  // checked, never trusted

  std::size_t size() const noexcept { return elements.size(); }
  bool le(std::size_t a, std::size_t b) const { return leq[a * size() + b] != 0; }
  std::size_t mul(std::size_t a, std::size_t b) const { return tensor[a * size() + b]; }
};

/// Builtins: "boolean", "truncated_chain" (n), "lukasiewicz_chain" (n),
/// "powerset_frame" (n). Throws InputError for unknown names or bad n.
QuantaleTables builtin_tables(std::string_view name, int n = 0);

/// Explicit tables. `leq_pairs` is closed under reflexivity and transitivity;
/// antisymmetry violations, unknown names and missing tensor entries throw
/// InputError. `tensor` maps ordered pairs of names to a result name.
QuantaleTables explicit_tables(
    std::string name, std::vector<std::string> elements,
    const std::vector<std::pair<std::string, std::string>>& leq_pairs,
    const std::map<std::pair<std::string, std::string>, std::string>& tensor,
    const std::string& unit);

/// Exhaustive scan of the quantale laws. Never throws on law failures.
LawReport check_quantale_laws(const QuantaleTables& tables);

/// A validated finite commutative unital quantale with derived tables.
/// Immutable after construction.
class Quantale {
 public:
  /// Validates every law; throws ValidationError naming the first failed
  /// law and its witness.
  explicit Quantale(QuantaleTables tables);

  const std::string& name() const noexcept { return tables_.name; }
  std::size_t size() const noexcept { return tables_.size(); }
  const QuantaleTables& tables() const noexcept { return tables_; }

  const std::string& label(Value v) const { return tables_.elements.at(v.index); }
  std::optional<Value> find(std::string_view label) const;
  Value at(std::string_view label) const;  // throws InputError
  Value value(std::size_t index) const;    // throws InputError when out of range

  bool leq(Value a, Value b) const noexcept { return leq_[idx(a, b)] != 0; }
  Value tensor(Value a, Value b) const noexcept { return tensor_[idx(a, b)]; }
  Value join(Value a, Value b) const noexcept { return join_[idx(a, b)]; }
  Value meet(Value a, Value b) const noexcept { return meet_[idx(a, b)]; }
  Value hom(Value a, Value c) const noexcept { return hom_[idx(a, c)]; }

  Value bottom() const noexcept { return bottom_; }
  Value top() const noexcept { return top_; }
  Value unit() const noexcept { return unit_; }

  Value join_all(std::span<const Value> values) const noexcept;
  Value meet_all(std::span<const Value> values) const noexcept;

  std::vector<Value> elements() const;

  bool same_as(const Quantale& other) const noexcept;

 private:
  std::size_t idx(Value a, Value b) const noexcept {
    return static_cast<std::size_t>(a.index) * size() + b.index;
  }

  QuantaleTables tables_;
  std::vector<std::uint8_t> leq_;
  std::vector<Value> tensor_, join_, meet_, hom_;
  Value bottom_, top_, unit_;
};

using QuantalePtr = std::shared_ptr<const Quantale>;

QuantalePtr build_quantale(QuantaleTables tables);
QuantalePtr build_quantale(std::string_view builtin, int n = 0);

}  // namespace tvcat

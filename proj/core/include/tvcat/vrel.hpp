#pragma once

#include <cstddef>
#include <vector>

#include "tvcat/quantale.hpp"

namespace tvcat {

/// A V-relation r: X -/-> Y stored as a dense |X| x |Y| matrix.
/// Rows index the source, columns the target.
class VRelation {
 public:
  VRelation() = default;
  VRelation(QuantalePtr q, std::size_t rows, std::size_t cols);
  VRelation(QuantalePtr q, std::size_t rows, std::size_t cols, Value fill);

  /// k on the diagonal, bottom elsewhere.
  static VRelation identity(QuantalePtr q, std::size_t n);
  /// The graph of a function: k where f(x) = y. Throws InputError when f
  /// leaves [0, codomain).
  static VRelation from_map(QuantalePtr q, const std::vector<std::size_t>& f,
                            std::size_t codomain);

  const QuantalePtr& quantale() const noexcept { return q_; }
  const Quantale& q() const noexcept { return *q_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Value operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  Value at(std::size_t r, std::size_t c) const;  // bounds checked
  void set(std::size_t r, std::size_t c, Value v) noexcept { data_[r * cols_ + c] = v; }

  const std::vector<Value>& data() const noexcept { return data_; }
  std::vector<Value> row(std::size_t r) const;
  std::vector<Value> column(std::size_t c) const;

  friend bool operator==(const VRelation& a, const VRelation& b) noexcept {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  QuantalePtr q_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Value> data_;
};

/// s.r, defined by (s.r)(x,z) = join over y of r(x,y) * s(y,z).
VRelation compose(const VRelation& s, const VRelation& r);
VRelation involution(const VRelation& r);

/// For t: X -/-> Z and r: X -/-> Y, the largest s: Y -/-> Z with s.r <= t.
VRelation left_residual(const VRelation& t, const VRelation& r);
/// For r: X -/-> Y and t: Z -/-> Y, the largest u: Z -/-> X with r.u <= t.
VRelation right_residual(const VRelation& r, const VRelation& t);

bool leq(const VRelation& r, const VRelation& s);
VRelation meet(const VRelation& r, const VRelation& s);
VRelation join(const VRelation& r, const VRelation& s);

/// Throws InputError unless both relations share a quantale.
void require_same_quantale(const VRelation& a, const VRelation& b, const char* op);

}  // namespace tvcat

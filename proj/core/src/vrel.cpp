#include "tvcat/vrel.hpp"

#include <string>

#include "tvcat/error.hpp"

namespace tvcat {

namespace {

std::string shape(const VRelation& r) {
  return std::to_string(r.rows()) + "x" + std::to_string(r.cols());
}

void require_shape(bool ok, const char* op, const VRelation& a, const VRelation& b) {
  if (!ok) throw InputError(std::string(op) + ": shape mismatch " + shape(a) + " vs " + shape(b));
}

}  // namespace

VRelation::VRelation(QuantalePtr q, std::size_t rows, std::size_t cols)
    : VRelation(q, rows, cols, q ? q->bottom() : Value{}) {}

VRelation::VRelation(QuantalePtr q, std::size_t rows, std::size_t cols, Value fill)
    : q_(std::move(q)), rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if (!q_) throw InputError("V-relation without a quantale");
}

VRelation VRelation::identity(QuantalePtr q, std::size_t n) {
  VRelation r(q, n, n);
  for (std::size_t i = 0; i < n; ++i) r.set(i, i, q->unit());
  return r;
}

VRelation VRelation::from_map(QuantalePtr q, const std::vector<std::size_t>& f,
                              std::size_t codomain) {
  VRelation r(q, f.size(), codomain);
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f[x] >= codomain)
      throw InputError("map is not total: point " + std::to_string(x) + " has no image");
    r.set(x, f[x], q->unit());
  }
  return r;
}

Value VRelation::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw InputError("V-relation index out of range");
  return (*this)(r, c);
}

std::vector<Value> VRelation::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

std::vector<Value> VRelation::column(std::size_t c) const {
  std::vector<Value> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void require_same_quantale(const VRelation& a, const VRelation& b, const char* op) {
  if (!a.quantale()->same_as(*b.quantale()))
    throw InputError(std::string(op) + ": relations over different quantales");
}

VRelation compose(const VRelation& s, const VRelation& r) {
  require_same_quantale(s, r, "compose");
  require_shape(r.cols() == s.rows(), "compose", s, r);
  const Quantale& q = r.q();
  VRelation out(r.quantale(), r.rows(), s.cols());
  const Value bot = q.bottom();
  for (std::size_t x = 0; x < r.rows(); ++x)
    for (std::size_t y = 0; y < r.cols(); ++y) {
      const Value rxy = r(x, y);
      if (rxy == bot) continue;
      for (std::size_t z = 0; z < s.cols(); ++z)
        out.set(x, z, q.join(out(x, z), q.tensor(rxy, s(y, z))));
    }
  return out;
}

VRelation involution(const VRelation& r) {
  VRelation out(r.quantale(), r.cols(), r.rows());
  for (std::size_t x = 0; x < r.rows(); ++x)
    for (std::size_t y = 0; y < r.cols(); ++y) out.set(y, x, r(x, y));
  return out;
}

VRelation left_residual(const VRelation& t, const VRelation& r) {
  require_same_quantale(t, r, "left residual");
  require_shape(t.rows() == r.rows(), "left residual", t, r);
  const Quantale& q = r.q();
  VRelation out(r.quantale(), r.cols(), t.cols(), q.top());
  for (std::size_t y = 0; y < r.cols(); ++y)
    for (std::size_t z = 0; z < t.cols(); ++z) {
      Value v = q.top();
      for (std::size_t x = 0; x < r.rows(); ++x) v = q.meet(v, q.hom(r(x, y), t(x, z)));
      out.set(y, z, v);
    }
  return out;
}

VRelation right_residual(const VRelation& r, const VRelation& t) {
  require_same_quantale(t, r, "right residual");
  require_shape(t.cols() == r.cols(), "right residual", r, t);
  const Quantale& q = r.q();
  VRelation out(r.quantale(), t.rows(), r.rows(), q.top());
  for (std::size_t z = 0; z < t.rows(); ++z)
    for (std::size_t x = 0; x < r.rows(); ++x) {
      Value v = q.top();
      for (std::size_t y = 0; y < r.cols(); ++y) v = q.meet(v, q.hom(r(x, y), t(z, y)));
      out.set(z, x, v);
    }
  return out;
}

bool leq(const VRelation& r, const VRelation& s) {
  require_same_quantale(r, s, "leq");
  require_shape(r.rows() == s.rows() && r.cols() == s.cols(), "leq", r, s);
  const Quantale& q = r.q();
  for (std::size_t i = 0; i < r.data().size(); ++i)
    if (!q.leq(r.data()[i], s.data()[i])) return false;
  return true;
}

namespace {

template <class Op>
VRelation pointwise(const VRelation& r, const VRelation& s, const char* name, Op op) {
  require_same_quantale(r, s, name);
  require_shape(r.rows() == s.rows() && r.cols() == s.cols(), name, r, s);
  VRelation out(r.quantale(), r.rows(), r.cols());
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) out.set(i, j, op(r(i, j), s(i, j)));
  return out;
}

}  // namespace

VRelation meet(const VRelation& r, const VRelation& s) {
  return pointwise(r, s, "meet", [&](Value a, Value b) { return r.q().meet(a, b); });
}

VRelation join(const VRelation& r, const VRelation& s) {
  return pointwise(r, s, "join", [&](Value a, Value b) { return r.q().join(a, b); });
}

}  // namespace tvcat

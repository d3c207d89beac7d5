#include "tvcat/category.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tvcat/error.hpp"

namespace tvcat {

Category::Category(MonadPtr monad, std::vector<std::string> labels, VRelation structure,
                   std::string name)
    : monad_(std::move(monad)),
      labels_(std::move(labels)),
      structure_(std::move(structure)),
      name_(std::move(name)) {
  if (!monad_) throw InputError("category without a monad");
  if (!structure_.quantale() || !structure_.quantale()->same_as(*monad_->quantale()))
    throw InputError("category '" + name_ + "': structure and monad use different quantales");
  const std::size_t n = labels_.size();
  if (structure_.cols() != n || structure_.rows() != monad_->object_size(n))
    throw InputError("category '" + name_ + "': structure must be |TX| x |X|");
  std::set<std::string_view> seen;
  for (const auto& l : labels_)
    if (!seen.insert(l).second) throw InputError("category '" + name_ + "': duplicate point '" + l + "'");
  unit_ = monad_->unit_table(n);
}

std::optional<std::size_t> Category::find(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

const std::vector<std::string>& Category::t_labels() const {
  std::call_once(labels_once_, [&] {
    t_labels_.resize(t_size());
    for (std::size_t t = 0; t < t_size(); ++t) t_labels_[t] = monad_->element_label(size(), t, labels_);
  });
  return t_labels_;
}

const VRelation& Category::kernel() const {
  std::call_once(kernel_once_, [&] { kernel_ = kleisli_kernel(*monad_, structure_, size()); });
  return kernel_;
}

CategoryPtr make_category(MonadPtr monad, std::vector<std::string> labels, VRelation structure,
                          std::string name) {
  return std::make_shared<const Category>(std::move(monad), std::move(labels), std::move(structure),
                                          std::move(name));
}

void require_compatible(const Category& a, const Category& b, const char* op) {
  if (!a.q().same_as(b.q()))
    throw InputError(std::string(op) + ": categories over different quantales");
  if (a.monad() != b.monad() && a.t().kind() != b.t().kind())
    throw InputError(std::string(op) + ": categories over different monads");
}

std::string describe_point(const Category& x, std::size_t p) { return x.labels().at(p); }

namespace {

std::string tl(const Category& x, std::size_t t) { return x.t_label(t); }

// Points are equivalent in the underlying order exactly when their columns agree.
std::optional<std::pair<std::size_t, std::size_t>> equivalent_pair(const Category& x) {
  std::map<std::vector<Value>, std::size_t> seen;
  for (std::size_t p = 0; p < x.size(); ++p) {
    auto [it, fresh] = seen.emplace(x.structure().column(p), p);
    if (!fresh) return std::make_pair(it->second, p);
  }
  return std::nullopt;
}

}  // namespace

LawReport check_category(const Category& x) {
  LawReport report("category " + x.name());
  const Quantale& q = x.q();
  const Monad& m = x.t();
  const std::size_t n = x.size();
  {
    LawScan s(report, "reflexivity", "all " + std::to_string(n) + " points");
    for (std::size_t p = 0; p < n; ++p)
      s.expect(q.leq(q.unit(), x(x.e(p), p)), [&] {
        return "a(e(" + x.labels()[p] + ")," + x.labels()[p] + ") = " + q.label(x(x.e(p), p));
      });
  }
  {
    const VRelation ta = lax_extend(m, x.structure());
    const auto mult = m.mult_table(n);
    LawScan s(report, "transitivity",
              "all " + std::to_string(ta.rows() * ta.cols() * n) + " triples");
    for (std::size_t big = 0; big < ta.rows() && !s.failed(); ++big)
      for (std::size_t t = 0; t < ta.cols(); ++t) {
        const Value lhs = ta(big, t);
        if (lhs == q.bottom()) continue;
        for (std::size_t p = 0; p < n; ++p)
          s.expect(q.leq(q.tensor(lhs, x(t, p)), x(mult[big], p)), [&] {
            return "(" + m.element_label(x.t_size(), big, x.t_labels()) + "," + tl(x, t) + "," + x.labels()[p] + "): " +
                   q.label(lhs) + " * " + q.label(x(t, p)) + " is not below " +
                   q.label(x(mult[big], p));
          });
      }
  }
  return report;
}

LawReport check_separated(const Category& x) {
  LawReport report("category " + x.name());
  LawScan s(report, "separated", "all pairs of points");
  const auto twins = equivalent_pair(x);
  s.expect(!twins, [&] {
    return x.labels()[twins->first] + " and " + x.labels()[twins->second] + " are equivalent";
  });
  return report;
}

bool is_category(const Category& x) { return check_category(x).passed(); }

void require_total(const Functor& f) {
  if (!f.source || !f.target) throw InputError("functor '" + f.name + "' lacks source or target");
  if (f.map.size() != f.source->size())
    throw InputError("functor '" + f.name + "': map is not total on the source");
  for (std::size_t x = 0; x < f.map.size(); ++x)
    if (f.map[x] >= f.target->size())
      throw InputError("functor '" + f.name + "': image of " + f.source->labels()[x] +
                       " is not a point of the target");
  require_compatible(*f.source, *f.target, "functor");
}

std::vector<std::size_t> t_map(const Functor& f) {
  return f.source->t().map_table(f.map, f.target->size());
}

LawReport check_functor(const Functor& f) {
  require_total(f);
  LawReport report("functor " + f.name);
  const Category& a = *f.source;
  const Category& b = *f.target;
  const Quantale& q = a.q();
  const auto tf = t_map(f);
  LawScan s(report, "functoriality", "all " + std::to_string(a.t_size() * a.size()) + " pairs");
  for (std::size_t t = 0; t < a.t_size(); ++t)
    for (std::size_t x = 0; x < a.size(); ++x)
      s.expect(q.leq(a(t, x), b(tf[t], f.map[x])), [&] {
        return "a(" + tl(a, t) + "," + a.labels()[x] + ") = " + q.label(a(t, x)) +
               " but b(" + tl(b, tf[t]) + "," + b.labels()[f.map[x]] + ") = " +
               q.label(b(tf[t], f.map[x]));
      });
  return report;
}

bool is_functor(const Functor& f) { return check_functor(f).passed(); }

LawReport check_bimodule(const Bimodule& psi) {
  const Category& a = *psi.source;
  const Category& b = *psi.target;
  require_compatible(a, b, "bimodule");
  if (psi.rel.rows() != a.t_size() || psi.rel.cols() != b.size())
    throw InputError("bimodule: relation must be |TX| x |Y|");
  LawReport report("bimodule " + a.name() + " -> " + b.name());
  const Quantale& q = a.q();
  const VRelation left = compose(psi.rel, a.kernel());                            // psi o a
  const VRelation right = kleisli_convolution(a.t(), b.structure(), psi.rel, a.size());  // b o psi
  auto scan = [&](const char* law, const VRelation& lhs, const char* what) {
    LawScan s(report, law, "all " + std::to_string(lhs.rows() * lhs.cols()) + " entries");
    for (std::size_t t = 0; t < lhs.rows(); ++t)
      for (std::size_t y = 0; y < lhs.cols(); ++y)
        s.expect(q.leq(lhs(t, y), psi.rel(t, y)), [&] {
          return std::string(what) + "(" + tl(a, t) + "," + b.labels()[y] + ") = " +
                 q.label(lhs(t, y)) + " exceeds " + q.label(psi.rel(t, y));
        });
  };
  scan("left action", left, "psi o a");
  scan("right action", right, "b o psi");
  return report;
}

bool is_bimodule(const Bimodule& psi) { return check_bimodule(psi).passed(); }

Functor identity_functor(const CategoryPtr& x) {
  Functor f{x, x, std::vector<std::size_t>(x->size()), "1_" + x->name()};
  for (std::size_t i = 0; i < x->size(); ++i) f.map[i] = i;
  return f;
}

Functor compose(const Functor& g, const Functor& f) {
  if (f.target->size() != g.source->size() || g.map.size() != g.source->size())
    throw InputError("compose: functors are not composable");
  Functor h{f.source, g.target, std::vector<std::size_t>(f.map.size()), g.name + "." + f.name};
  for (std::size_t x = 0; x < f.map.size(); ++x) h.map[x] = g.map.at(f.map[x]);
  return h;
}

bool point_leq(const Category& x, std::size_t a, std::size_t b) {
  const Quantale& q = x.q();
  for (std::size_t t = 0; t < x.t_size(); ++t)
    if (!q.leq(x(t, a), x(t, b))) return false;
  return true;
}

std::vector<std::uint8_t> underlying_order(const Category& x) {
  const std::size_t n = x.size();
  std::vector<std::uint8_t> out(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) out[a * n + b] = point_leq(x, a, b) ? 1 : 0;
  return out;
}

bool is_separated(const Category& x) { return !equivalent_pair(x); }

Quotient separated_quotient(const CategoryPtr& x) {
  const std::size_t n = x->size();
  const auto ord = underlying_order(*x);
  std::vector<std::size_t> proj(n);
  std::vector<std::string> labels;
  std::vector<std::size_t> reps;
  for (std::size_t a = 0; a < n; ++a) {
    auto it = std::find_if(reps.begin(), reps.end(),
                           [&](std::size_t r) { return ord[a * n + r] && ord[r * n + a]; });
    if (it == reps.end()) {
      proj[a] = reps.size();
      reps.push_back(a);
      labels.push_back(x->labels()[a]);
    } else {
      proj[a] = static_cast<std::size_t>(it - reps.begin());
    }
  }
  const Monad& m = x->t();
  const Quantale& q = x->q();
  const auto tp = m.map_table(proj, reps.size());
  VRelation s(x->quantale(), m.object_size(reps.size()), reps.size());
  for (std::size_t t = 0; t < x->t_size(); ++t)
    for (std::size_t p = 0; p < n; ++p) s.set(tp[t], proj[p], q.join(s(tp[t], proj[p]), (*x)(t, p)));
  return {make_category(x->monad(), std::move(labels), std::move(s), x->name() + "/~"), proj};
}

bool functor_leq(const Functor& f, const Functor& g) {
  if (f.source != g.source || f.target != g.target)
    if (f.source->size() != g.source->size() || f.target->size() != g.target->size())
      throw InputError("functor_leq: functors are not parallel");
  const Category& b = *f.target;
  const Quantale& q = b.q();
  for (std::size_t t = 0; t < b.t_size(); ++t)
    for (std::size_t x = 0; x < f.map.size(); ++x)
      if (!q.leq(b(t, f.map[x]), b(t, g.map[x]))) return false;
  return true;
}

bool functor_leq_pointwise(const Functor& f, const Functor& g) {
  const Category& b = *f.target;
  const Quantale& q = b.q();
  for (std::size_t x = 0; x < f.map.size(); ++x)
    if (!q.leq(q.unit(), b(b.e(f.map[x]), g.map[x]))) return false;
  return true;
}

CategoryPtr tensor(const CategoryPtr& x, const CategoryPtr& y) {
  require_compatible(*x, *y, "tensor");
  const Monad& m = x->t();
  const Quantale& q = x->q();
  const std::size_t nx = x->size(), ny = y->size();
  std::vector<std::size_t> p1(nx * ny), p2(nx * ny);
  std::vector<std::string> labels(nx * ny);
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t b = 0; b < ny; ++b) {
      p1[a * ny + b] = a;
      p2[a * ny + b] = b;
      labels[a * ny + b] = "(" + x->labels()[a] + "," + y->labels()[b] + ")";
    }
  const auto tp1 = m.map_table(p1, nx), tp2 = m.map_table(p2, ny);
  VRelation s(x->quantale(), tp1.size(), nx * ny);
  for (std::size_t w = 0; w < tp1.size(); ++w)
    for (std::size_t a = 0; a < nx; ++a)
      for (std::size_t b = 0; b < ny; ++b)
        s.set(w, a * ny + b, q.tensor((*x)(tp1[w], a), (*y)(tp2[w], b)));
  return make_category(x->monad(), std::move(labels), std::move(s),
                       x->name() + "(x)" + y->name());
}

CategoryPtr unit_category(const MonadPtr& monad) {
  const auto e1 = monad->unit_table(1);
  VRelation s(monad->quantale(), monad->object_size(1), 1);
  s.set(e1[0], 0, monad->quantale()->unit());
  return make_category(monad, {"*"}, std::move(s), "E");
}

CategoryPtr dual(const CategoryPtr& x) {
  const Monad& m = x->t();
  const Quantale& q = x->q();
  const std::size_t tn = x->t_size();
  const VRelation ta = lax_extend(m, x->structure());  // TTX -/-> TX
  const auto mult = m.mult_table(x->size());
  VRelation s(x->quantale(), ta.rows(), tn);
  for (std::size_t big = 0; big < ta.rows(); ++big)
    for (std::size_t other = 0; other < ta.rows(); ++other)
      s.set(big, mult[other], q.join(s(big, mult[other]), ta(other, mult[big])));
  return make_category(x->monad(), x->t_labels(), std::move(s), x->name() + "^op");
}

CategoryPtr v_as_category(const MonadPtr& monad) {
  const Quantale& q = *monad->quantale();
  const auto xi = monad->xi_table();
  VRelation s(monad->quantale(), xi.size(), q.size());
  for (std::size_t t = 0; t < xi.size(); ++t)
    for (Value v : q.elements()) s.set(t, v.index, q.hom(xi[t], v));
  return make_category(monad, q.tables().elements, std::move(s), "V");
}

Bimodule lower_star(const Functor& f) {
  const Category& b = *f.target;
  const auto tf = t_map(f);
  VRelation r(b.quantale(), f.source->t_size(), b.size());
  for (std::size_t t = 0; t < tf.size(); ++t)
    for (std::size_t y = 0; y < b.size(); ++y) r.set(t, y, b(tf[t], y));
  return {f.source, f.target, std::move(r)};
}

Bimodule upper_star(const Functor& f) {
  const Category& b = *f.target;
  VRelation r(b.quantale(), b.t_size(), f.source->size());
  for (std::size_t t = 0; t < b.t_size(); ++t)
    for (std::size_t x = 0; x < f.map.size(); ++x) r.set(t, x, b(t, f.map[x]));
  return {f.target, f.source, std::move(r)};
}

Bimodule compose(const Bimodule& chi, const Bimodule& psi) {
  if (psi.target->size() != chi.source->size())
    throw InputError("compose: bimodules are not composable");
  return {psi.source, chi.target,
          kleisli_convolution(psi.source->t(), chi.rel, psi.rel, psi.source->size())};
}

Bimodule identity_bimodule(const CategoryPtr& x) { return {x, x, x->structure()}; }

bool leq(const Bimodule& a, const Bimodule& b) { return leq(a.rel, b.rel); }

LawReport adjoint_pair_check(const Functor& f) {
  LawReport report("adjunction f_* -| f^* for " + f.name);
  const Bimodule lo = lower_star(f), up = upper_star(f);
  const Quantale& q = f.source->q();
  {
    const Bimodule unit = compose(up, lo);
    LawScan s(report, "a <= f^* o f_*");
    const VRelation& a = f.source->structure();
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        s.expect(q.leq(a(i, j), unit.rel(i, j)), [&] {
          return "at (" + f.source->t_label(i) + "," + f.source->labels()[j] + ")";
        });
  }
  {
    const Bimodule counit = compose(lo, up);
    LawScan s(report, "f_* o f^* <= b");
    const VRelation& b = f.target->structure();
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        s.expect(q.leq(counit.rel(i, j), b(i, j)), [&] {
          return "at (" + f.target->t_label(i) + "," + f.target->labels()[j] + ")";
        });
  }
  return report;
}

bool fully_faithful(const Functor& f) {
  const Category& a = *f.source;
  const Category& b = *f.target;
  const auto tf = t_map(f);
  for (std::size_t t = 0; t < a.t_size(); ++t)
    for (std::size_t x = 0; x < a.size(); ++x)
      if (a(t, x) != b(tf[t], f.map[x])) return false;
  return true;
}

Functor bimodule_to_functor(const Bimodule& psi) {
  const CategoryPtr dom = tensor(dual(psi.source), psi.target);
  const CategoryPtr v = v_as_category(psi.source->monad());
  const std::size_t ny = psi.target->size();
  Functor f{dom, v, std::vector<std::size_t>(dom->size()), "psi"};
  for (std::size_t t = 0; t < psi.rel.rows(); ++t)
    for (std::size_t y = 0; y < ny; ++y) f.map[t * ny + y] = psi.rel(t, y).index;
  return f;
}

Bimodule functor_to_bimodule(const Functor& f, const CategoryPtr& x, const CategoryPtr& y) {
  const std::size_t ny = y->size();
  if (f.map.size() != x->t_size() * ny) throw InputError("functor_to_bimodule: shape mismatch");
  VRelation r(x->quantale(), x->t_size(), ny);
  for (std::size_t t = 0; t < x->t_size(); ++t)
    for (std::size_t p = 0; p < ny; ++p) r.set(t, p, x->q().value(f.map[t * ny + p]));
  return {x, y, std::move(r)};
}

}  // namespace tvcat

namespace tvcat {

std::vector<Functor> enumerate_functors(const CategoryPtr& source, const CategoryPtr& target,
                                        const std::vector<std::vector<std::size_t>>& candidates,
                                        std::size_t max_results, std::size_t max_nodes) {
  require_compatible(*source, *target, "enumerate_functors");
  const std::size_t n = source->size();
  std::vector<std::vector<std::size_t>> cand = candidates;
  if (cand.empty()) {
    cand.assign(n, {});
    for (auto& c : cand)
      for (std::size_t y = 0; y < target->size(); ++y) c.push_back(y);
  }
  if (cand.size() != n) throw InputError("enumerate_functors: one candidate list per point");
  const Category& a = *source;
  const Category& b = *target;
  const Quantale& q = a.q();

  std::vector<Functor> out;
  std::vector<std::size_t> map(n, 0);
  std::size_t nodes = 0;
  // consistent(i): the pairwise inequalities between point i and earlier points
  auto consistent = [&](std::size_t i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if (!q.leq(a(a.e(j), i), b(b.e(map[j]), map[i]))) return false;
      if (!q.leq(a(a.e(i), j), b(b.e(map[i]), map[j]))) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (++nodes > max_nodes) throw SizeCapExceeded("functor search", max_nodes);
    if (i == n) {
      Functor f{source, target, map, {}};
      if (is_functor(f)) {
        if (out.size() >= max_results) throw SizeCapExceeded("functor search results", max_results);
        out.push_back(std::move(f));
      }
      return;
    }
    for (std::size_t y : cand[i]) {
      map[i] = y;
      if (consistent(i)) self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace tvcat

#include "tvcat/presheaf.hpp"

#include <algorithm>
#include <functional>

#include "tvcat/error.hpp"

namespace tvcat {

namespace {

bool pointwise_leq(const Quantale& q, const std::vector<Value>& a, const std::vector<Value>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!q.leq(a[i], b[i])) return false;
  return true;
}

std::string rel_text(const Quantale& q, const VRelation& r) {
  std::string s = "[";
  for (std::size_t i = 0; i < r.rows(); ++i) {
    if (i) s += " ";
    for (std::size_t j = 0; j < r.cols(); ++j) s += (j ? "," : "") + q.label(r(i, j));
  }
  return s + "]";
}

std::string bimodule_text(const Bimodule& b) {
  return b.source->name() + " -o-> " + b.target->name() + " " + rel_text(b.source->q(), b.rel);
}

class AllClass final : public SaturatedClass {
 public:
  std::string name() const override { return "all"; }
  bool contains(const Bimodule& psi) const override { return is_bimodule(psi); }
};

class RepresentableClass final : public SaturatedClass {
 public:
  std::string name() const override { return "representable"; }
  bool contains(const Bimodule& psi) const override {
    return find_representing_functor(psi).has_value();
  }
};

class RightAdjointClass final : public SaturatedClass {
 public:
  std::string name() const override { return "right_adjoint"; }
  bool contains(const Bimodule& psi) const override {
    return is_bimodule(psi) && find_left_adjoint(psi).has_value();
  }
};

// Streams the bimodules X -o-> Y below `upper`. Cells are filled column by
// column; within a column the left action is checked pairwise, across columns
// its consequence psi(t,c') * b(e(c'),c) <= psi(t,c). Complete relations get
// the full bimodule check. `emit` returns false to stop.
template <class Emit>
void for_each_bimodule(const CategoryPtr& x, const CategoryPtr& y, const VRelation* upper,
                       std::size_t max_nodes, Emit&& emit) {
  require_compatible(*x, *y, "bimodule enumeration");
  const Quantale& q = x->q();
  const std::size_t rows = x->t_size(), cols = y->size();
  if (upper && (upper->rows() != rows || upper->cols() != cols))
    throw InputError("bimodule enumeration: bound has the wrong shape");
  const VRelation& k = x->kernel();
  const Category& b = *y;
  VRelation rel(x->quantale(), rows, cols);
  std::vector<Value> values = q.elements();
  std::size_t nodes = 0;
  bool stop = false;
  // With T the identity the pairwise conditions are both actions in full.
  const bool pairwise_exact = x->t().kind() == "identity";

  auto ok_at = [&](std::size_t t, std::size_t c) {
    const Value v = rel(t, c);
    for (std::size_t s = 0; s <= t; ++s) {
      if (!q.leq(q.tensor(k(t, s), rel(s, c)), v)) return false;
      if (!q.leq(q.tensor(k(s, t), v), rel(s, c))) return false;
    }
    for (std::size_t d = 0; d < c; ++d) {
      if (!q.leq(q.tensor(rel(t, d), b(b.e(d), c)), v)) return false;
    }
    return true;
  };
  // cross-column conditions where the later column feeds an earlier one
  auto ok_back = [&](std::size_t c) {
    for (std::size_t d = 0; d < c; ++d)
      for (std::size_t t = 0; t < rows; ++t)
        if (!q.leq(q.tensor(rel(t, c), b(b.e(c), d)), rel(t, d))) return false;
    return true;
  };

  auto rec = [&](auto&& self, std::size_t cell) -> void {
    if (stop) return;
    if (++nodes > max_nodes) throw SizeCapExceeded("bimodule search", max_nodes);
    if (cell == rows * cols) {
      Bimodule psi{x, y, rel};
      if ((pairwise_exact || is_bimodule(psi)) && !emit(psi)) stop = true;
      return;
    }
    const std::size_t c = cell / rows, t = cell % rows;
    for (Value v : values) {
      if (upper && !q.leq(v, (*upper)(t, c))) continue;
      rel.set(t, c, v);
      if (!ok_at(t, c)) continue;
      if (t + 1 == rows && !ok_back(c)) continue;
      self(self, cell + 1);
      if (stop) return;
    }
    rel.set(t, c, q.bottom());
  };
  rec(rec, 0);
}

constexpr std::size_t kRawSearchFactor = 64;

}  // namespace

ClassPtr saturated_class(std::string_view kind) {
  if (kind == "all") return std::make_shared<AllClass>();
  if (kind == "representable") return std::make_shared<RepresentableClass>();
  if (kind == "right_adjoint" || kind == "lawvere") return std::make_shared<RightAdjointClass>();
  throw InputError("unknown class '" + std::string(kind) + "' (expected all|representable|lawvere)");
}

std::vector<Value> pull(const VRelation& kernel, const std::vector<Value>& phi) {
  if (kernel.cols() != phi.size()) throw InputError("pull: presheaf does not match the kernel");
  const Quantale& q = kernel.q();
  std::vector<Value> out(kernel.rows(), q.bottom());
  for (std::size_t a = 0; a < kernel.rows(); ++a) {
    Value acc = q.bottom();
    for (std::size_t b = 0; b < phi.size(); ++b) acc = q.join(acc, q.tensor(kernel(a, b), phi[b]));
    out[a] = acc;
  }
  return out;
}

Bimodule presheaf_bimodule(const CategoryPtr& x, const CategoryPtr& e,
                           const std::vector<Value>& phi) {
  if (phi.size() != x->t_size()) throw InputError("presheaf has the wrong length");
  VRelation r(x->quantale(), phi.size(), 1);
  for (std::size_t t = 0; t < phi.size(); ++t) r.set(t, 0, phi[t]);
  return {x, e, std::move(r)};
}

std::optional<Functor> find_representing_functor(const Bimodule& psi) {
  const Category& a = *psi.source;
  std::vector<std::vector<std::size_t>> cand(psi.target->size());
  for (std::size_t y = 0; y < psi.target->size(); ++y) {
    for (std::size_t x = 0; x < a.size(); ++x) {
      bool same = true;
      for (std::size_t t = 0; t < a.t_size() && same; ++t) same = a(t, x) == psi.rel(t, y);
      if (same) cand[y].push_back(x);
    }
    if (cand[y].empty()) return std::nullopt;
  }
  if (psi.target->size() == 0) return Functor{psi.target, psi.source, {}, "g"};
  auto found = enumerate_functors(psi.target, psi.source, cand);
  if (found.empty()) return std::nullopt;
  return found.front();
}

namespace {

bool is_left_adjoint_of(const Bimodule& lambda, const Bimodule& psi) {
  // b <= psi o lambda and lambda o psi <= a
  const Category& a = *psi.source;
  const Category& b = *psi.target;
  const VRelation unit = kleisli_convolution(b.t(), psi.rel, lambda.rel, b.size());
  if (!leq(b.structure(), unit)) return false;
  const VRelation counit = kleisli_convolution(a.t(), lambda.rel, psi.rel, a.size());
  return leq(counit, a.structure());
}

}  // namespace

std::optional<Bimodule> find_left_adjoint(const Bimodule& psi, std::size_t max_space) {
  const Category& a = *psi.source;
  const Category& b = *psi.target;
  const VRelation kpsi = kleisli_kernel(a.t(), psi.rel, a.size());
  Bimodule top{psi.target, psi.source, left_residual(a.structure(), kpsi)};
  const VRelation unit = kleisli_convolution(b.t(), psi.rel, top.rel, b.size());
  if (!leq(b.structure(), unit)) return std::nullopt;
  if (is_bimodule(top)) return top;
  std::optional<Bimodule> out;
  for_each_bimodule(psi.target, psi.source, &top.rel, max_space * kRawSearchFactor,
                    [&](const Bimodule& lambda) {
                      if (!is_left_adjoint_of(lambda, psi)) return true;
                      out = lambda;
                      return false;
                    });
  return out;
}

std::optional<Bimodule> find_left_adjoint_by_search(const Bimodule& psi, std::size_t max_space) {
  std::optional<Bimodule> out;
  for_each_bimodule(psi.target, psi.source, nullptr, max_space * kRawSearchFactor,
                    [&](const Bimodule& lambda) {
                      if (!is_left_adjoint_of(lambda, psi)) return true;
                      out = lambda;
                      return false;
                    });
  return out;
}

std::vector<Bimodule> enumerate_bimodules(const CategoryPtr& x, const CategoryPtr& y,
                                          const VRelation* upper, std::size_t max_space) {
  std::vector<Bimodule> out;
  for_each_bimodule(x, y, upper, max_space * kRawSearchFactor, [&](const Bimodule& psi) {
    if (out.size() >= max_space)
      throw SizeCapExceeded("bimodules " + x->name() + " -o-> " + y->name(), max_space);
    out.push_back(psi);
    return true;
  });
  return out;
}

std::string presheaf_label(const Quantale& q, const std::vector<Value>& phi) {
  std::string s = "[";
  for (std::size_t i = 0; i < phi.size(); ++i) s += (i ? ";" : "") + q.label(phi[i]);
  return s + "]";
}

PresheafSpace::PresheafSpace(CategoryPtr owner, ClassPtr cls, std::vector<std::vector<Value>> data)
    : owner_(std::move(owner)), cls_(std::move(cls)), data_(std::move(data)) {
  const Category& x = *owner_;
  const Monad& m = x.t();
  const Quantale& q = x.q();
  if (!m.provides_presheaf_structure())
    throw Error("monad " + m.kind() + " provides no presheaf structure");
  const std::size_t n = data_.size();
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (data_[i].size() != x.t_size()) throw InputError("presheaf has the wrong length");
    if (!index_.emplace(data_[i], i).second) throw InputError("duplicate presheaf");
    labels[i] = presheaf_label(q, data_[i]);
  }
  const auto points = m.point_table(n);
  VRelation s(x.quantale(), points.size(), n);
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (!points[p])
      throw Error("monad " + m.kind() + " provides no presheaf structure at a non-principal element");
    const auto& phi = data_[*points[p]];
    for (std::size_t j = 0; j < n; ++j) {
      const auto& psi = data_[j];
      Value v = q.top();
      for (std::size_t t = 0; t < psi.size(); ++t) v = q.meet(v, q.hom(phi[t], psi[t]));
      s.set(p, j, v);
    }
  }
  std::string name = "P" + (cls_->name() == "all" ? std::string() : "[" + cls_->name() + "]") +
                     "(" + x.name() + ")";
  category_ = make_category(x.monad(), std::move(labels), std::move(s), std::move(name));

  yoneda_ = Functor{owner_, category_, std::vector<std::size_t>(x.size()), "y_" + x.name()};
  for (std::size_t p = 0; p < x.size(); ++p) {
    auto it = index_.find(x.structure().column(p));
    if (it == index_.end())
      throw ValidationError("(S2)", "the representable " + x.labels()[p] + "^* of " + x.name() +
                                        " is not in class " + cls_->name());
    yoneda_.map[p] = it->second;
  }
}

std::optional<std::size_t> PresheafSpace::find(const std::vector<Value>& phi) const {
  auto it = index_.find(phi);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t PresheafSpace::index_of(const std::vector<Value>& phi, const char* what) const {
  if (auto i = find(phi)) return *i;
  throw ValidationError(what, presheaf_label(owner_->q(), phi) + " is not in " + category_->name());
}

const VRelation& PresheafSpace::yoneda_kernel() const {
  std::call_once(kernel_once_, [&] {
    const Bimodule ys = lower_star(yoneda_);
    kernel_ = kleisli_kernel(owner_->t(), ys.rel, owner_->size());
  });
  return kernel_;
}

void for_each_presheaf(const CategoryPtr& x, const ClassPtr& cls, std::size_t max_nodes,
                       const std::function<bool(const std::vector<Value>&)>& f) {
  const CategoryPtr e = unit_category(x->monad());
  const bool everything = cls->name() == "all";
  for_each_bimodule(x, e, nullptr, max_nodes, [&](const Bimodule& psi) {
    if (!everything && !cls->contains(psi)) return true;
    return f(psi.rel.column(0));
  });
}

SpacePtr presheaf_space(const CategoryPtr& x, const ClassPtr& cls, std::size_t max_space) {
  if (!x->t().provides_presheaf_structure())
    throw Error("monad " + x->t().kind() + " provides no presheaf structure");
  const CategoryPtr e = unit_category(x->monad());
  std::vector<std::vector<Value>> data;
  const bool everything = cls->name() == "all";
  for_each_bimodule(x, e, nullptr, max_space * kRawSearchFactor * 16, [&](const Bimodule& psi) {
    if (everything || cls->contains(psi)) {
      if (data.size() >= max_space)
        throw SizeCapExceeded("presheaf space of " + x->name(), max_space);
      data.push_back(psi.rel.column(0));
    }
    return true;
  });
  return std::make_shared<const PresheafSpace>(x, cls, std::move(data));
}

SpacePtr SpaceCache::get(const CategoryPtr& x, const ClassPtr& cls) {
  const auto key = std::make_pair(x.get(), cls->name());
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = spaces_.find(key);
    if (it != spaces_.end()) return it->second.second;
  }
  SpacePtr s = presheaf_space(x, cls, max_space_);
  std::lock_guard<std::mutex> lock(mutex_);
  return spaces_.emplace(key, std::make_pair(x, s)).first->second.second;
}

LawReport yoneda_lemma_check(const PresheafSpace& space) {
  LawReport report("Yoneda Lemma for " + space.category()->name());
  const Category& x = *space.owner();
  const Category& px = *space.category();
  const Quantale& q = x.q();
  const auto ty = t_map(space.yoneda());
  LawScan s(report, "a^(Ty(x), psi) = psi(x)",
            "all " + std::to_string(x.t_size() * space.size()) + " pairs");
  for (std::size_t t = 0; t < x.t_size(); ++t)
    for (std::size_t j = 0; j < space.size(); ++j)
      s.expect(px(ty[t], j) == space.presheaf(j)[t], [&] {
        return "x=" + x.t_label(t) + ", psi=" + px.labels()[j] + ": " + q.label(px(ty[t], j)) +
               " != " + q.label(space.presheaf(j)[t]);
      });
  return report;
}

Functor apply_P(const Functor& f, const PresheafSpace& px, const PresheafSpace& py) {
  const Bimodule up = upper_star(f);
  const VRelation k = kleisli_kernel(f.target->t(), up.rel, f.target->size());
  Functor out{px.category(), py.category(), std::vector<std::size_t>(px.size()), "P" + f.name};
  for (std::size_t i = 0; i < px.size(); ++i)
    out.map[i] = py.index_of(pull(k, px.presheaf(i)), "Pf lands in the space");
  return out;
}

Functor apply_P_star(const Functor& f, const PresheafSpace& px, const PresheafSpace& py) {
  const Bimodule lo = lower_star(f);
  const VRelation k = kleisli_kernel(f.source->t(), lo.rel, f.source->size());
  Functor out{py.category(), px.category(), std::vector<std::size_t>(py.size()), "P*" + f.name};
  for (std::size_t j = 0; j < py.size(); ++j)
    out.map[j] = px.index_of(pull(k, py.presheaf(j)), "P*f lands in the space");
  return out;
}

Functor mult(const PresheafSpace& px, const PresheafSpace& ppx) {
  if (ppx.owner() != px.category()) throw InputError("mult: space is not over the given space");
  const VRelation& k = px.yoneda_kernel();
  Functor out{ppx.category(), px.category(), std::vector<std::size_t>(ppx.size()),
              "mult_" + px.owner()->name()};
  for (std::size_t j = 0; j < ppx.size(); ++j)
    out.map[j] = px.index_of(pull(k, ppx.presheaf(j)), "(S3)");
  return out;
}

bool phi_dense(const Functor& f, const ClassPtr& cls) { return cls->contains(lower_star(f)); }

RetractionSearch has_algebra(const CategoryPtr& x, const PresheafSpace& space,
                             std::size_t max_space) {
  const CategoryPtr& px = space.category();
  std::vector<std::vector<std::size_t>> cand(space.size());
  for (std::size_t i = 0; i < space.size(); ++i)
    for (std::size_t p = 0; p < x->size(); ++p) cand[i].push_back(p);
  for (std::size_t p = 0; p < x->size(); ++p) cand[space.yoneda().map[p]] = {p};
  RetractionSearch out;
  out.retractions = enumerate_functors(px, x, cand, max_space);
  const Quantale& q = x->q();
  for (const Functor& r : out.retractions) {
    if (std::all_of(out.retractions.begin(), out.retractions.end(),
                    [&](const Functor& o) { return functor_leq(r, o); })) {
      out.least = r;
      break;
    }
  }
  for (const Functor& r : out.retractions) {
    // 1 <= y.r: every phi lies below the representable at r(phi)
    bool unit = true;
    for (std::size_t i = 0; i < space.size() && unit; ++i)
      unit = pointwise_leq(q, space.presheaf(i), x->structure().column(r.map[i]));
    if (unit) {
      out.algebra = r;
      break;
    }
  }
  return out;
}

namespace {

// Records a SizeCapExceeded as a skip on each named check.
void skip_all(LawReport& report, const std::vector<std::string>& laws, const std::string& why) {
  for (const auto& law : laws) {
    LawScan s(report, law);
    s.skip(why);
  }
}

}  // namespace

LawReport check_presheaf_monad(const CategoryPtr& x, const ClassPtr& cls, SpaceCache& cache) {
  LawReport report("presheaf monad [" + cls->name() + "] at " + x->name());
  const Quantale& q = x->q();
  SpacePtr px;
  try {
    px = cache.get(x, cls);
  } catch (const SizeCapExceeded& e) {
    skip_all(report, {"space"}, e.what());
    return report;
  }
  const Category& pc = *px->category();
  {
    report.merge(check_category(pc), "space: ");
    report.merge(check_separated(pc), "space: ");
  }
  {
    LawScan s(report, "space order is pointwise", "all pairs of presheaves");
    for (std::size_t i = 0; i < px->size(); ++i)
      for (std::size_t j = 0; j < px->size(); ++j)
        s.expect(point_leq(pc, i, j) == pointwise_leq(q, px->presheaf(i), px->presheaf(j)),
                 [&] { return pc.labels()[i] + " vs " + pc.labels()[j]; });
  }
  {
    LawScan s(report, "Yoneda functor is fully faithful");
    s.expect(is_functor(px->yoneda()) && fully_faithful(px->yoneda()),
             [&] { return "y_" + x->name(); });
  }
  report.merge(yoneda_lemma_check(*px));

  const std::string over_px = "all " + std::to_string(px->size()) + " presheaves";
  // y_{PX}(phi) = phi^* and Py_X(phi) = phi o y^*, as presheaves on PX
  std::vector<std::vector<Value>> y_px(px->size()), py_x(px->size());
  {
    const Bimodule yup = upper_star(px->yoneda());
    const VRelation kyup = kleisli_kernel(pc.t(), yup.rel, pc.size());
    for (std::size_t i = 0; i < px->size(); ++i) {
      y_px[i] = pc.structure().column(i);
      py_x[i] = pull(kyup, px->presheaf(i));
    }
  }
  const VRelation& ky = px->yoneda_kernel();
  {
    LawScan s(report, "unit law mult.y = 1", over_px);
    LawScan t(report, "unit law mult.Py = 1", over_px);
    for (std::size_t i = 0; i < px->size(); ++i) {
      s.expect(pull(ky, y_px[i]) == px->presheaf(i), [&] { return pc.labels()[i]; });
      t.expect(pull(ky, py_x[i]) == px->presheaf(i), [&] { return pc.labels()[i]; });
    }
  }
  {
    LawScan s(report, "lax idempotency Py <= yP", over_px);
    for (std::size_t i = 0; i < px->size(); ++i)
      s.expect(pointwise_leq(q, py_x[i], y_px[i]), [&] { return pc.labels()[i]; });
  }
  {
    LawScan s(report, "Py -| mult: unit", over_px);
    for (std::size_t i = 0; i < px->size(); ++i)
      s.expect(pointwise_leq(q, px->presheaf(i), pull(ky, py_x[i])), [&] { return pc.labels()[i]; });
  }

  SpacePtr ppx;
  try {
    ppx = cache.get(px->category(), cls);
  } catch (const SizeCapExceeded& e) {
    skip_all(report, {"mult is a functor", "mult -| yP", "Py -| mult: counit", "associativity"},
             e.what());
    return report;
  }
  const Category& ppc = *ppx->category();
  Functor mu;
  {
    LawScan s(report, "mult is a functor", "all " + std::to_string(ppx->size()) + " elements");
    try {
      mu = mult(*px, *ppx);
      s.expect(is_functor(mu), [&] { return std::string("mult violates functoriality"); });
    } catch (const ValidationError& e) {
      s.expect(false, [&] { return std::string(e.what()); });
      return report;
    }
  }
  {
    const std::string bound = "all " + std::to_string(ppx->size()) + " elements of the double space";
    LawScan s(report, "mult -| yP", bound);
    LawScan t(report, "Py -| mult: counit", bound);
    for (std::size_t j = 0; j < ppx->size(); ++j) {
      const auto& big = ppx->presheaf(j);
      // Psi <= (mult Psi)^* and Py(mult Psi) <= Psi
      s.expect(pointwise_leq(q, big, y_px[mu.map[j]]), [&] { return ppc.labels()[j]; });
      t.expect(pointwise_leq(q, py_x[mu.map[j]], big), [&] { return ppc.labels()[j]; });
    }
    for (std::size_t i = 0; i < px->size(); ++i)
      s.expect(pull(ky, y_px[i]) == px->presheaf(i), [&] { return pc.labels()[i]; });
  }
  {
    // mult.P(mult) and mult.mult_P are Xi -> Xi . K for kernels K; equal
    // kernels give equal maps on every element of the triple space.
    LawScan s(report, "associativity");
    const Bimodule mu_up = upper_star(mu);
    const VRelation k_mu = kleisli_kernel(pc.t(), mu_up.rel, pc.size());
    const VRelation& k_ypx = ppx->yoneda_kernel();
    const VRelation lhs = compose(k_mu, ky);
    const VRelation rhs = compose(k_ypx, ky);
    if (lhs == rhs) {
      s.expect(true, [] { return std::string(); });
      s.check().bound = "kernel identity over the double space, covers every element of the triple space";
    } else {
      try {
        SpacePtr pppx = cache.get(ppx->category(), cls);
        s.check().bound = "all " + std::to_string(pppx->size()) + " elements of the triple space";
        for (std::size_t j = 0; j < pppx->size(); ++j)
          s.expect(pull(ky, pull(k_mu, pppx->presheaf(j))) == pull(ky, pull(k_ypx, pppx->presheaf(j))),
                   [&] { return pppx->category()->labels()[j]; });
      } catch (const SizeCapExceeded& e) {
        s.skip(std::string("kernels differ and ") + e.what());
      }
    }
  }
  return report;
}

LawReport check_presheaf_naturality(const Functor& f, const ClassPtr& cls, SpaceCache& cache) {
  LawReport report("presheaf monad [" + cls->name() + "] naturality at " + f.name);
  SpacePtr px, py, ppx, ppy;
  try {
    px = cache.get(f.source, cls);
    py = cache.get(f.target, cls);
  } catch (const SizeCapExceeded& e) {
    skip_all(report, {"naturality of y", "naturality of mult"}, e.what());
    return report;
  }
  Functor pf;
  {
    LawScan s(report, "naturality of y", "all points");
    try {
      pf = apply_P(f, *px, *py);
      for (std::size_t p = 0; p < f.source->size(); ++p)
        s.expect(pf.map[px->yoneda().map[p]] == py->yoneda().map[f.map[p]],
                 [&] { return f.source->labels()[p]; });
    } catch (const ValidationError& e) {
      s.expect(false, [&] { return std::string(e.what()); });
      return report;
    }
  }
  {
    LawScan s(report, "naturality of mult");
    try {
      ppx = cache.get(px->category(), cls);
      ppy = cache.get(py->category(), cls);
    } catch (const SizeCapExceeded& e) {
      s.skip(e.what());
      return report;
    }
    s.check().bound = "all " + std::to_string(ppx->size()) + " elements of the double space";
    try {
      const Functor ppf = apply_P(pf, *ppx, *ppy);
      const Functor mx = mult(*px, *ppx), my = mult(*py, *ppy);
      for (std::size_t j = 0; j < ppx->size(); ++j)
        s.expect(pf.map[mx.map[j]] == my.map[ppf.map[j]],
                 [&] { return ppx->category()->labels()[j]; });
    } catch (const ValidationError& e) {
      s.expect(false, [&] { return std::string(e.what()); });
    }
  }
  return report;
}

LawReport check_saturated(const ClassPtr& cls, const SaturationCorpus& corpus,
                          std::size_t max_space) {
  LawReport report("saturated class " + cls->name());
  const auto& objs = corpus.objects;
  const std::size_t n = objs.size();
  // all[i][j]: every bimodule objs[i] -o-> objs[j]; in[i][j]: membership flags
  std::vector<std::vector<std::vector<Bimodule>>> all(n, std::vector<std::vector<Bimodule>>(n));
  std::vector<std::vector<std::vector<std::uint8_t>>> in(n, std::vector<std::vector<std::uint8_t>>(n));
  std::vector<std::vector<std::vector<VRelation>>> kern(n, std::vector<std::vector<VRelation>>(n));
  std::size_t total = 0;
  std::string skipped;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      try {
        all[i][j] = enumerate_bimodules(objs[i], objs[j], nullptr, max_space);
      } catch (const SizeCapExceeded& e) {
        skipped = e.what();
        continue;
      }
      total += all[i][j].size();
      for (const Bimodule& b : all[i][j]) {
        in[i][j].push_back(cls->contains(b) ? 1 : 0);
        kern[i][j].push_back(kleisli_kernel(objs[i]->t(), b.rel, objs[i]->size()));
      }
    }
  const std::string bound = std::to_string(total) + " bimodules between " + std::to_string(n) +
                            " objects" + (skipped.empty() ? "" : "; some pairs skipped: " + skipped);
  {
    LawScan s(report, "(S1) closed under composition", bound);
    for (std::size_t i = 0; i < n && !s.failed(); ++i)
      for (std::size_t j = 0; j < n && !s.failed(); ++j)
        for (std::size_t a = 0; a < all[i][j].size() && !s.failed(); ++a) {
          if (!in[i][j][a]) continue;
          for (std::size_t k = 0; k < n && !s.failed(); ++k)
            for (std::size_t b = 0; b < all[j][k].size(); ++b) {
              if (!in[j][k][b]) continue;
              Bimodule c{objs[i], objs[k], compose(all[j][k][b].rel, kern[i][j][a])};
              s.expect(cls->contains(c), [&] {
                return bimodule_text(all[j][k][b]) + " o " + bimodule_text(all[i][j][a]) +
                       " = " + bimodule_text(c) + " is not in the class";
              });
              if (s.failed()) break;
            }
        }
  }
  {
    LawScan s(report, "(S2) contains every f^*",
              std::to_string(corpus.functors.size()) + " functors");
    for (const Functor& f : corpus.functors)
      s.expect(cls->contains(upper_star(f)), [&] { return f.name + "^* is not in the class"; });
  }
  {
    LawScan s(report, "(S3) detected by representables", bound);
    for (std::size_t i = 0; i < n && !s.failed(); ++i)
      for (std::size_t j = 0; j < n && !s.failed(); ++j) {
        const CategoryPtr e = unit_category(objs[j]->monad());
        for (std::size_t a = 0; a < all[i][j].size(); ++a) {
          bool premise = true;
          for (std::size_t y = 0; y < objs[j]->size() && premise; ++y) {
            const Bimodule ystar = presheaf_bimodule(objs[j], e, objs[j]->structure().column(y));
            premise = cls->contains(Bimodule{objs[i], e, compose(ystar.rel, kern[i][j][a])});
          }
          if (!premise) continue;
          s.expect(in[i][j][a] != 0, [&] {
            return bimodule_text(all[i][j][a]) + " is not in the class although every y^* o psi is";
          });
          if (s.failed()) break;
        }
      }
  }
  return report;
}

}  // namespace tvcat

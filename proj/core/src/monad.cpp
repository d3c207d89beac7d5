#include "tvcat/monad.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "enumerate.hpp"
#include "tvcat/error.hpp"

namespace tvcat {

Monad::Monad(QuantalePtr q) : q_(std::move(q)) {
  if (!q_) throw InputError("monad without a quantale");
}

std::vector<std::optional<std::size_t>> Monad::point_table(std::size_t n) const {
  std::vector<std::optional<std::size_t>> out(object_size(n));
  const auto e = unit_table(n);
  for (std::size_t x = 0; x < n; ++x) out[e[x]] = x;
  return out;
}

namespace {

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

class IdentityMonad final : public Monad {
 public:
  using Monad::Monad;
  std::string kind() const override { return "identity"; }
  std::size_t object_size(std::size_t n) const override { return n; }
  std::vector<std::size_t> unit_table(std::size_t n) const override { return iota(n); }
  std::vector<std::size_t> mult_table(std::size_t n) const override { return iota(n); }
  std::vector<std::size_t> map_table(const std::vector<std::size_t>& f,
                                     std::size_t) const override {
    return f;
  }
  std::vector<Value> xi_table() const override { return quantale()->elements(); }
  std::string element_label(std::size_t, std::size_t t,
                            const std::vector<std::string>& labels) const override {
    return labels.at(t);
  }
  bool provides_presheaf_structure() const override { return true; }
};

// Ultrafilters on a finite set. Every filter on a finite set is ↑G for the
// nonempty intersection G of its members, so filters are stored by their
// generator. The carriers up to kGenuineLimit points are computed by
// enumerating all filters and keeping the maximal ones; above that the
// principal ones are taken directly.
class FiniteUltrafilterMonad final : public Monad {
 public:
  static constexpr std::size_t kGenuineLimit = 16;

  using Monad::Monad;
  std::string kind() const override { return "finite_ultrafilter"; }

  std::size_t object_size(std::size_t n) const override { return object(n).gens.size(); }

  std::vector<std::size_t> unit_table(std::size_t n) const override {
    const auto& obj = object(n);
    std::vector<std::size_t> out(n);
    for (std::uint32_t x = 0; x < n; ++x) out[x] = obj.lookup({x});
    return out;
  }

  std::vector<std::size_t> mult_table(std::size_t n) const override {
    const auto& inner = object(n);
    const auto& outer = object(inner.gens.size());
    std::vector<std::size_t> out(outer.gens.size());
    for (std::size_t j = 0; j < outer.gens.size(); ++j) {
      // generator of the sum is the union of the generators it collects
      std::vector<std::uint32_t> g;
      for (std::uint32_t u : outer.gens[j])
        g.insert(g.end(), inner.gens[u].begin(), inner.gens[u].end());
      out[j] = inner.lookup(normalise(std::move(g)));
    }
    return out;
  }

  std::vector<std::size_t> map_table(const std::vector<std::size_t>& f,
                                     std::size_t codomain) const override {
    const auto& src = object(f.size());
    const auto& dst = object(codomain);
    std::vector<std::size_t> out(src.gens.size());
    for (std::size_t t = 0; t < src.gens.size(); ++t) {
      std::vector<std::uint32_t> g;
      for (std::uint32_t x : src.gens[t]) g.push_back(static_cast<std::uint32_t>(f[x]));
      out[t] = dst.lookup(normalise(std::move(g)));
    }
    return out;
  }

  std::vector<Value> xi_table() const override {
    const Quantale& q = *quantale();
    const auto& obj = object(q.size());
    std::vector<Value> out(obj.gens.size());
    for (std::size_t t = 0; t < obj.gens.size(); ++t) {
      // join of all v whose up-set belongs to the ultrafilter, i.e. contains G
      Value acc = q.bottom();
      for (Value v : q.elements()) {
        bool contains = std::all_of(obj.gens[t].begin(), obj.gens[t].end(), [&](std::uint32_t w) {
          return q.leq(v, q.value(w));
        });
        if (contains) acc = q.join(acc, v);
      }
      out[t] = acc;
    }
    return out;
  }

  std::string element_label(std::size_t n, std::size_t t,
                            const std::vector<std::string>& labels) const override {
    const auto& g = object(n).gens.at(t);
    if (g.size() == 1) return labels.at(g[0]);
    std::string s = "uf{";
    for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + labels.at(g[i]);
    return s + "}";
  }

  bool provides_presheaf_structure() const override { return true; }

 private:
  struct Object {
    std::vector<std::vector<std::uint32_t>> gens;
    std::map<std::vector<std::uint32_t>, std::size_t> index;

    std::size_t lookup(const std::vector<std::uint32_t>& g) const {
      auto it = index.find(g);
      if (it == index.end()) throw Error("finite_ultrafilter: image is not an ultrafilter");
      return it->second;
    }
  };

  static std::vector<std::uint32_t> normalise(std::vector<std::uint32_t> g) {
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
  }

  static std::shared_ptr<const Object> build(std::size_t n) {
    auto obj = std::make_shared<Object>();
    if (n <= kGenuineLimit) {
      const std::uint32_t full = n == 32 ? ~0u : ((1u << n) - 1u);
      for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
        // ↑G is contained in ↑H exactly when H is a subset of G, so ↑G is a
        // maximal proper filter iff G has no nonempty proper subset.
        const std::uint32_t first_proper = (mask - 1) & mask;
        if (first_proper != 0) continue;
        std::vector<std::uint32_t> g;
        for (std::uint32_t x = 0; x < n; ++x)
          if (mask & (1u << x)) g.push_back(x);
        obj->gens.push_back(std::move(g));
        if (mask == full) break;
      }
    } else {
      for (std::uint32_t x = 0; x < n; ++x) obj->gens.push_back({x});
    }
    std::sort(obj->gens.begin(), obj->gens.end());
    for (std::size_t i = 0; i < obj->gens.size(); ++i) obj->index.emplace(obj->gens[i], i);
    return obj;
  }

  const Object& object(std::size_t n) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(n);
    if (it == cache_.end()) it = cache_.emplace(n, build(n)).first;
    return *it->second;
  }

  mutable std::mutex mutex_;
  mutable std::map<std::size_t, std::shared_ptr<const Object>> cache_;
};

}  // namespace

MonadPtr instantiate_monad(std::string_view kind, QuantalePtr q) {
  if (kind == "identity") return std::make_shared<IdentityMonad>(std::move(q));
  if (kind == "finite_ultrafilter") return std::make_shared<FiniteUltrafilterMonad>(std::move(q));
  throw InputError("unsupported monad kind '" + std::string(kind) + "'");
}

VRelation lax_extend(const Monad& m, const VRelation& r) {
  if (!r.quantale()->same_as(*m.quantale()))
    throw InputError("lax_extend: relation and monad use different quantales");
  const Quantale& q = r.q();
  const std::size_t nx = r.rows(), ny = r.cols(), np = nx * ny;
  std::vector<std::size_t> p1(np), p2(np), rv(np);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      p1[x * ny + y] = x;
      p2[x * ny + y] = y;
      rv[x * ny + y] = r(x, y).index;
    }
  const auto tp1 = m.map_table(p1, nx);
  const auto tp2 = m.map_table(p2, ny);
  const auto tr = m.map_table(rv, q.size());
  const auto xi = m.xi_table();
  VRelation out(r.quantale(), m.object_size(nx), m.object_size(ny));
  for (std::size_t w = 0; w < tp1.size(); ++w)
    out.set(tp1[w], tp2[w], q.join(out(tp1[w], tp2[w]), xi[tr[w]]));
  return out;
}

VRelation kleisli_kernel(const Monad& m, const VRelation& r, std::size_t source_size) {
  if (m.object_size(source_size) != r.rows())
    throw InputError("kleisli: relation rows do not match T of the source");
  const VRelation tr = lax_extend(m, r);
  const auto mult = m.mult_table(source_size);
  const Quantale& q = r.q();
  VRelation out(r.quantale(), r.rows(), tr.cols());
  for (std::size_t big = 0; big < mult.size(); ++big)
    for (std::size_t c = 0; c < tr.cols(); ++c)
      out.set(mult[big], c, q.join(out(mult[big], c), tr(big, c)));
  return out;
}

VRelation kleisli_convolution(const Monad& m, const VRelation& s, const VRelation& r,
                              std::size_t source_size) {
  return compose(s, kleisli_kernel(m, r, source_size));
}

namespace {

using detail::for_each_tuple;

std::string tuple_text(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string n_text(std::size_t n) { return "|X|=" + std::to_string(n); }

}  // namespace

LawReport check_monad_laws(const Monad& m, const MonadLawOptions& o) {
  LawReport report("monad " + m.kind() + " over " + m.quantale()->name());
  const Quantale& q = *m.quantale();
  const QuantalePtr& qp = m.quantale();
  const std::size_t lim = o.set_limit;
  const std::string sets = "carriers of size <= " + std::to_string(lim);

  {
    LawScan s(report, "monad unit laws", sets);
    for (std::size_t n = 0; n <= lim; ++n) {
      const std::size_t tn = m.object_size(n);
      const auto mult = m.mult_table(n);
      const auto te = m.map_table(m.unit_table(n), tn);
      const auto et = m.unit_table(tn);
      for (std::size_t t = 0; t < tn; ++t) {
        s.expect(mult[te[t]] == t, [&] { return n_text(n) + ", t=" + std::to_string(t) + ": m.Te(t) != t"; });
        s.expect(mult[et[t]] == t, [&] { return n_text(n) + ", t=" + std::to_string(t) + ": m.eT(t) != t"; });
      }
    }
  }
  {
    LawScan s(report, "monad associativity", sets);
    for (std::size_t n = 0; n <= lim; ++n) {
      const std::size_t tn = m.object_size(n);
      const auto mx = m.mult_table(n);
      const auto mtx = m.mult_table(tn);
      const auto tmx = m.map_table(mx, tn);
      for (std::size_t big = 0; big < tmx.size(); ++big)
        s.expect(mx[tmx[big]] == mx[mtx[big]], [&] {
          return n_text(n) + ", element " + std::to_string(big) + " of TTTX: m.Tm != m.mT";
        });
    }
  }
  {
    LawScan s(report, "naturality of e and m", "all maps between " + sets);
    for (std::size_t n = 0; n <= lim; ++n)
      for (std::size_t c = 0; c <= lim; ++c)
        for_each_tuple(n, c, [&](const std::vector<std::size_t>& f) {
          const auto tf = m.map_table(f, c);
          const auto ex = m.unit_table(n), ey = m.unit_table(c);
          for (std::size_t x = 0; x < n; ++x)
            s.expect(tf[ex[x]] == ey[f[x]], [&] { return "f=" + tuple_text(f) + ": Tf.e != e.f"; });
          const auto ttf = m.map_table(tf, m.object_size(c));
          const auto mx = m.mult_table(n), my = m.mult_table(c);
          for (std::size_t big = 0; big < ttf.size(); ++big)
            s.expect(tf[mx[big]] == my[ttf[big]], [&] { return "f=" + tuple_text(f) + ": Tf.m != m.TTf"; });
          return !s.failed();
        });
  }

  const auto xi = m.xi_table();
  {
    LawScan s(report, "xi unit law", "all elements of V");
    const auto ev = m.unit_table(q.size());
    for (std::size_t v = 0; v < q.size(); ++v)
      s.expect(xi[ev[v]].index == v, [&] { return "xi(e(" + q.label(q.value(v)) + ")) = " + q.label(xi[ev[v]]); });
  }
  {
    LawScan s(report, "xi associativity", "all elements of TTV");
    std::vector<std::size_t> xi_idx(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) xi_idx[i] = xi[i].index;
    const auto txi = m.map_table(xi_idx, q.size());
    const auto mv = m.mult_table(q.size());
    for (std::size_t big = 0; big < txi.size(); ++big)
      s.expect(xi[txi[big]] == xi[mv[big]], [&] { return "element " + std::to_string(big) + " of TTV"; });
  }
  {
    LawScan s(report, "condition C: k is a homomorphism", "all elements of T1");
    const auto tk = m.map_table({q.unit().index}, q.size());
    for (std::size_t u = 0; u < tk.size(); ++u)
      s.expect(xi[tk[u]] == q.unit(), [&] { return "xi(Tk(" + std::to_string(u) + ")) = " + q.label(xi[tk[u]]); });
  }
  {
    LawScan s(report, "condition C: tensor is a homomorphism", "all elements of T(VxV)");
    const std::size_t nv = q.size();
    std::vector<std::size_t> p1(nv * nv), p2(nv * nv), mul(nv * nv);
    for (std::size_t a = 0; a < nv; ++a)
      for (std::size_t b = 0; b < nv; ++b) {
        p1[a * nv + b] = a;
        p2[a * nv + b] = b;
        mul[a * nv + b] = q.tensor(q.value(a), q.value(b)).index;
      }
    const auto tp1 = m.map_table(p1, nv), tp2 = m.map_table(p2, nv), tm = m.map_table(mul, nv);
    for (std::size_t w = 0; w < tm.size(); ++w)
      s.expect(xi[tm[w]] == q.tensor(xi[tp1[w]], xi[tp2[w]]),
               [&] { return "element " + std::to_string(w) + " of T(VxV)"; });
  }
  {
    LawScan s(report, "condition C inequality", "all f: X->Y and phi: X->V, " + sets);
    for (std::size_t n = 0; n <= lim && !s.failed(); ++n)
      for (std::size_t c = 0; c <= lim && !s.failed(); ++c)
        for_each_tuple(n, c, [&](const std::vector<std::size_t>& f) {
          const auto tf = m.map_table(f, c);
          return for_each_tuple(n, q.size(), [&](const std::vector<std::size_t>& phi) {
            std::vector<std::size_t> psi(c, q.bottom().index);
            for (std::size_t x = 0; x < n; ++x)
              psi[f[x]] = q.join(q.value(psi[f[x]]), q.value(phi[x])).index;
            const auto tphi = m.map_table(phi, q.size());
            const auto tpsi = m.map_table(psi, q.size());
            std::vector<Value> rhs(tpsi.size(), q.bottom());
            for (std::size_t t = 0; t < tphi.size(); ++t) rhs[tf[t]] = q.join(rhs[tf[t]], xi[tphi[t]]);
            for (std::size_t t = 0; t < tpsi.size(); ++t)
              s.expect(q.leq(xi[tpsi[t]], rhs[t]),
                       [&] { return "f=" + tuple_text(f) + ", phi=" + tuple_text(phi); });
            return !s.failed();
          });
        });
  }
  {
    LawScan s(report, "(BC): T preserves weak pullbacks", "all cospans of " + sets);
    for (std::size_t nx = 0; nx <= lim && !s.failed(); ++nx)
      for (std::size_t ny = 0; ny <= lim && !s.failed(); ++ny)
        for (std::size_t nz = 0; nz <= lim && !s.failed(); ++nz)
          for_each_tuple(nx, nz, [&](const std::vector<std::size_t>& f) {
            const auto tf = m.map_table(f, nz);
            return for_each_tuple(ny, nz, [&](const std::vector<std::size_t>& g) {
              std::vector<std::size_t> pa, pb;
              for (std::size_t x = 0; x < nx; ++x)
                for (std::size_t y = 0; y < ny; ++y)
                  if (f[x] == g[y]) {
                    pa.push_back(x);
                    pb.push_back(y);
                  }
              const auto tg = m.map_table(g, nz);
              const auto ta = m.map_table(pa, nx), tb = m.map_table(pb, ny);
              std::vector<std::uint8_t> hit(tf.size() * tg.size(), 0);
              for (std::size_t w = 0; w < ta.size(); ++w) hit[ta[w] * tg.size() + tb[w]] = 1;
              for (std::size_t a = 0; a < tf.size(); ++a)
                for (std::size_t b = 0; b < tg.size(); ++b)
                  if (tf[a] == tg[b])
                    s.expect(hit[a * tg.size() + b] != 0, [&] {
                      return "f=" + tuple_text(f) + ", g=" + tuple_text(g) + ": pair (" +
                             std::to_string(a) + "," + std::to_string(b) + ") not covered";
                    });
              return !s.failed();
            });
          });
  }
  {
    LawScan s(report, "(BC): naturality squares of m are weak pullbacks", "all maps between " + sets);
    for (std::size_t n = 0; n <= lim && !s.failed(); ++n)
      for (std::size_t c = 0; c <= lim && !s.failed(); ++c)
        for_each_tuple(n, c, [&](const std::vector<std::size_t>& f) {
          const auto tf = m.map_table(f, c);
          const auto ttf = m.map_table(tf, m.object_size(c));
          const auto mx = m.mult_table(n), my = m.mult_table(c);
          const std::size_t tty = my.size();
          std::vector<std::uint8_t> hit(tf.size() * tty, 0);
          for (std::size_t big = 0; big < mx.size(); ++big) hit[mx[big] * tty + ttf[big]] = 1;
          for (std::size_t t = 0; t < tf.size(); ++t)
            for (std::size_t bigy = 0; bigy < tty; ++bigy)
              if (tf[t] == my[bigy])
                s.expect(hit[t * tty + bigy] != 0, [&] {
                  return "f=" + tuple_text(f) + ": (" + std::to_string(t) + "," +
                         std::to_string(bigy) + ") has no preimage in TTX";
                });
          return !s.failed();
        });
  }

  // Relation-level laws.
  const std::uint64_t exhaustive_limit = 1u << 16;
  const std::size_t rl = o.relation_limit;
  const std::string rel_bound_prefix = "relations on carriers of size 1.." + std::to_string(rl);
  auto describe = [](const detail::RelationFamilies& fam) {
    return fam.exhaustive() ? std::string(", all ") + std::to_string(fam.space()) + " per shape"
                            : std::string(", random sample per shape");
  };
  {
    LawScan s(report, "lax extension preserves identities", sets);
    for (std::size_t n = 0; n <= lim; ++n)
      s.expect(lax_extend(m, VRelation::identity(qp, n)) == VRelation::identity(qp, m.object_size(n)),
               [&] { return n_text(n); });
  }
  {
    LawScan s(report, "lax extension is functorial", rel_bound_prefix);
    std::uint64_t seed = o.seed;
    std::string how;
    for (std::size_t a = 1; a <= rl; ++a)
      for (std::size_t b = 1; b <= rl; ++b)
        for (std::size_t c = 1; c <= rl; ++c) {
          detail::RelationFamilies fam(qp, {{a, b}, {b, c}}, exhaustive_limit, o.random_cases, seed++);
          how = describe(fam);
          fam.for_each([&](const std::vector<VRelation>& rs) {
            const VRelation& r = rs[0];
            const VRelation& t = rs[1];
            s.expect(lax_extend(m, compose(t, r)) == compose(lax_extend(m, t), lax_extend(m, r)),
                     [&] { return "shape " + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c); });
          });
        }
    s.check().bound += how;
  }
  {
    LawScan s(report, "m is natural for the lax extension", rel_bound_prefix);
    LawScan e(report, "e is op-lax natural", rel_bound_prefix);
    LawScan tr(report, "lax extension agrees with transport along points", rel_bound_prefix);
    std::uint64_t seed = o.seed + 1000;
    std::string how;
    for (std::size_t a = 1; a <= rl; ++a)
      for (std::size_t b = 1; b <= rl; ++b) {
        detail::RelationFamilies fam(qp, {{a, b}}, exhaustive_limit, o.random_cases, seed++);
        how = describe(fam);
        const VRelation mx = VRelation::from_map(qp, m.mult_table(a), m.object_size(a));
        const VRelation my = VRelation::from_map(qp, m.mult_table(b), m.object_size(b));
        const VRelation ex = VRelation::from_map(qp, m.unit_table(a), m.object_size(a));
        const VRelation ey = VRelation::from_map(qp, m.unit_table(b), m.object_size(b));
        const auto px = m.point_table(a), py = m.point_table(b);
        const bool bijective =
            px.size() == a && py.size() == b &&
            std::all_of(px.begin(), px.end(), [](auto p) { return p.has_value(); }) &&
            std::all_of(py.begin(), py.end(), [](auto p) { return p.has_value(); });
        fam.for_each([&](const std::vector<VRelation>& rs) {
          const VRelation& r = rs[0];
          const VRelation tr1 = lax_extend(m, r);
          s.expect(compose(my, lax_extend(m, tr1)) == compose(tr1, mx),
                   [&] { return "shape " + std::to_string(a) + "x" + std::to_string(b); });
          e.expect(leq(compose(ey, r), compose(tr1, ex)),
                   [&] { return "shape " + std::to_string(a) + "x" + std::to_string(b); });
          if (bijective)
            for (std::size_t t = 0; t < tr1.rows(); ++t)
              for (std::size_t u = 0; u < tr1.cols(); ++u)
                tr.expect(tr1(t, u) == r(*px[t], *py[u]),
                          [&] { return "entry (" + std::to_string(t) + "," + std::to_string(u) + ")"; });
        });
      }
    s.check().bound += how;
    e.check().bound += how;
    if (tr.check().checked == 0) tr.skip("TX is not in bijection with X");
    else tr.check().bound += how;
  }
  return report;
}

}  // namespace tvcat

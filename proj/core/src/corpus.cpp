#include "tvcat/corpus.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "enumerate.hpp"
#include "tvcat/error.hpp"

namespace tvcat {

namespace {

// The data of `a` transported along the bijection perm of the carrier.
std::vector<std::uint16_t> permuted(const Monad& m, const std::vector<std::uint16_t>& a,
                                    std::size_t n, const std::vector<std::size_t>& perm) {
  const std::vector<std::size_t> tp = m.map_table(perm, n);
  std::vector<std::uint16_t> out(a.size());
  for (std::size_t t = 0; t < tp.size(); ++t)
    for (std::size_t x = 0; x < n; ++x) out[tp[t] * n + perm[x]] = a[t * n + x];
  return out;
}

std::vector<std::uint16_t> canonical(const Monad& m, const std::vector<std::uint16_t>& a,
                                     std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint16_t> best = a;
  do {
    best = std::min(best, permuted(m, a, n, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

Corpus build_corpus(const MonadPtr& monad, const CorpusOptions& options) {
  Corpus out;
  out.monad = monad;
  out.quantale = monad->quantale();
  out.name = out.quantale->name() + "/" + monad->kind();
  const Quantale& q = *out.quantale;
  const std::size_t nv = q.size();

  for (std::size_t n = 1; n <= options.max_size; ++n) {
    const std::size_t tn = monad->object_size(n);
    const std::vector<std::size_t> unit = monad->unit_table(n);
    std::vector<std::string> labels(n);
    for (std::size_t x = 0; x < n; ++x) labels[x] = std::to_string(x);

    // Reflexivity fixes a(e x, x) to values above k; scan every other cell.
    std::vector<std::size_t> free_cells;
    std::vector<Value> above_k;
    for (Value v : q.elements())
      if (q.leq(q.unit(), v)) above_k.push_back(v);
    std::vector<std::size_t> diag;
    for (std::size_t t = 0; t < tn; ++t)
      for (std::size_t x = 0; x < n; ++x)
        (unit[x] == t ? diag : free_cells).push_back(t * n + x);

    const std::size_t total = detail::saturating_pow(nv, free_cells.size()) *
                              detail::saturating_pow(above_k.size(), diag.size());
    if (total > options.max_relations)
      throw SizeCapExceeded("corpus structures on " + std::to_string(n) + " points",
                            options.max_relations);

    std::set<std::vector<std::uint16_t>> seen;
    std::vector<std::vector<std::uint16_t>> found;
    std::vector<std::uint16_t> cells(tn * n);
    detail::for_each_tuple(diag.size(), above_k.size(), [&](const std::vector<std::size_t>& dt) {
      for (std::size_t i = 0; i < diag.size(); ++i) cells[diag[i]] = above_k[dt[i]].index;
      detail::for_each_tuple(free_cells.size(), nv, [&](const std::vector<std::size_t>& ft) {
        for (std::size_t i = 0; i < free_cells.size(); ++i)
          cells[free_cells[i]] = static_cast<std::uint16_t>(ft[i]);
        std::vector<std::uint16_t> key = canonical(*monad, cells, n);
        if (!seen.insert(key).second) return true;
        VRelation a(out.quantale, tn, n);
        for (std::size_t i = 0; i < key.size(); ++i) a.set(i / n, i % n, Value{key[i]});
        Category c(monad, labels, a);
        if (is_category(c) && is_separated(c)) found.push_back(std::move(key));
        return true;
      });
      return true;
    });
    std::sort(found.begin(), found.end());
    for (std::size_t i = 0; i < found.size(); ++i) {
      VRelation a(out.quantale, tn, n);
      for (std::size_t j = 0; j < found[i].size(); ++j) a.set(j / n, j % n, Value{found[i][j]});
      out.objects.push_back(make_category(monad, labels, std::move(a),
                                          "C" + std::to_string(n) + "." + std::to_string(i + 1)));
    }
  }

  for (const CategoryPtr& s : out.objects)
    for (const CategoryPtr& t : out.objects) {
      for (Functor& f : enumerate_functors(s, t, {}, options.max_functors)) {
        std::string img;
        for (std::size_t x = 0; x < f.map.size(); ++x) img += (x ? "," : "") + t->labels()[f.map[x]];
        f.name = s->name() + ">" + t->name() + "[" + img + "]";
        out.functors.push_back(std::move(f));
        if (out.functors.size() > options.max_functors)
          throw SizeCapExceeded("corpus functors", options.max_functors);
      }
    }
  return out;
}

std::vector<Functor> functors_up_to(const Corpus& corpus, std::size_t max_size) {
  std::vector<Functor> out;
  for (const Functor& f : corpus.functors)
    if (f.source->size() <= max_size && f.target->size() <= max_size) out.push_back(f);
  return out;
}

}  // namespace tvcat

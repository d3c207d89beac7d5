#include "tvcat/quantale.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "tvcat/error.hpp"

namespace tvcat {

namespace {

constexpr std::size_t kExhaustiveSubsetLimit = 16;
constexpr std::size_t kMaxElements = 1024;

std::string chain_label(int v, int cap) { return v > cap ? "inf" : std::to_string(v); }

std::string subset_label(unsigned mask, int n) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < n; ++i) {
    if (mask & (1u << i)) {
      if (!first) out += ",";
      out += std::to_string(i);
      first = false;
    }
  }
  return out + "}";
}

// Least upper bound (or greatest lower bound when `upper` is false) of the
// listed indices with respect to the raw order table.
std::optional<std::size_t> bound_of(const QuantaleTables& t,
                                    const std::vector<std::size_t>& subset,
                                    bool upper) {
  const std::size_t n = t.size();
  std::vector<std::size_t> bounds;
  for (std::size_t u = 0; u < n; ++u) {
    bool ok = std::all_of(subset.begin(), subset.end(), [&](std::size_t s) {
      return upper ? t.le(s, u) : t.le(u, s);
    });
    if (ok) bounds.push_back(u);
  }
  for (std::size_t u : bounds) {
    bool extremal = std::all_of(bounds.begin(), bounds.end(), [&](std::size_t v) {
      return upper ? t.le(u, v) : t.le(v, u);
    });
    if (extremal) return u;
  }
  return std::nullopt;
}

std::vector<std::uint8_t> closure(std::size_t n, std::vector<std::uint8_t> leq) {
  for (std::size_t i = 0; i < n; ++i) leq[i * n + i] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq[k * n + j]) leq[i * n + j] = 1;
  return leq;
}

}  // namespace

QuantaleTables builtin_tables(std::string_view name, int n) {
  QuantaleTables t;
  auto fill = [&](std::size_t size, auto&& le, auto&& mul) {
    t.leq.assign(size * size, 0);
    t.tensor.assign(size * size, 0);
    for (std::size_t a = 0; a < size; ++a)
      for (std::size_t b = 0; b < size; ++b) {
        t.leq[a * size + b] = le(a, b) ? 1 : 0;
        t.tensor[a * size + b] = static_cast<std::uint16_t>(mul(a, b));
      }
  };

  if (name == "boolean") {
    t.name = "boolean";
    t.elements = {"0", "1"};
    fill(2, [](auto a, auto b) { return a <= b; }, [](auto a, auto b) { return a & b; });
    t.unit = 1;
    return t;
  }
  if (name == "truncated_chain") {
    if (n < 0 || n > 255) throw InputError("truncated_chain: n must lie in [0, 255]");
    t.name = "truncated_chain(" + std::to_string(n) + ")";
    const std::size_t size = static_cast<std::size_t>(n) + 2;  // 0..n and inf
    for (int v = 0; v <= n + 1; ++v) t.elements.push_back(chain_label(v, n));
    fill(size, [](auto a, auto b) { return a >= b; },
         [n](auto a, auto b) {
           std::size_t s = a + b;
           return s > static_cast<std::size_t>(n) ? static_cast<std::size_t>(n) + 1 : s;
         });
    t.unit = 0;
    return t;
  }
  if (name == "lukasiewicz_chain") {
    if (n < 1 || n > 255) throw InputError("lukasiewicz_chain: n must lie in [1, 255]");
    t.name = "lukasiewicz_chain(" + std::to_string(n) + ")";
    const std::size_t size = static_cast<std::size_t>(n) + 1;
    for (int v = 0; v <= n; ++v) t.elements.push_back(std::to_string(v));
    fill(size, [](auto a, auto b) { return a <= b; },
         [n](auto a, auto b) {
           long s = static_cast<long>(a) + static_cast<long>(b) - n;
           return static_cast<std::size_t>(std::max(s, 0L));
         });
    t.unit = static_cast<std::size_t>(n);
    return t;
  }
  if (name == "powerset_frame") {
    if (n < 1 || n > 6) throw InputError("powerset_frame: n must lie in [1, 6]");
    t.name = "powerset_frame(" + std::to_string(n) + ")";
    const std::size_t size = std::size_t{1} << n;
    for (unsigned m = 0; m < size; ++m) t.elements.push_back(subset_label(m, n));
    fill(size, [](auto a, auto b) { return (a & b) == a; }, [](auto a, auto b) { return a & b; });
    t.unit = size - 1;
    return t;
  }
  throw InputError("unknown builtin quantale '" + std::string(name) + "'");
}

QuantaleTables explicit_tables(
    std::string name, std::vector<std::string> elements,
    const std::vector<std::pair<std::string, std::string>>& leq_pairs,
    const std::map<std::pair<std::string, std::string>, std::string>& tensor,
    const std::string& unit) {
  if (elements.empty()) throw InputError("quantale has no elements");
  if (elements.size() > kMaxElements) throw InputError("quantale has too many elements");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (!index.emplace(elements[i], i).second)
      throw InputError("duplicate quantale element '" + elements[i] + "'");
  auto lookup = [&](const std::string& id, const char* where) {
    auto it = index.find(id);
    if (it == index.end())
      throw InputError(std::string(where) + ": unknown element '" + id + "'");
    return it->second;
  };

  const std::size_t n = elements.size();
  QuantaleTables t;
  t.name = std::move(name);
  t.leq.assign(n * n, 0);
  for (const auto& [a, b] : leq_pairs) t.leq[lookup(a, "leq") * n + lookup(b, "leq")] = 1;
  t.leq = closure(n, std::move(t.leq));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (t.leq[a * n + b] && t.leq[b * n + a])
        throw InputError("leq is not antisymmetric: " + elements[a] + " <= " + elements[b] +
                         " <= " + elements[a]);

  t.tensor.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto it = tensor.find({elements[a], elements[b]});
      if (it == tensor.end())
        throw InputError("missing tensor entry '" + elements[a] + "|" + elements[b] + "'");
      t.tensor[a * n + b] = static_cast<std::uint16_t>(lookup(it->second, "tensor"));
    }
  for (const auto& [key, value] : tensor) {
    lookup(key.first, "tensor");
    lookup(key.second, "tensor");
  }
  t.unit = lookup(unit, "unit");
  t.elements = std::move(elements);
  return t;
}

LawReport check_quantale_laws(const QuantaleTables& t) {
  LawReport report("quantale " + t.name);
  const std::size_t n = t.size();
  const auto& el = t.elements;
  const std::string pairs = "all " + std::to_string(n * n) + " pairs";
  const std::string triples = "all " + std::to_string(n * n * n) + " triples";

  const bool shaped = n > 0 && t.leq.size() == n * n && t.tensor.size() == n * n && t.unit < n &&
                      std::all_of(t.tensor.begin(), t.tensor.end(),
                                  [n](std::uint16_t v) { return v < n; });
  {
    LawScan s(report, "well-formed tables");
    s.expect(shaped, [] { return std::string("table sizes or entries out of range"); });
    if (!shaped) return report;
  }

  {
    LawScan s(report, "partial order", triples);
    for (std::size_t a = 0; a < n; ++a) {
      s.expect(t.le(a, a), [&] { return "not reflexive at " + el[a]; });
      for (std::size_t b = 0; b < n; ++b) {
        s.expect(a == b || !(t.le(a, b) && t.le(b, a)),
                 [&] { return "antisymmetry: " + el[a] + ", " + el[b]; });
        for (std::size_t c = 0; c < n; ++c)
          s.expect(!(t.le(a, b) && t.le(b, c)) || t.le(a, c),
                   [&] { return "transitivity: " + el[a] + " <= " + el[b] + " <= " + el[c]; });
      }
    }
  }
  bool lattice = report.passed();

  // Binary join table, valid once completeness holds.
  std::vector<std::size_t> join(n * n, 0);
  std::size_t bottom = 0;
  {
    LawScan s(report, "completeness");
    if (!lattice) {
      s.skip("not evaluated: order is not a partial order");
    } else if (n <= kExhaustiveSubsetLimit) {
      s.check().bound = "all " + std::to_string(std::size_t{1} << n) + " subsets";
      for (std::size_t mask = 0; mask < (std::size_t{1} << n) && !s.failed(); ++mask) {
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < n; ++i)
          if (mask & (std::size_t{1} << i)) subset.push_back(i);
        auto describe = [&] {
          std::string w = "subset {";
          for (std::size_t i = 0; i < subset.size(); ++i) w += (i ? "," : "") + el[subset[i]];
          return w + "}";
        };
        s.expect(bound_of(t, subset, true).has_value(), [&] { return describe() + " has no join"; });
        s.expect(bound_of(t, subset, false).has_value(), [&] { return describe() + " has no meet"; });
      }
    } else {
      // For a finite poset, a least element plus binary joins (dually a
      // greatest element plus binary meets) give all joins and meets.
      s.check().bound = "empty set and " + pairs;
      s.expect(bound_of(t, {}, true).has_value(), [] { return std::string("no bottom"); });
      s.expect(bound_of(t, {}, false).has_value(), [] { return std::string("no top"); });
      for (std::size_t a = 0; a < n && !s.failed(); ++a)
        for (std::size_t b = 0; b < n; ++b) {
          s.expect(bound_of(t, {a, b}, true).has_value(),
                   [&] { return "{" + el[a] + "," + el[b] + "} has no join"; });
          s.expect(bound_of(t, {a, b}, false).has_value(),
                   [&] { return "{" + el[a] + "," + el[b] + "} has no meet"; });
        }
    }
    lattice = lattice && !s.failed();
    if (lattice) {
      bottom = *bound_of(t, {}, true);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) join[a * n + b] = *bound_of(t, {a, b}, true);
    }
  }

  {
    LawScan s(report, "associativity", triples);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          s.expect(t.mul(t.mul(a, b), c) == t.mul(a, t.mul(b, c)), [&] {
            return "(" + el[a] + "*" + el[b] + ")*" + el[c] + " = " + el[t.mul(t.mul(a, b), c)] +
                   " but " + el[a] + "*(" + el[b] + "*" + el[c] + ") = " +
                   el[t.mul(a, t.mul(b, c))];
          });
  }
  {
    LawScan s(report, "commutativity", pairs);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        s.expect(t.mul(a, b) == t.mul(b, a), [&] {
          return el[a] + "*" + el[b] + " = " + el[t.mul(a, b)] + " but " + el[b] + "*" + el[a] +
                 " = " + el[t.mul(b, a)];
        });
  }
  {
    LawScan s(report, "unit", "all " + std::to_string(n) + " elements");
    const std::size_t k = t.unit;
    for (std::size_t a = 0; a < n; ++a)
      s.expect(t.mul(k, a) == a && t.mul(a, k) == a, [&] {
        return el[k] + "*" + el[a] + " = " + el[t.mul(k, a)] + ", " + el[a] + "*" + el[k] + " = " +
               el[t.mul(a, k)];
      });
  }
  {
    // Binary joins and the empty join suffice for a finite lattice.
    LawScan s(report, "join-distributivity", triples + " and the empty join");
    if (!lattice) {
      s.skip("not evaluated: not a complete lattice");
    } else {
      for (std::size_t a = 0; a < n; ++a) {
        s.expect(t.mul(a, bottom) == bottom && t.mul(bottom, a) == bottom,
                 [&] { return el[a] + "*bottom = " + el[t.mul(a, bottom)]; });
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c) {
            const std::size_t lhs = t.mul(a, join[b * n + c]);
            const std::size_t rhs = join[t.mul(a, b) * n + t.mul(a, c)];
            const std::size_t lhs2 = t.mul(join[b * n + c], a);
            const std::size_t rhs2 = join[t.mul(b, a) * n + t.mul(c, a)];
            s.expect(lhs == rhs && lhs2 == rhs2, [&] {
              return el[a] + "*(" + el[b] + " v " + el[c] + ") = " + el[lhs] + " but (" + el[a] +
                     "*" + el[b] + ") v (" + el[a] + "*" + el[c] + ") = " + el[rhs];
            });
          }
      }
    }
  }
  {
    LawScan s(report, "unit not bottom");
    if (!lattice)
      s.skip("not evaluated: not a complete lattice");
    else
      s.expect(t.unit != bottom, [&] { return "unit " + el[t.unit] + " is the bottom element"; });
  }
  {
    LawScan s(report, "hom adjunction", triples);
    if (!lattice) {
      s.skip("not evaluated: not a complete lattice");
    } else {
      std::vector<std::size_t> hom(n * n, bottom);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c)
          for (std::size_t b = 0; b < n; ++b)
            if (t.le(t.mul(a, b), c)) hom[a * n + c] = join[hom[a * n + c] * n + b];
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c)
            s.expect(t.le(t.mul(a, b), c) == t.le(b, hom[a * n + c]), [&] {
              return "a=" + el[a] + ", b=" + el[b] + ", c=" + el[c] + ": a*b <= c is " +
                     (t.le(t.mul(a, b), c) ? "true" : "false") + " but b <= hom(a,c)=" +
                     el[hom[a * n + c]] + " is " + (t.le(b, hom[a * n + c]) ? "true" : "false");
            });
      if (t.hom) {
        LawScan h(report, "hom table matches", pairs);
        const auto& given = *t.hom;
        if (given.size() != n * n) {
          h.expect(false, [] { return std::string("hom table has the wrong size"); });
        } else {
          for (std::size_t a = 0; a < n; ++a)
            for (std::size_t c = 0; c < n; ++c)
              h.expect(given[a * n + c] == hom[a * n + c], [&] {
                return "hom(" + el[a] + "," + el[c] + ") given " + el[given[a * n + c]] +
                       ", computed " + el[hom[a * n + c]];
              });
        }
      }
    }
  }
  return report;
}

Quantale::Quantale(QuantaleTables tables) : tables_(std::move(tables)) {
  const LawReport report = check_quantale_laws(tables_);
  for (const LawCheck& c : report.checks())
    if (c.status == Status::fail) throw ValidationError(c.law, c.witness);

  const std::size_t n = size();
  auto v = [](std::size_t i) { return Value{static_cast<std::uint16_t>(i)}; };
  leq_ = tables_.leq;
  tensor_.resize(n * n);
  join_.resize(n * n);
  meet_.resize(n * n);
  hom_.resize(n * n);
  for (std::size_t i = 0; i < n * n; ++i) tensor_[i] = v(tables_.tensor[i]);
  bottom_ = v(*bound_of(tables_, {}, true));
  top_ = v(*bound_of(tables_, {}, false));
  unit_ = v(tables_.unit);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      join_[a * n + b] = v(*bound_of(tables_, {a, b}, true));
      meet_[a * n + b] = v(*bound_of(tables_, {a, b}, false));
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c) {
      Value h = bottom_;
      for (std::size_t b = 0; b < n; ++b)
        if (leq(tensor(v(a), v(b)), v(c))) h = join(h, v(b));
      hom_[a * n + c] = h;
    }
}

std::optional<Value> Quantale::find(std::string_view label) const {
  const auto& el = tables_.elements;
  auto it = std::find(el.begin(), el.end(), label);
  if (it == el.end()) return std::nullopt;
  return Value{static_cast<std::uint16_t>(it - el.begin())};
}

Value Quantale::at(std::string_view label) const {
  if (auto v = find(label)) return *v;
  throw InputError("quantale " + name() + " has no element '" + std::string(label) + "'");
}

Value Quantale::value(std::size_t index) const {
  if (index >= size()) throw InputError("quantale index out of range");
  return Value{static_cast<std::uint16_t>(index)};
}

Value Quantale::join_all(std::span<const Value> values) const noexcept {
  Value acc = bottom_;
  for (Value v : values) acc = join(acc, v);
  return acc;
}

Value Quantale::meet_all(std::span<const Value> values) const noexcept {
  Value acc = top_;
  for (Value v : values) acc = meet(acc, v);
  return acc;
}

std::vector<Value> Quantale::elements() const {
  std::vector<Value> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = Value{static_cast<std::uint16_t>(i)};
  return out;
}

bool Quantale::same_as(const Quantale& other) const noexcept {
  return this == &other ||
         (tables_.elements == other.tables_.elements && tables_.leq == other.tables_.leq &&
          tables_.tensor == other.tables_.tensor && tables_.unit == other.tables_.unit);
}

QuantalePtr build_quantale(QuantaleTables tables) {
  return std::make_shared<const Quantale>(std::move(tables));
}

QuantalePtr build_quantale(std::string_view builtin, int n) {
  return build_quantale(builtin_tables(builtin, n));
}

}  // namespace tvcat

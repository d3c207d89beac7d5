#include "tvcat/io.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tvcat/error.hpp"

namespace tvcat {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string to_string(Workspace::Kind kind) {
  switch (kind) {
    case Workspace::Kind::quantale: return "quantale";
    case Workspace::Kind::category: return "category";
    case Workspace::Kind::functor: return "functor";
    case Workspace::Kind::problem: return "problem";
  }
  return "object";
}

namespace {

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

std::string string_field(const json& j, const char* key, const std::string& where) {
  const json& v = member(j, key, where);
  if (!v.is_string()) throw InputError(where + ": field \"" + key + "\" must be a string");
  return v.get<std::string>();
}

std::vector<std::string> string_list(const json& j, const char* key, const std::string& where) {
  const json& v = member(j, key, where);
  if (!v.is_array()) throw InputError(where + ": field \"" + key + "\" must be an array");
  std::vector<std::string> out;
  for (const json& e : v) {
    if (!e.is_string())
      throw InputError(where + ": entries of \"" + key + "\" must be strings, got " + e.dump());
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::optional<Workspace::Kind> detect_kind(const json& j) {
  if (j.contains("kind") && j["kind"].is_string()) {
    const std::string k = j["kind"].get<std::string>();
    if (k == "quantale") return Workspace::Kind::quantale;
    if (k == "category") return Workspace::Kind::category;
    if (k == "functor") return Workspace::Kind::functor;
    if (k == "problem") return Workspace::Kind::problem;
    return std::nullopt;
  }
  if (j.contains("builtin") || j.contains("elements")) return Workspace::Kind::quantale;
  if (j.contains("carrier")) return Workspace::Kind::category;
  if (j.contains("map")) return Workspace::Kind::functor;
  if (j.contains("f") && j.contains("g")) return Workspace::Kind::problem;
  return std::nullopt;
}

// "truncated_chain(2)" or "boolean"
std::optional<std::pair<std::string, int>> builtin_ref(const std::string& s) {
  static const std::regex re(R"(^(boolean|truncated_chain|lukasiewicz_chain|powerset_frame)(?:\((\d+)\))?$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) return std::nullopt;
  return std::make_pair(m[1].str(), m[2].matched ? std::stoi(m[2].str()) : 0);
}

}  // namespace

struct Workspace::Impl {
  Workspace* self = nullptr;
  std::map<std::string, QuantalePtr> quantales;
  std::map<std::string, CategoryPtr> categories;
  std::map<std::string, Functor> functors;
  std::map<std::string, LiftingProblem> problems;
  std::map<std::pair<const Quantale*, std::string>, MonadPtr> monads;
  std::map<std::string, std::vector<std::pair<Kind, std::string>>> files;  // canonical path -> objects
  std::size_t anonymous = 0;

  bool has(Kind kind, const std::string& name) const {
    switch (kind) {
      case Kind::quantale: return quantales.count(name) != 0;
      case Kind::category: return categories.count(name) != 0;
      case Kind::functor: return functors.count(name) != 0;
      case Kind::problem: return problems.count(name) != 0;
    }
    return false;
  }

  void claim(Kind kind, const std::string& name, const std::string& origin) {
    if (has(kind, name))
      throw InputError(origin + ": " + to_string(kind) + " '" + name + "' is declared twice");
    self->entries_.push_back({kind, name, origin});
  }

  std::vector<std::pair<Kind, std::string>> load_file(const fs::path& path) {
    std::error_code ec;
    const fs::path canon = fs::weakly_canonical(path, ec);
    const std::string key = ec ? path.string() : canon.string();
    if (auto it = files.find(key); it != files.end()) return it->second;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    auto loaded = load_text(buf.str(), path.string(), path.parent_path(), path.stem().string());
    files[key] = loaded;
    return loaded;
  }

  std::vector<std::pair<Kind, std::string>> load_text(const std::string& text,
                                                     const std::string& origin,
                                                     const fs::path& base,
                                                     const std::string& default_name) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError(origin + ": " + e.what());
    }
    std::vector<std::pair<Kind, std::string>> out;
    if (j.is_object() && j.contains("objects")) {
      const json& objs = j["objects"];
      if (!objs.is_array()) throw InputError(origin + ": \"objects\" must be an array");
      for (std::size_t i = 0; i < objs.size(); ++i) {
        const auto kind = detect_kind(objs[i]);
        if (!kind) throw InputError(origin + ": object " + std::to_string(i) + " has an unknown kind");
        out.emplace_back(*kind, parse(*kind, objs[i], origin, base,
                                      default_name + "#" + std::to_string(i)));
      }
      return out;
    }
    const auto kind = detect_kind(j);
    if (!kind) throw InputError(origin + ": unrecognised document");
    out.emplace_back(*kind, parse(*kind, j, origin, base, default_name));
    return out;
  }

  std::string parse(Kind kind, const json& j, const std::string& origin, const fs::path& base,
                    const std::string& default_name) {
    if (!j.is_object()) throw InputError(origin + ": expected an object");
    std::string name = default_name;
    if (j.contains("name")) {
      if (!j["name"].is_string()) throw InputError(origin + ": \"name\" must be a string");
      name = j["name"].get<std::string>();
    }
    const std::string where = origin + ": " + to_string(kind) + " '" + name + "'";
    switch (kind) {
      case Kind::quantale: parse_quantale(j, name, where, origin); break;
      case Kind::category: parse_category(j, name, where, origin, base); break;
      case Kind::functor: parse_functor(j, name, where, origin, base); break;
      case Kind::problem: parse_problem(j, name, where, origin, base); break;
    }
    return name;
  }

  // A reference is a declared name, a path, an inline object or a builtin quantale.
  std::string resolve(Kind kind, const json& ref, const std::string& where, const fs::path& base) {
    if (kind == Kind::quantale && ref.is_object() && ref.contains("builtin") &&
        !ref.contains("name") && ref["builtin"].is_string()) {
      std::string s = ref["builtin"].get<std::string>();
      if (ref.contains("n")) s += "(" + ref["n"].dump() + ")";
      if (builtin_ref(s)) return resolve(kind, s, where, base);
    }
    if (ref.is_object()) {
      const auto k = detect_kind(ref);
      if (k && *k != kind) throw InputError(where + ": inline object is not a " + to_string(kind));
      return parse(kind, ref, where, base, "inline" + std::to_string(++anonymous));
    }
    if (!ref.is_string()) throw InputError(where + ": a reference must be a string or an object");
    const std::string s = ref.get<std::string>();
    if (has(kind, s)) return s;
    if (kind == Kind::quantale) {
      if (auto b = builtin_ref(s)) {
        QuantalePtr q = build_quantale(b->first, b->second);
        if (!has(kind, q->name())) {
          claim(kind, q->name(), "builtin");
          quantales[q->name()] = q;
        }
        if (!has(kind, s)) quantales[s] = quantales[q->name()];
        return s;
      }
    }
    const fs::path p = fs::path(s).is_absolute() ? fs::path(s) : base / s;
    if (fs::exists(p)) {
      for (const auto& [k, n] : load_file(p))
        if (k == kind) return n;
      throw InputError(where + ": " + p.string() + " holds no " + to_string(kind));
    }
    throw InputError(where + ": unknown " + to_string(kind) + " '" + s + "'");
  }

  void parse_quantale(const json& j, const std::string& name, const std::string& where,
                      const std::string& origin) {
    QuantaleTables t;
    if (j.contains("builtin")) {
      int n = 0;
      if (j.contains("n")) {
        if (!j["n"].is_number_integer()) throw InputError(where + ": \"n\" must be an integer");
        n = j["n"].get<int>();
      }
      try {
        t = builtin_tables(string_field(j, "builtin", where), n);
      } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
      }
    } else {
      const auto elements = string_list(j, "elements", where);
      std::vector<std::pair<std::string, std::string>> leq;
      const json& lj = member(j, "leq", where);
      if (!lj.is_array()) throw InputError(where + ": \"leq\" must be an array of pairs");
      for (const json& pr : lj) {
        if (!pr.is_array() || pr.size() != 2 || !pr[0].is_string() || !pr[1].is_string())
          throw InputError(where + ": leq entry " + pr.dump() + " is not a pair of names");
        leq.emplace_back(pr[0].get<std::string>(), pr[1].get<std::string>());
      }
      std::map<std::pair<std::string, std::string>, std::string> tensor;
      const json& tj = member(j, "tensor", where);
      if (!tj.is_object()) throw InputError(where + ": \"tensor\" must be an object");
      for (const auto& [key, val] : tj.items()) {
        const auto bar = key.find('|');
        if (bar == std::string::npos || !val.is_string())
          throw InputError(where + ": tensor entry \"" + key + "\" must read \"a|b\": \"c\"");
        tensor[{key.substr(0, bar), key.substr(bar + 1)}] = val.get<std::string>();
      }
      try {
        t = explicit_tables(name, elements, leq, tensor, string_field(j, "unit", where));
      } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
      }
    }
    claim(Kind::quantale, name, origin);
    try {
      quantales[name] = build_quantale(std::move(t));
    } catch (const ValidationError& e) {
      self->entries_.pop_back();
      throw ValidationError(e.law(), e.witness(), where);
    }
  }

  void parse_category(const json& j, const std::string& name, const std::string& where,
                      const std::string& origin, const fs::path& base) {
    const QuantalePtr q = quantales.at(resolve(Kind::quantale, member(j, "quantale", where),
                                               where, base));
    const MonadPtr m = self->monad(q, string_field(j, "monad", where));
    const auto carrier = string_list(j, "carrier", where);
    // the encoding of TX comes from a category with an empty structure
    Category blank(m, carrier, VRelation(q, m->object_size(carrier.size()), carrier.size()), name);
    std::map<std::string, std::size_t> tx;
    for (std::size_t t = 0; t < blank.t_size(); ++t) tx[blank.t_label(t)] = t;

    std::optional<Value> fill;
    if (j.contains("default")) {
      if (!j["default"].is_string()) throw InputError(where + ": \"default\" must be a string");
      const std::string d = j["default"].get<std::string>();
      fill = d == "bot" ? q->bottom() : d == "top" ? q->top() : value(*q, d, where);
    }
    std::vector<std::optional<Value>> cells(blank.t_size() * carrier.size());
    const json& sj = member(j, "structure", where);
    if (!sj.is_array()) throw InputError(where + ": \"structure\" must be an array");
    for (const json& e : sj) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_string() || !e[1].is_string() ||
          !e[2].is_string())
        throw InputError(where + ": structure entry " + e.dump() + " must be [tx, x, v]");
      const std::string ts = e[0].get<std::string>(), xs = e[1].get<std::string>();
      auto ti = tx.find(ts);
      if (ti == tx.end())
        throw InputError(where + ": structure entry " + e.dump() + " names unknown element '" +
                         ts + "' of TX");
      auto xi = blank.find(xs);
      if (!xi)
        throw InputError(where + ": structure entry " + e.dump() + " names unknown point '" + xs +
                         "'");
      auto& cell = cells[ti->second * carrier.size() + *xi];
      if (cell) throw InputError(where + ": structure entry " + e.dump() + " repeats a cell");
      cell = value(*q, e[2].get<std::string>(), where);
    }
    VRelation a(q, blank.t_size(), carrier.size());
    for (std::size_t t = 0; t < blank.t_size(); ++t)
      for (std::size_t x = 0; x < carrier.size(); ++x) {
        const auto& c = cells[t * carrier.size() + x];
        if (!c && !fill)
          throw InputError(where + ": no entry for (" + blank.t_label(t) + "," + carrier[x] +
                           ") and no \"default\"");
        a.set(t, x, c ? *c : *fill);
      }
    CategoryPtr x = make_category(m, carrier, std::move(a), name);
    const LawReport laws = check_category(*x);
    for (const LawCheck& c : laws.checks())
      if (c.status == Status::fail) throw ValidationError(c.law, c.witness, where);
    claim(Kind::category, name, origin);
    categories[name] = std::move(x);
  }

  static Value value(const Quantale& q, const std::string& label, const std::string& where) {
    if (auto v = q.find(label)) return *v;
    throw InputError(where + ": '" + label + "' is not an element of quantale " + q.name());
  }

  void parse_functor(const json& j, const std::string& name, const std::string& where,
                     const std::string& origin, const fs::path& base) {
    const CategoryPtr s = categories.at(resolve(Kind::category, member(j, "source", where), where, base));
    const CategoryPtr t = categories.at(resolve(Kind::category, member(j, "target", where), where, base));
    const json& mj = member(j, "map", where);
    if (!mj.is_object()) throw InputError(where + ": \"map\" must be an object");
    std::vector<std::optional<std::size_t>> map(s->size());
    for (const auto& [key, val] : mj.items()) {
      auto x = s->find(key);
      if (!x) throw InputError(where + ": '" + key + "' is not a point of " + s->name());
      if (!val.is_string()) throw InputError(where + ": image of '" + key + "' must be a string");
      auto y = t->find(val.get<std::string>());
      if (!y)
        throw InputError(where + ": '" + val.get<std::string>() + "' is not a point of " + t->name());
      map[*x] = *y;
    }
    Functor f{s, t, {}, name};
    for (std::size_t x = 0; x < map.size(); ++x) {
      if (!map[x]) throw InputError(where + ": no image for '" + s->labels()[x] + "'");
      f.map.push_back(*map[x]);
    }
    require_compatible(*s, *t, "functor");
    const LawReport laws = check_functor(f);
    for (const LawCheck& c : laws.checks())
      if (c.status == Status::fail) throw ValidationError(c.law, c.witness, where);
    claim(Kind::functor, name, origin);
    functors[name] = std::move(f);
  }

  void parse_problem(const json& j, const std::string& name, const std::string& where,
                     const std::string& origin, const fs::path& base) {
    LiftingProblem p;
    p.f = functors.at(resolve(Kind::functor, member(j, "f", where), where, base));
    p.g = functors.at(resolve(Kind::functor, member(j, "g", where), where, base));
    p.u = functors.at(resolve(Kind::functor, member(j, "u", where), where, base));
    p.v = functors.at(resolve(Kind::functor, member(j, "v", where), where, base));
    try {
      require_commutes(p);
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
    claim(Kind::problem, name, origin);
    problems[name] = std::move(p);
  }
};

std::shared_ptr<Workspace::Impl> Workspace::make_impl() { return std::make_shared<Impl>(); }

void Workspace::load_file(const fs::path& path) {
  impl_->self = this;
  impl_->load_file(path);
}

void Workspace::load_text(const std::string& text, const std::string& origin,
                          const fs::path& base_dir) {
  impl_->self = this;
  impl_->load_text(text, origin, base_dir, fs::path(origin).stem().string());
}

QuantalePtr Workspace::quantale(const std::string& ref) {
  impl_->self = this;
  return impl_->quantales.at(impl_->resolve(Kind::quantale, ref, "argument", "."));
}

CategoryPtr Workspace::category(const std::string& ref) {
  impl_->self = this;
  return impl_->categories.at(impl_->resolve(Kind::category, ref, "argument", "."));
}

Functor Workspace::functor(const std::string& ref) {
  impl_->self = this;
  return impl_->functors.at(impl_->resolve(Kind::functor, ref, "argument", "."));
}

LiftingProblem Workspace::problem(const std::string& ref) {
  impl_->self = this;
  return impl_->problems.at(impl_->resolve(Kind::problem, ref, "argument", "."));
}

MonadPtr Workspace::monad(const QuantalePtr& q, const std::string& kind) {
  auto key = std::make_pair(q.get(), kind);
  auto it = impl_->monads.find(key);
  if (it != impl_->monads.end()) return it->second;
  MonadPtr m = instantiate_monad(kind, q);
  impl_->monads.emplace(key, m);
  return m;
}

namespace {

json quantale_json(const Quantale& q) {
  if (auto b = builtin_ref(q.name())) {
    try {
      const QuantaleTables t = builtin_tables(b->first, b->second);
      if (t.elements == q.tables().elements && t.tensor == q.tables().tensor &&
          t.leq == q.tables().leq && t.unit == q.tables().unit) {
        json j;
        j["builtin"] = b->first;
        if (b->first != "boolean") j["n"] = b->second;
        return j;
      }
    } catch (const InputError&) {
    }
  }
  json j;
  j["name"] = q.name();
  j["elements"] = q.tables().elements;
  json leq = json::array();
  for (Value a : q.elements())
    for (Value b : q.elements())
      if (a != b && q.leq(a, b)) leq.push_back({q.label(a), q.label(b)});
  j["leq"] = leq;
  json tensor = json::object();
  for (Value a : q.elements())
    for (Value b : q.elements()) tensor[q.label(a) + "|" + q.label(b)] = q.label(q.tensor(a, b));
  j["tensor"] = tensor;
  j["unit"] = q.label(q.unit());
  return j;
}

json category_json(const Category& x) {
  json j;
  j["name"] = x.name();
  j["quantale"] = quantale_json(x.q());
  j["monad"] = x.t().kind();
  j["carrier"] = x.labels();
  const Quantale& q = x.q();
  json s = json::array();
  for (std::size_t t = 0; t < x.t_size(); ++t)
    for (std::size_t p = 0; p < x.size(); ++p)
      if (x(t, p) != q.bottom()) s.push_back({x.t_label(t), x.labels()[p], q.label(x(t, p))});
  j["structure"] = s;
  j["default"] = "bot";
  return j;
}

json functor_json(const Functor& f) {
  json j;
  j["name"] = f.name;
  j["source"] = f.source->name();
  j["target"] = f.target->name();
  json m = json::object();
  for (std::size_t x = 0; x < f.map.size(); ++x)
    m[f.source->labels()[x]] = f.target->labels()[f.map[x]];
  j["map"] = m;
  return j;
}

json report_json(const LawReport& r) {
  json j;
  j["subject"] = r.subject();
  j["status"] = r.passed() ? "pass" : "fail";
  json checks = json::array();
  for (const LawCheck& c : r.checks()) {
    json cj;
    cj["law"] = c.law;
    cj["status"] = std::string(to_string(c.status));
    cj["checked"] = c.checked;
    cj["bound"] = c.bound;
    if (!c.witness.empty()) cj["witness"] = c.witness;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  return j;
}

}  // namespace

std::string quantale_document(const Quantale& q) { return quantale_json(q).dump(2) + "\n"; }

std::string category_document(const Category& x) { return category_json(x).dump(2) + "\n"; }

std::string functor_document(const Functor& f) { return functor_json(f).dump(2) + "\n"; }

std::string bundle_document(const std::vector<CategoryPtr>& categories,
                            const std::vector<Functor>& functors,
                            const std::vector<LawReport>& reports) {
  json j;
  json objs = json::array();
  std::set<std::string> names;
  for (const CategoryPtr& c : categories) {
    if (!names.insert(c->name()).second) continue;
    objs.push_back(category_json(*c));
  }
  for (const Functor& f : functors) objs.push_back(functor_json(f));
  j["objects"] = objs;
  if (!reports.empty()) {
    json rs = json::array();
    for (const LawReport& r : reports) rs.push_back(report_json(r));
    j["reports"] = rs;
  }
  return j.dump(2) + "\n";
}

std::string reports_json(const std::string& command, const std::vector<LawReport>& reports,
                         const std::map<std::string, std::string>& extra) {
  json j;
  j["command"] = command;
  bool ok = true;
  for (const LawReport& r : reports) ok = ok && r.passed();
  j["status"] = ok ? "pass" : "fail";
  for (const auto& [k, v] : extra) j[k] = v;
  json rs = json::array();
  for (const LawReport& r : reports) rs.push_back(report_json(r));
  j["reports"] = rs;
  return j.dump(2) + "\n";
}

}  // namespace tvcat

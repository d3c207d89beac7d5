#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tvcat/error.hpp"
#include "tvcat/io.hpp"
#include "tvcat/lofs.hpp"
#include "tvcat/presheaf.hpp"
#include "tvcat/quantale.hpp"
#include "tvcat/verify.hpp"

namespace tvcat::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct Globals {
  std::size_t max_space = kDefaultMaxSpace;
  std::string output = "text";
  std::string seed_dir;
  std::vector<std::string> inputs;
};

bool as_json(const Globals& g) { return g.output == "json"; }

void preload(Workspace& ws, const Globals& g) {
  if (!g.seed_dir.empty()) {
    if (!fs::is_directory(g.seed_dir)) throw InputError("--seed-corpus: not a directory: " + g.seed_dir);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(g.seed_dir))
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const fs::path& p : files) ws.load_file(p);
  }
  for (const std::string& p : g.inputs) ws.load_file(p);
}

std::string map_line(const Functor& f) {
  std::string s;
  for (std::size_t x = 0; x < f.map.size(); ++x)
    s += (x ? ", " : "") + f.source->labels()[x] + " -> " + f.target->labels()[f.map[x]];
  return s;
}

std::string map_text(const Functor& f) {
  std::string s = "[";
  for (std::size_t x = 0; x < f.map.size(); ++x)
    s += (x ? "," : "") + f.target->labels()[f.map[x]];
  return s + "]";
}

void print_structure(std::ostream& out, const Category& x) {
  const Quantale& q = x.q();
  out << x.name() << ": " << x.size() << " points over " << q.name() << " / " << x.t().kind()
      << "\n";
  for (std::size_t p = 0; p < x.size(); ++p) out << "  " << x.labels()[p] << "\n";
  out << "  structure (entries above bottom):\n";
  for (std::size_t t = 0; t < x.t_size(); ++t)
    for (std::size_t p = 0; p < x.size(); ++p)
      if (x(t, p) != q.bottom())
        out << "    a(" << x.t_label(t) << ", " << x.labels()[p] << ") = " << q.label(x(t, p))
            << "\n";
}

Functor renamed(Functor f, std::string name) {
  f.name = std::move(name);
  return f;
}

int finish(std::ostream& out, const Globals& g, const std::string& command,
           const std::vector<LawReport>& reports) {
  bool ok = true;
  for (const LawReport& r : reports) ok = ok && r.passed();
  if (as_json(g)) {
    out << reports_json(command, reports);
  } else {
    for (const LawReport& r : reports) out << r.to_text();
    out << (ok ? "all laws hold" : "law violations found") << "\n";
  }
  return ok ? kOk : kCheckFailed;
}

// ---- commands

int cmd_check(const Globals& g, const std::vector<std::string>& files, std::ostream& out) {
  Workspace ws;
  preload(ws, g);
  std::vector<LawReport> reports;
  std::vector<std::string> notes;
  for (const std::string& file : files) {
    const std::size_t before = ws.entries().size();
    ws.load_file(file);
    for (std::size_t i = before; i < ws.entries().size(); ++i) {
      const Workspace::Entry& e = ws.entries()[i];
      if (e.origin == "builtin") continue;
      switch (e.kind) {
        case Workspace::Kind::quantale:
          reports.push_back(check_quantale_laws(ws.quantale(e.name)->tables()));
          break;
        case Workspace::Kind::category: {
          const CategoryPtr x = ws.category(e.name);
          reports.push_back(check_category(*x));
          notes.push_back(x->name() + (is_separated(*x) ? " is separated" : " is not separated"));
          break;
        }
        case Workspace::Kind::functor:
          reports.push_back(check_functor(ws.functor(e.name)));
          break;
        case Workspace::Kind::problem: {
          LawReport r("problem " + e.name);
          LawScan(r, "v.f = g.u").expect(true, [] { return std::string(); });
          reports.push_back(std::move(r));
          break;
        }
      }
    }
  }
  if (!as_json(g))
    for (const std::string& n : notes) out << n << "\n";
  return finish(out, g, "check", reports);
}

int cmd_factor(const Globals& g, const std::string& ref, const std::string& cls_name,
               const std::string& write, std::ostream& out) {
  Workspace ws;
  preload(ws, g);
  const Functor f = ws.functor(ref);
  const ClassPtr cls = saturated_class(cls_name);
  SpaceCache cache(g.max_space);
  const FactorisationPtr F = comma_factorise(f, cls, cache);
  const std::string fname = f.name.empty() ? "f" : f.name;

  LawReport rep("factorisation of " + fname + " [" + cls->name() + "]");
  LawScan(rep, "R.L = f").expect(compose(F->r, F->l).map == f.map, [] { return std::string(); });
  LawScan(rep, "q.L = y").expect(compose(F->q, F->l).map == F->px->yoneda().map,
                                 [] { return std::string(); });
  LawScan(rep, "L fully faithful").expect(fully_faithful(F->l), [] { return std::string(); });
  LawScan(rep, "L dense").expect(phi_dense(F->l, cls), [] { return std::string(); });
  rep.merge(check_category(*F->k), "K: ");
  rep.merge(check_separated(*F->k), "K: ");
  for (const Functor* h : {&F->l, &F->r, &F->q}) rep.merge(check_functor(*h), h->name + ": ");

  const Functor l = renamed(F->l, "L(" + fname + ")");
  const Functor r = renamed(F->r, "R(" + fname + ")");
  const Functor q = renamed(F->q, "q(" + fname + ")");
  const std::string doc =
      bundle_document({f.source, f.target, F->px->category(), F->k},
                      {renamed(f, fname), l, r, q}, {rep});
  if (!write.empty()) {
    std::ofstream file(write, std::ios::binary);
    if (!file) throw InputError("cannot write " + write);
    file << doc;
  }
  if (as_json(g)) {
    out << doc;
  } else {
    print_structure(out, *F->k);
    out << l.name << ": " << map_line(l) << "\n"
        << r.name << ": " << map_line(r) << "\n"
        << q.name << ": " << map_line(q) << "\n"
        << rep.to_text();
  }
  return rep.passed() ? kOk : kCheckFailed;
}

int cmd_classify(const Globals& g, const std::string& ref, const std::string& cls_name,
                 std::ostream& out) {
  Workspace ws;
  preload(ws, g);
  const Functor f = ws.functor(ref);
  const ClassPtr cls = saturated_class(cls_name);
  SpaceCache cache(g.max_space);
  const LMembership lm = l_membership(f, cls, cache);
  const RMembership rm = r_membership(f, cls, cache, g.max_space);
  if (as_json(g)) {
    json j;
    j["functor"] = f.name;
    j["class"] = cls->name();
    j["L"] = {{"member", lm.member}, {"fully_faithful", lm.fully_faithful}, {"dense", lm.dense}};
    json rj = {{"member", rm.member}, {"retractions", rm.retractions.size()},
               {"algebras", rm.algebras}};
    if (rm.algebra) rj["algebra"] = map_text(*rm.algebra);
    j["R"] = rj;
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "L: " << (lm.member ? "yes" : "no") << " ("
      << (lm.fully_faithful ? "fully faithful" : "not fully faithful") << ", "
      << (lm.dense ? "dense" : "not dense") << ")\n";
  out << "R: " << (rm.member ? "yes" : "no");
  if (rm.member)
    out << " (algebra " << map_text(*rm.algebra) << " on " << rm.algebra->source->name() << ", "
        << rm.retractions.size() << " retractions)";
  out << "\n";
  return kOk;
}

int cmd_lift(const Globals& g, const std::string& ref, const std::string& cls_name,
             std::ostream& out, std::ostream& err) {
  Workspace ws;
  preload(ws, g);
  const LiftingProblem p = ws.problem(ref);
  const ClassPtr cls = saturated_class(cls_name);
  SpaceCache cache(g.max_space);
  const LMembership lm = l_membership(p.f, cls, cache);
  if (!lm.member) {
    err << "f = " << p.f.name << " is not in L ("
        << (lm.fully_faithful ? "fully faithful" : "not fully faithful") << ", "
        << (lm.dense ? "dense" : "not dense") << ")\n";
    return kCheckFailed;
  }
  const RMembership rm = r_membership(p.g, cls, cache, g.max_space);
  if (!rm.member) {
    err << "g = " << p.g.name << " is not in R (no algebra among " << rm.retractions.size()
        << " retractions)\n";
    return kCheckFailed;
  }
  const Functor d = solve_lifting(p, cls, cache);
  LawReport rep("lifting " + ref);
  {
    LawScan s(rep, "d.f = u and g.d = v");
    s.expect(compose(d, p.f).map == p.u.map && compose(p.g, d).map == p.v.map,
             [] { return std::string("d does not fill the square"); });
  }
  std::size_t fillers = 0;
  {
    LawScan s(rep, "d is the least filler");
    try {
      const std::vector<Functor> all = enumerate_fillers(p, g.max_space);
      fillers = all.size();
      for (const Functor& e : all)
        if (!s.expect(functor_leq(d, e), [&] { return "not below " + map_text(e); })) break;
    } catch (const SizeCapExceeded& e) {
      s.skip(std::string("not evaluated: ") + e.what());
    }
  }
  if (as_json(g)) {
    out << reports_json("lift", {rep}, {{"filler", map_text(d)}, {"fillers", std::to_string(fillers)}});
  } else {
    out << "d: " << map_line(d) << "\n" << fillers << " fillers enumerated\n" << rep.to_text();
  }
  return rep.passed() ? kOk : kCheckFailed;
}

int cmd_complete(const Globals& g, const std::string& ref, const std::string& cls_name,
                 std::ostream& out) {
  Workspace ws;
  preload(ws, g);
  const CategoryPtr x = ws.category(ref);
  const ClassPtr cls = saturated_class(cls_name);
  const SpacePtr space = presheaf_space(x, cls, g.max_space);
  const RetractionSearch rs = has_algebra(x, *space, g.max_space);
  const Functor y = space->yoneda();
  if (as_json(g)) {
    json j = json::parse(bundle_document({x, space->category()}, {y}));
    j["complete"] = rs.algebra.has_value();
    if (rs.algebra) j["algebra"] = map_text(*rs.algebra);
    out << j.dump(2) << "\n";
    return kOk;
  }
  print_structure(out, *space->category());
  out << y.name << ": " << map_line(y) << "\n";
  out << "complete: " << (rs.algebra ? "yes" : "no");
  if (rs.algebra) out << " (left adjoint retraction " << map_text(*rs.algebra) << ")";
  out << "\n";
  return kOk;
}

int cmd_presheaves(const Globals& g, const std::string& ref, const std::string& cls_name,
                   std::ostream& out) {
  Workspace ws;
  preload(ws, g);
  const CategoryPtr x = ws.category(ref);
  const SpacePtr space = presheaf_space(x, saturated_class(cls_name), g.max_space);
  if (as_json(g)) {
    out << category_document(*space->category());
    return kOk;
  }
  out << space->size() << " presheaves on " << x->name() << "\n";
  const Functor& y = space->yoneda();
  for (std::size_t i = 0; i < space->size(); ++i) {
    out << "  " << space->category()->labels()[i];
    for (std::size_t p = 0; p < y.map.size(); ++p)
      if (y.map[p] == i) out << "  = " << x->labels()[p] << "^*";
    out << "\n";
  }
  return kOk;
}

int cmd_verify(const Globals& g, std::size_t max_size, const std::string& corrupt,
               std::ostream& out) {
  VerifyConfig config = VerifyConfig::defaults();
  config.max_space = g.max_space;
  if (max_size) config.limit_size(max_size);
  config.corrupt_builtin = corrupt;
  if (!corrupt.empty()) {
    // rejects names that are not builtins before anything runs
    const auto open = corrupt.find('(');
    builtin_tables(corrupt.substr(0, open),
                   open == std::string::npos ? 0 : std::atoi(corrupt.c_str() + open + 1));
  }
  const VerifyReport report = verify(config);
  out << (as_json(g) ? report.to_json() : report.to_text());
  return report.passed() ? kOk : kCheckFailed;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite (T,V)-categories: laws, presheaves and lax factorisations", "tvcat"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  if (const char* env = std::getenv("TVCAT_MAX_SPACE")) {
    try {
      g.max_space = std::stoul(env);
    } catch (const std::exception&) {
      err << "error: TVCAT_MAX_SPACE is not a number: " << env << "\n";
      return kInputError;
    }
  }
  app.add_option("--max-space", g.max_space, "Largest enumerated space (default 4096)")
      ->check(CLI::PositiveNumber);
  app.add_option("--output", g.output, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed-corpus", g.seed_dir, "Load every .json file of a directory first");
  app.add_option("-i,--input", g.inputs, "Load a file before resolving references");

  const std::vector<std::string> class_names{"all", "representable", "right_adjoint", "lawvere"};
  std::string cls = "all", ref, write, corrupt;
  std::vector<std::string> files;
  std::size_t max_size = 0;

  CLI::App* check = app.add_subcommand("check", "Validate files");
  check->add_option("files", files, "Files to check")->required();

  CLI::App* factor = app.add_subcommand("factor", "Comma factorisation f = R.L");
  factor->add_option("functor", ref, "Functor name or file")->required();
  factor->add_option("--class", cls, "Saturated class")->check(CLI::IsMember(class_names));
  factor->add_option("--write", write, "Also write the factorisation bundle to a file");

  CLI::App* classify = app.add_subcommand("classify", "L and R membership");
  classify->add_option("functor", ref, "Functor name or file")->required();
  classify->add_option("--class", cls, "Saturated class")->check(CLI::IsMember(class_names));

  CLI::App* lift = app.add_subcommand("lift", "Canonical filler of a lifting problem");
  lift->add_option("problem", ref, "Problem name or file")->required();
  lift->add_option("--class", cls, "Saturated class")->check(CLI::IsMember(class_names));

  CLI::App* complete = app.add_subcommand("complete", "Presheaf completion and Yoneda embedding");
  complete->add_option("category", ref, "Category name or file")->required();
  complete->add_option("--class", cls, "Saturated class")->check(CLI::IsMember(class_names));

  CLI::App* presheaves = app.add_subcommand("presheaves", "List presheaves");
  presheaves->add_option("category", ref, "Category name or file")->required();
  presheaves->add_option("--class", cls, "Saturated class")->check(CLI::IsMember(class_names));

  CLI::App* verify_cmd = app.add_subcommand("verify-paper", "Run the full verification table");
  verify_cmd->add_option("--max-size", max_size, "Cap every corpus carrier size");
  verify_cmd->add_option("--corrupt-builtin", corrupt)->group("");

  std::vector<std::string> argv_store{"tvcat"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*check) return cmd_check(g, files, out);
    if (*factor) return cmd_factor(g, ref, cls, write, out);
    if (*classify) return cmd_classify(g, ref, cls, out);
    if (*lift) return cmd_lift(g, ref, cls, out, err);
    if (*complete) return cmd_complete(g, ref, cls, out);
    if (*presheaves) return cmd_presheaves(g, ref, cls, out);
    if (*verify_cmd) return cmd_verify(g, max_size, corrupt, out);
  } catch (const SizeCapExceeded& e) {
    err << "size cap exceeded: " << e.what() << "\n";
    return kSizeCap;
  } catch (const ValidationError& e) {
    err << "validation failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace tvcat::cli

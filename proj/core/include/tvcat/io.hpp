#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tvcat/category.hpp"
#include "tvcat/lofs.hpp"
#include "tvcat/presheaf.hpp"
#include "tvcat/report.hpp"

namespace tvcat {

/// Objects loaded from text files, resolved by declared name or by path.
///
/// Formats (JSON syntax, one object per file, optional "name"):
///   quantale  {"builtin": name, "n": int} or
///             {"elements": [...], "leq": [[a,b],...], "tensor": {"a|b": c}, "unit": k}
///   category  {"quantale": ref, "monad": kind, "carrier": [ids],
///              "structure": [[tx, x, v], ...], "default": "bot"}
///   functor   {"source": ref, "target": ref, "map": {x: y}}
///   problem   {"f": ref, "g": ref, "u": ref, "v": ref}
///   bundle    {"objects": [...]} holding any of the above, inline.
/// A ref is a declared name, a path relative to the referring file, an
/// inline object, or for quantales a builtin such as "truncated_chain(2)".
/// Elements of TX are named by carrier ids; for finite_ultrafilter the
/// principal ultrafilter at x is named x.
class Workspace {
 public:
  enum class Kind { quantale, category, functor, problem };

  struct Entry {
    Kind kind;
    std::string name;
    std::string origin;
  };

  /// Loads every object of a file. Malformed input throws InputError; law
  /// violations throw ValidationError naming the file, the object, the law
  /// and a witness.
  void load_file(const std::filesystem::path& path);
  void load_text(const std::string& text, const std::string& origin,
                 const std::filesystem::path& base_dir = ".");

  const std::vector<Entry>& entries() const noexcept { return entries_; }

  QuantalePtr quantale(const std::string& ref);
  CategoryPtr category(const std::string& ref);
  Functor functor(const std::string& ref);
  LiftingProblem problem(const std::string& ref);

  /// The monad of a kind over a quantale, shared by every category using it.
  MonadPtr monad(const QuantalePtr& q, const std::string& kind);

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_ = make_impl();
  std::vector<Entry> entries_;

  static std::shared_ptr<Impl> make_impl();
  friend struct Impl;
};

std::string to_string(Workspace::Kind kind);

/// Text of a quantale file (builtins keep their builtin form).
std::string quantale_document(const Quantale& q);
/// Text of a category file with the quantale inline.
std::string category_document(const Category& x);
/// Text of a functor file whose source and target are referenced by name.
std::string functor_document(const Functor& f);

/// A bundle of categories and functors, optionally with reports. Objects are
/// written in the given order under their names, so `check` can read the
/// result back.
std::string bundle_document(const std::vector<CategoryPtr>& categories,
                            const std::vector<Functor>& functors,
                            const std::vector<LawReport>& reports = {});

/// Reports as JSON: {"command": ..., "status": ..., "reports": [...]}.
std::string reports_json(const std::string& command, const std::vector<LawReport>& reports,
                         const std::map<std::string, std::string>& extra = {});

}  // namespace tvcat

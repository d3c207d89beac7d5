#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tvcat/monad.hpp"
#include "tvcat/report.hpp"
#include "tvcat/vrel.hpp"

namespace tvcat {

/// A (T,V)-category: a finite carrier X with a structure a: TX -/-> X.
/// Construction checks shapes only; the axioms are checked by
/// check_category.
class Category {
 public:
  Category(MonadPtr monad, std::vector<std::string> labels, VRelation structure,
           std::string name = {});

  const MonadPtr& monad() const noexcept { return monad_; }
  const Monad& t() const noexcept { return *monad_; }
  const QuantalePtr& quantale() const noexcept { return structure_.quantale(); }
  const Quantale& q() const noexcept { return structure_.q(); }

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t t_size() const noexcept { return structure_.rows(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<std::size_t> find(std::string_view label) const;
  /// File name of an element of TX.
  std::string t_label(std::size_t t) const { return t_labels().at(t); }
  const std::vector<std::string>& t_labels() const;

  const VRelation& structure() const noexcept { return structure_; }
  Value operator()(std::size_t t, std::size_t x) const noexcept { return structure_(t, x); }

  const std::vector<std::size_t>& unit_table() const noexcept { return unit_; }
  std::size_t e(std::size_t x) const noexcept { return unit_[x]; }
  /// T_xi a . m°: the TX -/-> TX kernel of Kleisli convolution with a.
  const VRelation& kernel() const;

 private:
  MonadPtr monad_;
  std::vector<std::string> labels_;
  VRelation structure_;
  std::string name_;
  std::vector<std::size_t> unit_;

  mutable std::once_flag kernel_once_, labels_once_;
  mutable VRelation kernel_;
  mutable std::vector<std::string> t_labels_;
};

using CategoryPtr = std::shared_ptr<const Category>;

CategoryPtr make_category(MonadPtr monad, std::vector<std::string> labels, VRelation structure,
                          std::string name = {});

/// A map between carriers; a (T,V)-functor once check_functor passes.
struct Functor {
  CategoryPtr source, target;
  std::vector<std::size_t> map;
  std::string name;

  std::size_t operator()(std::size_t x) const { return map[x]; }
};

/// A V-relation psi: TX -/-> Y between (T,V)-categories X and Y.
struct Bimodule {
  CategoryPtr source, target;
  VRelation rel;
};

/// Throws InputError on mismatched quantale or monad.
void require_compatible(const Category& a, const Category& b, const char* op);

/// Reflexivity and transitivity.
LawReport check_category(const Category& x);
/// No two points equivalent in the underlying order.
LawReport check_separated(const Category& x);
LawReport check_functor(const Functor& f);
LawReport check_bimodule(const Bimodule& psi);
bool is_category(const Category& x);
bool is_functor(const Functor& f);
bool is_bimodule(const Bimodule& psi);

/// Throws InputError when the map is not total or leaves the target.
void require_total(const Functor& f);

Functor identity_functor(const CategoryPtr& x);
/// g.f
Functor compose(const Functor& g, const Functor& f);
/// Tf as a table TX -> TY.
std::vector<std::size_t> t_map(const Functor& f);

/// x <= x' iff a(y, x) <= a(y, x') for every y in TX.
bool point_leq(const Category& x, std::size_t a, std::size_t b);
/// Dense |X| x |X| table of point_leq.
std::vector<std::uint8_t> underlying_order(const Category& x);
bool is_separated(const Category& x);

struct Quotient {
  CategoryPtr category;
  std::vector<std::size_t> projection;
};
/// Identifies points that are equivalent in the underlying order.
Quotient separated_quotient(const CategoryPtr& x);

/// f <= g iff f^* <= g^*.
bool functor_leq(const Functor& f, const Functor& g);
/// The other form of the order: k <= b(e_Y(f x), g x) for every x.
bool functor_leq_pointwise(const Functor& f, const Functor& g);

CategoryPtr tensor(const CategoryPtr& x, const CategoryPtr& y);
/// E = (1, e_1°).
CategoryPtr unit_category(const MonadPtr& monad);
/// Carrier TX with a^op(X, y) = join over Y with m(Y) = y of T_xi a(Y, m(X)).
CategoryPtr dual(const CategoryPtr& x);
/// V with hom_xi(v, w) = hom(xi(v), w).
CategoryPtr v_as_category(const MonadPtr& monad);

/// f_*(x, y) = b(Tf x, y)
Bimodule lower_star(const Functor& f);
/// f^*(y, x) = b(y, f x)
Bimodule upper_star(const Functor& f);

/// Kleisli composite chi o psi of psi: X -o-> Y and chi: Y -o-> Z.
Bimodule compose(const Bimodule& chi, const Bimodule& psi);
/// The structure of x as a bimodule x -o-> x.
Bimodule identity_bimodule(const CategoryPtr& x);
bool leq(const Bimodule& a, const Bimodule& b);

/// a <= f^* o f_* and f_* o f^* <= b.
LawReport adjoint_pair_check(const Functor& f);
bool fully_faithful(const Functor& f);

/// psi as a map dual(X) (x) Y -> V, and back.
Functor bimodule_to_functor(const Bimodule& psi);
Bimodule functor_to_bimodule(const Functor& f, const CategoryPtr& x, const CategoryPtr& y);

/// All functors source -> target with map[x] drawn from candidates[x] (every
/// target point when candidates is empty), in lexicographic order of the map.
/// Backtracks with the functor inequality at principal elements; each
/// complete map is checked in full. Throws SizeCapExceeded past max_results
/// functors or max_nodes search steps.
std::vector<Functor> enumerate_functors(const CategoryPtr& source, const CategoryPtr& target,
                                        const std::vector<std::vector<std::size_t>>& candidates = {},
                                        std::size_t max_results = 4096,
                                        std::size_t max_nodes = 50'000'000);

/// Labels a point of T(X) or X in witnesses.
std::string describe_point(const Category& x, std::size_t p);

}  // namespace tvcat

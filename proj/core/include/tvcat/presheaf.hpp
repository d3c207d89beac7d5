#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tvcat/category.hpp"
#include "tvcat/report.hpp"

namespace tvcat {

inline constexpr std::size_t kDefaultMaxSpace = 4096;

/// A class of bimodules given by a membership predicate.
class SaturatedClass {
 public:
  virtual ~SaturatedClass() = default;
  virtual std::string name() const = 0;
  virtual bool contains(const Bimodule& psi) const = 0;
};

using ClassPtr = std::shared_ptr<const SaturatedClass>;

/// "all", "representable", "right_adjoint" (alias "lawvere").
ClassPtr saturated_class(std::string_view kind);

/// A functor g: Y -> X with psi = g^*, for psi: X -o-> Y.
std::optional<Functor> find_representing_functor(const Bimodule& psi);

/// A bimodule lambda: Y -o-> X with b <= psi o lambda and lambda o psi <= a.
/// The candidate a -o (T_xi psi . m°) is tried first; a bounded search over
/// bimodules below it is the fallback.
std::optional<Bimodule> find_left_adjoint(const Bimodule& psi,
                                          std::size_t max_space = kDefaultMaxSpace);
/// Same question answered by enumerating every bimodule Y -o-> X.
std::optional<Bimodule> find_left_adjoint_by_search(const Bimodule& psi,
                                                    std::size_t max_space = kDefaultMaxSpace);

/// Every bimodule X -o-> Y whose entries lie below `upper` (or all of them),
/// in lexicographic order of the relation data read column by column.
/// Throws SizeCapExceeded past max_space results.
std::vector<Bimodule> enumerate_bimodules(const CategoryPtr& x, const CategoryPtr& y,
                                          const VRelation* upper = nullptr,
                                          std::size_t max_space = kDefaultMaxSpace);

/// phi o r for a presheaf phi on B and the kernel of r: TA -/-> B.
std::vector<Value> pull(const VRelation& kernel, const std::vector<Value>& phi);

/// The presheaf phi on X as a bimodule X -o-> E.
Bimodule presheaf_bimodule(const CategoryPtr& x, const CategoryPtr& e,
                           const std::vector<Value>& phi);

/// The space of presheaves of X that lie in a class, with the inherited
/// structure a^(p, psi) = meet over x of hom(phi_p(x), psi(x)), where phi_p
/// is the point with e(phi_p) = p.
class PresheafSpace {
 public:
  PresheafSpace(CategoryPtr owner, ClassPtr cls, std::vector<std::vector<Value>> data);

  const CategoryPtr& owner() const noexcept { return owner_; }
  const ClassPtr& saturated() const noexcept { return cls_; }
  const CategoryPtr& category() const noexcept { return category_; }
  std::size_t size() const noexcept { return data_.size(); }
  const std::vector<Value>& presheaf(std::size_t i) const { return data_.at(i); }
  const std::vector<std::vector<Value>>& presheaves() const noexcept { return data_; }
  std::optional<std::size_t> find(const std::vector<Value>& phi) const;
  std::size_t index_of(const std::vector<Value>& phi, const char* what) const;  // throws

  /// y_X: x -> x^*.
  const Functor& yoneda() const noexcept { return yoneda_; }
  /// Kernel of (y_X)_*: TX -/-> T(space).
  const VRelation& yoneda_kernel() const;

 private:
  CategoryPtr owner_;
  ClassPtr cls_;
  std::vector<std::vector<Value>> data_;
  std::map<std::vector<Value>, std::size_t> index_;
  CategoryPtr category_;
  Functor yoneda_;
  mutable std::once_flag kernel_once_;
  mutable VRelation kernel_;
};

using SpacePtr = std::shared_ptr<const PresheafSpace>;

/// Enumerates the presheaves of X in the class. Throws SizeCapExceeded past
/// max_space presheaves, Error when the monad has no presheaf structure.
SpacePtr presheaf_space(const CategoryPtr& x, const ClassPtr& cls,
                        std::size_t max_space = kDefaultMaxSpace);

/// Streams the presheaves of X in the class, in the order of presheaf_space,
/// without building the space. Stops when f returns false. Throws
/// SizeCapExceeded past max_nodes search steps.
void for_each_presheaf(const CategoryPtr& x, const ClassPtr& cls, std::size_t max_nodes,
                       const std::function<bool(const std::vector<Value>&)>& f);

/// Memoises spaces per (category, class).
class SpaceCache {
 public:
  explicit SpaceCache(std::size_t max_space = kDefaultMaxSpace) : max_space_(max_space) {}
  SpacePtr get(const CategoryPtr& x, const ClassPtr& cls);
  std::size_t max_space() const noexcept { return max_space_; }

 private:
  std::size_t max_space_;
  std::mutex mutex_;
  std::map<std::pair<const Category*, std::string>, std::pair<CategoryPtr, SpacePtr>> spaces_;
};

/// The Yoneda Lemma: a^(Ty(x), psi) = psi(x).
LawReport yoneda_lemma_check(const PresheafSpace& space);

/// Phi f: phi -> phi o f^*. Throws ValidationError when an image leaves the target space.
Functor apply_P(const Functor& f, const PresheafSpace& px, const PresheafSpace& py);
/// Phi^* f: psi -> psi o f_*.
Functor apply_P_star(const Functor& f, const PresheafSpace& px, const PresheafSpace& py);
/// The multiplication Psi -> Psi o (y_X)_* from the space over `px` to `px`.
Functor mult(const PresheafSpace& px, const PresheafSpace& ppx);

/// f_* lies in the class.
bool phi_dense(const Functor& f, const ClassPtr& cls);

/// Functors r: X^ -> X with r . y_X = 1, split into the least one found and
/// the one left adjoint to y_X (the algebra), if any.
struct RetractionSearch {
  std::vector<Functor> retractions;
  std::optional<Functor> least;
  std::optional<Functor> algebra;
};
RetractionSearch has_algebra(const CategoryPtr& x, const PresheafSpace& space,
                             std::size_t max_space = kDefaultMaxSpace);

/// Per-object checks of the (sub)monad: space is a separated category,
/// Yoneda, unit and associativity laws, lax idempotency and adjunctions.
LawReport check_presheaf_monad(const CategoryPtr& x, const ClassPtr& cls, SpaceCache& cache);
/// Naturality of y and the multiplication along a functor.
LawReport check_presheaf_naturality(const Functor& f, const ClassPtr& cls, SpaceCache& cache);

struct SaturationCorpus {
  std::vector<CategoryPtr> objects;
  std::vector<Functor> functors;
};
/// (S1), (S2), (S3) over all bimodules between the corpus objects.
LawReport check_saturated(const ClassPtr& cls, const SaturationCorpus& corpus,
                          std::size_t max_space = kDefaultMaxSpace);

/// Label of a presheaf in files and reports.
std::string presheaf_label(const Quantale& q, const std::vector<Value>& phi);

}  // namespace tvcat

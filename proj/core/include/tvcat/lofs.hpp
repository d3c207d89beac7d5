#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "tvcat/category.hpp"
#include "tvcat/presheaf.hpp"
#include "tvcat/report.hpp"

namespace tvcat {

/// Comma objects up to this size get a full category scan at construction.
inline constexpr std::size_t kCommaScanLimit = 200;

/// The comma factorisation f = R.L through Kf = {(phi, y) | Pf(phi) <= y^*}.
class Factorisation {
 public:
  Functor f;
  ClassPtr cls;
  SpacePtr px;  // the class-restricted presheaf space of the source
  CategoryPtr k;
  std::vector<std::pair<std::size_t, std::size_t>> elements;  // (presheaf index, point of Y)
  Functor q, l, r;
  bool transitivity_scanned = true;  // false above kCommaScanLimit points

  std::optional<std::size_t> find(std::size_t phi, std::size_t y) const;

  /// Kleisli kernels of the graph modules used by the data-level maps.
  const VRelation& f_upper_kernel() const;  // f^*: Pf
  const VRelation& f_lower_kernel() const;  // f_*: P^*f
  const VRelation& q_upper_kernel() const;  // q^*: Pq
  const VRelation& l_upper_kernel() const;  // L^*: PL
  const VRelation& l_lower_kernel() const;  // L_*
  const VRelation& r_upper_kernel() const;  // R^*: PR

  /// mult_X . Pq applied to a presheaf on K.
  std::vector<Value> collapse(const std::vector<Value>& psi) const;

 private:
  struct Slot {
    std::once_flag once;
    VRelation value;
  };
  template <class Make>
  const VRelation& lazy(Slot& s, Make&& make) const;

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index_;
  mutable Slot fu_, fl_, qu_, lu_, ll_, ru_;

  friend std::shared_ptr<const Factorisation> comma_factorise(const Functor&, const ClassPtr&,
                                                              SpaceCache&);
};

using FactorisationPtr = std::shared_ptr<const Factorisation>;

/// Builds Kf, q, L, R and verifies R.L = f, q.L = y_X, L fully faithful and
/// dense, K a separated category. Violations throw ValidationError.
FactorisationPtr comma_factorise(const Functor& f, const ClassPtr& cls, SpaceCache& cache);

struct LMembership {
  bool member = false;
  bool fully_faithful = false;
  bool dense = false;
  std::optional<Functor> coalgebra;  // s: Y -> Kf, s(y) = (y^* o f_*, y)
};
LMembership l_membership(const Functor& f, const ClassPtr& cls, SpaceCache& cache);

struct RMembership {
  bool member = false;               // an algebra exists
  std::vector<Functor> retractions;  // p: Kg -> Z with p.Lg = 1 and g.p = Rg
  std::optional<Functor> least;
  std::optional<Functor> algebra;  // the retraction with 1 <= Lg.p
  std::size_t algebras = 0;        // how many retractions satisfy 1 <= Lg.p
};
RMembership r_membership(const Functor& g, const ClassPtr& cls, SpaceCache& cache,
                         std::size_t max_space = kDefaultMaxSpace);

struct LiftingProblem {
  Functor f, g, u, v;
};
/// Throws InputError unless v.f = g.u with matching objects.
void require_commutes(const LiftingProblem& p);

/// K(u, v): Kf -> Kg, (phi, y) -> (phi o u^*, v y).
Functor comma_map(const Factorisation& from, const Factorisation& to, const Functor& u,
                  const Functor& v);

/// d = p . K(u, v) . s, using the coalgebra of f and the algebra of g.
/// Throws ValidationError when f is not in L or g is not in R.
Functor solve_lifting(const LiftingProblem& p, const ClassPtr& cls, SpaceCache& cache);

/// Every functor d with d.f = u and g.d = v, in lexicographic order.
std::vector<Functor> enumerate_fillers(const LiftingProblem& p,
                                       std::size_t max_results = kDefaultMaxSpace);

/// sigma_f: Kf -> K(Lf), kappa -> (kappa^* o (Lf)_*, kappa).
Functor sigma(const Factorisation& f, const Factorisation& lf);
/// pi_f: K(Rf) -> Kf, (Psi, y) -> (mult_X(Pq_f(Psi)), y).
Functor pi(const Factorisation& f, const Factorisation& rf);

/// K(Rf) is built as a category when Kf has at most this many presheaves.
inline constexpr std::size_t kDirectAwfsLimit = 256;

struct AwfsOptions {
  bool perturb_sigma = false;    // swap the first two outputs of sigma_f
  bool force_streaming = false;  // stream K(Rf) even when its presheaves fit the cap
  std::size_t stream_nodes = 0;  // search budget when streaming; 0 means 4096 * max_space
};

/// Comonad, monad and distributivity laws at one morphism. The laws living on
/// K(Rf) are checked on the constructed comma object when the presheaves of Kf
/// fit the cap, and otherwise element by element while streaming them.
LawReport check_awfs_at(const Functor& f, const ClassPtr& cls, SpaceCache& cache,
                        const AwfsOptions& options = {});

/// (Lf)_* = q^* o (y_X)_* and the adjunction PLf -| mult.Pq at one morphism.
LawReport check_simplicity_at(const Functor& f, const ClassPtr& cls, SpaceCache& cache);

/// pi_f: K(Rf) -> Kf as an algebra for Rf, streaming K(Rf): pi lands in Kf
/// and 1 <= L(Rf).pi. pi.L(Rf) = 1 is part of the monad unit in check_awfs_at.
LawReport check_free_algebra_at(const Functor& f, const ClassPtr& cls, SpaceCache& cache,
                                std::size_t stream_nodes = 0);

}  // namespace tvcat

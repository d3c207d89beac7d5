#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tvcat/quantale.hpp"
#include "tvcat/report.hpp"
#include "tvcat/vrel.hpp"

namespace tvcat {

/// A monad on finite sets, bound to a quantale through its algebra xi.
///
/// Finite sets are identified with {0, ..., n-1}; TX for |X| = n is
/// {0, ..., object_size(n)-1} in a canonical order. All structure maps are
/// returned as dense tables.
class Monad {
 public:
  explicit Monad(QuantalePtr q);
  virtual ~Monad() = default;

  virtual std::string kind() const = 0;
  const QuantalePtr& quantale() const noexcept { return q_; }

  virtual std::size_t object_size(std::size_t n) const = 0;
  /// e_X: X -> TX.
  virtual std::vector<std::size_t> unit_table(std::size_t n) const = 0;
  /// m_X: TTX -> TX, indexed by TTX = T(object_size(n)).
  virtual std::vector<std::size_t> mult_table(std::size_t n) const = 0;
  /// Tf: TX -> TY for f: X -> Y with |Y| = codomain.
  virtual std::vector<std::size_t> map_table(const std::vector<std::size_t>& f,
                                             std::size_t codomain) const = 0;
  /// xi: TV -> V, where V is the carrier of the quantale.
  virtual std::vector<Value> xi_table() const = 0;

  /// Name of the element t of TX in files, given names of the points of X.
  virtual std::string element_label(std::size_t n, std::size_t t,
                                    const std::vector<std::string>& labels) const = 0;

  /// Whether presheaf spaces over this instance have a known structure.
  virtual bool provides_presheaf_structure() const { return false; }

  /// For each t in TX, the point x with e_X(x) = t, if there is one.
  std::vector<std::optional<std::size_t>> point_table(std::size_t n) const;

 private:
  QuantalePtr q_;
};

using MonadPtr = std::shared_ptr<const Monad>;

/// kind: "identity" or "finite_ultrafilter". Throws InputError otherwise.
MonadPtr instantiate_monad(std::string_view kind, QuantalePtr q);

/// T_xi r: TX -/-> TY, by enumerating T(X x Y).
VRelation lax_extend(const Monad& m, const VRelation& r);

/// T_xi r . m_A° for r: TA -/-> B with |A| = source_size; a TA -/-> TB relation.
/// Kleisli convolution with r is relational composition with this kernel.
VRelation kleisli_kernel(const Monad& m, const VRelation& r, std::size_t source_size);

/// s o r = s . T_xi r . m_A° for r: TA -/-> B, s: TB -/-> C.
VRelation kleisli_convolution(const Monad& m, const VRelation& s, const VRelation& r,
                              std::size_t source_size);

struct MonadLawOptions {
  std::size_t set_limit = 3;        // carriers scanned by the set-level laws
  std::size_t relation_limit = 2;   // carriers scanned by the relation-level laws
  std::size_t random_cases = 1000;  // used when a relation scan is too large
  std::uint64_t seed = 20240611;
};

LawReport check_monad_laws(const Monad& m, const MonadLawOptions& options = {});

}  // namespace tvcat

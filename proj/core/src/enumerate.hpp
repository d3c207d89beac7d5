#pragma once

// Small enumeration helpers shared by the law suites.

#include <cstdint>
#include <random>
#include <vector>

#include "tvcat/vrel.hpp"

namespace tvcat::detail {

/// Calls f(v) for every v in {0..base-1}^len in lexicographic order.
/// Stops early when f returns false. Returns false if stopped.
template <class F>
bool for_each_tuple(std::size_t len, std::size_t base, F&& f) {
  std::vector<std::size_t> v(len, 0);
  if (base == 0 && len > 0) return true;
  while (true) {
    if (!f(static_cast<const std::vector<std::size_t>&>(v))) return false;
    std::size_t i = len;
    while (i > 0) {
      if (++v[i - 1] < base) break;
      v[i - 1] = 0;
      --i;
    }
    if (i == 0) return true;
  }
}

inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && out > UINT64_MAX / base) return UINT64_MAX;
    out *= base;
  }
  return out;
}

inline VRelation relation_from_tuple(const QuantalePtr& q, std::size_t rows, std::size_t cols,
                                     const std::vector<std::size_t>& t, std::size_t offset = 0) {
  VRelation r(q, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      r.set(i, j, Value{static_cast<std::uint16_t>(t[offset + i * cols + j])});
  return r;
}

/// Enumerates families of relations with the given shapes: exhaustively when
/// the space has at most `exhaustive_limit` members, otherwise `random_cases`
/// samples drawn from a generator seeded with `seed`.
class RelationFamilies {
 public:
  RelationFamilies(QuantalePtr q, std::vector<std::pair<std::size_t, std::size_t>> shapes,
                   std::uint64_t exhaustive_limit, std::size_t random_cases, std::uint64_t seed)
      : q_(std::move(q)), shapes_(std::move(shapes)), random_cases_(random_cases), rng_(seed) {
    for (auto [r, c] : shapes_) cells_ += r * c;
    space_ = saturating_pow(q_->size(), cells_);
    exhaustive_ = space_ <= exhaustive_limit;
  }

  bool exhaustive() const { return exhaustive_; }
  std::uint64_t space() const { return space_; }

  template <class F>
  void for_each(F&& f) {
    auto emit = [&](const std::vector<std::size_t>& t) {
      std::vector<VRelation> rels;
      std::size_t off = 0;
      for (auto [r, c] : shapes_) {
        rels.push_back(relation_from_tuple(q_, r, c, t, off));
        off += r * c;
      }
      f(static_cast<const std::vector<VRelation>&>(rels));
      return true;
    };
    if (exhaustive_) {
      for_each_tuple(cells_, q_->size(), emit);
      return;
    }
    std::vector<std::size_t> t(cells_);
    for (std::size_t i = 0; i < random_cases_; ++i) {
      for (auto& v : t) v = static_cast<std::size_t>(rng_() % q_->size());
      emit(t);
    }
  }

 private:
  QuantalePtr q_;
  std::vector<std::pair<std::size_t, std::size_t>> shapes_;
  std::size_t cells_ = 0;
  std::uint64_t space_ = 1;
  bool exhaustive_ = true;
  std::size_t random_cases_;
  std::mt19937_64 rng_;
};

}  // namespace tvcat::detail

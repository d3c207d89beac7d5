#pragma once

#include <string>
#include <vector>

#include "tvcat/category.hpp"

namespace tvcat {

/// Every separated (T,V)-category on 1..max_size points up to isomorphism,
/// and every functor between them.
struct Corpus {
  QuantalePtr quantale;
  MonadPtr monad;
  std::string name;
  std::vector<CategoryPtr> objects;
  std::vector<Functor> functors;
};

struct CorpusOptions {
  std::size_t max_size = 3;
  std::size_t max_relations = 1'000'000;  // raw structures scanned per carrier size
  std::size_t max_functors = 100'000;
};

/// Objects are named "C<n>.<i>" with points "0".."n-1"; functors are named
/// "<source>><target>[images]". Throws SizeCapExceeded past the options.
Corpus build_corpus(const MonadPtr& monad, const CorpusOptions& options = {});

/// Functors whose source and target both have at most `max_size` points.
std::vector<Functor> functors_up_to(const Corpus& corpus, std::size_t max_size);

}  // namespace tvcat

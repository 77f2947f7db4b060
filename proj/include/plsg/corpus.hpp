#pragma once

#include <string_view>
#include <vector>

#include "plsg/pls.hpp"

namespace plsg {

  // Reference PLS, also shipped as data/<name>.pls.
  struct CorpusEntry {
    std::string_view name;
    std::string_view grid;
  };

  std::vector<CorpusEntry> const& bundled_corpus();

  // Throws std::out_of_range for an unknown name.
  Pls corpus_pls(std::string_view name);

}  // namespace plsg

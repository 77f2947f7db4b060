#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "plsg/presentation.hpp"
#include "plsg/word.hpp"

namespace plsg {

  enum class CosetStrategy { felsch, hlt };

  // A complete coset table: entry (coset, letter) is the image coset. Coset 0
  // is the subgroup.
  struct CosetTable {
    int                           num_generators = 0;
    std::vector<std::vector<int>> rows;

    std::size_t size() const noexcept { return rows.size(); }
    int         act(int coset, Word const& w) const;

    // Each generator as a permutation of the cosets, 1-based cycles.
    std::string permutation_generators(std::vector<std::string> const& names) const;
  };

  struct CosetLimits {
    std::size_t   max_cosets = 100000;
    CosetStrategy strategy   = CosetStrategy::felsch;
  };

  struct CosetEnumeration {
    bool                      closed = false;  // false means overflow
    std::size_t               index  = 0;
    std::size_t               total_defined = 0;
    std::size_t               max_live      = 0;
    std::optional<CosetTable> table;
  };

  CosetEnumeration todd_coxeter(Presentation const&      pres,
                                std::vector<Word> const& subgroup,
                                CosetLimits const&       limits = {});

  // Index of the trivial subgroup, or nullopt on overflow.
  std::optional<std::size_t> group_order(Presentation const& pres, CosetLimits const& limits = {});

}  // namespace plsg

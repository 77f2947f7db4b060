#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <vector>

#include "plsg/pls.hpp"

namespace plsg {

  // One representative per species, keyed by canonical form. Each
  // representative is the PLS decoded from its own canonical form.
  struct SpeciesCatalog {
    int                          size = 0;
    std::map<CanonicalForm, Pls> reps;
  };

  struct CandidateFlags {
    bool connected       = false;
    bool pruned_by_cond1 = false;
    bool pruned_by_cond2 = false;
    bool candidate       = false;
  };

  // The single species of size 1.
  SpeciesCatalog initial_catalog();

  // Every single-cell extension of every representative, deduplicated.
  SpeciesCatalog extend_species(SpeciesCatalog const& smaller);

  // The two pruning tests, evaluated on the triples in the given coordinate
  // order only (rows are the distinguished coordinate).
  bool prune_condition1(std::vector<Triple> const& triples);
  bool prune_condition2(std::vector<Triple> const& triples);

  // Both tests over the three cyclic conjugates, applied once.
  CandidateFlags candidate_flags(Pls const& p);

  struct CountRow {
    int         size       = 0;
    std::size_t all        = 0;
    std::size_t connected  = 0;
    std::size_t candidates = 0;

    friend bool operator==(CountRow const&, CountRow const&) = default;
  };

  CountRow count_row(SpeciesCatalog const& catalog);

  // Enumerates sizes 1..max_size, calling `on_catalog` with each complete
  // catalog before it is extended.
  std::vector<CountRow> count_report(
      int max_size, std::function<void(SpeciesCatalog const&)> const& on_catalog = {});

  // Length-prefixed text container: a header line, then per record the
  // byte length of the rendered PLS on its own line followed by the text.
  void           write_catalog(SpeciesCatalog const& catalog, std::ostream& out);
  SpeciesCatalog read_catalog(std::istream& in);

  std::filesystem::path catalog_path(std::filesystem::path const& dir, int size);
  void                  save_catalog(SpeciesCatalog const& catalog, std::filesystem::path const& dir);
  SpeciesCatalog        load_catalog(std::filesystem::path const& dir, int size);

}  // namespace plsg

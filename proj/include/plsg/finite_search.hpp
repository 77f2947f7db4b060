#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plsg/finite_group.hpp"
#include "plsg/pls.hpp"
#include "plsg/presentation.hpp"

namespace plsg {

  // Injective labels with rows[0] = cols[0] = identity and
  // rows[r] * cols[c] = syms[s] for every filled cell.
  struct EmbeddingWitness {
    GroupPtr         group;
    std::vector<int> rows;
    std::vector<int> cols;
    std::vector<int> syms;
  };

  bool check_embedding_witness(Pls const& p, EmbeddingWitness const& w);

  // Moves any valid labelling to one with rows[0] = cols[0] = identity.
  EmbeddingWitness normalize_witness(EmbeddingWitness w);

  struct EmbeddingSearch {
    std::optional<EmbeddingWitness> witness;
    bool                            complete = true;  // false if the node budget ran out
    std::size_t                     nodes    = 0;
  };

  // Backtracking over row and column labels with propagation through filled
  // cells. max_nodes = 0 means unbounded.
  EmbeddingSearch embed_into_group(Pls const& p, GroupPtr const& g, std::size_t max_nodes = 0);

  struct FiniteSearchLimits {
    int         max_order          = 24;
    bool        skip_abelian       = false;
    std::size_t max_nodes_per_group = 2000000;
  };

  // Tries catalog groups in increasing order, abelian first.
  EmbeddingSearch find_finite_embedding(Pls const&                p,
                                        GroupCatalog const&       catalog,
                                        FiniteSearchLimits const& limits = {});

  // A sub-PLS on some of the triples, relabelled to contiguous indices;
  // rows[local] is the original row, and likewise for cols and syms.
  struct PlsPart {
    Pls              pls;
    std::vector<int> rows;
    std::vector<int> cols;
    std::vector<int> syms;
  };

  PlsPart restrict_to(Pls const& p, std::vector<std::size_t> const& triple_ids);

  // Combines witnesses of two parts with disjoint rows, columns and symbols
  // into a witness in G x H x C3.
  EmbeddingWitness product_embed(Pls const&                      p,
                                 std::vector<std::size_t> const& first,
                                 EmbeddingWitness const&         w1,
                                 EmbeddingWitness const&         w2);

  // The group of a complete coset table of the trivial subgroup.
  FiniteGroup group_from_regular_table(std::vector<std::vector<int>> const& rows,
                                       int                                  num_generators,
                                       std::string                          name);

  struct QuotientSearchLimits {
    std::uint64_t seed            = 1;
    int           attempts        = 40;
    int           max_word_length = 8;
    std::size_t   max_cosets      = 2000;
    std::size_t   max_nodes       = 200000;
  };

  struct QuotientAttempt {
    Presentation                    quotient;
    std::optional<std::size_t>      order;  // nullopt on coset overflow
    std::optional<EmbeddingWitness> witness;
  };

  // Enumerates the quotient q of the group of p. The label words are
  // evaluated in it first; otherwise p is searched for in the quotient.
  QuotientAttempt try_quotient(Pls const&                  p,
                               LabelFamilies const&        labels,
                               Presentation const&         q,
                               QuotientSearchLimits const& limits = {});

  struct QuotientSearchResult {
    std::vector<QuotientAttempt> attempts;
    std::optional<std::size_t>   success;  // index into attempts
  };

  // Adds seeded random freely reduced relators to the reduced presentation
  // until there are at least as many relators as generators, and tries each
  // resulting quotient.
  QuotientSearchResult random_quotient_search(Pls const&                  p,
                                              PlsGroup const&             g,
                                              QuotientSearchLimits const& limits = {});

}  // namespace plsg

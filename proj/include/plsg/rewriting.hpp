#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "plsg/presentation.hpp"
#include "plsg/word.hpp"

namespace plsg {

  // Words are over the doubled alphabet (each generator and its inverse are
  // separate letters) ordered shortlex with g0 < g0^-1 < g1 < g1^-1 < ...
  bool shortlex_less(Word const& u, Word const& v);

  struct Rule {
    Word lhs;
    Word rhs;
  };

  struct KnuthBendixLimits {
    std::size_t max_rules          = 2000;
    std::size_t max_rule_length    = 64;
    std::size_t max_critical_pairs = 200000;
  };

  class RewritingSystem {
   public:
    RewritingSystem() = default;

    // Trusted rule list, e.g. replayed from a certificate.
    RewritingSystem(int num_generators, std::vector<Rule> rules, bool confluent);

    // Bounded completion. Every rule is a consequence of the relators, so
    // equal reduced forms always prove equality in the group; distinct
    // reduced forms prove distinctness only when confluent().
    static RewritingSystem knuth_bendix(Presentation const&      pres,
                                        KnuthBendixLimits const& limits = {});

    Word reduce(Word const& w) const;

    bool                     confluent() const noexcept { return _confluent; }
    std::vector<Rule> const& rules() const noexcept { return _rules; }
    int                      num_generators() const noexcept { return _num_generators; }
    std::size_t              critical_pairs() const noexcept { return _critical_pairs; }

    // Number of irreducible words, or nullopt if more than `cap`.
    std::optional<std::size_t> count_normal_forms(std::size_t cap) const;

    // One "lhs -> rhs" rule per line.
    std::string format(std::vector<std::string> const& names) const;

   private:
    void index_rules();

    int                           _num_generators = 0;
    std::vector<Rule>             _rules;
    std::vector<std::vector<int>> _by_last;
    bool                          _confluent      = false;
    std::size_t                   _critical_pairs = 0;
  };

  std::optional<Collision> kb_collision_test(LabelFamilies const& fams, RewritingSystem const& rws);

  // Every generator g equals t^exponents[g] for the generator t, proved by
  // equal reduced forms.
  struct CyclicProof {
    int              generator = 0;
    std::vector<int> exponents;
    RewritingSystem  system;
  };

  std::optional<CyclicProof> prove_cyclic(Presentation const&      pres,
                                          int                      max_exponent = 16,
                                          KnuthBendixLimits const& limits       = {});

  // Re-reduces g and t^n with the stored rules; no completion is run.
  bool check_cyclic_proof(CyclicProof const& proof, int num_generators);

}  // namespace plsg

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plsg/pls.hpp"
#include "plsg/presentation.hpp"
#include "plsg/rewriting.hpp"
#include "plsg/word.hpp"

namespace plsg {

  // One-relator groups on generators a, b:
  //   B  : b = [b, b^a]
  //   B1 : b = [b, (b^-2)^a]
  //   B2 : b = [b, (b^2)^a]
  // with [x, y] = x^-1 y^-1 x y and x^y = y^-1 x y.
  enum class BaumslagFamily { B, B1, B2 };

  char const* family_name(BaumslagFamily f);

  // The relator over generators (a, b) = (0, 1).
  Word family_relator(BaumslagFamily f);

  Presentation family_presentation(BaumslagFamily f);

  // Recorded, not proved here.
  inline constexpr char const* kFamilyAxiom
      = "the one-relator group b = [b, b^a] is infinite and non-cyclic (Baumslag 1969); "
        "B1 and B2 are isomorphic to it";

  // a = x[a_gen]^(a_inv ? -1 : 1) and b likewise, where x are the reduced
  // generators.
  struct FamilyMatch {
    BaumslagFamily family = BaumslagFamily::B;
    int            a_gen  = 0;
    bool           a_inv  = false;
    int            b_gen  = 1;
    bool           b_inv  = false;
  };

  // Tries every renaming and inversion of the two generators against the
  // three relators, up to cyclic rotation and inversion of the relator.
  std::optional<FamilyMatch> match_family(Presentation const& reduced);

  bool check_family_match(Presentation const& reduced, FamilyMatch const& m);

  // Two labels of one family that coincide once b = 1, which every finite
  // quotient forces. exponents are the powers of a they become.
  struct CollapseCertificate {
    Collision collision;
    long      first_exponent  = 0;
    long      second_exponent = 0;
  };

  std::optional<CollapseCertificate> finite_collapse_certificate(LabelFamilies const& labels,
                                                                 FamilyMatch const&   m);

  bool check_collapse_certificate(LabelFamilies const& labels, FamilyMatch const& m, CollapseCertificate const& c);

  // Adding x = y for two labels x, y of one family makes the group cyclic.
  struct PairProof {
    Family       family;
    int          first  = 0;
    int          second = 0;
    Presentation extended;
    CyclicProof  proof;
  };

  struct DistinctnessCertificate {
    std::vector<PairProof> pairs;
  };

  struct DistinctnessOutcome {
    std::optional<DistinctnessCertificate> certificate;
    std::vector<std::pair<Family, std::pair<int, int>>> inconclusive;
  };

  DistinctnessOutcome distinctness_certificate(Presentation const&      reduced,
                                               LabelFamilies const&     labels,
                                               KnuthBendixLimits const& limits = {});

  // Replays the stored reductions; no completion is rerun.
  bool check_distinctness_certificate(Presentation const&            reduced,
                                      LabelFamilies const&           labels,
                                      DistinctnessCertificate const& c);

  struct InfNotFinCertificate {
    FamilyMatch             match;
    CollapseCertificate     collapse;
    DistinctnessCertificate distinct;
    std::string             axiom = kFamilyAxiom;
  };

  bool check_inf_not_fin(Presentation const& reduced, LabelFamilies const& labels, InfNotFinCertificate const& c);

  struct FactCheck {
    std::string description;
    bool        verified = false;
    std::string detail;
  };

  // Coset enumerations behind the identification of B1 and B2, plus a
  // sanity check on B.
  std::vector<FactCheck> verify_family_facts(std::size_t max_cosets = 100000);

}  // namespace plsg

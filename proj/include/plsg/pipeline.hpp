#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "plsg/abelian.hpp"
#include "plsg/baumslag.hpp"
#include "plsg/finite_search.hpp"
#include "plsg/presentation.hpp"
#include "plsg/rewriting.hpp"
#include "plsg/species.hpp"

namespace plsg {

  enum class VerdictKind { ne, abelian, nonabelian, inf_not_fin, unresolved };

  inline constexpr std::array<VerdictKind, 5> kVerdictKinds{VerdictKind::ne, VerdictKind::abelian,
                                                            VerdictKind::nonabelian, VerdictKind::inf_not_fin,
                                                            VerdictKind::unresolved};

  char const*                verdict_name(VerdictKind v);
  std::optional<VerdictKind> parse_verdict(std::string_view name);

  struct ClassifyConfig {
    int                  max_order = 24;
    std::size_t          max_nodes_per_group = 2000000;
    TietzeLimits         tietze;
    KnuthBendixLimits    kb;
    QuotientSearchLimits quotient;
    bool                 record_timings = false;
    int                  workers        = 1;
  };

  // Hex digest of every knob that can change a verdict.
  std::string config_hash(ClassifyConfig const& c);

  // Labels equal as free-group words.
  struct FreeCollisionCert {
    Collision collision;
    Word      word;
  };

  // Labels with equal reduced forms under a bounded completion.
  struct KbCollisionCert {
    Collision       collision;
    Word            first_word;
    Word            second_word;
    Word            normal_form;
    RewritingSystem system;
  };

  struct AbelianWitnessCert {
    AbelianGroup         abelianization;
    FiniteAbelianWitness witness;
  };

  struct FiniteWitnessCert {
    EmbeddingWitness            witness;
    std::optional<Presentation> quotient;  // set when found by random relators
  };

  // The reduced presentation has no relators, so the group is free and hence
  // residually finite; the labels are distinct free words.
  struct FreeResidualCert {
    std::optional<EmbeddingWitness> witness;
  };

  // When the input's own presentation does not match a family, the
  // certificate is for a grid of the same species, whose group is
  // isomorphic with labels permuted between families.
  struct BaumslagCert {
    InfNotFinCertificate    certificate;
    std::optional<Pls>      equivalent;
    std::optional<PlsGroup> equivalent_group;
  };

  struct UnresolvedTrace {};

  using Certificate = std::variant<FreeCollisionCert,
                                   KbCollisionCert,
                                   AbelianWitnessCert,
                                   FiniteWitnessCert,
                                   FreeResidualCert,
                                   BaumslagCert,
                                   UnresolvedTrace>;

  char const* certificate_type(Certificate const& c);

  struct Verdict {
    VerdictKind                                  kind  = VerdictKind::unresolved;
    int                                          stage = 0;
    Certificate                                  certificate = UnresolvedTrace{};
    PlsGroup                                     group;
    std::vector<std::string>                     trace;
    std::vector<std::pair<std::string, double>>  timings_ms;
  };

  Verdict classify(Pls const& p, GroupCatalog const& catalog, ClassifyConfig const& config = {});

  // Re-checks the certificate against p without rerunning searches.
  bool check_verdict(Pls const& p, Verdict const& v);

  nlohmann::json certificate_json(Verdict const& v, Pls const& p);

  // One JSONL record.
  nlohmann::ordered_json verdict_record(Pls const& p, Verdict const& v, ClassifyConfig const& config);

  struct SurveyRow {
    int                       size = 0;
    std::array<long, 5>       counts{};  // indexed like kVerdictKinds

    long count(VerdictKind v) const { return counts[static_cast<std::size_t>(v)]; }
  };

  struct SurveyOptions {
    int                   max_size = 7;
    int                   min_size = 1;
    std::filesystem::path catalog_dir;
    std::filesystem::path out;
    bool                  resume = false;
  };

  // Classifies every candidate species of each size in canonical-id order and
  // appends one record per species to options.out. With resume, species
  // already in the file are skipped and a truncated last line is dropped.
  std::vector<SurveyRow> run_survey(SurveyOptions const& options,
                                    GroupCatalog const&  groups,
                                    ClassifyConfig const& config = {});

  // Per-size verdict counts of a JSONL stream.
  std::vector<SurveyRow> read_survey(std::filesystem::path const& jsonl);

  // Loads a species catalog or builds it (and smaller ones) by extension,
  // saving what it builds.
  SpeciesCatalog obtain_catalog(std::filesystem::path const& dir, int size);

  std::string format_table1(std::vector<CountRow> const& rows, bool csv);
  std::string format_table2(std::vector<SurveyRow> const& rows, bool csv);

  struct ArtifactCheck {
    std::string name;
    bool        passed         = false;
    bool        budget_limited = false;  // failed because a search ran out of budget
    std::string detail;
  };

  std::vector<ArtifactCheck> verify_reference_artifacts(GroupCatalog const& groups, ClassifyConfig const& config = {});

}  // namespace plsg

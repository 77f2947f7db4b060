#include "plsg/baumslag.hpp"

#include "plsg/coset.hpp"

namespace plsg {

  char const* family_name(BaumslagFamily f) {
    switch (f) {
      case BaumslagFamily::B:
        return "B";
      case BaumslagFamily::B1:
        return "B1";
      case BaumslagFamily::B2:
        return "B2";
    }
    return "?";
  }

  namespace {

    std::vector<std::string> const kNames{"a", "b"};

    constexpr BaumslagFamily kAll[] = {BaumslagFamily::B, BaumslagFamily::B1, BaumslagFamily::B2};

    // x[a_gen] -> a^(+-1), x[b_gen] -> b^(+-1)
    Word to_family_letters(Word const& w, FamilyMatch const& m) {
      Word out;
      for (Letter x : w) {
        int  g   = generator_of(x);
        bool inv = is_inverse(x);
        if (g == m.a_gen) {
          out.push_back(letter(0, inv != m.a_inv));
        } else {
          out.push_back(letter(1, inv != m.b_inv));
        }
      }
      return free_reduce(out);
    }

    // Power of a that w becomes once b = 1.
    long collapsed_exponent(Word const& w, FamilyMatch const& m) {
      long e = 0;
      for (Letter x : w) {
        if (generator_of(x) == m.a_gen) {
          e += is_inverse(x) ? -1 : 1;
        }
      }
      return m.a_inv ? -e : e;
    }

  }  // namespace

  Word family_relator(BaumslagFamily f) {
    switch (f) {
      case BaumslagFamily::B:
        return parse_word("b^-2 a^-1 b^-1 a b a^-1 b a", kNames);
      case BaumslagFamily::B1:
        return parse_word("b^-2 a^-1 b^2 a b a^-1 b^-2 a", kNames);
      case BaumslagFamily::B2:
        return parse_word("b^-2 a^-1 b^-2 a b a^-1 b^2 a", kNames);
    }
    return {};
  }

  Presentation family_presentation(BaumslagFamily f) {
    return Presentation{kNames, {family_relator(f)}};
  }

  bool check_family_match(Presentation const& reduced, FamilyMatch const& m) {
    if (reduced.num_generators() != 2 || reduced.relators.size() != 1 || m.a_gen == m.b_gen
        || m.a_gen < 0 || m.a_gen > 1 || m.b_gen < 0 || m.b_gen > 1) {
      return false;
    }
    return cyclic_canonical(to_family_letters(reduced.relators[0], m))
           == cyclic_canonical(family_relator(m.family));
  }

  std::optional<FamilyMatch> match_family(Presentation const& reduced) {
    if (reduced.num_generators() != 2 || reduced.relators.size() != 1) {
      return std::nullopt;
    }
    // B1 and B2 are exchanged by b -> b^-1, so matches with b uninverted
    // come first, then a uninverted.
    for (int inv = 0; inv < 4; ++inv) {
      for (int a_gen = 0; a_gen < 2; ++a_gen) {
        for (auto f : kAll) {
          FamilyMatch m{f, a_gen, (inv & 1) != 0, 1 - a_gen, (inv & 2) != 0};
          if (check_family_match(reduced, m)) {
            return m;
          }
        }
      }
    }
    return std::nullopt;
  }

  std::optional<CollapseCertificate> finite_collapse_certificate(LabelFamilies const& labels, FamilyMatch const& m) {
    for (Family f : kFamilies) {
      auto const&       words = labels.get(f);
      std::vector<long> exps;
      for (auto const& w : words) {
        exps.push_back(collapsed_exponent(w, m));
      }
      for (std::size_t i = 0; i < exps.size(); ++i) {
        for (std::size_t j = i + 1; j < exps.size(); ++j) {
          if (exps[i] == exps[j]) {
            return CollapseCertificate{{f, static_cast<int>(i), static_cast<int>(j)}, exps[i], exps[j]};
          }
        }
      }
    }
    return std::nullopt;
  }

  bool check_collapse_certificate(LabelFamilies const& labels, FamilyMatch const& m, CollapseCertificate const& c) {
    auto const& words = labels.get(c.collision.family);
    int         i = c.collision.first, j = c.collision.second;
    if (i < 0 || j <= i || j >= static_cast<int>(words.size())) {
      return false;
    }
    long ei = collapsed_exponent(words[i], m), ej = collapsed_exponent(words[j], m);
    return ei == ej && ei == c.first_exponent && ej == c.second_exponent;
  }

  namespace {

    Presentation with_pair(Presentation const& reduced, Word const& x, Word const& y) {
      Presentation q = reduced;
      q.relators.push_back(free_reduce(concat(x, inverse(y))));
      return q;
    }

  }  // namespace

  DistinctnessOutcome distinctness_certificate(Presentation const&      reduced,
                                               LabelFamilies const&     labels,
                                               KnuthBendixLimits const& limits) {
    DistinctnessOutcome     out;
    DistinctnessCertificate cert;
    for (Family f : kFamilies) {
      auto const& words = labels.get(f);
      for (std::size_t j = 1; j < words.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
          auto q     = with_pair(reduced, words[i], words[j]);
          auto proof = prove_cyclic(q, 16, limits);
          if (proof) {
            cert.pairs.push_back({f, static_cast<int>(i), static_cast<int>(j), std::move(q), std::move(*proof)});
          } else {
            out.inconclusive.push_back({f, {static_cast<int>(i), static_cast<int>(j)}});
          }
        }
      }
    }
    if (out.inconclusive.empty()) {
      out.certificate = std::move(cert);
    }
    return out;
  }

  bool check_distinctness_certificate(Presentation const&            reduced,
                                      LabelFamilies const&           labels,
                                      DistinctnessCertificate const& c) {
    std::size_t expected = 0;
    for (Family f : kFamilies) {
      std::size_t n = labels.get(f).size();
      expected += n * (n - 1) / 2;
    }
    if (c.pairs.size() != expected) {
      return false;
    }
    std::vector<std::vector<std::vector<char>>> seen(3);
    for (Family f : kFamilies) {
      std::size_t n = labels.get(f).size();
      seen[static_cast<int>(f)].assign(n, std::vector<char>(n, 0));
    }
    for (auto const& pp : c.pairs) {
      auto const& words = labels.get(pp.family);
      if (pp.first < 0 || pp.second <= pp.first || pp.second >= static_cast<int>(words.size())) {
        return false;
      }
      auto& mark = seen[static_cast<int>(pp.family)][pp.first][pp.second];
      if (mark) {
        return false;
      }
      mark   = 1;
      auto q = with_pair(reduced, words[pp.first], words[pp.second]);
      if (q.relators != pp.extended.relators || q.generators != pp.extended.generators) {
        return false;
      }
      if (!check_cyclic_proof(pp.proof, q.num_generators())) {
        return false;
      }
    }
    return true;
  }

  bool check_inf_not_fin(Presentation const& reduced, LabelFamilies const& labels, InfNotFinCertificate const& c) {
    return c.axiom == kFamilyAxiom && check_family_match(reduced, c.match)
           && check_collapse_certificate(labels, c.match, c.collapse)
           && check_distinctness_certificate(reduced, labels, c.distinct);
  }

  std::vector<FactCheck> verify_family_facts(std::size_t max_cosets) {
    struct Fact {
      BaumslagFamily family;
      char const*    subgroup;
      char const*    description;
    };
    Fact const facts[] = {
        {BaumslagFamily::B1, "b^-2, a", "<b^-2, a> has index 1 in B1"},
        {BaumslagFamily::B2, "b^2, a", "<b^2, a> has index 1 in B2"},
        {BaumslagFamily::B, "a, b", "<a, b> has index 1 in B"},
    };
    std::vector<FactCheck> out;
    for (auto const& fact : facts) {
      auto              pres = family_presentation(fact.family);
      std::vector<Word> sub;
      std::string       text = fact.subgroup;
      for (std::size_t start = 0; start <= text.size();) {
        auto end = text.find(',', start);
        if (end == std::string::npos) {
          end = text.size();
        }
        sub.push_back(parse_word(text.substr(start, end - start), pres.generators));
        start = end + 1;
      }
      auto      e = todd_coxeter(pres, sub, {max_cosets, CosetStrategy::felsch});
      FactCheck check{fact.description, e.closed && e.index == 1, {}};
      check.detail = e.closed ? "index " + std::to_string(e.index) + ", " + std::to_string(e.total_defined)
                                    + " cosets defined"
                              : "coset enumeration overflow";
      out.push_back(std::move(check));
    }
    return out;
  }

}  // namespace plsg

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plsg/pls.hpp"
#include "plsg/word.hpp"

namespace plsg {

  struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word>        relators;

    int num_generators() const noexcept { return static_cast<int>(generators.size()); }
    std::size_t total_length() const noexcept;
  };

  // "<gens> | <relators>", e.g. "u v | v^2 u^-2"; relators are separated by
  // commas.
  std::string  format_presentation(Presentation const& pres);
  Presentation parse_presentation(std::string_view text);

  // Generators r2..rm, c2..cn and the symbols, with one relator R_i C_j s^-1
  // per filled cell; R_1 and C_1 are the identity and are omitted.
  Presentation presentation_of(Pls const& p);

  // Index of the generator for row i, column j, symbol s in presentation_of;
  // -1 for row 0 and column 0.
  int row_generator(Pls const& p, int row);
  int col_generator(Pls const& p, int col);
  int sym_generator(Pls const& p, int sym);

  // images[g] is original generator g written over the reduced generators.
  using GeneratorImages = std::vector<Word>;

  struct TietzeLimits {
    std::size_t max_total_length = 10000;
  };

  struct TietzeResult {
    Presentation    reduced;
    GeneratorImages images;
    bool            budget_exhausted = false;
  };

  TietzeResult tietze_reduce(Presentation const& pres, TietzeLimits const& limits = {});

  enum class Family { rows, cols, syms };
  char const* family_name(Family f);

  struct LabelFamilies {
    std::vector<Word> rows;
    std::vector<Word> cols;
    std::vector<Word> syms;

    std::vector<Word> const& get(Family f) const;
    std::vector<Word>&       get(Family f);
  };

  inline constexpr Family kFamilies[] = {Family::rows, Family::cols, Family::syms};

  LabelFamilies label_words(Pls const& p, GeneratorImages const& images);

  // Two labels of one family, 0-based indices with first < second.
  struct Collision {
    Family family;
    int    first;
    int    second;

    friend bool operator==(Collision const&, Collision const&) = default;
  };

  std::string describe(Collision const& c, Pls const& p);

  // First pair of equal words within one family.
  std::optional<Collision> free_collision_test(LabelFamilies const& fams);

  // Everything downstream stages need about the group defined by a PLS.
  struct PlsGroup {
    Presentation  original;
    TietzeResult  tietze;
    LabelFamilies labels;

    Presentation const& reduced() const noexcept { return tietze.reduced; }
  };

  PlsGroup build_pls_group(Pls const& p, TietzeLimits const& limits = {});

}  // namespace plsg

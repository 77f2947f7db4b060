#include "plsg/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace plsg {

  std::size_t Presentation::total_length() const noexcept {
    std::size_t n = 0;
    for (auto const& r : relators) {
      n += r.size();
    }
    return n;
  }

  std::string format_presentation(Presentation const& pres) {
    std::string out;
    for (std::size_t i = 0; i < pres.generators.size(); ++i) {
      out += (i ? " " : "") + pres.generators[i];
    }
    out += " |";
    for (std::size_t i = 0; i < pres.relators.size(); ++i) {
      out += (i ? ", " : " ") + format_word(pres.relators[i], pres.generators);
    }
    return out;
  }

  Presentation parse_presentation(std::string_view text) {
    auto bar = text.find('|');
    if (bar == std::string_view::npos) {
      throw std::invalid_argument("presentation needs a '|' between generators and relators");
    }
    Presentation       pres;
    std::istringstream gens{std::string(text.substr(0, bar))};
    std::string        g;
    while (gens >> g) {
      pres.generators.push_back(g);
    }
    std::string rest(text.substr(bar + 1));
    std::size_t start = 0;
    while (start <= rest.size()) {
      auto        comma = rest.find(',', start);
      std::string part  = rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      bool blank = std::all_of(part.begin(), part.end(), [](unsigned char c) { return std::isspace(c); });
      if (!blank) {
        pres.relators.push_back(parse_word(part, pres.generators));
      }
      if (comma == std::string::npos) {
        break;
      }
      start = comma + 1;
    }
    return pres;
  }

  ////////////////////////////////////////////////////////////////////////
  // Presentation defined by a PLS
  ////////////////////////////////////////////////////////////////////////

  int row_generator(Pls const& p, int row) {
    (void) p;
    return row == 0 ? -1 : row - 1;
  }

  int col_generator(Pls const& p, int col) {
    return col == 0 ? -1 : (p.nrows() - 1) + col - 1;
  }

  int sym_generator(Pls const& p, int sym) {
    return (p.nrows() - 1) + (p.ncols() - 1) + sym;
  }

  Presentation presentation_of(Pls const& p) {
    Presentation pres;
    for (int i = 1; i < p.nrows(); ++i) {
      pres.generators.push_back("r" + std::to_string(i + 1));
    }
    for (int j = 1; j < p.ncols(); ++j) {
      pres.generators.push_back("c" + std::to_string(j + 1));
    }
    std::set<std::string> taken(pres.generators.begin(), pres.generators.end());
    for (int s = 0; s < p.nsyms(); ++s) {
      auto const& name  = p.symbol_name(s);
      bool        ident = !name.empty() && std::isalpha(static_cast<unsigned char>(name[0]))
                   && std::all_of(name.begin(), name.end(), [](unsigned char c) {
                        return std::isalnum(c) || c == '_';
                      });
      std::string chosen = ident && !taken.count(name) ? name : "s" + std::to_string(s + 1);
      while (taken.count(chosen)) {
        chosen += '_';
      }
      taken.insert(chosen);
      pres.generators.push_back(chosen);
    }
    for (auto const& t : p.triples()) {
      Word w;
      if (t.row > 0) {
        w.push_back(letter(row_generator(p, t.row)));
      }
      if (t.col > 0) {
        w.push_back(letter(col_generator(p, t.col)));
      }
      w.push_back(letter(sym_generator(p, t.sym), true));
      pres.relators.push_back(w);
    }
    return pres;
  }

  ////////////////////////////////////////////////////////////////////////
  // Tietze reduction
  ////////////////////////////////////////////////////////////////////////

  namespace {

    void normalise_relators(std::vector<Word>& rels) {
      std::set<Word>    seen;
      std::vector<Word> out;
      for (auto const& r : rels) {
        Word c = cyclic_reduce(r);
        if (c.empty()) {
          continue;
        }
        if (seen.insert(cyclic_canonical(c)).second) {
          out.push_back(std::move(c));
        }
      }
      rels.swap(out);
    }

  }  // namespace

  TietzeResult tietze_reduce(Presentation const& pres, TietzeLimits const& limits) {
    int const         ngens = pres.num_generators();
    std::vector<Word> rels  = pres.relators;
    GeneratorImages   images(ngens);
    for (int g = 0; g < ngens; ++g) {
      images[g] = {letter(g)};
    }
    std::vector<char> alive(ngens, 1);
    TietzeResult      result;

    while (true) {
      normalise_relators(rels);
      // eligible (relator, generator) pair whose substitution leaves the
      // shortest total relator length; ties by relator length, then id
      int         best_rel = -1, best_gen = -1;
      std::size_t best_cost = 0, best_len = 0;
      for (std::size_t i = 0; i < rels.size(); ++i) {
        std::vector<int> count(ngens, 0);
        for (Letter x : rels[i]) {
          ++count[generator_of(x)];
        }
        for (int g = 0; g < ngens; ++g) {
          if (count[g] != 1) {
            continue;
          }
          std::size_t occurrences = 0;
          for (std::size_t j = 0; j < rels.size(); ++j) {
            if (j != i) {
              occurrences += std::count_if(rels[j].begin(), rels[j].end(),
                                           [g](Letter x) { return generator_of(x) == g; });
            }
          }
          std::size_t cost = occurrences * (rels[i].size() - 1);
          if (best_rel < 0 || cost < best_cost || (cost == best_cost && rels[i].size() < best_len)) {
            best_rel  = static_cast<int>(i);
            best_gen  = g;
            best_cost = cost;
            best_len  = rels[i].size();
          }
        }
      }
      if (best_rel < 0) {
        break;
      }
      // rotate so the unique occurrence of best_gen comes first
      Word r   = rels[best_rel];
      auto pos = std::find_if(r.begin(), r.end(), [&](Letter x) { return generator_of(x) == best_gen; });
      std::rotate(r.begin(), pos, r.end());
      Word rest(r.begin() + 1, r.end());
      // g w = 1 gives g = w^-1; g^-1 w = 1 gives g = w
      Word value = is_inverse(r.front()) ? rest : inverse(rest);

      std::vector<Word> next;
      std::size_t       total = 0;
      for (std::size_t i = 0; i < rels.size(); ++i) {
        if (static_cast<int>(i) == best_rel) {
          continue;
        }
        next.push_back(substitute(rels[i], best_gen, value));
        total += next.back().size();
      }
      if (total > limits.max_total_length) {
        result.budget_exhausted = true;
        break;
      }
      rels.swap(next);
      for (auto& img : images) {
        img = substitute(img, best_gen, value);
      }
      alive[best_gen] = 0;
    }

    // renumber surviving generators
    std::vector<int> new_index(ngens, -1);
    for (int g = 0; g < ngens; ++g) {
      if (alive[g]) {
        new_index[g] = result.reduced.num_generators();
        result.reduced.generators.push_back(pres.generators[g]);
      }
    }
    auto remap = [&](Word const& w) {
      Word out;
      out.reserve(w.size());
      for (Letter x : w) {
        out.push_back(letter(new_index[generator_of(x)], is_inverse(x)));
      }
      return out;
    };
    for (auto const& r : rels) {
      result.reduced.relators.push_back(remap(r));
    }
    for (auto const& img : images) {
      result.images.push_back(remap(img));
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Label families
  ////////////////////////////////////////////////////////////////////////

  char const* family_name(Family f) {
    switch (f) {
      case Family::rows:
        return "row";
      case Family::cols:
        return "col";
      case Family::syms:
        return "sym";
    }
    return "?";
  }

  std::vector<Word> const& LabelFamilies::get(Family f) const {
    return f == Family::rows ? rows : f == Family::cols ? cols : syms;
  }

  std::vector<Word>& LabelFamilies::get(Family f) {
    return f == Family::rows ? rows : f == Family::cols ? cols : syms;
  }

  LabelFamilies label_words(Pls const& p, GeneratorImages const& images) {
    LabelFamilies fams;
    fams.rows.push_back({});
    for (int i = 1; i < p.nrows(); ++i) {
      fams.rows.push_back(free_reduce(images.at(row_generator(p, i))));
    }
    fams.cols.push_back({});
    for (int j = 1; j < p.ncols(); ++j) {
      fams.cols.push_back(free_reduce(images.at(col_generator(p, j))));
    }
    for (int s = 0; s < p.nsyms(); ++s) {
      fams.syms.push_back(free_reduce(images.at(sym_generator(p, s))));
    }
    return fams;
  }

  std::string describe(Collision const& c, Pls const& p) {
    auto name = [&](int i) {
      if (c.family == Family::syms) {
        return p.symbol_name(i);
      }
      return std::string(c.family == Family::rows ? "r" : "c") + std::to_string(i + 1);
    };
    return name(c.first) + " = " + name(c.second);
  }

  std::optional<Collision> free_collision_test(LabelFamilies const& fams) {
    for (Family f : kFamilies) {
      auto const& words = fams.get(f);
      for (std::size_t j = 1; j < words.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
          if (words[i] == words[j]) {
            return Collision{f, static_cast<int>(i), static_cast<int>(j)};
          }
        }
      }
    }
    return std::nullopt;
  }

  PlsGroup build_pls_group(Pls const& p, TietzeLimits const& limits) {
    PlsGroup g;
    g.original = presentation_of(p);
    g.tietze   = tietze_reduce(g.original, limits);
    g.labels   = label_words(p, g.tietze.images);
    return g;
  }

}  // namespace plsg

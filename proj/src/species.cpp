#include "plsg/species.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace plsg {

  SpeciesCatalog initial_catalog() {
    SpeciesCatalog cat;
    cat.size = 1;
    auto p   = Pls::from_triples({{0, 0, 0}});
    auto f   = canonical_form(p);
    cat.reps.emplace(f, f.to_pls());
    return cat;
  }

  SpeciesCatalog extend_species(SpeciesCatalog const& smaller) {
    SpeciesCatalog out;
    out.size = smaller.size + 1;
    std::set<CanonicalForm> seen;
    for (auto const& [form, rep] : smaller.reps) {
      int const m = rep.nrows(), n = rep.ncols(), k = rep.nsyms();
      // occupancy of (row, col), (row, sym) and (col, sym) pairs
      std::vector<char> rc((m + 1) * (n + 1), 0), rs((m + 1) * (k + 1), 0),
          cs((n + 1) * (k + 1), 0);
      for (auto const& t : rep.triples()) {
        rc[t.row * (n + 1) + t.col] = 1;
        rs[t.row * (k + 1) + t.sym] = 1;
        cs[t.col * (k + 1) + t.sym] = 1;
      }
      auto triples = rep.triples();
      triples.emplace_back();
      for (int r = 0; r <= m; ++r) {
        for (int c = 0; c <= n; ++c) {
          if (rc[r * (n + 1) + c]) {
            continue;
          }
          for (int s = 0; s <= k; ++s) {
            if (rs[r * (k + 1) + s] || cs[c * (k + 1) + s]) {
              continue;
            }
            triples.back() = {r, c, s};
            auto f         = canonical_form(Pls::from_triples(triples));
            if (seen.insert(f).second) {
              auto q = f.to_pls();
              out.reps.emplace(std::move(f), std::move(q));
            }
          }
        }
      }
    }
    return out;
  }

  bool prune_condition1(std::vector<Triple> const& triples) {
    int nr = 0, nc = 0, ns = 0;
    for (auto const& t : triples) {
      nr = std::max(nr, t.row + 1);
      nc = std::max(nc, t.col + 1);
      ns = std::max(ns, t.sym + 1);
    }
    std::vector<int> row_degree(nr, 0);
    for (auto const& t : triples) {
      ++row_degree[t.row];
    }
    std::vector<char> rc(nr * nc), rs(nr * ns);
    for (std::size_t x = 0; x < triples.size(); ++x) {
      auto const& removed = triples[x];
      if (row_degree[removed.row] != 1) {
        continue;
      }
      std::fill(rc.begin(), rc.end(), 0);
      std::fill(rs.begin(), rs.end(), 0);
      for (std::size_t y = 0; y < triples.size(); ++y) {
        if (y != x) {
          rc[triples[y].row * nc + triples[y].col] = 1;
          rs[triples[y].row * ns + triples[y].sym] = 1;
        }
      }
      bool all = true;
      for (std::size_t y = 0; y < triples.size() && all; ++y) {
        if (y == x) {
          continue;
        }
        int r = triples[y].row;
        all   = rc[r * nc + removed.col] || rs[r * ns + removed.sym];
      }
      if (all) {
        return true;
      }
    }
    return false;
  }

  bool prune_condition2(std::vector<Triple> const& triples) {
    int nr = 0;
    for (auto const& t : triples) {
      nr = std::max(nr, t.row + 1);
    }
    for (int r = 0; r < nr; ++r) {
      std::set<int> rest_cols, rest_syms;
      for (auto const& t : triples) {
        if (t.row != r) {
          rest_cols.insert(t.col);
          rest_syms.insert(t.sym);
        }
      }
      bool disjoint = true;
      for (auto const& t : triples) {
        if (t.row == r && rest_cols.count(t.col) && rest_syms.count(t.sym)) {
          disjoint = false;
          break;
        }
      }
      if (disjoint) {
        return true;
      }
    }
    return false;
  }

  CandidateFlags candidate_flags(Pls const& p) {
    CandidateFlags flags;
    flags.connected = is_connected(p);
    std::vector<Triple> conj(p.size());
    for (int shift = 0; shift < 3; ++shift) {
      for (std::size_t i = 0; i < p.size(); ++i) {
        auto const& t = p.triples()[i];
        conj[i]       = {t[shift], t[(shift + 1) % 3], t[(shift + 2) % 3]};
      }
      flags.pruned_by_cond1 = flags.pruned_by_cond1 || prune_condition1(conj);
      flags.pruned_by_cond2 = flags.pruned_by_cond2 || prune_condition2(conj);
    }
    flags.candidate = flags.connected && !flags.pruned_by_cond1 && !flags.pruned_by_cond2;
    return flags;
  }

  CountRow count_row(SpeciesCatalog const& catalog) {
    CountRow row;
    row.size = catalog.size;
    row.all  = catalog.reps.size();
    for (auto const& [form, rep] : catalog.reps) {
      auto flags = candidate_flags(rep);
      row.connected += flags.connected;
      row.candidates += flags.candidate;
    }
    return row;
  }

  std::vector<CountRow> count_report(int                                               max_size,
                                     std::function<void(SpeciesCatalog const&)> const& on_catalog) {
    if (max_size < 1) {
      throw std::invalid_argument("count_report: max_size must be at least 1");
    }
    std::vector<CountRow> rows;
    SpeciesCatalog        cat = initial_catalog();
    while (true) {
      if (on_catalog) {
        on_catalog(cat);
      }
      rows.push_back(count_row(cat));
      if (cat.size == max_size) {
        break;
      }
      cat = extend_species(cat);
    }
    return rows;
  }

  ////////////////////////////////////////////////////////////////////////
  // Catalog files
  ////////////////////////////////////////////////////////////////////////

  namespace {
    constexpr char const* kCatalogMagic = "PLSCAT";
    constexpr int         kCatalogVersion = 1;
  }  // namespace

  void write_catalog(SpeciesCatalog const& catalog, std::ostream& out) {
    out << kCatalogMagic << ' ' << kCatalogVersion << " size " << catalog.size << " count "
        << catalog.reps.size() << '\n';
    for (auto const& [form, rep] : catalog.reps) {
      auto text = render_pls(rep);
      out << text.size() << '\n' << text << '\n';
    }
  }

  SpeciesCatalog read_catalog(std::istream& in) {
    std::string magic, size_kw, count_kw;
    int         version = 0;
    std::size_t count   = 0;
    SpeciesCatalog cat;
    if (!(in >> magic >> version >> size_kw >> cat.size >> count_kw >> count) || magic != kCatalogMagic
        || version != kCatalogVersion || size_kw != "size" || count_kw != "count") {
      throw PlsError("not a PLS catalog file");
    }
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t len = 0;
      if (!(in >> len) || in.get() != '\n') {
        throw PlsError("truncated catalog record " + std::to_string(i));
      }
      std::string text(len, '\0');
      if (!in.read(text.data(), static_cast<std::streamsize>(len))) {
        throw PlsError("truncated catalog record " + std::to_string(i));
      }
      auto p = parse_pls(text);
      if (static_cast<int>(p.size()) != cat.size) {
        throw PlsError("catalog record " + std::to_string(i) + " has the wrong size");
      }
      auto f = canonical_form(p);
      cat.reps.emplace(f, f.to_pls());
    }
    if (cat.reps.size() != count) {
      throw PlsError("catalog contains duplicate species");
    }
    return cat;
  }

  std::filesystem::path catalog_path(std::filesystem::path const& dir, int size) {
    std::ostringstream name;
    name << "species_" << size << ".cat";
    return dir / name.str();
  }

  void save_catalog(SpeciesCatalog const& catalog, std::filesystem::path const& dir) {
    std::filesystem::create_directories(dir);
    std::ofstream out(catalog_path(dir, catalog.size));
    if (!out) {
      throw PlsError("cannot write " + catalog_path(dir, catalog.size).string());
    }
    write_catalog(catalog, out);
  }

  SpeciesCatalog load_catalog(std::filesystem::path const& dir, int size) {
    std::ifstream in(catalog_path(dir, size));
    if (!in) {
      throw PlsError("cannot read " + catalog_path(dir, size).string());
    }
    return read_catalog(in);
  }

}  // namespace plsg

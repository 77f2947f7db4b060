#include "plsg/pls.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace plsg {

  namespace {

    std::string cell_name(int r, int c) {
      return "row " + std::to_string(r + 1) + ", column " + std::to_string(c + 1);
    }

    struct UnionFind {
      std::vector<int> parent;
      explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
      }
      int find(int x) {
        while (parent[x] != x) {
          parent[x] = parent[parent[x]];
          x         = parent[x];
        }
        return x;
      }
      void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) {
          parent[std::max(a, b)] = std::min(a, b);
        }
      }
    };

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Pls
  ////////////////////////////////////////////////////////////////////////

  std::string default_symbol_name(int s) {
    if (s < 26) {
      return std::string(1, static_cast<char>('a' + s));
    }
    return "s" + std::to_string(s + 1);
  }

  Pls Pls::from_triples(std::vector<Triple> triples, std::vector<std::string> names) {
    if (triples.empty()) {
      throw PlsError("a PLS must have at least one filled cell");
    }
    std::array<int, 3> dims{0, 0, 0};
    for (auto const& t : triples) {
      for (int i = 0; i < 3; ++i) {
        if (t[i] < 0) {
          throw PlsError("negative index in triple");
        }
        dims[i] = std::max(dims[i], t[i] + 1);
      }
    }
    std::sort(triples.begin(), triples.end());
    // Latin property: each pair of coordinates determines the third.
    constexpr std::array<std::array<int, 2>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
    constexpr std::array<char const*, 3>        what{
        "two symbols in one cell", "symbol repeated in row", "symbol repeated in column"};
    for (int p = 0; p < 3; ++p) {
      auto [i, j] = pairs[p];
      std::vector<char> seen(static_cast<std::size_t>(dims[i]) * dims[j], 0);
      for (auto const& t : triples) {
        auto& slot = seen[static_cast<std::size_t>(t[i]) * dims[j] + t[j]];
        if (slot) {
          throw PlsError(cell_name(t.row, t.col) + ": " + what[p]);
        }
        slot = 1;
      }
    }
    static constexpr std::array<char const*, 3> coord_name{"row", "column", "symbol"};
    for (int i = 0; i < 3; ++i) {
      std::vector<char> used(dims[i], 0);
      for (auto const& t : triples) {
        used[t[i]] = 1;
      }
      auto it = std::find(used.begin(), used.end(), 0);
      if (it != used.end()) {
        throw PlsError(std::string(coord_name[i]) + " " + std::to_string(it - used.begin() + 1)
                       + " is unused");
      }
    }
    if (names.empty()) {
      for (int s = 0; s < dims[2]; ++s) {
        names.push_back(default_symbol_name(s));
      }
    } else if (static_cast<int>(names.size()) != dims[2]) {
      throw PlsError("symbol name count does not match the number of symbols");
    }
    Pls p;
    p._triples = std::move(triples);
    p._dims    = dims;
    p._names   = std::move(names);
    return p;
  }

  std::vector<int> Pls::degrees(int coord) const {
    std::vector<int> deg(_dims.at(coord), 0);
    for (auto const& t : _triples) {
      ++deg[t[coord]];
    }
    return deg;
  }

  int Pls::at(int r, int c) const {
    auto it = std::lower_bound(_triples.begin(), _triples.end(), Triple{r, c, -1});
    if (it != _triples.end() && it->row == r && it->col == c) {
      return it->sym;
    }
    return -1;
  }

  ////////////////////////////////////////////////////////////////////////
  // Text format
  ////////////////////////////////////////////////////////////////////////

  Pls parse_pls(std::string_view text) {
    std::vector<std::vector<std::string>> grid;
    std::istringstream                    in{std::string(text)};
    std::string                           line;
    while (std::getline(in, line)) {
      std::istringstream       ls(line);
      std::vector<std::string> row;
      std::string              tok;
      while (ls >> tok) {
        row.push_back(tok);
      }
      if (!row.empty()) {
        grid.push_back(std::move(row));
      }
    }
    if (grid.empty()) {
      throw PlsError("empty grid");
    }
    std::size_t const ncols = grid.front().size();
    for (std::size_t r = 0; r < grid.size(); ++r) {
      if (grid[r].size() != ncols) {
        throw PlsError("row " + std::to_string(r + 1) + " has " + std::to_string(grid[r].size())
                       + " cells, expected " + std::to_string(ncols));
      }
    }
    std::map<std::string, int> ids;
    std::vector<std::string>   names;
    std::vector<Triple>        triples;
    for (std::size_t r = 0; r < grid.size(); ++r) {
      for (std::size_t c = 0; c < ncols; ++c) {
        auto const& tok = grid[r][c];
        if (tok == ".") {
          continue;
        }
        auto [it, fresh] = ids.emplace(tok, static_cast<int>(names.size()));
        if (fresh) {
          names.push_back(tok);
        }
        triples.push_back({static_cast<int>(r), static_cast<int>(c), it->second});
      }
    }
    for (std::size_t r = 0; r < grid.size(); ++r) {
      bool any = std::any_of(grid[r].begin(), grid[r].end(), [](auto const& t) { return t != "."; });
      if (!any) {
        throw PlsError("row " + std::to_string(r + 1) + " is empty");
      }
    }
    for (std::size_t c = 0; c < ncols; ++c) {
      bool any = std::any_of(grid.begin(), grid.end(), [c](auto const& row) { return row[c] != "."; });
      if (!any) {
        throw PlsError("column " + std::to_string(c + 1) + " is empty");
      }
    }
    return Pls::from_triples(std::move(triples), std::move(names));
  }

  std::string render_pls(Pls const& p) {
    std::vector<std::vector<std::string>> grid(p.nrows(),
                                               std::vector<std::string>(p.ncols(), "."));
    for (auto const& t : p.triples()) {
      grid[t.row][t.col] = p.symbol_name(t.sym);
    }
    std::size_t width = 1;
    for (auto const& name : p.symbol_names()) {
      width = std::max(width, name.size());
    }
    std::string out;
    for (int r = 0; r < p.nrows(); ++r) {
      if (r > 0) {
        out += '\n';
      }
      for (int c = 0; c < p.ncols(); ++c) {
        auto const& tok = grid[r][c];
        if (c > 0) {
          out += ' ';
        }
        out += tok;
        if (c + 1 < p.ncols()) {
          out.append(width - tok.size(), ' ');
        }
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Conjugates and relabelling
  ////////////////////////////////////////////////////////////////////////

  std::array<std::array<int, 3>, 6> const& all_coordinate_perms() {
    static constexpr std::array<std::array<int, 3>, 6> perms{
        {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}}};
    return perms;
  }

  Pls conjugate(Pls const& p, std::array<int, 3> const& perm) {
    std::vector<Triple> out;
    out.reserve(p.size());
    for (auto const& t : p.triples()) {
      out.push_back({t[perm[0]], t[perm[1]], t[perm[2]]});
    }
    std::vector<std::string> names;
    if (perm[2] == 2) {
      names = p.symbol_names();
    }
    return Pls::from_triples(std::move(out), std::move(names));
  }

  Pls relabel(Pls const&              p,
              std::vector<int> const& row_map,
              std::vector<int> const& col_map,
              std::vector<int> const& sym_map) {
    std::vector<Triple> out;
    out.reserve(p.size());
    for (auto const& t : p.triples()) {
      out.push_back({row_map.at(t.row), col_map.at(t.col), sym_map.at(t.sym)});
    }
    std::vector<std::string> names(p.nsyms());
    for (int s = 0; s < p.nsyms(); ++s) {
      names.at(sym_map[s]) = p.symbol_name(s);
    }
    return Pls::from_triples(std::move(out), std::move(names));
  }

  ////////////////////////////////////////////////////////////////////////
  // Canonical form
  ////////////////////////////////////////////////////////////////////////

  namespace {

    // The PLS as a 3-partite 3-uniform hypergraph on rows, columns and
    // symbols. Point ids: rows [0, m), columns [m, m + n), symbols after.
    struct Hypergraph {
      std::array<int, 3>              dims;
      int                             npoints;
      std::vector<std::array<int, 3>> edges;
      std::vector<std::vector<int>>   incident;

      Hypergraph(std::vector<Triple> const& triples, std::array<int, 3> const& d)
          : dims(d), npoints(d[0] + d[1] + d[2]), incident(npoints) {
        std::array<int, 3> offset{0, d[0], d[0] + d[1]};
        for (auto const& t : triples) {
          std::array<int, 3> e{t[0] + offset[0], t[1] + offset[1], t[2] + offset[2]};
          for (int i = 0; i < 3; ++i) {
            incident[e[i]].push_back(static_cast<int>(edges.size()));
          }
          edges.push_back(e);
        }
      }
    };

    // Individualisation-refinement search returning the least certificate
    // over all leaves, pruned by discovered automorphisms.
    class CanonicalSearch {
     public:
      explicit CanonicalSearch(Hypergraph const& h) : _h(h) {}

      std::vector<std::uint8_t> run() {
        std::vector<int> colour(_h.npoints);
        for (int p = 0; p < _h.npoints; ++p) {
          colour[p] = p < _h.dims[0] ? 0 : p < _h.dims[0] + _h.dims[1] ? 1 : 2;
        }
        std::vector<int> path;
        search(std::move(colour), path);
        return _best;
      }

     private:
      // Colours are always ranks 0..c-1 on exit.
      void refine(std::vector<int>& colour) const {
        int const        np = _h.npoints;
        std::vector<int> order(np);
        int              ncolours = -1;
        std::vector<std::vector<int>> keys(np);
        while (true) {
          for (int p = 0; p < np; ++p) {
            auto& key = keys[p];
            key.clear();
            for (int e : _h.incident[p]) {
              auto const& edge = _h.edges[e];
              int         a = -1, b = -1;
              for (int i = 0; i < 3; ++i) {
                if (edge[i] != p) {
                  (a < 0 ? a : b) = colour[edge[i]];
                }
              }
              key.push_back(a * 1024 + b);
            }
            std::sort(key.begin(), key.end());
          }
          std::iota(order.begin(), order.end(), 0);
          std::sort(order.begin(), order.end(), [&](int x, int y) {
            if (colour[x] != colour[y]) {
              return colour[x] < colour[y];
            }
            return keys[x] < keys[y];
          });
          std::vector<int> next(np);
          int              rank = 0;
          for (int i = 0; i < np; ++i) {
            if (i > 0) {
              int x = order[i - 1], y = order[i];
              if (colour[x] != colour[y] || keys[x] != keys[y]) {
                ++rank;
              }
            }
            next[order[i]] = rank;
          }
          colour.swap(next);
          if (rank + 1 == ncolours) {
            return;
          }
          ncolours = rank + 1;
        }
      }

      std::vector<std::uint8_t> certificate(std::vector<int> const& colour) const {
        int const                       m = _h.dims[0], n = _h.dims[1];
        std::vector<std::array<int, 3>> rel;
        rel.reserve(_h.edges.size());
        for (auto const& e : _h.edges) {
          rel.push_back({colour[e[0]], colour[e[1]] - m, colour[e[2]] - m - n});
        }
        std::sort(rel.begin(), rel.end());
        std::vector<std::uint8_t> out;
        out.reserve(4 + 3 * rel.size());
        for (int d : _h.dims) {
          out.push_back(static_cast<std::uint8_t>(d));
        }
        out.push_back(static_cast<std::uint8_t>(rel.size()));
        for (auto const& t : rel) {
          for (int x : t) {
            out.push_back(static_cast<std::uint8_t>(x));
          }
        }
        return out;
      }

      void record_automorphism(std::vector<int> const& lab_a, std::vector<int> const& lab_b) {
        if (_autos.size() >= 64) {
          return;
        }
        // gamma = lab_a^{-1} o lab_b
        std::vector<int> inv_a(lab_a.size());
        for (std::size_t p = 0; p < lab_a.size(); ++p) {
          inv_a[lab_a[p]] = static_cast<int>(p);
        }
        std::vector<int> gamma(lab_b.size());
        bool             identity = true;
        for (std::size_t p = 0; p < lab_b.size(); ++p) {
          gamma[p] = inv_a[lab_b[p]];
          identity = identity && gamma[p] == static_cast<int>(p);
        }
        if (!identity) {
          _autos.push_back(std::move(gamma));
        }
      }

      void leaf(std::vector<int> const& colour) {
        auto cert = certificate(colour);
        if (_first.empty()) {
          _first      = cert;
          _first_lab  = colour;
          _best       = std::move(cert);
          _best_lab   = colour;
          return;
        }
        if (cert == _first) {
          record_automorphism(_first_lab, colour);
        }
        if (cert < _best) {
          _best     = std::move(cert);
          _best_lab = colour;
        } else if (cert == _best && _best != _first) {
          record_automorphism(_best_lab, colour);
        }
      }

      bool same_orbit(int u, int v, std::vector<int> const& path) const {
        UnionFind uf(_h.npoints);
        for (auto const& g : _autos) {
          bool fixes = std::all_of(path.begin(), path.end(), [&](int x) { return g[x] == x; });
          if (!fixes) {
            continue;
          }
          for (int p = 0; p < _h.npoints; ++p) {
            uf.unite(p, g[p]);
          }
        }
        return uf.find(u) == uf.find(v);
      }

      void search(std::vector<int> colour, std::vector<int>& path) {
        refine(colour);
        int const        np = _h.npoints;
        std::vector<int> size(np, 0);
        for (int c : colour) {
          ++size[c];
        }
        int target = -1;
        for (int c = 0; c < np; ++c) {
          if (size[c] > 1) {
            target = c;
            break;
          }
        }
        if (target < 0) {
          leaf(colour);
          return;
        }
        std::vector<int> explored;
        for (int v = 0; v < np; ++v) {
          if (colour[v] != target) {
            continue;
          }
          bool pruned = std::any_of(explored.begin(), explored.end(),
                                    [&](int u) { return same_orbit(u, v, path); });
          if (pruned) {
            continue;
          }
          explored.push_back(v);
          std::vector<int> child(np);
          for (int p = 0; p < np; ++p) {
            child[p] = 2 * colour[p] + (colour[p] == target && p != v ? 1 : 0);
          }
          path.push_back(v);
          search(std::move(child), path);
          path.pop_back();
        }
      }

      Hypergraph const&             _h;
      std::vector<std::uint8_t>     _best, _first;
      std::vector<int>              _best_lab, _first_lab;
      std::vector<std::vector<int>> _autos;
    };

    std::vector<std::uint8_t> form_of(std::vector<Triple> const& triples,
                                      std::array<int, 3> const&  dims) {
      Hypergraph h(triples, dims);
      return CanonicalSearch(h).run();
    }

  }  // namespace

  std::string CanonicalForm::hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string           out;
    out.reserve(2 * _bytes.size());
    for (auto b : _bytes) {
      out += digits[b >> 4];
      out += digits[b & 15];
    }
    return out;
  }

  CanonicalForm CanonicalForm::from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) {
      throw PlsError("odd-length canonical id");
    }
    auto nibble = [](char c) -> int {
      if (c >= '0' && c <= '9') {
        return c - '0';
      }
      if (c >= 'a' && c <= 'f') {
        return c - 'a' + 10;
      }
      throw PlsError("invalid hex digit in canonical id");
    };
    std::vector<std::uint8_t> bytes;
    for (std::size_t i = 0; i < hex.size(); i += 2) {
      bytes.push_back(static_cast<std::uint8_t>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
    }
    return CanonicalForm(std::move(bytes));
  }

  Pls CanonicalForm::to_pls() const {
    if (_bytes.size() < 4 || _bytes.size() != 4 + 3 * std::size_t{_bytes[3]}) {
      throw PlsError("malformed canonical form");
    }
    std::vector<Triple> triples;
    for (std::size_t i = 4; i < _bytes.size(); i += 3) {
      triples.push_back({_bytes[i], _bytes[i + 1], _bytes[i + 2]});
    }
    return Pls::from_triples(std::move(triples));
  }

  CanonicalForm canonical_form(Pls const& p) {
    std::vector<std::uint8_t> best;
    std::vector<Triple>       tri(p.size());
    for (auto const& perm : all_coordinate_perms()) {
      for (std::size_t i = 0; i < p.size(); ++i) {
        auto const& t = p.triples()[i];
        tri[i]        = {t[perm[0]], t[perm[1]], t[perm[2]]};
      }
      auto f = form_of(tri, {p.dim(perm[0]), p.dim(perm[1]), p.dim(perm[2])});
      if (best.empty() || f < best) {
        best = std::move(f);
      }
    }
    return CanonicalForm(std::move(best));
  }

  CanonicalForm isotopy_form(Pls const& p) {
    return CanonicalForm(form_of(p.triples(), {p.nrows(), p.ncols(), p.nsyms()}));
  }

  ////////////////////////////////////////////////////////////////////////
  // Connectivity
  ////////////////////////////////////////////////////////////////////////

  std::vector<std::vector<std::size_t>> components(Pls const& p) {
    auto const& tri = p.triples();
    UnionFind   uf(tri.size());
    for (int coord = 0; coord < 3; ++coord) {
      std::vector<int> first(p.dim(coord), -1);
      for (std::size_t i = 0; i < tri.size(); ++i) {
        int& f = first[tri[i][coord]];
        if (f < 0) {
          f = static_cast<int>(i);
        } else {
          uf.unite(f, static_cast<int>(i));
        }
      }
    }
    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < tri.size(); ++i) {
      groups[uf.find(static_cast<int>(i))].push_back(i);
    }
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : groups) {
      out.push_back(std::move(members));
    }
    return out;
  }

  bool is_connected(Pls const& p) {
    return components(p).size() == 1;
  }

}  // namespace plsg

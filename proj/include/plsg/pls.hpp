#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace plsg {

  class PlsError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // A filled cell (row, column, symbol). Indices are 0-based internally; the
  // text format and user-facing output are 1-based.
  struct Triple {
    int row = 0;
    int col = 0;
    int sym = 0;

    int  operator[](int coord) const { return coord == 0 ? row : coord == 1 ? col : sym; }
    int& operator[](int coord) { return coord == 0 ? row : coord == 1 ? col : sym; }

    auto operator<=>(Triple const&) const = default;
  };

  // A partial Latin square with no empty rows, no empty columns and no unused
  // symbols. Triples are kept sorted by (row, col).
  class Pls {
   public:
    Pls() = default;

    // Validates the Latin property and the density of all three index sets.
    // Symbol names default to a, b, c, ...
    static Pls from_triples(std::vector<Triple>      triples,
                            std::vector<std::string> sym_names = {});

    std::vector<Triple> const& triples() const noexcept { return _triples; }
    std::size_t                size() const noexcept { return _triples.size(); }
    int                        nrows() const noexcept { return _dims[0]; }
    int                        ncols() const noexcept { return _dims[1]; }
    int                        nsyms() const noexcept { return _dims[2]; }
    int                        dim(int coord) const { return _dims.at(coord); }

    std::string const& symbol_name(int s) const { return _names.at(s); }
    std::vector<std::string> const& symbol_names() const noexcept { return _names; }

    // Cells per row / column / symbol.
    std::vector<int> degrees(int coord) const;

    // Symbol at (r, c), or -1 if the cell is empty.
    int at(int r, int c) const;

    friend bool operator==(Pls const& a, Pls const& b) {
      return a._triples == b._triples;
    }

   private:
    std::vector<Triple>      _triples;
    std::array<int, 3>       _dims{0, 0, 0};
    std::vector<std::string> _names;
  };

  std::string default_symbol_name(int s);

  // Grid text: one line per row, whitespace-separated tokens, "." for empty.
  Pls         parse_pls(std::string_view text);
  std::string render_pls(Pls const& p);

  // perm[i] is the source coordinate of coordinate i of the result, so
  // {1, 0, 2} transposes rows and columns.
  Pls conjugate(Pls const& p, std::array<int, 3> const& perm);

  std::array<std::array<int, 3>, 6> const& all_coordinate_perms();

  // Independent relabelling of rows, columns and symbols;
  // row_map[old] = new, and so on.
  Pls relabel(Pls const&              p,
              std::vector<int> const& row_map,
              std::vector<int> const& col_map,
              std::vector<int> const& sym_map);

  // Species invariant. Two PLS have equal forms iff they are in the same
  // species.
  class CanonicalForm {
   public:
    CanonicalForm() = default;
    explicit CanonicalForm(std::vector<std::uint8_t> bytes)
        : _bytes(std::move(bytes)) {}

    std::vector<std::uint8_t> const& bytes() const noexcept { return _bytes; }
    std::string                      hex() const;
    static CanonicalForm             from_hex(std::string_view hex);

    // The PLS whose sorted triple list is this encoding.
    Pls to_pls() const;

    auto operator<=>(CanonicalForm const&) const = default;

   private:
    std::vector<std::uint8_t> _bytes;
  };

  CanonicalForm canonical_form(Pls const& p);

  // Form under row/column/symbol relabelling only (no conjugation).
  CanonicalForm isotopy_form(Pls const& p);

  bool is_connected(Pls const& p);

  // Triple indices of each connected component of the triple graph.
  std::vector<std::vector<std::size_t>> components(Pls const& p);

}  // namespace plsg

#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "plsg/presentation.hpp"

namespace plsg {

  class IntegerMatrix {
   public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : _rows(rows), _cols(cols), _data(rows * cols) {}
    IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntegerMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return _rows; }
    std::size_t cols() const noexcept { return _cols; }

    mpz_class&       operator()(std::size_t i, std::size_t j) { return _data[i * _cols + j]; }
    mpz_class const& operator()(std::size_t i, std::size_t j) const { return _data[i * _cols + j]; }

    friend IntegerMatrix operator*(IntegerMatrix const& a, IntegerMatrix const& b);
    friend bool          operator==(IntegerMatrix const& a, IntegerMatrix const& b) {
      return a._rows == b._rows && a._cols == b._cols && a._data == b._data;
    }

    // Exact, by fraction-free elimination. Square matrices only.
    mpz_class determinant() const;

    std::string to_string() const;

   private:
    std::size_t            _rows = 0;
    std::size_t            _cols = 0;
    std::vector<mpz_class> _data;
  };

  // U * A * V == D with U, V unimodular and D diagonal with d1 | d2 | ...,
  // all nonnegative.
  struct SmithForm {
    IntegerMatrix D;
    IntegerMatrix U;
    IntegerMatrix V;

    std::vector<mpz_class> diagonal() const;
  };

  SmithForm smith_normal_form(IntegerMatrix const& a);

  // One row per relator, one column per generator; net exponent sums.
  IntegerMatrix exponent_matrix(Presentation const& pres);

  // Coordinates are the torsion factors (each > 1, a divisibility chain)
  // followed by `rank` free coordinates. Torsion entries are reduced into
  // [0, factor).
  using AbelianElement = std::vector<mpz_class>;

  struct AbelianGroup {
    std::vector<mpz_class>      torsion;
    int                         rank = 0;
    std::vector<AbelianElement> gen_images;

    std::size_t    dimension() const noexcept { return torsion.size() + rank; }
    AbelianElement reduce(AbelianElement v) const;
    AbelianElement image(Word const& w) const;
    bool           is_trivial() const noexcept { return torsion.empty() && rank == 0; }
    std::string    describe() const;
  };

  AbelianGroup abelianization(Presentation const& pres);

  struct AbelianLabels {
    std::vector<AbelianElement> rows;
    std::vector<AbelianElement> cols;
    std::vector<AbelianElement> syms;

    std::vector<AbelianElement> const& get(Family f) const;
  };

  AbelianLabels            abelian_labels(AbelianGroup const& a, LabelFamilies const& fams);
  std::optional<Collision> abelian_collision(AbelianLabels const& labels);

  // A finite abelian group Z/moduli[0] x ... with labels, embedding the PLS.
  struct FiniteAbelianWitness {
    std::vector<mpz_class> moduli;
    AbelianLabels          labels;

    mpz_class order() const;
  };

  // Keeps the torsion part and reduces free coordinate i modulo
  // 2 * max|e| + 1 over the exponents e seen in that coordinate.
  FiniteAbelianWitness finite_abelian_witness(AbelianGroup const& a, AbelianLabels const& labels);

  // Direct check: r_i + c_j == s for every cell, families injective.
  bool check_abelian_witness(Pls const& p, FiniteAbelianWitness const& w);

  struct AbelianTestResult {
    bool                                embeds = false;
    std::optional<Collision>            collision;
    std::optional<FiniteAbelianWitness> witness;
  };

  AbelianTestResult abelian_embedding_test(Pls const& p, PlsGroup const& g);
  AbelianTestResult abelian_embedding_test(Pls const& p);

}  // namespace plsg

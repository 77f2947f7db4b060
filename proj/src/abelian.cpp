#include "plsg/abelian.hpp"

#include <algorithm>
#include <sstream>

namespace plsg {

  ////////////////////////////////////////////////////////////////////////
  // IntegerMatrix
  ////////////////////////////////////////////////////////////////////////

  IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows)
      : _rows(rows.size()), _cols(rows.size() ? rows.begin()->size() : 0) {
    for (auto const& row : rows) {
      if (row.size() != _cols) {
        throw std::invalid_argument("IntegerMatrix: ragged initializer");
      }
      for (long x : row) {
        _data.emplace_back(x);
      }
    }
  }

  IntegerMatrix IntegerMatrix::identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = 1;
    }
    return m;
  }

  IntegerMatrix operator*(IntegerMatrix const& a, IntegerMatrix const& b) {
    if (a.cols() != b.rows()) {
      throw std::invalid_argument("IntegerMatrix: dimension mismatch in product");
    }
    IntegerMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (a(i, k) == 0) {
          continue;
        }
        for (std::size_t j = 0; j < b.cols(); ++j) {
          out(i, j) += a(i, k) * b(k, j);
        }
      }
    }
    return out;
  }

  mpz_class IntegerMatrix::determinant() const {
    if (_rows != _cols) {
      throw std::invalid_argument("IntegerMatrix: determinant of a non-square matrix");
    }
    std::size_t const n = _rows;
    if (n == 0) {
      return 1;
    }
    IntegerMatrix m    = *this;
    mpz_class     prev = 1;
    int           sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (m(k, k) == 0) {
        std::size_t p = k + 1;
        while (p < n && m(p, k) == 0) {
          ++p;
        }
        if (p == n) {
          return 0;
        }
        for (std::size_t j = 0; j < n; ++j) {
          std::swap(m(k, j), m(p, j));
        }
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
          mpz_class x = m(i, j) * m(k, k) - m(i, k) * m(k, j);
          mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
          m(i, j) = x;
        }
      }
      prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
  }

  std::string IntegerMatrix::to_string() const {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < _rows; ++i) {
      out << (i ? ", [" : "[");
      for (std::size_t j = 0; j < _cols; ++j) {
        out << (j ? ", " : "") << (*this)(i, j);
      }
      out << ']';
    }
    out << ']';
    return out.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // Smith normal form
  ////////////////////////////////////////////////////////////////////////

  namespace {

    void swap_rows(IntegerMatrix& m, std::size_t a, std::size_t b) {
      if (a != b) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
          std::swap(m(a, j), m(b, j));
        }
      }
    }

    void swap_cols(IntegerMatrix& m, std::size_t a, std::size_t b) {
      if (a != b) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
          std::swap(m(i, a), m(i, b));
        }
      }
    }

    // row dst += q * row src
    void add_row(IntegerMatrix& m, std::size_t dst, std::size_t src, mpz_class const& q) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        m(dst, j) += q * m(src, j);
      }
    }

    void add_col(IntegerMatrix& m, std::size_t dst, std::size_t src, mpz_class const& q) {
      for (std::size_t i = 0; i < m.rows(); ++i) {
        m(i, dst) += q * m(i, src);
      }
    }

    mpz_class mod_nonneg(mpz_class const& x, mpz_class const& m) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
      return r;
    }

  }  // namespace

  std::vector<mpz_class> SmithForm::diagonal() const {
    std::vector<mpz_class> out;
    for (std::size_t t = 0; t < std::min(D.rows(), D.cols()); ++t) {
      out.push_back(D(t, t));
    }
    return out;
  }

  SmithForm smith_normal_form(IntegerMatrix const& a) {
    SmithForm         s{a, IntegerMatrix::identity(a.rows()), IntegerMatrix::identity(a.cols())};
    auto&             D = s.D;
    std::size_t const r = a.rows(), c = a.cols();

    for (std::size_t t = 0; t < std::min(r, c); ++t) {
      while (true) {
        // pivot: smallest nonzero absolute value in the trailing block
        std::size_t pi = r, pj = c;
        for (std::size_t i = t; i < r; ++i) {
          for (std::size_t j = t; j < c; ++j) {
            if (D(i, j) != 0 && (pi == r || abs(D(i, j)) < abs(D(pi, pj)))) {
              pi = i;
              pj = j;
            }
          }
        }
        if (pi == r) {
          return s;
        }
        swap_rows(D, t, pi);
        swap_rows(s.U, t, pi);
        swap_cols(D, t, pj);
        swap_cols(s.V, t, pj);

        bool clean = true;
        for (std::size_t i = t + 1; i < r; ++i) {
          if (D(i, t) != 0) {
            mpz_class q = D(i, t) / D(t, t);
            add_row(D, i, t, -q);
            add_row(s.U, i, t, -q);
            clean = clean && D(i, t) == 0;
          }
        }
        for (std::size_t j = t + 1; j < c; ++j) {
          if (D(t, j) != 0) {
            mpz_class q = D(t, j) / D(t, t);
            add_col(D, j, t, -q);
            add_col(s.V, j, t, -q);
            clean = clean && D(t, j) == 0;
          }
        }
        if (!clean) {
          continue;
        }
        // divisibility of the trailing block by the pivot
        std::size_t bad = r;
        for (std::size_t i = t + 1; i < r && bad == r; ++i) {
          for (std::size_t j = t + 1; j < c; ++j) {
            if (D(i, j) % D(t, t) != 0) {
              bad = i;
              break;
            }
          }
        }
        if (bad == r) {
          break;
        }
        add_row(D, t, bad, 1);
        add_row(s.U, t, bad, 1);
      }
      if (D(t, t) < 0) {
        add_row(D, t, t, -2);
        add_row(s.U, t, t, -2);
      }
    }
    return s;
  }

  ////////////////////////////////////////////////////////////////////////
  // Abelianization
  ////////////////////////////////////////////////////////////////////////

  IntegerMatrix exponent_matrix(Presentation const& pres) {
    IntegerMatrix m(pres.relators.size(), pres.generators.size());
    for (std::size_t i = 0; i < pres.relators.size(); ++i) {
      auto sums = exponent_sums(pres.relators[i], pres.num_generators());
      for (std::size_t j = 0; j < sums.size(); ++j) {
        m(i, j) = sums[j];
      }
    }
    return m;
  }

  AbelianElement AbelianGroup::reduce(AbelianElement v) const {
    for (std::size_t i = 0; i < torsion.size(); ++i) {
      v[i] = mod_nonneg(v[i], torsion[i]);
    }
    return v;
  }

  AbelianElement AbelianGroup::image(Word const& w) const {
    AbelianElement v(dimension());
    for (Letter x : w) {
      auto const& g = gen_images.at(generator_of(x));
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (is_inverse(x)) {
          v[i] -= g[i];
        } else {
          v[i] += g[i];
        }
      }
    }
    return reduce(std::move(v));
  }

  std::string AbelianGroup::describe() const {
    if (is_trivial()) {
      return "1";
    }
    std::string out;
    for (auto const& t : torsion) {
      out += (out.empty() ? "Z/" : " x Z/") + t.get_str();
    }
    for (int i = 0; i < rank; ++i) {
      out += out.empty() ? "Z" : " x Z";
    }
    return out;
  }

  AbelianGroup abelianization(Presentation const& pres) {
    auto              snf = smith_normal_form(exponent_matrix(pres));
    std::size_t const r = snf.D.rows(), c = snf.D.cols();
    AbelianGroup      a;
    std::vector<std::size_t> torsion_cols, free_cols;
    for (std::size_t t = 0; t < c; ++t) {
      mpz_class d = t < std::min(r, c) ? snf.D(t, t) : mpz_class(0);
      if (d == 0) {
        free_cols.push_back(t);
      } else if (d > 1) {
        torsion_cols.push_back(t);
        a.torsion.push_back(d);
      }
    }
    a.rank = static_cast<int>(free_cols.size());
    for (std::size_t g = 0; g < c; ++g) {
      AbelianElement v;
      for (auto t : torsion_cols) {
        v.push_back(snf.V(g, t));
      }
      for (auto t : free_cols) {
        v.push_back(snf.V(g, t));
      }
      a.gen_images.push_back(a.reduce(std::move(v)));
    }
    return a;
  }

  std::vector<AbelianElement> const& AbelianLabels::get(Family f) const {
    return f == Family::rows ? rows : f == Family::cols ? cols : syms;
  }

  AbelianLabels abelian_labels(AbelianGroup const& a, LabelFamilies const& fams) {
    AbelianLabels out;
    for (auto const& w : fams.rows) {
      out.rows.push_back(a.image(w));
    }
    for (auto const& w : fams.cols) {
      out.cols.push_back(a.image(w));
    }
    for (auto const& w : fams.syms) {
      out.syms.push_back(a.image(w));
    }
    return out;
  }

  std::optional<Collision> abelian_collision(AbelianLabels const& labels) {
    for (Family f : kFamilies) {
      auto const& v = labels.get(f);
      for (std::size_t j = 1; j < v.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
          if (v[i] == v[j]) {
            return Collision{f, static_cast<int>(i), static_cast<int>(j)};
          }
        }
      }
    }
    return std::nullopt;
  }

  mpz_class FiniteAbelianWitness::order() const {
    mpz_class n = 1;
    for (auto const& m : moduli) {
      n *= m;
    }
    return n;
  }

  FiniteAbelianWitness finite_abelian_witness(AbelianGroup const& a, AbelianLabels const& labels) {
    FiniteAbelianWitness w;
    w.moduli = a.torsion;
    for (int i = 0; i < a.rank; ++i) {
      std::size_t coord = a.torsion.size() + i;
      mpz_class   max_abs = 0;
      for (Family f : kFamilies) {
        for (auto const& v : labels.get(f)) {
          max_abs = std::max(max_abs, mpz_class(abs(v[coord])));
        }
      }
      w.moduli.push_back(2 * max_abs + 1);
    }
    auto reduce = [&](std::vector<AbelianElement> const& in) {
      std::vector<AbelianElement> out;
      for (auto v : in) {
        for (std::size_t i = 0; i < v.size(); ++i) {
          v[i] = mod_nonneg(v[i], w.moduli[i]);
        }
        out.push_back(std::move(v));
      }
      return out;
    };
    w.labels.rows = reduce(labels.rows);
    w.labels.cols = reduce(labels.cols);
    w.labels.syms = reduce(labels.syms);
    return w;
  }

  bool check_abelian_witness(Pls const& p, FiniteAbelianWitness const& w) {
    auto const& L = w.labels;
    if (static_cast<int>(L.rows.size()) != p.nrows() || static_cast<int>(L.cols.size()) != p.ncols()
        || static_cast<int>(L.syms.size()) != p.nsyms()) {
      return false;
    }
    for (Family f : kFamilies) {
      for (auto const& v : L.get(f)) {
        if (v.size() != w.moduli.size()) {
          return false;
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (v[i] < 0 || v[i] >= w.moduli[i]) {
            return false;
          }
        }
      }
    }
    for (auto const& t : p.triples()) {
      for (std::size_t i = 0; i < w.moduli.size(); ++i) {
        if (mod_nonneg(L.rows[t.row][i] + L.cols[t.col][i] - L.syms[t.sym][i], w.moduli[i]) != 0) {
          return false;
        }
      }
    }
    return !abelian_collision(L).has_value();
  }

  AbelianTestResult abelian_embedding_test(Pls const& p, PlsGroup const& g) {
    AbelianTestResult result;
    auto              a      = abelianization(g.reduced());
    auto              labels = abelian_labels(a, g.labels);
    result.collision         = abelian_collision(labels);
    result.embeds            = !result.collision;
    if (result.embeds) {
      result.witness = finite_abelian_witness(a, labels);
      if (!check_abelian_witness(p, *result.witness)) {
        throw std::logic_error("abelian witness failed verification");
      }
    }
    return result;
  }

  AbelianTestResult abelian_embedding_test(Pls const& p) {
    return abelian_embedding_test(p, build_pls_group(p));
  }

}  // namespace plsg

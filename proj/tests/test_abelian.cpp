#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "plsg/abelian.hpp"
#include "plsg/corpus.hpp"
#include "plsg/finite_group.hpp"

using namespace plsg;

namespace {

  bool is_diagonal_chain(IntegerMatrix const& d) {
    mpz_class prev = 1;
    bool      zero_seen = false;
    for (std::size_t i = 0; i < d.rows(); ++i) {
      for (std::size_t j = 0; j < d.cols(); ++j) {
        if (i != j && d(i, j) != 0) {
          return false;
        }
      }
      if (i < d.cols()) {
        mpz_class x = d(i, i);
        if (x < 0 || (zero_seen && x != 0)) {
          return false;
        }
        if (x == 0) {
          zero_seen = true;
        } else if (x % prev != 0) {
          return false;
        } else {
          prev = x;
        }
      }
    }
    return true;
  }

  // Invariant factors as ratios of gcds of k x k minors.
  std::vector<mpz_class> determinantal_factors(IntegerMatrix const& a) {
    std::size_t const      r = a.rows(), c = a.cols(), top = std::min(r, c);
    std::vector<mpz_class> divisors{1};
    for (std::size_t k = 1; k <= top; ++k) {
      mpz_class        g = 0;
      std::vector<int> rs(k), cs(k);
      auto             next_subset = [](std::vector<int>& s, int n) {
        int k = static_cast<int>(s.size());
        int i = k - 1;
        while (i >= 0 && s[i] == n - k + i) {
          --i;
        }
        if (i < 0) {
          return false;
        }
        ++s[i];
        for (int j = i + 1; j < k; ++j) {
          s[j] = s[j - 1] + 1;
        }
        return true;
      };
      std::iota(rs.begin(), rs.end(), 0);
      do {
        std::iota(cs.begin(), cs.end(), 0);
        do {
          IntegerMatrix m(k, k);
          for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
              m(i, j) = a(rs[i], cs[j]);
            }
          }
          mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), mpz_class(m.determinant()).get_mpz_t());
        } while (next_subset(cs, static_cast<int>(c)));
      } while (next_subset(rs, static_cast<int>(r)));
      if (g == 0) {
        break;
      }
      divisors.push_back(g);
    }
    std::vector<mpz_class> factors;
    for (std::size_t k = 1; k < divisors.size(); ++k) {
      factors.push_back(divisors[k] / divisors[k - 1]);
    }
    return factors;
  }

  std::vector<mpz_class> nonzero_diagonal(SmithForm const& s) {
    std::vector<mpz_class> out;
    for (auto const& x : s.diagonal()) {
      if (x != 0) {
        out.push_back(x);
      }
    }
    return out;
  }

  // r + c == s modulo the moduli, families injective.
  bool independent_abelian_check(Pls const& p, FiniteAbelianWitness const& w) {
    auto reduce = [&](AbelianElement v) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] %= w.moduli[i];
        if (v[i] < 0) {
          v[i] += w.moduli[i];
        }
      }
      return v;
    };
    for (Family f : kFamilies) {
      std::set<std::vector<std::string>> seen;
      for (auto const& e : w.labels.get(f)) {
        if (e.size() != w.moduli.size()) {
          return false;
        }
        std::vector<std::string> key;
        for (auto const& x : reduce(e)) {
          key.push_back(x.get_str());
        }
        if (!seen.insert(key).second) {
          return false;
        }
      }
    }
    for (auto const& t : p.triples()) {
      AbelianElement sum = w.labels.rows[t.row];
      for (std::size_t i = 0; i < sum.size(); ++i) {
        sum[i] += w.labels.cols[t.col][i];
      }
      if (reduce(sum) != reduce(w.labels.syms[t.sym])) {
        return false;
      }
    }
    return true;
  }

}  // namespace

TEST_CASE("exponent matrices") {
  auto m = exponent_matrix(parse_presentation("u v | v^2 u^-2"));
  CHECK(m == IntegerMatrix{{-2, 2}});
  auto empty = exponent_matrix(parse_presentation("a b c |"));
  CHECK(empty.rows() == 0);
  CHECK(empty.cols() == 3);
  // b^-1 [b, b^a] has net exponent -1 in b
  CHECK(exponent_matrix(parse_presentation("a b | b^-2 a^-1 b^-1 a b a^-1 b a")) == IntegerMatrix{{0, -1}});
}

TEST_CASE("Smith forms of small matrices") {
  auto s = smith_normal_form(IntegerMatrix{{2, 4}, {6, 8}});
  CHECK(s.D == IntegerMatrix{{2, 0}, {0, 4}});
  CHECK(determinantal_factors(IntegerMatrix{{2, 4}, {6, 8}}) == std::vector<mpz_class>{2, 4});
  auto id = smith_normal_form(IntegerMatrix::identity(3));
  CHECK(id.D == IntegerMatrix::identity(3));
  auto row = smith_normal_form(IntegerMatrix{{-2, 2}});
  CHECK(row.D == IntegerMatrix{{2, 0}});
  auto zero = smith_normal_form(IntegerMatrix(2, 3));
  CHECK(zero.D == IntegerMatrix(2, 3));
}

TEST_CASE("Smith form identities on random matrices") {
  oracle::Rng                         rng(99);
  std::uniform_int_distribution<int>  dim(1, 8), entry(-20, 20), sparse(0, 3);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t   r = dim(rng), c = dim(rng);
    IntegerMatrix a(r, c);
    bool          thin = trial % 4 == 0;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        a(i, j) = thin && sparse(rng) != 0 ? 0 : entry(rng);
      }
    }
    auto s = smith_normal_form(a);
    CAPTURE(a.to_string());
    CHECK(s.U * a * s.V == s.D);
    CHECK(abs(s.U.determinant()) == 1);
    CHECK(abs(s.V.determinant()) == 1);
    CHECK(is_diagonal_chain(s.D));
    if (r <= 5 && c <= 5) {
      CHECK(nonzero_diagonal(s) == determinantal_factors(a));
    }
  }
}

TEST_CASE("abelianizations") {
  auto ex2 = abelianization(parse_presentation("u v | v^2 u^-2"));
  CHECK(ex2.torsion == std::vector<mpz_class>{2});
  CHECK(ex2.rank == 1);
  auto u = ex2.image(parse_word("u", {"u", "v"}));
  auto v = ex2.image(parse_word("v", {"u", "v"}));
  CHECK(u != v);
  CHECK(ex2.image(parse_word("v^-1 u^2", {"u", "v"})) == v);
  CHECK(ex2.describe() == "Z/2 x Z");

  auto ex1 = abelianization(build_pls_group(corpus_pls("ne_free_collision")).reduced());
  CHECK(ex1.torsion.empty());
  CHECK(ex1.rank == 1);

  CHECK(abelianization(parse_presentation("a | a")).is_trivial());
  auto b = abelianization(parse_presentation("a b | b^-2 a^-1 b^-1 a b a^-1 b a"));
  CHECK(b.rank == 1);
  CHECK(b.torsion.empty());
}

TEST_CASE("abelian embedding test on examples") {
  auto sq = parse_pls("a b\nb a");
  auto r  = abelian_embedding_test(sq);
  REQUIRE(r.embeds);
  CHECK(r.witness->order() == 2);
  CHECK(check_abelian_witness(sq, *r.witness));

  auto ex2 = corpus_pls("ne_rewriting_collision");
  auto r2  = abelian_embedding_test(ex2);
  CHECK_FALSE(r2.embeds);
  REQUIRE(r2.collision);
  CHECK(r2.collision->family == Family::syms);
  std::set<std::string> pair{ex2.symbol_name(r2.collision->first), ex2.symbol_name(r2.collision->second)};
  // c plays v and e plays v^-1 u^2
  CHECK(pair == std::set<std::string>{"c", "e"});

  CHECK_FALSE(abelian_embedding_test(corpus_pls("ne_free_collision")).embeds);
  CHECK_FALSE(abelian_embedding_test(corpus_pls("infnotfin_b")).embeds);
  auto fig = abelian_embedding_test(corpus_pls("disconnected_not_c6"));
  REQUIRE(fig.embeds);
  CHECK(check_abelian_witness(corpus_pls("disconnected_not_c6"), *fig.witness));
}

TEST_CASE("witness moduli") {
  AbelianGroup  z{{}, 1, {}};
  AbelianLabels labels{{{0}, {1}, {3}}, {{0}}, {{0}}};
  auto          w = finite_abelian_witness(z, labels);
  CHECK(w.moduli == std::vector<mpz_class>{7});
  CHECK(w.order() == 7);

  AbelianGroup  finite{{2, 6}, 0, {}};
  AbelianLabels fl{{{0, 0}, {1, 3}}, {{0, 0}}, {{1, 5}}};
  auto          wf = finite_abelian_witness(finite, fl);
  CHECK(wf.moduli == std::vector<mpz_class>{2, 6});
  CHECK(wf.order() == 12);
}

TEST_CASE("size-6 candidates: ten of eleven are abelian") {
  auto const& cat   = oracle::small_catalogs(6)[5];
  int         cands = 0, abelian = 0;
  for (auto const& [form, p] : cat.reps) {
    if (candidate_flags(p).candidate) {
      ++cands;
      abelian += abelian_embedding_test(p).embeds;
    }
  }
  CHECK(cands == 11);
  CHECK(abelian == 10);
}

TEST_CASE("abelian test agrees with search in abelian groups up to order 16") {
  auto                        groups = GroupCatalog::build(16);
  std::vector<GroupPtr>       abelian;
  for (auto const& g : groups.groups()) {
    if (g->is_abelian()) {
      abelian.push_back(g);
    }
  }
  CHECK(abelian.size() == 1 + 1 + 1 + 2 + 1 + 1 + 1 + 3 + 2 + 1 + 1 + 2 + 1 + 1 + 1 + 5);
  int embeds = 0, refuted = 0;
  for (auto const& cat : oracle::small_catalogs(6)) {
    for (auto const& [form, p] : cat.reps) {
      auto r = abelian_embedding_test(p);
      CAPTURE(render_pls(p));
      if (r.embeds) {
        ++embeds;
        REQUIRE(r.witness);
        CHECK(check_abelian_witness(p, *r.witness));
        CHECK(independent_abelian_check(p, *r.witness));
        if (r.witness->order() <= 16) {
          CHECK(std::any_of(abelian.begin(), abelian.end(),
                            [&](GroupPtr const& g) { return oracle::naive_embeds(p, *g); }));
        }
      } else {
        ++refuted;
        CHECK(std::none_of(abelian.begin(), abelian.end(),
                           [&](GroupPtr const& g) { return oracle::naive_embeds(p, *g); }));
      }
    }
  }
  CHECK(embeds > 0);
  CHECK(refuted > 0);
}

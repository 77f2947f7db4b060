#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "oracles.hpp"
#include "plsg/abelian.hpp"
#include "plsg/corpus.hpp"
#include "plsg/presentation.hpp"
#include "plsg/rewriting.hpp"

using namespace plsg;

namespace {

  Word random_word(oracle::Rng& rng, int gens, int max_len) {
    Word w(std::uniform_int_distribution<int>(0, max_len)(rng));
    for (auto& x : w) {
      x = static_cast<Letter>(std::uniform_int_distribution<int>(0, 2 * gens - 1)(rng));
    }
    return w;
  }

  Word stack_reduce(Word const& w) {
    Word out;
    for (Letter x : w) {
      if (!out.empty() && out.back() == (x ^ 1U)) {
        out.pop_back();
      } else {
        out.push_back(x);
      }
    }
    return out;
  }

  int generator_index(Presentation const& pres, std::string const& name) {
    auto it = std::find(pres.generators.begin(), pres.generators.end(), name);
    REQUIRE(it != pres.generators.end());
    return static_cast<int>(it - pres.generators.begin());
  }

}  // namespace

TEST_CASE("word basics") {
  std::vector<std::string> names{"a", "b"};
  CHECK(free_reduce(parse_word("a a^-1", names)).empty());
  CHECK(free_reduce(parse_word("a b b^-1 a", names)) == parse_word("a^2", names));
  CHECK(format_word({}, names) == "1");
  CHECK(format_word(parse_word("b^-2 a^-1 b^-1 a b a^-1 b a", names), names) == "b^-2 a^-1 b^-1 a b a^-1 b a");
  CHECK(parse_word("a*b*a^-1", names) == parse_word("a b a^-1", names));
  CHECK(cyclic_reduce(parse_word("a b a^-1", names)) == parse_word("b", names));
  CHECK(cyclic_canonical(parse_word("b a", names)) == cyclic_canonical(parse_word("a b", names)));
  CHECK(cyclic_canonical(parse_word("a^-1 b^-1", names)) == cyclic_canonical(parse_word("a b", names)));
  CHECK(exponent_sums(parse_word("a b a^-1 b", names), 2) == std::vector<long>{0, 2});
  CHECK(substitute(parse_word("a b a", names), 0, parse_word("b^-1", names)) == parse_word("b^-1", names));
  CHECK(power(parse_word("a b", names), -2) == parse_word("b^-1 a^-1 b^-1 a^-1", names));
  CHECK_THROWS(parse_word("c", names));
}

TEST_CASE("free reduction agrees with a stack on random pairs") {
  oracle::Rng rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    auto u = random_word(rng, 3, 12), v = random_word(rng, 3, 12);
    auto uv = free_reduce(concat(u, v));
    CHECK(uv == stack_reduce(concat(u, v)));
    CHECK(free_reduce(concat(free_reduce(u), free_reduce(v))) == uv);
    CHECK(free_reduce(uv) == uv);
    CHECK(free_reduce(concat(u, inverse(u))).empty());
  }
}

TEST_CASE("presentation text round-trips") {
  auto pres = parse_presentation("u v | v^2 u^-2");
  CHECK(pres.num_generators() == 2);
  REQUIRE(pres.relators.size() == 1);
  CHECK(format_presentation(pres) == "u v | v^2 u^-2");
  CHECK(format_presentation(parse_presentation("a |")) == "a |");
}

TEST_CASE("presentation of the free-collision example") {
  auto p    = corpus_pls("ne_free_collision");
  auto pres = presentation_of(p);
  std::set<std::string> gens(pres.generators.begin(), pres.generators.end());
  CHECK(gens == std::set<std::string>{"r2", "r3", "r4", "c2", "c3", "c4", "a", "b", "c", "d"});
  CHECK(pres.relators.size() == 9);
  Word a_rel = free_reduce(inverse({letter(generator_index(pres, "a"))}));
  CHECK(std::count_if(pres.relators.begin(), pres.relators.end(),
                      [&](Word const& r) { return r.size() == 1 && cyclic_canonical(r) == cyclic_canonical(a_rel); })
        == 1);
  CHECK(row_generator(p, 0) == -1);
  CHECK(col_generator(p, 0) == -1);
  CHECK(pres.generators[row_generator(p, 1)] == "r2");
  CHECK(pres.generators[sym_generator(p, 0)] == "a");
}

TEST_CASE("presentation of a single cell") {
  auto p    = Pls::from_triples({{0, 0, 0}});
  auto pres = presentation_of(p);
  CHECK(pres.generators == std::vector<std::string>{"a"});
  REQUIRE(pres.relators.size() == 1);
  CHECK(pres.relators[0].size() == 1);
  auto g = build_pls_group(p);
  CHECK(g.reduced().num_generators() == 0);
  CHECK(g.labels.rows == std::vector<Word>{Word{}});
  CHECK(g.labels.cols == std::vector<Word>{Word{}});
  CHECK(g.labels.syms == std::vector<Word>{Word{}});
}

TEST_CASE("presentation of the B-family grid") {
  auto pres = presentation_of(corpus_pls("infnotfin_b"));
  CHECK(pres.relators.size() == 12);
  CHECK(pres.num_generators() == 9 + 4);
}

TEST_CASE("reduction of the free-collision example") {
  auto p = corpus_pls("ne_free_collision");
  auto g = build_pls_group(p);
  CHECK(g.reduced().num_generators() == 1);
  CHECK(g.reduced().relators.empty());
  // images as powers of the one generator t, up to t -> t^-1
  std::map<std::string, int> expect{{"c2", 1}, {"c3", 2}, {"c4", -1}, {"r2", -1}, {"r3", 2},
                                    {"r4", 1}, {"a", 0},  {"b", 3},   {"c", 1},   {"d", 1}};
  bool matched = false;
  for (int sign : {1, -1}) {
    bool all = true;
    for (auto const& [name, e] : expect) {
      all = all && g.tietze.images[generator_index(g.original, name)] == power({letter(0)}, sign * e);
    }
    matched = matched || all;
  }
  CHECK(matched);
}

TEST_CASE("reduction of the B-family grid") {
  auto g = build_pls_group(corpus_pls("infnotfin_b"));
  auto const& red = g.reduced();
  REQUIRE(red.num_generators() == 2);
  REQUIRE(red.relators.size() == 1);
  // generators are (b, a); a has net exponent 0 and b has net exponent -1
  auto sums = exponent_sums(red.relators[0], 2);
  CHECK(std::abs(sums[0]) == 1);
  CHECK(sums[1] == 0);
  CHECK(red.relators[0].size() == 9);
  // fifth row label is a b a^-1 b
  CHECK(format_word(g.labels.rows[4], red.generators) == "a b a^-1 b");
}

TEST_CASE("reduction of the rewriting-collision example") {
  auto g = build_pls_group(corpus_pls("ne_rewriting_collision"));
  auto const& red = g.reduced();
  REQUIRE(red.num_generators() == 2);
  REQUIRE(red.relators.size() == 1);
  bool shape = false;
  for (int u = 0; u < 2; ++u) {
    Word target = concat(power({letter(1 - u)}, 2), power({letter(u)}, -2));
    shape       = shape || cyclic_canonical(red.relators[0]) == cyclic_canonical(target);
  }
  CHECK(shape);
}

TEST_CASE("free collision test") {
  auto p  = corpus_pls("ne_free_collision");
  auto g  = build_pls_group(p);
  auto c  = free_collision_test(g.labels);
  REQUIRE(c);
  CHECK(c->family == Family::syms);
  std::set<std::string> pair{p.symbol_name(c->first), p.symbol_name(c->second)};
  CHECK(pair == std::set<std::string>{"c", "d"});
  CHECK(g.labels.syms[c->first] == g.labels.syms[c->second]);

  CHECK_FALSE(free_collision_test(build_pls_group(corpus_pls("ne_rewriting_collision")).labels));
  CHECK_FALSE(free_collision_test(build_pls_group(parse_pls("a b\nb a")).labels));

  // equal words in different families do not collide
  LabelFamilies fams{{{}, {letter(0)}}, {{}, {letter(0)}}, {{letter(0)}}};
  CHECK_FALSE(free_collision_test(fams));
  fams.cols.push_back({letter(0)});
  auto hit = free_collision_test(fams);
  REQUIRE(hit);
  CHECK(*hit == Collision{Family::cols, 1, 2});
}

namespace {

  // Reorders generators so relators become checkable early in the
  // homomorphism count.
  Presentation relator_order(Presentation const& pres) {
    int const         k = pres.num_generators();
    std::vector<int>  order;
    std::vector<char> placed(k, 0);
    for (;;) {
      int best = -1, best_free = 1 << 30;
      for (std::size_t r = 0; r < pres.relators.size(); ++r) {
        std::set<int> free;
        for (Letter x : pres.relators[r]) {
          if (!placed[generator_of(x)]) {
            free.insert(generator_of(x));
          }
        }
        if (!free.empty() && static_cast<int>(free.size()) < best_free) {
          best      = static_cast<int>(r);
          best_free = static_cast<int>(free.size());
        }
      }
      if (best < 0) {
        break;
      }
      for (Letter x : pres.relators[best]) {
        if (!placed[generator_of(x)]) {
          placed[generator_of(x)] = 1;
          order.push_back(generator_of(x));
        }
      }
    }
    for (int g = 0; g < k; ++g) {
      if (!placed[g]) {
        order.push_back(g);
      }
    }
    std::vector<int> rank(k);
    for (int i = 0; i < k; ++i) {
      rank[order[i]] = i;
    }
    Presentation out{pres.generators, {}};
    for (auto const& r : pres.relators) {
      Word w;
      for (Letter x : r) {
        w.push_back(letter(rank[generator_of(x)], is_inverse(x)));
      }
      out.relators.push_back(w);
    }
    return out;
  }

  bool same_abelianization(Presentation const& a, Presentation const& b) {
    auto x = abelianization(a), y = abelianization(b);
    return x.torsion == y.torsion && x.rank == y.rank;
  }

}  // namespace

TEST_CASE("reduction preserves abelianization and homomorphisms to S3") {
  auto const  s3   = oracle::symmetric3();
  auto const& cats = oracle::small_catalogs(6);
  int         compared = 0;
  for (auto const& cat : cats) {
    for (auto const& [form, p] : cat.reps) {
      auto g = build_pls_group(p);
      CHECK_FALSE(g.tietze.budget_exhausted);
      CHECK(same_abelianization(g.original, g.reduced()));
      if (g.reduced().num_generators() <= 5) {
        ++compared;
        CHECK(oracle::count_homomorphisms(relator_order(g.original), s3)
              == oracle::count_homomorphisms(g.reduced(), s3));
      }
    }
  }
  CHECK(compared > 300);
  for (auto const& e : bundled_corpus()) {
    auto g = build_pls_group(parse_pls(e.grid));
    CHECK(same_abelianization(g.original, g.reduced()));
    CHECK(oracle::count_homomorphisms(relator_order(g.original), s3)
          == oracle::count_homomorphisms(g.reduced(), s3));
  }
}

TEST_CASE("generator images satisfy the original relators") {
  auto const& cats = oracle::small_catalogs(6);
  std::vector<Pls> inputs;
  for (auto const& cat : cats) {
    for (auto const& [form, p] : cat.reps) {
      inputs.push_back(p);
    }
  }
  for (auto const& e : bundled_corpus()) {
    inputs.push_back(parse_pls(e.grid));
  }
  for (auto const& p : inputs) {
    auto g   = build_pls_group(p);
    auto rws = RewritingSystem::knuth_bendix(g.reduced());
    for (auto const& r : g.original.relators) {
      Word image;
      for (Letter x : r) {
        Word const& w = g.tietze.images[generator_of(x)];
        image         = concat(image, is_inverse(x) ? inverse(w) : w);
      }
      CHECK(rws.reduce(free_reduce(image)).empty());
    }
    auto labels = label_words(p, g.tietze.images);
    CHECK(labels.rows.size() == static_cast<std::size_t>(p.nrows()));
    CHECK(labels.cols.size() == static_cast<std::size_t>(p.ncols()));
    CHECK(labels.syms.size() == static_cast<std::size_t>(p.nsyms()));
    CHECK(labels.rows[0].empty());
    CHECK(labels.cols[0].empty());
  }
}

TEST_CASE("a free collision survives further reduction") {
  auto g = build_pls_group(corpus_pls("ne_free_collision"));
  auto c = free_collision_test(g.labels);
  REQUIRE(c);
  auto again = tietze_reduce(g.reduced());
  GeneratorImages composed;
  for (auto const& w : g.tietze.images) {
    Word out;
    for (Letter x : w) {
      Word const& v = again.images[generator_of(x)];
      out           = concat(out, is_inverse(x) ? inverse(v) : v);
    }
    composed.push_back(free_reduce(out));
  }
  auto labels = label_words(corpus_pls("ne_free_collision"), composed);
  CHECK(labels.get(c->family)[c->first] == labels.get(c->family)[c->second]);
}

#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "plsg/corpus.hpp"
#include "plsg/finite_search.hpp"
#include "plsg/rewriting.hpp"

using namespace plsg;

namespace {

  std::vector<std::string> const kUV{"u", "v"};
  std::vector<std::string> const kAB{"a", "b"};

  Word random_word(oracle::Rng& rng, int gens, int max_len) {
    Word w(std::uniform_int_distribution<int>(0, max_len)(rng));
    for (auto& x : w) {
      x = static_cast<Letter>(std::uniform_int_distribution<int>(0, 2 * gens - 1)(rng));
    }
    return w;
  }

}  // namespace

TEST_CASE("shortlex order") {
  CHECK(shortlex_less({}, {letter(0)}));
  CHECK(shortlex_less({letter(0)}, {letter(0, true)}));
  CHECK(shortlex_less({letter(0, true)}, {letter(1)}));
  CHECK(shortlex_less({letter(1)}, {letter(0), letter(0)}));
  CHECK_FALSE(shortlex_less({letter(0)}, {letter(0)}));
}

TEST_CASE("rewriting the v^2 = u^2 group") {
  auto pres = parse_presentation("u v | v^2 u^-2");
  auto rws  = RewritingSystem::knuth_bendix(pres);
  CHECK(rws.reduce(parse_word("v^-1 u^2", kUV)) == rws.reduce(parse_word("v", kUV)));
  CHECK(rws.reduce({}).empty());
  CHECK(rws.reduce(parse_word("v^2", kUV)) == rws.reduce(parse_word("u^2", kUV)));
  CHECK(rws.reduce(parse_word("u", kUV)) != rws.reduce(parse_word("v", kUV)));
  auto text = rws.format(kUV);
  CHECK(text.find(" -> ") != std::string::npos);
}

TEST_CASE("cyclic group of order 3") {
  auto rws = RewritingSystem::knuth_bendix(parse_presentation("a | a^3"));
  CHECK(rws.confluent());
  CHECK(rws.count_normal_forms(100) == 3);
}

TEST_CASE("the order-6 nonabelian group") {
  auto rws = RewritingSystem::knuth_bendix(parse_presentation("a b | a^3, b^2, a b a b"));
  CHECK(rws.confluent());
  CHECK(rws.count_normal_forms(100) == 6);
  CHECK(rws.reduce(parse_word("a b a b", kAB)).empty());
  CHECK(rws.reduce(parse_word("a^-1", kAB)) == rws.reduce(parse_word("a^2", kAB)));
  CHECK(rws.count_normal_forms(5) == std::nullopt);
}

TEST_CASE("confluent systems of cyclic groups count their elements") {
  for (int n = 1; n <= 12; ++n) {
    CAPTURE(n);
    auto rws = RewritingSystem::knuth_bendix(parse_presentation("a | a^" + std::to_string(n)));
    CHECK(rws.confluent());
    CHECK(rws.count_normal_forms(1000) == static_cast<std::size_t>(n));
  }
}

TEST_CASE("trusted rule lists") {
  RewritingSystem rws(1, {Rule{parse_word("a^2", {"a"}), {}}, Rule{parse_word("a^-1", {"a"}), parse_word("a", {"a"})}},
                      true);
  CHECK(rws.reduce(parse_word("a^5", {"a"})) == parse_word("a", {"a"}));
  CHECK(rws.reduce(parse_word("a^-3", {"a"})) == parse_word("a", {"a"}));
}

TEST_CASE("reduction is sound in a finite quotient") {
  oracle::Rng rng(41);
  auto const  s3 = oracle::symmetric3();
  struct Case {
    char const*      pres;
    std::vector<int> images;  // a homomorphism to S3
  };
  // S3 elements: 0 id, 1 and 2 three-cycles, 3..5 transpositions
  std::vector<Case> cases{{"a b | a^3, b^2, a b a b", {1, 3}},
                          {"u v | v^2 u^-2", {3, 4}},
                          {"a b | b^-2 a^-1 b^-1 a b a^-1 b a", {3, 0}}};
  for (auto const& c : cases) {
    auto pres = parse_presentation(c.pres);
    for (auto const& r : pres.relators) {
      REQUIRE(oracle::evaluate(r, s3, c.images) == 0);
    }
    auto rws = RewritingSystem::knuth_bendix(pres, {200, 32, 20000});
    for (int trial = 0; trial < 1000; ++trial) {
      auto w = random_word(rng, 2, 20);
      CHECK(oracle::evaluate(rws.reduce(w), s3, c.images) == oracle::evaluate(w, s3, c.images));
    }
  }
}

TEST_CASE("rewriting collisions") {
  auto ex2 = corpus_pls("ne_rewriting_collision");
  auto g   = build_pls_group(ex2);
  auto rws = RewritingSystem::knuth_bendix(g.reduced());
  auto c   = kb_collision_test(g.labels, rws);
  REQUIRE(c);
  CHECK(c->family == Family::syms);
  std::set<std::string> pair{ex2.symbol_name(c->first), ex2.symbol_name(c->second)};
  CHECK(pair == std::set<std::string>{"c", "e"});

  auto sq = build_pls_group(parse_pls("a b\nb a"));
  CHECK_FALSE(kb_collision_test(sq.labels, RewritingSystem::knuth_bendix(sq.reduced())));

  auto ex1 = corpus_pls("ne_free_collision");
  auto g1  = build_pls_group(ex1);
  auto c1  = kb_collision_test(g1.labels, RewritingSystem::knuth_bendix(g1.reduced()));
  REQUIRE(c1);
  CHECK(*c1 == *free_collision_test(g1.labels));
}

TEST_CASE("cyclicity proofs") {
  SUBCASE("B with the third and fifth row labels identified") {
    auto pres = parse_presentation("a b | b^-2 a^-1 b^-1 a b a^-1 b a, b^-1 b^-1 a b^-1");
    auto proof = prove_cyclic(pres);
    REQUIRE(proof);
    CHECK(check_cyclic_proof(*proof, 2));
    CHECK(proof->exponents.size() == 2);
  }
  SUBCASE("B with the fifth and sixth row labels identified") {
    auto pres  = parse_presentation("a b | b^-2 a^-1 b^-1 a b a^-1 b a, b^-1 a b^-1 a^-1 b^-1 a b^-1 a^-1");
    auto proof = prove_cyclic(pres);
    REQUIRE(proof);
    CHECK(check_cyclic_proof(*proof, 2));
  }
  SUBCASE("a free group of rank one") {
    auto proof = prove_cyclic(parse_presentation("a |"));
    REQUIRE(proof);
    CHECK(proof->generator == 0);
    CHECK(proof->exponents == std::vector<int>{1});
    CHECK(check_cyclic_proof(*proof, 1));
  }
  SUBCASE("a free group of rank two is not proved cyclic") {
    CHECK_FALSE(prove_cyclic(parse_presentation("a b |")));
  }
  SUBCASE("a tampered proof fails") {
    auto proof = prove_cyclic(parse_presentation("a b | b a^-2"));
    REQUIRE(proof);
    CHECK(check_cyclic_proof(*proof, 2));
    proof->exponents[1 - proof->generator] += 1;
    CHECK_FALSE(check_cyclic_proof(*proof, 2));
  }
}

TEST_CASE("rewriting collisions never contradict a finite embedding") {
  auto groups = GroupCatalog::build(24);
  int  ne     = 0;
  for (auto const& cat : oracle::small_catalogs(7)) {
    for (auto const& [form, p] : cat.reps) {
      if (!candidate_flags(p).candidate) {
        continue;
      }
      auto g = build_pls_group(p);
      if (kb_collision_test(g.labels, RewritingSystem::knuth_bendix(g.reduced()))) {
        ++ne;
        auto search = find_finite_embedding(p, groups);
        CHECK(search.complete);
        CHECK_FALSE(search.witness);
      }
    }
  }
  CHECK(ne == 2);
}

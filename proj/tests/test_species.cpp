#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "oracles.hpp"
#include "plsg/corpus.hpp"
#include "plsg/species.hpp"

using namespace plsg;

TEST_CASE("extension counts") {
  auto const& cats = oracle::small_catalogs(7);
  CHECK(cats[0].reps.size() == 1);
  CHECK(cats[1].reps.size() == 2);
  CHECK(cats[3].reps.size() == 18);
  for (std::size_t i = 0; i < cats.size(); ++i) {
    CHECK(cats[i].size == static_cast<int>(i + 1));
    for (auto const& [form, p] : cats[i].reps) {
      CHECK(p.size() == i + 1);
      CHECK(canonical_form(p) == form);
      CHECK(form.to_pls() == p);
    }
  }
}

TEST_CASE("catalogs match exhaustive grid enumeration up to size 5") {
  auto const& cats = oracle::small_catalogs(5);
  for (int s = 1; s <= 5; ++s) {
    CAPTURE(s);
    std::vector<CanonicalForm> keys;
    for (auto const& [form, p] : cats[s - 1].reps) {
      keys.push_back(form);
    }
    CHECK(oracle::grid_species(s) == keys);
  }
}

TEST_CASE("pruning on hand-made cases") {
  // a lone cell: its row has degree 1 and nothing remains
  CHECK(prune_condition1({{0, 0, 0}}));
  auto flags = candidate_flags(Pls::from_triples({{0, 0, 0}}));
  CHECK(flags.connected);
  CHECK_FALSE(flags.candidate);
  // an order-2 Latin square survives both tests
  auto sq = parse_pls("a b\nb a");
  CHECK(candidate_flags(sq).candidate);
  CHECK_FALSE(candidate_flags(corpus_pls("disconnected_not_c6")).candidate);
  CHECK(candidate_flags(corpus_pls("infnotfin_b")).candidate);
}

TEST_CASE("candidates among small species") {
  auto const& cats = oracle::small_catalogs(5);
  std::vector<CountRow> rows;
  for (auto const& c : cats) {
    rows.push_back(count_row(c));
  }
  CHECK(rows[0] == CountRow{1, 1, 1, 0});
  CHECK(rows[1] == CountRow{2, 2, 1, 0});
  CHECK(rows[2] == CountRow{3, 5, 3, 0});
  CHECK(rows[3] == CountRow{4, 18, 11, 2});
  CHECK(rows[4] == CountRow{5, 59, 36, 0});
}

TEST_CASE("count report through size 7") {
  auto rows = count_report(7);
  REQUIRE(rows.size() == 7);
  CHECK(rows[5] == CountRow{6, 306, 213, 11});
  CHECK(rows[6] == CountRow{7, 1861, 1405, 50});
}

TEST_CASE("candidate flags are a species invariant") {
  oracle::Rng rng(8);
  auto const& cats = oracle::small_catalogs(7);
  for (auto const& cat : cats) {
    for (auto const& [form, p] : cat.reps) {
      auto f = candidate_flags(p);
      CHECK(f.candidate == (f.connected && !f.pruned_by_cond1 && !f.pruned_by_cond2));
      if (cat.size >= 6 && !f.candidate && rng() % 8 != 0) {
        continue;
      }
      auto q = oracle::random_species_transform(rng, p);
      auto g = candidate_flags(q);
      CHECK(g.connected == f.connected);
      CHECK(g.candidate == f.candidate);
    }
  }
}

TEST_CASE("catalog files round-trip") {
  auto const& cat = oracle::small_catalogs(5)[4];
  std::stringstream buf;
  write_catalog(cat, buf);
  auto back = read_catalog(buf);
  CHECK(back.size == cat.size);
  CHECK(back.reps == cat.reps);

  auto dir = std::filesystem::temp_directory_path() / "plsg_species_test";
  std::filesystem::remove_all(dir);
  save_catalog(cat, dir);
  CHECK(std::filesystem::exists(catalog_path(dir, 5)));
  CHECK(load_catalog(dir, 5).reps == cat.reps);
  std::filesystem::remove_all(dir);

  std::stringstream bad("not a catalog\n");
  CHECK_THROWS(read_catalog(bad));
}

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "plsg/corpus.hpp"
#include "plsg/pipeline.hpp"

using namespace plsg;

namespace {

  GroupCatalog const& groups() {
    static GroupCatalog const c = GroupCatalog::build(24);
    return c;
  }

  std::string slurp(std::filesystem::path const& path) {
    std::ifstream     in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  struct TempDir {
    std::filesystem::path path;

    explicit TempDir(std::string const& name)
        : path(std::filesystem::temp_directory_path() / name) {
      std::filesystem::remove_all(path);
      std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
  };

  std::array<long, 5> counts(long ne, long ab, long nonab, long inf) { return {ne, ab, nonab, inf, 0}; }

}  // namespace

TEST_CASE("verdict names") {
  for (auto v : kVerdictKinds) {
    CHECK(parse_verdict(verdict_name(v)) == v);
  }
  CHECK(std::string(verdict_name(VerdictKind::inf_not_fin)) == "INF_NOT_FIN");
  CHECK(std::string(verdict_name(VerdictKind::ne)) == "NE");
  CHECK_FALSE(parse_verdict("FINITE"));
}

TEST_CASE("configuration hashes") {
  ClassifyConfig a, b;
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  b.workers        = 4;
  b.record_timings = true;
  CHECK(config_hash(a) == config_hash(b));
  b.max_order = 16;
  CHECK(config_hash(a) != config_hash(b));
  b            = a;
  b.kb.max_rules += 1;
  CHECK(config_hash(a) != config_hash(b));
  b                = a;
  b.quotient.seed += 1;
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("a free-word collision decides at stage 2") {
  auto p = corpus_pls("ne_free_collision");
  auto v = classify(p, groups());
  CHECK(v.kind == VerdictKind::ne);
  CHECK(v.stage == 2);
  auto const* cert = std::get_if<FreeCollisionCert>(&v.certificate);
  REQUIRE(cert);
  std::set<std::string> pair{p.symbol_name(cert->collision.first), p.symbol_name(cert->collision.second)};
  CHECK(cert->collision.family == Family::syms);
  CHECK(pair == std::set<std::string>{"c", "d"});
  CHECK(v.group.reduced().num_generators() == 1);
  CHECK(v.group.reduced().relators.empty());
  CHECK(check_verdict(p, v));
}

TEST_CASE("a rewriting collision decides at stage 6") {
  auto p = corpus_pls("ne_rewriting_collision");
  auto v = classify(p, groups());
  CHECK(v.kind == VerdictKind::ne);
  CHECK(v.stage == 6);
  auto const* cert = std::get_if<KbCollisionCert>(&v.certificate);
  REQUIRE(cert);
  CHECK(cert->collision.family == Family::syms);
  std::set<std::string> pair{p.symbol_name(cert->collision.first), p.symbol_name(cert->collision.second)};
  CHECK(pair == std::set<std::string>{"c", "e"});
  CHECK(format_presentation(v.group.reduced()) == "b c | c^2 b^-2");
  CHECK(check_verdict(p, v));

  auto forged        = v;
  auto& fc           = std::get<KbCollisionCert>(forged.certificate);
  fc.normal_form     = fc.first_word;
  fc.normal_form.push_back(letter(0));
  CHECK_FALSE(check_verdict(p, forged));
}

TEST_CASE("the B grid is infinite without finite embeddings") {
  auto p = corpus_pls("infnotfin_b");
  auto v = classify(p, groups());
  CHECK(v.kind == VerdictKind::inf_not_fin);
  CHECK(v.stage == 7);
  auto const* cert = std::get_if<BaumslagCert>(&v.certificate);
  REQUIRE(cert);
  CHECK_FALSE(cert->equivalent);
  CHECK(cert->certificate.match.family == BaumslagFamily::B);
  CHECK(cert->certificate.distinct.pairs.size() == 31);
  CHECK(check_verdict(p, v));

  auto other = classify(corpus_pls("ne_free_collision"), groups());
  CHECK_FALSE(check_verdict(corpus_pls("ne_free_collision"), v));
  CHECK_FALSE(check_verdict(p, other));
}

TEST_CASE("abelian and nonabelian verdicts") {
  auto sq = parse_pls("a b\nb a");
  auto v  = classify(sq, groups());
  CHECK(v.kind == VerdictKind::abelian);
  CHECK(v.stage == 3);
  CHECK(check_verdict(sq, v));

  int seen = 0;
  for (auto const& [form, p] : oracle::small_catalogs(6)[5].reps) {
    if (!candidate_flags(p).candidate) {
      continue;
    }
    auto r = classify(p, groups());
    if (r.kind == VerdictKind::nonabelian) {
      ++seen;
      // the reduced presentation is free, so stage 4 decides it
      CHECK(r.stage == 4);
      CHECK(r.group.reduced().relators.empty());
      auto const* cert = std::get_if<FreeResidualCert>(&r.certificate);
      REQUIRE(cert);
      REQUIRE(cert->witness);
      CHECK(cert->witness->group->order() <= 24);
      CHECK_FALSE(cert->witness->group->is_abelian());
      CHECK(check_verdict(p, r));
    }
  }
  CHECK(seen == 1);

  auto free = parse_pls("a b\nc .");
  auto fv   = classify(free, groups());
  CHECK(fv.kind != VerdictKind::unresolved);
  CHECK(check_verdict(free, fv));
}

TEST_CASE("verdicts are species invariants") {
  oracle::Rng rng(2024);
  std::map<VerdictKind, int> tally;
  for (int trial = 0; trial < 200; ++trial) {
    auto p = oracle::random_pls(rng, 1 + static_cast<int>(rng() % 7));
    auto q = oracle::random_species_transform(rng, p);
    CAPTURE(render_pls(p));
    CAPTURE(render_pls(q));
    auto vp = classify(p, groups());
    auto vq = classify(q, groups());
    CHECK(vp.kind == vq.kind);
    CHECK(vp.kind != VerdictKind::unresolved);
    CHECK(check_verdict(p, vp));
    CHECK(check_verdict(q, vq));
    ++tally[vp.kind];
  }
  CHECK(tally[VerdictKind::abelian] > 0);
}

TEST_CASE("INF_NOT_FIN survives species transformations") {
  oracle::Rng rng(77);
  for (auto name : {"infnotfin_b", "infnotfin_b1", "infnotfin_b2"}) {
    for (int trial = 0; trial < 2; ++trial) {
      auto q = oracle::random_species_transform(rng, corpus_pls(name));
      CAPTURE(render_pls(q));
      auto v = classify(q, groups());
      CHECK(v.kind == VerdictKind::inf_not_fin);
      CHECK(check_verdict(q, v));
      auto const* cert = std::get_if<BaumslagCert>(&v.certificate);
      REQUIRE(cert);
      if (cert->equivalent) {
        CHECK(canonical_form(*cert->equivalent) == canonical_form(q));
        auto forged = v;
        std::get<BaumslagCert>(forged.certificate).equivalent = corpus_pls("ne_free_collision");
        CHECK_FALSE(check_verdict(q, forged));
      }
    }
  }
}

TEST_CASE("verdict classes are mutually exclusive on small candidates") {
  std::vector<std::array<long, 5>> expect{counts(0, 0, 0, 0), counts(0, 0, 0, 0), counts(0, 0, 0, 0),
                                          counts(0, 2, 0, 0), counts(0, 0, 0, 0), counts(0, 10, 1, 0),
                                          counts(2, 44, 4, 0)};
  auto cats = oracle::small_catalogs(7);
  for (std::size_t s = 0; s < cats.size(); ++s) {
    std::array<long, 5> got{};
    for (auto const& [form, p] : cats[s].reps) {
      if (!candidate_flags(p).candidate) {
        continue;
      }
      auto v = classify(p, groups());
      ++got[static_cast<std::size_t>(v.kind)];
      CAPTURE(render_pls(p));
      CHECK(check_verdict(p, v));
      bool abelian = abelian_embedding_test(p).embeds;
      auto search  = find_finite_embedding(p, groups());
      switch (v.kind) {
        case VerdictKind::ne:
          CHECK_FALSE(abelian);
          CHECK_FALSE(search.witness);
          break;
        case VerdictKind::abelian:
          CHECK(abelian);
          break;
        case VerdictKind::nonabelian:
          CHECK_FALSE(abelian);
          break;
        default:
          CHECK_FALSE(search.witness);
          break;
      }
    }
    CAPTURE(s + 1);
    CHECK(got == expect[s]);
  }
}

TEST_CASE("JSONL records") {
  auto           p = corpus_pls("ne_rewriting_collision");
  ClassifyConfig config;
  auto           v = classify(p, groups(), config);
  auto           r = verdict_record(p, v, config);
  std::vector<std::string> keys;
  for (auto const& [k, _] : r.items()) {
    keys.push_back(k);
  }
  CHECK(keys
        == std::vector<std::string>{"canonical_id", "size", "m", "n", "nsyms", "pls", "verdict", "stage", "reduced",
                                    "certificate", "trace", "stage_timings_ms", "config_hash"});
  CHECK(r["canonical_id"] == canonical_form(p).hex());
  CHECK(r["size"] == p.size());
  CHECK(r["verdict"] == "NE");
  CHECK(r["stage"] == 6);
  CHECK(r["certificate"]["type"] == certificate_type(v.certificate));
  CHECK(r["stage_timings_ms"].empty());
  CHECK(r["config_hash"] == config_hash(config));
  CHECK(parse_pls(r["pls"].get<std::string>()).triples() == p.triples());

  config.record_timings = true;
  auto timed            = verdict_record(p, classify(p, groups(), config), config);
  CHECK_FALSE(timed["stage_timings_ms"].empty());
  CHECK(timed["config_hash"] == r["config_hash"]);
}

TEST_CASE("surveys are deterministic and resumable") {
  TempDir        dir("plsg_survey_test");
  ClassifyConfig config;
  SurveyOptions  options;
  options.min_size    = 4;
  options.max_size    = 6;
  options.catalog_dir = dir.path / "catalogs";
  options.out         = dir.path / "one.jsonl";
  auto rows           = run_survey(options, groups(), config);
  auto by_size        = [](std::vector<SurveyRow> const& rs) {
    std::map<int, std::array<long, 5>> out;
    for (auto const& r : rs) {
      out[r.size] = r.counts;
    }
    return out;
  };
  auto table = by_size(rows);
  CHECK_FALSE(table.count(5));  // no candidates of size 5
  CHECK(table[4] == counts(0, 2, 0, 0));
  CHECK(table[6] == counts(0, 10, 1, 0));
  auto first = slurp(options.out);
  CHECK(std::count(first.begin(), first.end(), '\n') == 13);
  CHECK(by_size(read_survey(options.out)) == table);

  config.workers = 3;
  options.out    = dir.path / "three.jsonl";
  run_survey(options, groups(), config);
  CHECK(slurp(options.out) == first);

  // cut the file inside the eighth record and resume
  std::size_t pos = 0;
  for (int i = 0; i < 7; ++i) {
    pos = first.find('\n', pos) + 1;
  }
  auto cut = first.substr(0, pos + 25);
  options.out = dir.path / "resumed.jsonl";
  std::ofstream(options.out, std::ios::binary) << cut;
  options.resume = true;
  auto resumed   = run_survey(options, groups(), config);
  CHECK(slurp(options.out) == first);
  CHECK(by_size(resumed) == table);

  CHECK(std::filesystem::exists(options.catalog_dir));
  CHECK(obtain_catalog(options.catalog_dir, 5).reps.size() == 59);
}

TEST_CASE("table layouts") {
  std::vector<CountRow> t1{{1, 1, 1, 0}, {4, 18, 11, 2}};
  auto                  text = format_table1(t1, false);
  CHECK(text.find("size") != std::string::npos);
  CHECK(text.find("18") != std::string::npos);
  auto csv = format_table1(t1, true);
  CHECK(csv.substr(0, csv.find('\n')) == "size,1,4");
  CHECK(csv.find("all,1,18") != std::string::npos);
  CHECK(csv.find("cand.,0,2") != std::string::npos);

  SurveyRow r;
  r.size   = 8;
  r.counts = counts(16, 435, 38, 0);
  auto t2  = format_table2({r}, true);
  CHECK(t2 == "size,NE,abelian,nonabelian,infNotFin,unresolved\n8,16,435,38,0,0\n");
}

// Command-line front end: enumerate species, survey candidates, classify a
// single PLS, check the reference artifacts, and print tables.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "plsg/corpus.hpp"
#include "plsg/pipeline.hpp"
#include "plsg/species.hpp"

namespace fs = std::filesystem;
using namespace plsg;

namespace {

  constexpr int kExitMismatch = 2;
  constexpr int kExitBudget   = 3;

  std::string read_file(fs::path const& path) {
    std::ifstream in(path);
    if (!in) {
      throw std::runtime_error("cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  void add_config_options(CLI::App& app, ClassifyConfig& config) {
    app.add_option("--max-order", config.max_order, "largest catalog group tried")->check(CLI::Range(1, 24));
    app.add_option("--max-nodes", config.max_nodes_per_group, "search nodes per catalog group");
    app.add_option("--seed", config.quotient.seed, "random quotient seed");
    app.add_option("--quotient-attempts", config.quotient.attempts, "random quotients tried");
    app.add_option("--quotient-cosets", config.quotient.max_cosets, "coset limit per random quotient");
    app.add_option("--kb-rules", config.kb.max_rules, "rewriting rule limit");
    app.add_option("--kb-rule-length", config.kb.max_rule_length, "rewriting rule length limit");
    app.add_option("--workers", config.workers, "parallel classifications")->check(CLI::PositiveNumber);
    app.add_flag("--timings", config.record_timings, "record per-stage timings (output is then not reproducible)");
  }

  GroupCatalog groups_for(ClassifyConfig const& config, std::string const& cache) {
    if (cache.empty()) {
      return GroupCatalog::build(config.max_order);
    }
    return GroupCatalog::load_or_build(cache, config.max_order);
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"partial Latin squares and the groups they define"};
  app.require_subcommand(1);

  ClassifyConfig config;
  std::string    group_cache;

  auto* enumerate = app.add_subcommand("enumerate", "enumerate species and print counts");
  int      enum_max = 8;
  fs::path enum_out;
  bool     enum_csv = false;
  enumerate->add_option("--max-size", enum_max, "largest size")->required()->check(CLI::Range(1, 12));
  enumerate->add_option("--out", enum_out, "directory for species catalogs")->required();
  enumerate->add_flag("--csv", enum_csv, "print CSV");

  auto*         survey = app.add_subcommand("survey", "classify all candidate species");
  SurveyOptions sopts;
  bool          survey_csv = false;
  survey->add_option("--max-size", sopts.max_size, "largest size")->required()->check(CLI::Range(1, 12));
  survey->add_option("--min-size", sopts.min_size, "smallest size");
  survey->add_option("--catalog", sopts.catalog_dir, "species catalog directory")->required();
  survey->add_option("--out", sopts.out, "JSONL verdict stream")->required();
  survey->add_flag("--resume", sopts.resume, "skip species already in the output");
  survey->add_option("--group-cache", group_cache, "binary group catalog file");
  survey->add_flag("--csv", survey_csv, "print CSV");
  add_config_options(*survey, config);

  auto*       classify_cmd = app.add_subcommand("classify", "classify one PLS");
  std::string file, corpus_name;
  bool        as_json = false;
  auto*       file_opt = classify_cmd->add_option("--file", file, "PLS grid file ('-' for stdin)");
  classify_cmd->add_option("--corpus", corpus_name, "bundled PLS by name")->excludes(file_opt);
  classify_cmd->add_flag("--json", as_json, "print the JSONL record");
  add_config_options(*classify_cmd, config);

  auto* verify = app.add_subcommand("verify-paper", "check the reference PLS, coset facts and product witness");
  add_config_options(*verify, config);

  auto*       report = app.add_subcommand("report", "print species and verdict tables");
  fs::path    report_in, report_catalog;
  int         report_max = 8;
  std::string report_csv;
  report->add_option("--in", report_in, "JSONL verdict stream");
  report->add_option("--catalog", report_catalog, "species catalog directory for the count table");
  report->add_option("--max-size", report_max, "largest catalog size read");
  report->add_option("--csv", report_csv, "also write both tables as CSV to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*enumerate) {
      fs::create_directories(enum_out);
      auto rows = count_report(enum_max, [&](SpeciesCatalog const& c) { save_catalog(c, enum_out); });
      std::cout << format_table1(rows, enum_csv);
      return 0;
    }

    if (*survey) {
      auto groups = groups_for(config, group_cache);
      auto rows   = run_survey(sopts, groups, config);
      std::erase_if(rows, [](SurveyRow const& r) {
        return std::all_of(r.counts.begin(), r.counts.end(), [](long c) { return c == 0; });
      });
      std::cout << format_table2(rows, survey_csv);
      return 0;
    }

    if (*classify_cmd) {
      std::string text;
      if (!corpus_name.empty()) {
        text = render_pls(corpus_pls(corpus_name));
      } else if (file == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
      } else if (!file.empty()) {
        text = read_file(file);
      } else {
        std::cerr << "classify: give --file or --corpus\n";
        return 1;
      }
      auto p      = parse_pls(text);
      auto groups = GroupCatalog::build(config.max_order);
      auto v      = classify(p, groups, config);
      if (!check_verdict(p, v)) {
        std::cerr << "internal error: certificate does not check\n";
        return 1;
      }
      if (as_json) {
        std::cout << verdict_record(p, v, config).dump() << '\n';
      } else {
        std::cout << render_pls(p) << "\n\n";
        std::cout << "group:   " << format_presentation(v.group.reduced()) << '\n';
        std::cout << "verdict: " << verdict_name(v.kind) << " (stage " << v.stage << ", "
                  << certificate_type(v.certificate) << ")\n";
        for (auto const& t : v.trace) {
          std::cout << "  " << t << '\n';
        }
        std::cout << certificate_json(v, p).dump(2) << '\n';
      }
      return 0;
    }

    if (*verify) {
      auto groups = GroupCatalog::build(config.max_order);
      auto checks = verify_reference_artifacts(groups, config);
      bool mismatch = false, budget = false;
      for (auto const& c : checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  [" << c.detail << "]\n";
        mismatch = mismatch || (!c.passed && !c.budget_limited);
        budget   = budget || c.budget_limited;
      }
      return mismatch ? kExitMismatch : budget ? kExitBudget : 0;
    }

    if (*report) {
      std::ostringstream csv;
      if (!report_catalog.empty()) {
        std::vector<CountRow> rows;
        for (int s = 1; s <= report_max && fs::exists(catalog_path(report_catalog, s)); ++s) {
          rows.push_back(count_row(load_catalog(report_catalog, s)));
        }
        std::cout << "Species counts\n" << format_table1(rows, false) << '\n';
        csv << format_table1(rows, true) << '\n';
      }
      if (!report_in.empty()) {
        auto rows = read_survey(report_in);
        std::cout << "Verdicts of candidate species\n" << format_table2(rows, false);
        csv << format_table2(rows, true);
      }
      if (!report_csv.empty()) {
        std::ofstream(report_csv) << csv.str();
      }
      return 0;
    }
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

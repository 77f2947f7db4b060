#include "plsg/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "plsg/corpus.hpp"

namespace plsg {

  using nlohmann::json;
  using nlohmann::ordered_json;

  char const* verdict_name(VerdictKind v) {
    switch (v) {
      case VerdictKind::ne:
        return "NE";
      case VerdictKind::abelian:
        return "ABELIAN";
      case VerdictKind::nonabelian:
        return "NONABELIAN";
      case VerdictKind::inf_not_fin:
        return "INF_NOT_FIN";
      case VerdictKind::unresolved:
        return "UNRESOLVED";
    }
    return "?";
  }

  std::optional<VerdictKind> parse_verdict(std::string_view name) {
    for (auto v : kVerdictKinds) {
      if (name == verdict_name(v)) {
        return v;
      }
    }
    return std::nullopt;
  }

  std::string config_hash(ClassifyConfig const& c) {
    std::ostringstream text;
    text << "max_order=" << c.max_order << ";nodes=" << c.max_nodes_per_group
         << ";tietze=" << c.tietze.max_total_length << ";kb=" << c.kb.max_rules << ',' << c.kb.max_rule_length << ','
         << c.kb.max_critical_pairs << ";quotient=" << c.quotient.seed << ',' << c.quotient.attempts << ','
         << c.quotient.max_word_length << ',' << c.quotient.max_cosets << ',' << c.quotient.max_nodes;
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text.str()) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << h;
    return hex.str();
  }

  char const* certificate_type(Certificate const& c) {
    static char const* const names[] = {"free-collision",  "kb-collision", "abelian-witness", "finite-witness",
                                        "free-residual",   "baumslag-certificate", "unresolved"};
    return names[c.index()];
  }

  namespace {

    class Stopwatch {
     public:
      explicit Stopwatch(Verdict& v, bool enabled) : _v(v), _enabled(enabled) {}

      void lap(std::string name) {
        auto now = std::chrono::steady_clock::now();
        if (_enabled) {
          _v.timings_ms.emplace_back(std::move(name),
                                     std::chrono::duration<double, std::milli>(now - _start).count());
        }
        _start = now;
      }

     private:
      Verdict&                              _v;
      bool                                  _enabled;
      std::chrono::steady_clock::time_point _start = std::chrono::steady_clock::now();
    };

    std::string label_name(Family f, int i, Pls const& p) {
      switch (f) {
        case Family::rows:
          return "r" + std::to_string(i + 1);
        case Family::cols:
          return "c" + std::to_string(i + 1);
        case Family::syms:
          return p.symbol_name(i);
      }
      return "?";
    }

    Verdict finish(Verdict v, VerdictKind kind, int stage, Certificate cert) {
      v.kind        = kind;
      v.stage       = stage;
      v.certificate = std::move(cert);
      return v;
    }

    struct FamilyStage {
      enum Outcome { no_match, no_collapse, inconclusive, proved } outcome = no_match;
      std::optional<FamilyMatch>             match;
      std::optional<CollapseCertificate>     collapse;
      std::optional<DistinctnessCertificate> distinct;
      std::size_t                            undecided = 0;
    };

    FamilyStage family_stage(Presentation const& pres, LabelFamilies const& labels, KnuthBendixLimits const& kb) {
      FamilyStage out;
      out.match = match_family(pres);
      if (!out.match) {
        return out;
      }
      out.collapse = finite_collapse_certificate(labels, *out.match);
      if (!out.collapse) {
        out.outcome = FamilyStage::no_collapse;
        return out;
      }
      auto d = distinctness_certificate(pres, labels, kb);
      if (d.certificate) {
        out.outcome  = FamilyStage::proved;
        out.distinct = std::move(d.certificate);
      } else {
        out.outcome      = FamilyStage::inconclusive;
        out.undecided    = d.inconclusive.size();
      }
      return out;
    }

  }  // namespace

  Verdict classify(Pls const& p, GroupCatalog const& catalog, ClassifyConfig const& config) {
    Verdict   v;
    Stopwatch clock(v, config.record_timings);

    v.group            = build_pls_group(p, config.tietze);
    auto const& pres   = v.group.reduced();
    auto const& labels = v.group.labels;
    v.trace.push_back("presentation: " + std::to_string(pres.num_generators()) + " generators, "
                      + std::to_string(pres.relators.size()) + " relators"
                      + (v.group.tietze.budget_exhausted ? " (reduction budget exhausted)" : ""));
    clock.lap("presentation");

    if (auto c = free_collision_test(labels)) {
      v.trace.push_back("free collision " + describe(*c, p));
      clock.lap("free_collision");
      return finish(std::move(v), VerdictKind::ne, 2, FreeCollisionCert{*c, labels.get(c->family)[c->first]});
    }
    v.trace.push_back("free collision: none");
    clock.lap("free_collision");

    auto ab = abelian_embedding_test(p, v.group);
    clock.lap("abelian");
    if (ab.embeds) {
      v.trace.push_back("abelian: embeds");
      return finish(std::move(v), VerdictKind::abelian, 3, AbelianWitnessCert{abelianization(pres), *ab.witness});
    }
    v.trace.push_back("abelian: " + describe(*ab.collision, p) + " in " + abelianization(pres).describe());

    FiniteSearchLimits fl{config.max_order, true, config.max_nodes_per_group};
    if (pres.relators.empty()) {
      auto search = find_finite_embedding(p, catalog, fl);
      clock.lap("finite_search");
      v.trace.push_back("free group of rank " + std::to_string(pres.num_generators()));
      return finish(std::move(v), VerdictKind::nonabelian, 4, FreeResidualCert{search.witness});
    }

    auto search = find_finite_embedding(p, catalog, fl);
    clock.lap("finite_search");
    if (search.witness) {
      v.trace.push_back("finite search: embeds in " + search.witness->group->name());
      return finish(std::move(v), VerdictKind::nonabelian, 5, FiniteWitnessCert{*search.witness, std::nullopt});
    }
    v.trace.push_back(std::string("finite search: none up to order ") + std::to_string(config.max_order)
                      + (search.complete ? "" : " (node budget hit)"));

    auto rws = RewritingSystem::knuth_bendix(pres, config.kb);
    clock.lap("rewriting");
    if (auto c = kb_collision_test(labels, rws)) {
      auto const& words = labels.get(c->family);
      v.trace.push_back("rewriting collision " + describe(*c, p));
      Word nf = rws.reduce(words[c->first]);
      return finish(std::move(v), VerdictKind::ne, 6,
                    KbCollisionCert{*c, words[c->first], words[c->second], std::move(nf), std::move(rws)});
    }
    v.trace.push_back(std::string("rewriting: no collision, ") + std::to_string(rws.rules().size()) + " rules, "
                      + (rws.confluent() ? "confluent" : "not confluent"));

    auto family = family_stage(pres, labels, config.kb);
    std::optional<Pls>      rep;
    std::optional<PlsGroup> rep_group;
    if (family.outcome == FamilyStage::no_match) {
      // The reduced word depends on labelling, so retry within the species.
      std::vector<Pls> tries;
      for (Pls const& base : {p, canonical_form(p).to_pls()}) {
        for (auto const& perm : all_coordinate_perms()) {
          tries.push_back(conjugate(base, perm));
        }
      }
      std::set<std::string> seen{render_pls(p)};
      for (auto& q : tries) {
        if (!seen.insert(render_pls(q)).second) {
          continue;
        }
        auto qg  = build_pls_group(q, config.tietze);
        auto alt = family_stage(qg.reduced(), qg.labels, config.kb);
        if (alt.outcome != FamilyStage::no_match) {
          family    = std::move(alt);
          rep       = std::move(q);
          rep_group = std::move(qg);
          break;
        }
      }
    }
    clock.lap("family");
    Pls const& shown = rep ? *rep : p;
    std::string where = rep ? " (species-equivalent grid)" : "";
    switch (family.outcome) {
      case FamilyStage::proved:
        v.trace.push_back(std::string("family ") + family_name(family.match->family) + where + ": collapse "
                          + describe(family.collapse->collision, shown) + ", all pairs distinct");
        return finish(std::move(v), VerdictKind::inf_not_fin, 7,
                      BaumslagCert{{*family.match, *family.collapse, std::move(*family.distinct)},
                                   std::move(rep),
                                   std::move(rep_group)});
      case FamilyStage::inconclusive:
        // No finite embedding exists, so random quotients cannot help.
        v.trace.push_back(std::string("family ") + family_name(family.match->family) + where + ": collapse "
                          + describe(family.collapse->collision, shown) + ", "
                          + std::to_string(family.undecided) + " pairs inconclusive");
        return finish(std::move(v), VerdictKind::unresolved, 7, UnresolvedTrace{});
      case FamilyStage::no_collapse:
        v.trace.push_back(std::string("family ") + family_name(family.match->family) + where
                          + ": no collapse collision");
        break;
      case FamilyStage::no_match:
        v.trace.push_back("family: no match");
        break;
    }

    auto rq = random_quotient_search(p, v.group, config.quotient);
    clock.lap("random_quotient");
    if (rq.success) {
      auto& a = rq.attempts[*rq.success];
      v.trace.push_back("random quotient of order " + std::to_string(*a.order));
      return finish(std::move(v), VerdictKind::nonabelian, 8, FiniteWitnessCert{*a.witness, a.quotient});
    }
    v.trace.push_back("random quotients: " + std::to_string(rq.attempts.size()) + " attempts, no embedding");
    return finish(std::move(v), VerdictKind::unresolved, 9, UnresolvedTrace{});
  }

  bool check_verdict(Pls const& p, Verdict const& v) {
    auto const& g = v.group;
    if (!(g.original.generators == presentation_of(p).generators
          && g.original.relators == presentation_of(p).relators)) {
      return false;
    }
    auto const fresh = label_words(p, g.tietze.images);
    for (Family f : kFamilies) {
      if (fresh.get(f) != g.labels.get(f)) {
        return false;
      }
    }
    auto valid_pair = [&](Collision const& c) {
      int n = static_cast<int>(g.labels.get(c.family).size());
      return c.first >= 0 && c.first < c.second && c.second < n;
    };
    auto not_abelian = [&] { return !abelian_embedding_test(p, g).embeds; };
    return std::visit(
        [&](auto const& cert) -> bool {
          using T = std::decay_t<decltype(cert)>;
          if constexpr (std::is_same_v<T, FreeCollisionCert>) {
            auto const& words = g.labels.get(cert.collision.family);
            return v.kind == VerdictKind::ne && valid_pair(cert.collision) && words[cert.collision.first] == cert.word
                   && words[cert.collision.second] == cert.word;
          } else if constexpr (std::is_same_v<T, KbCollisionCert>) {
            auto const& words = g.labels.get(cert.collision.family);
            return v.kind == VerdictKind::ne && valid_pair(cert.collision)
                   && words[cert.collision.first] == cert.first_word
                   && words[cert.collision.second] == cert.second_word
                   && cert.system.reduce(cert.first_word) == cert.normal_form
                   && cert.system.reduce(cert.second_word) == cert.normal_form;
          } else if constexpr (std::is_same_v<T, AbelianWitnessCert>) {
            return v.kind == VerdictKind::abelian && check_abelian_witness(p, cert.witness);
          } else if constexpr (std::is_same_v<T, FiniteWitnessCert>) {
            return v.kind == VerdictKind::nonabelian && check_embedding_witness(p, cert.witness) && not_abelian();
          } else if constexpr (std::is_same_v<T, FreeResidualCert>) {
            return v.kind == VerdictKind::nonabelian && g.reduced().relators.empty()
                   && !free_collision_test(g.labels) && not_abelian()
                   && (!cert.witness || check_embedding_witness(p, *cert.witness));
          } else if constexpr (std::is_same_v<T, BaumslagCert>) {
            if (v.kind != VerdictKind::inf_not_fin || cert.equivalent.has_value() != cert.equivalent_group.has_value()) {
              return false;
            }
            if (!cert.equivalent) {
              return check_inf_not_fin(g.reduced(), g.labels, cert.certificate);
            }
            auto const& q  = *cert.equivalent;
            auto const& qg = *cert.equivalent_group;
            auto const  qp = presentation_of(q);
            if (canonical_form(q) != canonical_form(p) || qg.original.generators != qp.generators
                || qg.original.relators != qp.relators) {
              return false;
            }
            auto const qfresh = label_words(q, qg.tietze.images);
            for (Family f : kFamilies) {
              if (qfresh.get(f) != qg.labels.get(f)) {
                return false;
              }
            }
            return check_inf_not_fin(qg.reduced(), qg.labels, cert.certificate);
          } else {
            return v.kind == VerdictKind::unresolved;
          }
        },
        v.certificate);
  }

  namespace {

    json collision_json(Collision const& c, Pls const& p) {
      return json{{"family", family_name(c.family)},
                  {"first", label_name(c.family, c.first, p)},
                  {"second", label_name(c.family, c.second, p)}};
    }

    json witness_json(EmbeddingWitness const& w) {
      return json{{"group", w.group->name()}, {"order", w.group->order()},
                  {"rows", w.rows},          {"cols", w.cols},
                  {"syms", w.syms}};
    }

    json abelian_elements(std::vector<AbelianElement> const& v) {
      json out = json::array();
      for (auto const& e : v) {
        json coords = json::array();
        for (auto const& x : e) {
          coords.push_back(x.get_str());
        }
        out.push_back(std::move(coords));
      }
      return out;
    }

  }  // namespace

  json certificate_json(Verdict const& v, Pls const& p) {
    auto const& names = v.group.reduced().generators;
    json        out{{"type", certificate_type(v.certificate)}};
    std::visit(
        [&](auto const& cert) {
          using T = std::decay_t<decltype(cert)>;
          if constexpr (std::is_same_v<T, FreeCollisionCert>) {
            out["collision"] = collision_json(cert.collision, p);
            out["word"]      = format_word(cert.word, names);
          } else if constexpr (std::is_same_v<T, KbCollisionCert>) {
            out["collision"]   = collision_json(cert.collision, p);
            out["words"]       = {format_word(cert.first_word, names), format_word(cert.second_word, names)};
            out["normal_form"] = format_word(cert.normal_form, names);
            out["confluent"]   = cert.system.confluent();
            out["rules"]       = cert.system.rules().size();
          } else if constexpr (std::is_same_v<T, AbelianWitnessCert>) {
            json moduli = json::array();
            for (auto const& m : cert.witness.moduli) {
              moduli.push_back(m.get_str());
            }
            out["abelianization"] = cert.abelianization.describe();
            out["torsion"]        = json::array();
            for (auto const& t : cert.abelianization.torsion) {
              out["torsion"].push_back(t.get_str());
            }
            out["moduli"] = moduli;
            out["order"]  = cert.witness.order().get_str();
            out["rows"]   = abelian_elements(cert.witness.labels.rows);
            out["cols"]   = abelian_elements(cert.witness.labels.cols);
            out["syms"]   = abelian_elements(cert.witness.labels.syms);
          } else if constexpr (std::is_same_v<T, FiniteWitnessCert>) {
            out["witness"] = witness_json(cert.witness);
            if (cert.quotient) {
              out["quotient"] = format_presentation(*cert.quotient);
            }
          } else if constexpr (std::is_same_v<T, FreeResidualCert>) {
            out["rank"]    = v.group.reduced().num_generators();
            out["witness"] = cert.witness ? witness_json(*cert.witness) : json(nullptr);
          } else if constexpr (std::is_same_v<T, BaumslagCert>) {
            auto const& c     = cert.certificate;
            Pls const&  q     = cert.equivalent ? *cert.equivalent : p;
            auto const& qnames = cert.equivalent_group ? cert.equivalent_group->reduced().generators : names;
            auto        gen   = [&](int i, bool inv) { return qnames.at(i) + (inv ? "^-1" : ""); };
            if (cert.equivalent) {
              out["equivalent"] = render_pls(q);
              out["equivalent_presentation"] = format_presentation(cert.equivalent_group->reduced());
            }
            out["family"]   = family_name(c.match.family);
            out["a"]        = gen(c.match.a_gen, c.match.a_inv);
            out["b"]        = gen(c.match.b_gen, c.match.b_inv);
            out["collapse"] = collision_json(c.collapse.collision, q);
            out["collapse"]["a_exponent"] = c.collapse.first_exponent;
            json pairs = json::array();
            for (auto const& pp : c.distinct.pairs) {
              pairs.push_back({{"family", family_name(pp.family)},
                               {"first", label_name(pp.family, pp.first, q)},
                               {"second", label_name(pp.family, pp.second, q)},
                               {"generator", pp.extended.generators.at(pp.proof.generator)},
                               {"exponents", pp.proof.exponents},
                               {"rules", pp.proof.system.rules().size()}});
            }
            out["pairs"] = std::move(pairs);
            out["axiom"] = c.axiom;
          }
        },
        v.certificate);
    return out;
  }

  ordered_json verdict_record(Pls const& p, Verdict const& v, ClassifyConfig const& config) {
    ordered_json r;
    r["canonical_id"] = canonical_form(p).hex();
    r["size"]         = p.size();
    r["m"]            = p.nrows();
    r["n"]            = p.ncols();
    r["nsyms"]        = p.nsyms();
    r["pls"]          = render_pls(p);
    r["verdict"]      = verdict_name(v.kind);
    r["stage"]        = v.stage;
    r["reduced"]      = format_presentation(v.group.reduced());
    r["certificate"]  = certificate_json(v, p);
    r["trace"]        = v.trace;
    ordered_json timings = ordered_json::object();
    for (auto const& [name, ms] : v.timings_ms) {
      timings[name] = ms;
    }
    r["stage_timings_ms"] = std::move(timings);
    r["config_hash"]      = config_hash(config);
    return r;
  }

  SpeciesCatalog obtain_catalog(std::filesystem::path const& dir, int size) {
    if (!dir.empty() && std::filesystem::exists(catalog_path(dir, size))) {
      return load_catalog(dir, size);
    }
    SpeciesCatalog cat = size <= 1 ? initial_catalog() : extend_species(obtain_catalog(dir, size - 1));
    if (!dir.empty()) {
      save_catalog(cat, dir);
    }
    return cat;
  }

  namespace {

    // Reads the ids already present; drops a truncated final line.
    std::set<std::string> resume_ids(std::filesystem::path const& path) {
      std::set<std::string> ids;
      if (!std::filesystem::exists(path)) {
        return ids;
      }
      std::string text;
      {
        std::ifstream      in(path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
      }
      std::size_t good = 0;
      for (std::size_t eol; (eol = text.find('\n', good)) != std::string::npos; good = eol + 1) {
        auto line = text.substr(good, eol - good);
        if (line.empty()) {
          continue;
        }
        try {
          ids.insert(json::parse(line).at("canonical_id").get<std::string>());
        } catch (json::exception const&) {
          throw std::runtime_error("malformed record in " + path.string() + ": " + line.substr(0, 60));
        }
      }
      std::filesystem::resize_file(path, good);
      return ids;
    }

  }  // namespace

  std::vector<SurveyRow> run_survey(SurveyOptions const& options, GroupCatalog const& groups, ClassifyConfig const& config) {
    std::set<std::string> done;
    if (options.resume) {
      done = resume_ids(options.out);
    } else {
      std::ofstream truncate(options.out, std::ios::trunc);
    }
    std::ofstream out(options.out, std::ios::app | std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot write " + options.out.string());
    }
    int const workers = std::max(1, config.workers);
    for (int size = options.min_size; size <= options.max_size; ++size) {
      auto              cat = obtain_catalog(options.catalog_dir, size);
      std::vector<Pls const*> todo;
      for (auto const& [form, p] : cat.reps) {
        if (candidate_flags(p).candidate && !done.count(form.hex())) {
          todo.push_back(&p);
        }
      }
      std::size_t const batch = static_cast<std::size_t>(workers) * 8;
      for (std::size_t start = 0; start < todo.size(); start += batch) {
        std::size_t const        end = std::min(todo.size(), start + batch);
        std::vector<std::string> lines(end - start);
        std::atomic<std::size_t> next{start};
        std::exception_ptr       failure;
        std::mutex               failure_mutex;
        auto                     work = [&] {
          try {
            for (std::size_t i; (i = next++) < end;) {
              auto v = classify(*todo[i], groups, config);
              if (!check_verdict(*todo[i], v)) {
                throw std::logic_error("certificate does not check for\n" + render_pls(*todo[i]));
              }
              lines[i - start] = verdict_record(*todo[i], v, config).dump();
            }
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            failure = failure ? failure : std::current_exception();
            next    = end;
          }
        };
        std::vector<std::thread> pool;
        for (int w = 1; w < workers; ++w) {
          pool.emplace_back(work);
        }
        work();
        for (auto& t : pool) {
          t.join();
        }
        if (failure) {
          std::rethrow_exception(failure);
        }
        for (auto const& line : lines) {
          out << line << '\n';
        }
        out.flush();
      }
    }
    out.close();
    auto rows = read_survey(options.out);
    std::erase_if(rows, [&](SurveyRow const& r) { return r.size < options.min_size || r.size > options.max_size; });
    return rows;
  }

  std::vector<SurveyRow> read_survey(std::filesystem::path const& jsonl) {
    std::ifstream in(jsonl);
    if (!in) {
      throw std::runtime_error("cannot read " + jsonl.string());
    }
    std::map<int, SurveyRow> rows;
    std::string              line;
    while (std::getline(in, line)) {
      if (line.empty()) {
        continue;
      }
      auto r    = json::parse(line);
      int  size = r.at("size").get<int>();
      auto v    = parse_verdict(r.at("verdict").get<std::string>());
      if (!v) {
        throw std::runtime_error("unknown verdict in " + jsonl.string());
      }
      auto& row = rows[size];
      row.size  = size;
      ++row.counts[static_cast<std::size_t>(*v)];
    }
    std::vector<SurveyRow> out;
    for (auto& [size, row] : rows) {
      out.push_back(row);
    }
    return out;
  }

  namespace {

    std::string layout(std::vector<std::vector<std::string>> const& cells, bool csv) {
      std::ostringstream out;
      if (csv) {
        for (auto const& row : cells) {
          for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << row[i];
          }
          out << '\n';
        }
        return out.str();
      }
      std::vector<std::size_t> width;
      for (auto const& row : cells) {
        width.resize(std::max(width.size(), row.size()), 0);
        for (std::size_t i = 0; i < row.size(); ++i) {
          width[i] = std::max(width[i], row[i].size());
        }
      }
      for (auto const& row : cells) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (i == 0) {
            out << std::left << std::setw(static_cast<int>(width[i])) << row[i];
          } else {
            out << "  " << std::right << std::setw(static_cast<int>(width[i])) << row[i];
          }
        }
        out << '\n';
      }
      return out.str();
    }

  }  // namespace

  std::string format_table1(std::vector<CountRow> const& rows, bool csv) {
    std::vector<std::vector<std::string>> cells{{"size"}, {"all"}, {"conn."}, {"cand."}};
    for (auto const& r : rows) {
      cells[0].push_back(std::to_string(r.size));
      cells[1].push_back(std::to_string(r.all));
      cells[2].push_back(std::to_string(r.connected));
      cells[3].push_back(std::to_string(r.candidates));
    }
    return layout(cells, csv);
  }

  std::string format_table2(std::vector<SurveyRow> const& rows, bool csv) {
    std::vector<std::vector<std::string>> cells{{"size", "NE", "abelian", "nonabelian", "infNotFin", "unresolved"}};
    for (auto const& r : rows) {
      std::vector<std::string> row{std::to_string(r.size)};
      for (auto v : kVerdictKinds) {
        row.push_back(std::to_string(r.count(v)));
      }
      cells.push_back(std::move(row));
    }
    return layout(cells, csv);
  }

  std::vector<ArtifactCheck> verify_reference_artifacts(GroupCatalog const& groups, ClassifyConfig const& config) {
    std::vector<ArtifactCheck> checks;
    auto add = [&](std::string name, bool passed, std::string detail, bool budget = false) {
      checks.push_back({std::move(name), passed, budget && !passed, std::move(detail)});
    };

    struct Expected {
      char const*    corpus;
      BaumslagFamily family;
    };
    for (auto const& e : {Expected{"infnotfin_b", BaumslagFamily::B}, Expected{"infnotfin_b1", BaumslagFamily::B1},
                          Expected{"infnotfin_b2", BaumslagFamily::B2}}) {
      auto p = corpus_pls(e.corpus);
      auto v = classify(p, groups, config);
      std::string name = std::string(e.corpus) + ": INF_NOT_FIN, family " + family_name(e.family);
      auto const* cert = std::get_if<BaumslagCert>(&v.certificate);
      if (v.kind != VerdictKind::inf_not_fin || cert == nullptr) {
        add(name, false, std::string("verdict ") + verdict_name(v.kind) + " at stage " + std::to_string(v.stage),
            v.kind == VerdictKind::unresolved);
        continue;
      }
      auto const& c  = cert->certificate;
      bool        ok = c.match.family == e.family && check_verdict(p, v);
      std::string detail = std::string("family ") + family_name(c.match.family) + ", collapse "
                           + describe(c.collapse.collision, p) + ", " + std::to_string(c.distinct.pairs.size())
                           + " distinctness proofs";
      if (std::string(e.corpus) == "infnotfin_b") {
        Collision expected{Family::rows, 0, 3};
        ok = ok && c.collapse.collision == expected && c.distinct.pairs.size() == 31;
      }
      add(name, ok, detail);
    }

    for (auto const& fact : verify_family_facts()) {
      add(fact.description, fact.verified, fact.detail, !fact.verified);
    }

    {
      auto p      = corpus_pls("disconnected_not_c6");
      auto c6     = std::make_shared<FiniteGroup const>(FiniteGroup::cyclic(6));
      auto search = embed_into_group(p, c6);
      add("disconnected_not_c6: no embedding into C6", !search.witness && search.complete,
          std::to_string(search.nodes) + " nodes searched");
      auto comps = components(p);
      bool ok    = comps.size() == 2;
      std::string detail;
      if (ok) {
        auto part1 = restrict_to(p, comps[0]);
        auto part2 = restrict_to(p, comps[1]);
        auto w1    = embed_into_group(part1.pls, std::make_shared<FiniteGroup const>(FiniteGroup::cyclic(2)));
        auto w2    = embed_into_group(part2.pls, std::make_shared<FiniteGroup const>(FiniteGroup::cyclic(3)));
        ok         = w1.witness && w2.witness;
        if (ok) {
          auto w = product_embed(p, comps[0], *w1.witness, *w2.witness);
          ok     = check_embedding_witness(p, w) && w.group->order() == 18 && w.group->is_abelian()
               && find_isomorphism(*w.group, FiniteGroup::direct_product(FiniteGroup::direct_product(
                                                FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)),
                                                                         FiniteGroup::cyclic(3)));
          detail = "witness in " + w.group->name();
        }
      }
      add("disconnected_not_c6: product witness in C2 x C3 x C3", ok, detail);
    }

    {
      auto p = corpus_pls("ne_free_collision");
      auto v = classify(p, groups, config);
      auto const* cert = std::get_if<FreeCollisionCert>(&v.certificate);
      bool ok = v.kind == VerdictKind::ne && v.stage == 2 && cert != nullptr && v.group.reduced().num_generators() == 1
                && v.group.reduced().relators.empty() && cert->collision.family == Family::syms
                && std::set<std::string>{p.symbol_name(cert->collision.first), p.symbol_name(cert->collision.second)}
                       == std::set<std::string>{"c", "d"}
                && check_verdict(p, v);
      add("ne_free_collision: free group of rank 1, c = d", ok,
          format_presentation(v.group.reduced()) + (cert ? ", " + describe(cert->collision, p) : ""));
    }
    {
      auto p = corpus_pls("ne_rewriting_collision");
      auto v = classify(p, groups, config);
      auto const* cert = std::get_if<KbCollisionCert>(&v.certificate);
      auto const& red = v.group.reduced();
      // the single relator is v^2 u^-2 up to renaming, inversion and rotation
      bool shape = false;
      if (red.num_generators() == 2 && red.relators.size() == 1) {
        for (int u = 0; u < 2; ++u) {
          Word target = concat(power({letter(1 - u)}, 2), power({letter(u)}, -2));
          shape       = shape || cyclic_canonical(red.relators[0]) == cyclic_canonical(target);
        }
      }
      bool ok = v.kind == VerdictKind::ne && v.stage == 6 && cert != nullptr && cert->collision.family == Family::syms
                && shape && check_verdict(p, v);
      add("ne_rewriting_collision: symbol collision after rewriting", ok,
          format_presentation(v.group.reduced()) + (cert ? ", " + describe(cert->collision, p) : ""),
          v.kind == VerdictKind::unresolved);
    }
    return checks;
  }

}  // namespace plsg

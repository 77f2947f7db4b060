#include "plsg/finite_search.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <stdexcept>

#include "plsg/coset.hpp"

namespace plsg {

  bool check_embedding_witness(Pls const& p, EmbeddingWitness const& w) {
    if (!w.group) {
      return false;
    }
    auto const&                         g = *w.group;
    std::array<std::vector<int> const*, 3> labels{&w.rows, &w.cols, &w.syms};
    for (int f = 0; f < 3; ++f) {
      auto const& l = *labels[f];
      if (static_cast<int>(l.size()) != p.dim(f)) {
        return false;
      }
      std::vector<char> used(g.order(), 0);
      for (int v : l) {
        if (v < 0 || v >= g.order() || used[v]) {
          return false;
        }
        used[v] = 1;
      }
    }
    if (w.rows[0] != 0 || w.cols[0] != 0) {
      return false;
    }
    return std::all_of(p.triples().begin(), p.triples().end(), [&](Triple const& t) {
      return g.mul(w.rows[t.row], w.cols[t.col]) == w.syms[t.sym];
    });
  }

  EmbeddingWitness normalize_witness(EmbeddingWitness w) {
    auto const& g  = *w.group;
    int const   ri = g.inv(w.rows.at(0));
    int const   ci = g.inv(w.cols.at(0));
    for (auto& r : w.rows) {
      r = g.mul(ri, r);
    }
    for (auto& c : w.cols) {
      c = g.mul(c, ci);
    }
    for (auto& s : w.syms) {
      s = g.mul(g.mul(ri, s), ci);
    }
    return w;
  }

  namespace {

    class Embedder {
     public:
      Embedder(Pls const& p, FiniteGroup const& g, std::size_t max_nodes)
          : _p(p), _g(g), _max_nodes(max_nodes) {
        for (int f = 0; f < 3; ++f) {
          _val[f].assign(p.dim(f), -1);
          _owner[f].assign(g.order(), -1);
          _cells[f].assign(p.dim(f), {});
        }
        for (std::size_t i = 0; i < p.size(); ++i) {
          auto const& t = p.triples()[i];
          for (int f = 0; f < 3; ++f) {
            _cells[f][t[f]].push_back(i);
          }
        }
      }

      EmbeddingSearch run() {
        EmbeddingSearch out;
        if (std::max({_p.nrows(), _p.ncols(), _p.nsyms()}) <= _g.order() && assign(0, 0, 0)
            && assign(1, 0, 0) && propagate()) {
          search();
        }
        out.nodes    = _nodes;
        out.complete = !_budget_hit;
        if (_found) {
          out.witness = EmbeddingWitness{nullptr, _val[0], _val[1], _val[2]};
        }
        return out;
      }

     private:
      bool assign(int f, int i, int v) {
        if (_val[f][i] == v) {
          return true;
        }
        if (_val[f][i] >= 0 || _owner[f][v] >= 0) {
          return false;
        }
        _val[f][i]   = v;
        _owner[f][v] = i;
        _trail.emplace_back(f, i);
        for (auto c : _cells[f][i]) {
          _queue.push_back(c);
        }
        return true;
      }

      void undo(std::size_t mark) {
        while (_trail.size() > mark) {
          auto [f, i] = _trail.back();
          _trail.pop_back();
          _owner[f][_val[f][i]] = -1;
          _val[f][i]            = -1;
        }
      }

      bool propagate() {
        bool ok = true;
        while (!_queue.empty()) {
          auto const& t = _p.triples()[_queue.back()];
          _queue.pop_back();
          if (!ok) {
            continue;
          }
          int r = _val[0][t.row], c = _val[1][t.col], s = _val[2][t.sym];
          if (r >= 0 && c >= 0) {
            ok = assign(2, t.sym, _g.mul(r, c));
          } else if (r >= 0 && s >= 0) {
            ok = assign(1, t.col, _g.mul(_g.inv(r), s));
          } else if (c >= 0 && s >= 0) {
            ok = assign(0, t.row, _g.mul(s, _g.inv(c)));
          }
        }
        return ok;
      }

      // Unlabelled row or column whose label would fix the most cells.
      std::pair<int, int> choose() const {
        std::pair<int, int> best{-1, -1};
        std::pair<int, int> best_score{-1, -1};
        for (int f = 0; f < 2; ++f) {
          for (int i = 0; i < _p.dim(f); ++i) {
            if (_val[f][i] >= 0) {
              continue;
            }
            int forced = 0;
            for (auto c : _cells[f][i]) {
              forced += _val[2][_p.triples()[c].sym] >= 0;
            }
            std::pair<int, int> score{forced, static_cast<int>(_cells[f][i].size())};
            if (score > best_score) {
              best_score = score;
              best       = {f, i};
            }
          }
        }
        return best;
      }

      void search() {
        if (_found || _budget_hit) {
          return;
        }
        auto [f, i] = choose();
        if (f < 0) {
          _found = true;
          return;
        }
        for (int v = 0; v < _g.order(); ++v) {
          if (_owner[f][v] >= 0) {
            continue;
          }
          if (_max_nodes != 0 && _nodes >= _max_nodes) {
            _budget_hit = true;
            return;
          }
          ++_nodes;
          std::size_t mark = _trail.size();
          if (assign(f, i, v) && propagate()) {
            search();
            if (_found || _budget_hit) {
              return;
            }
          }
          _queue.clear();
          undo(mark);
        }
      }

      Pls const&                                    _p;
      FiniteGroup const&                            _g;
      std::size_t                                   _max_nodes;
      std::array<std::vector<int>, 3>               _val;
      std::array<std::vector<int>, 3>               _owner;
      std::array<std::vector<std::vector<std::size_t>>, 3> _cells;
      std::vector<std::pair<int, int>>              _trail;
      std::vector<std::size_t>                      _queue;
      std::size_t                                   _nodes      = 0;
      bool                                          _found      = false;
      bool                                          _budget_hit = false;
    };

  }  // namespace

  EmbeddingSearch embed_into_group(Pls const& p, GroupPtr const& g, std::size_t max_nodes) {
    auto result = Embedder(p, *g, max_nodes).run();
    if (result.witness) {
      result.witness->group = g;
      if (!check_embedding_witness(p, *result.witness)) {
        throw std::logic_error("embedding search produced an invalid labelling");
      }
    }
    return result;
  }

  EmbeddingSearch find_finite_embedding(Pls const& p, GroupCatalog const& catalog, FiniteSearchLimits const& limits) {
    EmbeddingSearch total;
    int const       need = std::max({p.nrows(), p.ncols(), p.nsyms()});
    for (auto const& g : catalog.groups()) {
      if (g->order() < need || g->order() > limits.max_order || (limits.skip_abelian && g->is_abelian())) {
        continue;
      }
      auto r = embed_into_group(p, g, limits.max_nodes_per_group);
      total.nodes += r.nodes;
      total.complete = total.complete && r.complete;
      if (r.witness) {
        total.witness = std::move(r.witness);
        return total;
      }
    }
    total.complete = total.complete && limits.max_order <= catalog.max_order();
    return total;
  }

  PlsPart restrict_to(Pls const& p, std::vector<std::size_t> const& triple_ids) {
    PlsPart                        part;
    std::array<std::vector<int>*, 3> maps{&part.rows, &part.cols, &part.syms};
    for (auto id : triple_ids) {
      auto const& t = p.triples().at(id);
      for (int f = 0; f < 3; ++f) {
        maps[f]->push_back(t[f]);
      }
    }
    for (auto* m : maps) {
      std::sort(m->begin(), m->end());
      m->erase(std::unique(m->begin(), m->end()), m->end());
    }
    std::vector<Triple> triples;
    for (auto id : triple_ids) {
      Triple t = p.triples()[id];
      for (int f = 0; f < 3; ++f) {
        t[f] = static_cast<int>(std::lower_bound(maps[f]->begin(), maps[f]->end(), t[f]) - maps[f]->begin());
      }
      triples.push_back(t);
    }
    std::vector<std::string> names;
    for (int s : part.syms) {
      names.push_back(p.symbol_name(s));
    }
    part.pls = Pls::from_triples(std::move(triples), std::move(names));
    return part;
  }

  EmbeddingWitness product_embed(Pls const&                      p,
                                 std::vector<std::size_t> const& first,
                                 EmbeddingWitness const&         w1,
                                 EmbeddingWitness const&         w2) {
    std::vector<char> in_first(p.size(), 0);
    for (auto id : first) {
      in_first.at(id) = 1;
    }
    std::vector<std::size_t> second;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!in_first[i]) {
        second.push_back(i);
      }
    }
    auto p1 = restrict_to(p, first);
    auto p2 = restrict_to(p, second);
    if (!check_embedding_witness(p1.pls, w1) || !check_embedding_witness(p2.pls, w2)) {
      throw std::invalid_argument("product_embed: part witness does not check");
    }
    std::array<std::vector<int> const*, 3> m1{&p1.rows, &p1.cols, &p1.syms};
    std::array<std::vector<int> const*, 3> m2{&p2.rows, &p2.cols, &p2.syms};
    for (int f = 0; f < 3; ++f) {
      for (int x : *m1[f]) {
        if (std::binary_search(m2[f]->begin(), m2[f]->end(), x)) {
          throw std::invalid_argument("product_embed: parts share a row, column or symbol");
        }
      }
    }
    auto const& g = *w1.group;
    auto const& h = *w2.group;
    auto        gh = FiniteGroup::direct_product(g, h);
    auto        product =
        std::make_shared<FiniteGroup const>(FiniteGroup::direct_product(gh, FiniteGroup::cyclic(3)));
    auto element = [&](int a, int b, int k) { return (a * h.order() + b) * 3 + k; };

    EmbeddingWitness                      w{product, {}, {}, {}};
    std::array<std::vector<int>*, 3>       out{&w.rows, &w.cols, &w.syms};
    std::array<std::vector<int> const*, 3> l1{&w1.rows, &w1.cols, &w1.syms};
    std::array<std::vector<int> const*, 3> l2{&w2.rows, &w2.cols, &w2.syms};
    // rows and columns of the second part carry the C3 generator, its
    // symbols the square
    int const shift[3] = {1, 1, 2};
    for (int f = 0; f < 3; ++f) {
      out[f]->assign(p.dim(f), -1);
      for (std::size_t i = 0; i < m1[f]->size(); ++i) {
        (*out[f])[(*m1[f])[i]] = element((*l1[f])[i], 0, 0);
      }
      for (std::size_t i = 0; i < m2[f]->size(); ++i) {
        (*out[f])[(*m2[f])[i]] = element(0, (*l2[f])[i], shift[f]);
      }
    }
    w = normalize_witness(std::move(w));
    if (!check_embedding_witness(p, w)) {
      throw std::logic_error("product_embed built an invalid labelling");
    }
    return w;
  }

  FiniteGroup group_from_regular_table(std::vector<std::vector<int>> const& rows,
                                       int                                  num_generators,
                                       std::string                          name) {
    int const        n = static_cast<int>(rows.size());
    std::vector<Word> word(n);
    std::vector<char> seen(n, 0);
    std::vector<int>  queue{0};
    seen[0] = 1;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      int x = queue[q];
      for (int a = 0; a < 2 * num_generators; ++a) {
        int y = rows[x][a];
        if (!seen[y]) {
          seen[y] = 1;
          word[y] = word[x];
          word[y].push_back(static_cast<Letter>(a));
          queue.push_back(y);
        }
      }
    }
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        int c = a;
        for (Letter x : word[b]) {
          c = rows[c][x];
        }
        t[a * n + b] = c;
      }
    }
    return FiniteGroup(std::move(name), n, std::move(t));
  }

  QuotientAttempt try_quotient(Pls const&                  p,
                               LabelFamilies const&        labels,
                               Presentation const&         q,
                               QuotientSearchLimits const& limits) {
    QuotientAttempt attempt{q, std::nullopt, std::nullopt};
    auto            e = todd_coxeter(q, {}, {limits.max_cosets, CosetStrategy::felsch});
    if (!e.closed) {
      return attempt;
    }
    attempt.order = e.index;
    if (static_cast<int>(e.index) < std::max({p.nrows(), p.ncols(), p.nsyms()})) {
      return attempt;
    }
    auto group = std::make_shared<FiniteGroup const>(group_from_regular_table(
        e.table->rows, q.num_generators(), "quotient of order " + std::to_string(e.index)));
    EmbeddingWitness                 w{group, {}, {}, {}};
    std::array<std::vector<int>*, 3> out{&w.rows, &w.cols, &w.syms};
    for (int f = 0; f < 3; ++f) {
      for (auto const& word : labels.get(kFamilies[f])) {
        out[f]->push_back(e.table->act(0, word));
      }
    }
    if (check_embedding_witness(p, w)) {
      attempt.witness = std::move(w);
      return attempt;
    }
    attempt.witness = embed_into_group(p, group, limits.max_nodes).witness;
    return attempt;
  }

  QuotientSearchResult random_quotient_search(Pls const& p, PlsGroup const& g, QuotientSearchLimits const& limits) {
    QuotientSearchResult result;
    auto const&          pres  = g.reduced();
    int const            ngens = pres.num_generators();
    if (ngens == 0) {
      return result;
    }
    std::mt19937_64                       rng(limits.seed);
    std::uniform_int_distribution<Letter> pick(0, static_cast<Letter>(2 * ngens - 1));
    std::uniform_int_distribution<int>    length(1, limits.max_word_length);
    for (int a = 0; a < limits.attempts; ++a) {
      Presentation q     = pres;
      std::size_t  added = 0;
      while (added == 0 || q.relators.size() < static_cast<std::size_t>(ngens)) {
        Word w;
        int  len = length(rng);
        while (static_cast<int>(w.size()) < len) {
          Letter x = pick(rng);
          if (w.empty() || w.back() != inverse_letter(x)) {
            w.push_back(x);
          }
        }
        q.relators.push_back(std::move(w));
        ++added;
      }
      result.attempts.push_back(try_quotient(p, g.labels, q, limits));
      if (result.attempts.back().witness) {
        result.success = result.attempts.size() - 1;
        break;
      }
    }
    return result;
  }

}  // namespace plsg

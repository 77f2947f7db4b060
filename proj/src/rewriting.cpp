#include "plsg/rewriting.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace plsg {

  bool shortlex_less(Word const& u, Word const& v) {
    if (u.size() != v.size()) {
      return u.size() < v.size();
    }
    return u < v;
  }

  namespace {

    bool ends_with(Word const& w, Word const& suffix) {
      return w.size() >= suffix.size()
             && std::equal(suffix.begin(), suffix.end(), w.end() - static_cast<std::ptrdiff_t>(suffix.size()));
    }

    bool contains(Word const& w, Word const& sub) {
      return std::search(w.begin(), w.end(), sub.begin(), sub.end()) != w.end();
    }

    // Stack-based rewriting: push letters one at a time and rewrite as soon
    // as the output ends with a left-hand side.
    template <typename RuleAt, typename Candidates>
    Word reduce_with(Word const& w, RuleAt&& rule_at, Candidates&& candidates) {
      Word out;
      Word input(w.rbegin(), w.rend());
      out.reserve(w.size());
      while (!input.empty()) {
        Letter x = input.back();
        input.pop_back();
        out.push_back(x);
        for (int id : candidates(x)) {
          Rule const* r = rule_at(id);
          if (r != nullptr && ends_with(out, r->lhs)) {
            out.resize(out.size() - r->lhs.size());
            input.insert(input.end(), r->rhs.rbegin(), r->rhs.rend());
            break;
          }
        }
      }
      return out;
    }

    class Completion {
     public:
      Completion(int ngens, KnuthBendixLimits const& limits)
          : _ngens(ngens), _limits(limits), _by_last(2 * ngens) {}

      void push(Word u, Word v) { _pending.emplace_back(std::move(u), std::move(v)); }

      // Returns true iff the system is confluent.
      bool run() {
        if (!drain()) {
          return false;
        }
        for (std::size_t i = 0; i < _rules.size(); ++i) {
          for (std::size_t j = 0; j <= i; ++j) {
            if (!_alive[i]) {
              break;
            }
            if (!_alive[j]) {
              continue;
            }
            overlaps(i, j);
            if (i != j && _alive[i] && _alive[j]) {
              overlaps(j, i);
            }
            if (!drain()) {
              return false;
            }
          }
        }
        return _complete;
      }

      std::vector<Rule> alive_rules() const {
        std::vector<Rule> out;
        for (std::size_t i = 0; i < _rules.size(); ++i) {
          if (_alive[i]) {
            out.push_back(_rules[i]);
          }
        }
        return out;
      }

      std::size_t critical_pairs() const noexcept { return _critical_pairs; }

     private:
      Word reduce(Word const& w) const {
        return reduce_with(
            w,
            [this](int id) -> Rule const* { return _alive[id] ? &_rules[id] : nullptr; },
            [this](Letter x) -> std::vector<int> const& { return _by_last[x]; });
      }

      // lhs_i = A B and lhs_j = B C with B a nonempty proper overlap.
      void overlaps(std::size_t i, std::size_t j) {
        Word const& li = _rules[i].lhs;
        Word const& lj = _rules[j].lhs;
        for (std::size_t k = 1; k < li.size() && k < lj.size(); ++k) {
          if (!std::equal(li.end() - static_cast<std::ptrdiff_t>(k), li.end(), lj.begin())) {
            continue;
          }
          ++_critical_pairs;
          Word left = _rules[i].rhs;
          left.insert(left.end(), lj.begin() + static_cast<std::ptrdiff_t>(k), lj.end());
          Word right(li.begin(), li.end() - static_cast<std::ptrdiff_t>(k));
          right.insert(right.end(), _rules[j].rhs.begin(), _rules[j].rhs.end());
          push(std::move(left), std::move(right));
        }
      }

      bool within_limits() const {
        return _alive_count <= _limits.max_rules && _critical_pairs <= _limits.max_critical_pairs;
      }

      bool drain() {
        while (!_pending.empty()) {
          auto [u, v] = std::move(_pending.front());
          _pending.pop_front();
          u = reduce(u);
          v = reduce(v);
          if (u == v) {
            continue;
          }
          if (shortlex_less(u, v)) {
            std::swap(u, v);
          }
          if (u.size() > _limits.max_rule_length) {
            _complete = false;
            continue;
          }
          add_rule(std::move(u), std::move(v));
          if (!within_limits()) {
            return false;
          }
        }
        return within_limits();
      }

      void add_rule(Word lhs, Word rhs) {
        int id = static_cast<int>(_rules.size());
        _rules.push_back({std::move(lhs), std::move(rhs)});
        _alive.push_back(1);
        ++_alive_count;
        _by_last[_rules.back().lhs.back()].push_back(id);
        Word const& new_lhs = _rules[id].lhs;
        for (int k = 0; k < id; ++k) {
          if (!_alive[k]) {
            continue;
          }
          if (contains(_rules[k].lhs, new_lhs)) {
            _alive[k] = 0;
            --_alive_count;
            push(_rules[k].lhs, _rules[k].rhs);
          } else if (contains(_rules[k].rhs, new_lhs)) {
            _rules[k].rhs = reduce(_rules[k].rhs);
          }
        }
      }

      int                                _ngens;
      KnuthBendixLimits                  _limits;
      std::vector<Rule>                  _rules;
      std::vector<char>                  _alive;
      std::size_t                        _alive_count = 0;
      std::vector<std::vector<int>>      _by_last;
      std::deque<std::pair<Word, Word>>  _pending;
      std::size_t                        _critical_pairs = 0;
      bool                               _complete       = true;
    };

  }  // namespace

  RewritingSystem::RewritingSystem(int num_generators, std::vector<Rule> rules, bool confluent)
      : _num_generators(num_generators), _rules(std::move(rules)), _confluent(confluent) {
    index_rules();
  }

  void RewritingSystem::index_rules() {
    _by_last.assign(2 * _num_generators, {});
    for (std::size_t i = 0; i < _rules.size(); ++i) {
      if (_rules[i].lhs.empty()) {
        throw std::invalid_argument("rewriting rule with empty left-hand side");
      }
      _by_last.at(_rules[i].lhs.back()).push_back(static_cast<int>(i));
    }
  }

  RewritingSystem RewritingSystem::knuth_bendix(Presentation const& pres, KnuthBendixLimits const& limits) {
    int const  ngens = pres.num_generators();
    Completion kb(ngens, limits);
    for (int g = 0; g < ngens; ++g) {
      kb.push({letter(g), letter(g, true)}, {});
      kb.push({letter(g, true), letter(g)}, {});
    }
    for (auto const& r : pres.relators) {
      Word w = cyclic_reduce(r);
      if (w.empty()) {
        continue;
      }
      // w = u v with |u| >= |v| gives the equation u = v^-1
      std::size_t half = (w.size() + 1) / 2;
      Word        u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(half));
      Word        v(w.begin() + static_cast<std::ptrdiff_t>(half), w.end());
      kb.push(std::move(u), inverse(v));
    }
    bool            confluent = kb.run();
    RewritingSystem rws(ngens, kb.alive_rules(), confluent);
    rws._critical_pairs = kb.critical_pairs();
    return rws;
  }

  Word RewritingSystem::reduce(Word const& w) const {
    return reduce_with(
        w, [this](int id) -> Rule const* { return &_rules[id]; },
        [this](Letter x) -> std::vector<int> const& { return _by_last.at(x); });
  }

  std::optional<std::size_t> RewritingSystem::count_normal_forms(std::size_t cap) const {
    std::vector<Word> layer{Word{}};
    std::size_t       count = 1;
    while (!layer.empty()) {
      std::vector<Word> next;
      for (auto const& w : layer) {
        for (Letter x = 0; x < static_cast<Letter>(2 * _num_generators); ++x) {
          Word v = w;
          v.push_back(x);
          bool reducible = std::any_of(_by_last[x].begin(), _by_last[x].end(),
                                       [&](int id) { return ends_with(v, _rules[id].lhs); });
          if (!reducible) {
            if (++count > cap) {
              return std::nullopt;
            }
            next.push_back(std::move(v));
          }
        }
      }
      layer.swap(next);
    }
    return count;
  }

  std::string RewritingSystem::format(std::vector<std::string> const& names) const {
    std::string out;
    for (auto const& r : _rules) {
      out += format_word(r.lhs, names) + " -> " + format_word(r.rhs, names) + '\n';
    }
    return out;
  }

  std::optional<Collision> kb_collision_test(LabelFamilies const& fams, RewritingSystem const& rws) {
    for (Family f : kFamilies) {
      auto const&       words = fams.get(f);
      std::vector<Word> reduced;
      for (auto const& w : words) {
        reduced.push_back(rws.reduce(w));
      }
      for (std::size_t j = 1; j < reduced.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
          if (reduced[i] == reduced[j]) {
            return Collision{f, static_cast<int>(i), static_cast<int>(j)};
          }
        }
      }
    }
    return std::nullopt;
  }

  std::optional<CyclicProof> prove_cyclic(Presentation const&      pres,
                                          int                      max_exponent,
                                          KnuthBendixLimits const& limits) {
    int const ngens = pres.num_generators();
    auto      rws   = RewritingSystem::knuth_bendix(pres, limits);
    for (int t = 0; t < std::max(ngens, 1); ++t) {
      if (ngens == 0) {
        return CyclicProof{0, {}, std::move(rws)};
      }
      std::map<Word, int> power_forms;
      for (int n = 0; n <= max_exponent; ++n) {
        for (int e : {n, -n}) {
          power_forms.emplace(rws.reduce(power({letter(t)}, e)), e);
        }
      }
      std::vector<int> exps;
      for (int g = 0; g < ngens; ++g) {
        auto it = power_forms.find(rws.reduce({letter(g)}));
        if (it == power_forms.end()) {
          break;
        }
        exps.push_back(it->second);
      }
      if (static_cast<int>(exps.size()) == ngens) {
        return CyclicProof{t, std::move(exps), std::move(rws)};
      }
    }
    return std::nullopt;
  }

  bool check_cyclic_proof(CyclicProof const& proof, int num_generators) {
    if (static_cast<int>(proof.exponents.size()) != num_generators) {
      return false;
    }
    for (int g = 0; g < num_generators; ++g) {
      Word lhs = proof.system.reduce({letter(g)});
      Word rhs = proof.system.reduce(power({letter(proof.generator)}, proof.exponents[g]));
      if (lhs != rhs) {
        return false;
      }
    }
    return true;
  }

}  // namespace plsg

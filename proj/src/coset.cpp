#include "plsg/coset.hpp"

#include <algorithm>
#include <set>

namespace plsg {

  int CosetTable::act(int coset, Word const& w) const {
    for (Letter x : w) {
      coset = rows.at(coset).at(x);
    }
    return coset;
  }

  std::string CosetTable::permutation_generators(std::vector<std::string> const& names) const {
    std::string out;
    for (int g = 0; g < num_generators; ++g) {
      out += names.at(g) + " = ";
      std::vector<char> seen(rows.size(), 0);
      bool              any = false;
      for (std::size_t start = 0; start < rows.size(); ++start) {
        if (seen[start] || rows[start][letter(g)] == static_cast<int>(start)) {
          continue;
        }
        out += '(';
        std::size_t c = start;
        bool        first = true;
        while (!seen[c]) {
          seen[c] = 1;
          out += (first ? "" : ",") + std::to_string(c + 1);
          first = false;
          c     = static_cast<std::size_t>(rows[c][letter(g)]);
        }
        out += ')';
        any = true;
      }
      out += any ? "\n" : "()\n";
    }
    return out;
  }

  namespace {

    constexpr int kUndefined = -1;

    class Enumerator {
     public:
      Enumerator(Presentation const& pres, std::vector<Word> const& subgroup, CosetLimits const& limits)
          : _width(2 * pres.num_generators()), _limits(limits), _by_first(_width) {
        std::set<Word> seen;
        for (auto const& r : pres.relators) {
          Word w = cyclic_reduce(r);
          if (w.empty()) {
            continue;
          }
          _relators.push_back(w);
          for (Word const& base : {w, inverse(w)}) {
            Word rot = base;
            for (std::size_t i = 0; i < base.size(); ++i) {
              if (seen.insert(rot).second) {
                _by_first[rot.front()].push_back(_conjugates.size());
                _conjugates.push_back(rot);
              }
              std::rotate(rot.begin(), rot.begin() + 1, rot.end());
            }
          }
        }
        for (auto const& h : subgroup) {
          Word w = free_reduce(h);
          if (!w.empty()) {
            _subgroup.push_back(std::move(w));
          }
        }
      }

      CosetEnumeration run() {
        CosetEnumeration result;
        new_coset();
        if (_width == 0) {
          // no generators: the group is trivial
          result.closed = true;
          result.index = result.total_defined = result.max_live = 1;
          result.table  = CosetTable{0, {{}}};
          return result;
        }
        for (auto const& h : _subgroup) {
          scan_and_fill(0, h);
          if (_overflow) {
            break;
          }
        }
        process_deductions();
        if (!_overflow) {
          if (_limits.strategy == CosetStrategy::hlt) {
            hlt();
          } else {
            felsch();
          }
        }
        result.total_defined = _total_defined;
        result.max_live      = _max_live;
        if (_overflow) {
          return result;
        }
        compact();
        result.closed = true;
        result.index  = _live;
        CosetTable table;
        table.num_generators = _width / 2;
        for (int c = 0; c < static_cast<int>(_live); ++c) {
          table.rows.emplace_back(_table.begin() + c * _width, _table.begin() + (c + 1) * _width);
        }
        result.table = std::move(table);
        return result;
      }

     private:
      int& entry(int coset, Letter x) { return _table[static_cast<std::size_t>(coset) * _width + x]; }

      bool alive(int c) const { return _parent[c] == c; }

      int new_coset() {
        int c = static_cast<int>(_parent.size());
        _parent.push_back(c);
        _table.insert(_table.end(), _width, kUndefined);
        ++_live;
        ++_total_defined;
        _max_live = std::max(_max_live, _live);
        if (_live > _limits.max_cosets || _total_defined > 50 * _limits.max_cosets) {
          _overflow = true;
        }
        return c;
      }

      void define(int coset, Letter x) {
        int d              = new_coset();
        entry(coset, x)    = d;
        entry(d, inverse_letter(x)) = coset;
        _deductions.emplace_back(coset, x);
      }

      void deduce(int a, Letter x, int b) {
        entry(a, x)                 = b;
        entry(b, inverse_letter(x)) = a;
        _deductions.emplace_back(a, x);
      }

      // Scans w from `start`, filling gaps with new cosets when `fill`.
      void scan(int start, Word const& w, bool fill) {
        int         f = start, b = start;
        std::size_t i = 0, j = w.size();  // unscanned part is w[i, j)
        while (true) {
          while (i < j && entry(f, w[i]) != kUndefined) {
            f = entry(f, w[i]);
            ++i;
          }
          if (i == j) {
            if (f != start) {
              coincidence(f, start);
            }
            return;
          }
          while (j > i && entry(b, inverse_letter(w[j - 1])) != kUndefined) {
            b = entry(b, inverse_letter(w[j - 1]));
            --j;
          }
          if (j == i) {
            coincidence(f, b);
            return;
          }
          if (j == i + 1) {
            deduce(f, w[i], b);
            return;
          }
          if (!fill) {
            return;
          }
          define(f, w[i]);
          if (_overflow) {
            return;
          }
        }
      }

      void scan_and_fill(int start, Word const& w) { scan(start, w, true); }

      int rep(int c) {
        int r = c;
        while (_parent[r] != r) {
          r = _parent[r];
        }
        while (_parent[c] != r) {
          int next   = _parent[c];
          _parent[c] = r;
          c          = next;
        }
        return r;
      }

      void merge(int k, int l, std::vector<int>& queue) {
        int a = rep(k), b = rep(l);
        if (a == b) {
          return;
        }
        int lo = std::min(a, b), hi = std::max(a, b);
        _parent[hi] = lo;
        --_live;
        queue.push_back(hi);
      }

      void coincidence(int a, int b) {
        std::vector<int> queue;
        merge(a, b, queue);
        for (std::size_t q = 0; q < queue.size(); ++q) {
          int dead = queue[q];
          for (Letter x = 0; x < static_cast<Letter>(_width); ++x) {
            int d = entry(dead, x);
            if (d == kUndefined) {
              continue;
            }
            Letter xi = inverse_letter(x);
            if (entry(d, xi) == dead) {
              entry(d, xi) = kUndefined;
            }
            int mu = rep(dead), nu = rep(d);
            if (entry(mu, x) != kUndefined) {
              merge(nu, entry(mu, x), queue);
            } else if (entry(nu, xi) != kUndefined) {
              merge(mu, entry(nu, xi), queue);
            } else {
              entry(mu, x)  = nu;
              entry(nu, xi) = mu;
              _deductions.emplace_back(mu, x);
            }
          }
        }
      }

      void process_deductions() {
        while (!_deductions.empty() && !_overflow) {
          auto [a, x] = _deductions.back();
          _deductions.pop_back();
          if (!alive(a)) {
            continue;
          }
          for (auto id : _by_first[x]) {
            scan(a, _conjugates[id], false);
            if (!alive(a)) {
              break;
            }
          }
          if (!alive(a)) {
            continue;
          }
          int b = entry(a, x);
          if (b == kUndefined || !alive(b)) {
            continue;
          }
          for (auto id : _by_first[inverse_letter(x)]) {
            scan(b, _conjugates[id], false);
            if (!alive(b)) {
              break;
            }
          }
        }
      }

      void felsch() {
        std::size_t pos = 0;  // flat position of the first possibly undefined entry
        bool        rescanned = false;
        while (!_overflow) {
          while (pos < _table.size()
                 && (!alive(static_cast<int>(pos / _width)) || _table[pos] != kUndefined)) {
            ++pos;
          }
          if (pos == _table.size()) {
            if (rescanned) {
              return;
            }
            rescanned = true;
            pos       = 0;
            continue;
          }
          rescanned = false;
          define(static_cast<int>(pos / _width), static_cast<Letter>(pos % _width));
          process_deductions();
          maybe_compact(pos);
        }
      }

      void hlt() {
        for (std::size_t a = 0; a < _parent.size() && !_overflow; ++a) {
          int c = static_cast<int>(a);
          for (auto const& r : _relators) {
            if (!alive(c) || _overflow) {
              break;
            }
            scan_and_fill(c, r);
          }
          for (Letter x = 0; x < static_cast<Letter>(_width) && alive(c) && !_overflow; ++x) {
            if (entry(c, x) == kUndefined) {
              define(c, x);
            }
          }
          _deductions.clear();
          std::size_t flat = a * _width;
          maybe_compact(flat);
          a = flat / _width;
        }
        if (!_overflow) {
          // coincidences may have cleared entries of earlier cosets
          bool complete = true;
          for (std::size_t c = 0; c < _parent.size(); ++c) {
            if (!alive(static_cast<int>(c))) {
              continue;
            }
            for (int x = 0; x < _width; ++x) {
              complete = complete && _table[c * _width + x] != kUndefined;
            }
          }
          if (!complete) {
            hlt();
          }
        }
      }

      // Renumbers live cosets in order once fewer than half are live.
      // `flat` is a table position that is remapped to the new numbering.
      void maybe_compact(std::size_t& flat) {
        if (_parent.size() < 1024 || 2 * _live >= _parent.size() || !_deductions.empty()) {
          return;
        }
        std::size_t coset = flat / _width, offset = flat % _width;
        std::size_t before = 0;
        for (std::size_t c = 0; c < coset && c < _parent.size(); ++c) {
          before += alive(static_cast<int>(c));
        }
        compact();
        flat = before * _width + (coset < _parent.size() ? offset : 0);
      }

      void compact() {
        std::vector<int> renum(_parent.size(), kUndefined);
        int              next = 0;
        for (std::size_t c = 0; c < _parent.size(); ++c) {
          if (alive(static_cast<int>(c))) {
            renum[c] = next++;
          }
        }
        std::vector<int> table(static_cast<std::size_t>(next) * _width, kUndefined);
        for (std::size_t c = 0; c < _parent.size(); ++c) {
          if (renum[c] == kUndefined) {
            continue;
          }
          for (int x = 0; x < _width; ++x) {
            int d = _table[c * _width + x];
            table[static_cast<std::size_t>(renum[c]) * _width + x] = d == kUndefined ? kUndefined : renum[rep(d)];
          }
        }
        _table.swap(table);
        _parent.resize(next);
        for (int c = 0; c < next; ++c) {
          _parent[c] = c;
        }
      }

      int                                  _width;
      CosetLimits                          _limits;
      std::vector<Word>                    _relators;
      std::vector<Word>                    _conjugates;
      std::vector<std::vector<std::size_t>> _by_first;
      std::vector<Word>                    _subgroup;
      std::vector<int>                     _table;
      std::vector<int>                     _parent;
      std::vector<std::pair<int, Letter>>  _deductions;
      std::size_t                          _live          = 0;
      std::size_t                          _total_defined = 0;
      std::size_t                          _max_live      = 0;
      bool                                 _overflow      = false;
    };

  }  // namespace

  CosetEnumeration todd_coxeter(Presentation const&      pres,
                                std::vector<Word> const& subgroup,
                                CosetLimits const&       limits) {
    return Enumerator(pres, subgroup, limits).run();
  }

  std::optional<std::size_t> group_order(Presentation const& pres, CosetLimits const& limits) {
    auto e = todd_coxeter(pres, {}, limits);
    if (!e.closed) {
      return std::nullopt;
    }
    return e.index;
  }

}  // namespace plsg

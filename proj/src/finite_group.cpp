#include "plsg/finite_group.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <numeric>
#include <stdexcept>

namespace plsg {

  FiniteGroup::FiniteGroup(std::string name, int order, std::vector<int> table)
      : _name(std::move(name)), _order(order), _table(std::move(table)), _inverse(order, -1) {
    if (order < 1 || _table.size() != static_cast<std::size_t>(order) * order) {
      throw std::invalid_argument("group table has the wrong size");
    }
    for (int a = 0; a < order; ++a) {
      if (mul(0, a) != a || mul(a, 0) != a) {
        throw std::invalid_argument("element 0 is not the identity of " + _name);
      }
      std::vector<char> row(order, 0), col(order, 0);
      for (int b = 0; b < order; ++b) {
        int x = mul(a, b), y = mul(b, a);
        if (x < 0 || x >= order || y < 0 || y >= order || row[x] || col[y]) {
          throw std::invalid_argument("group table of " + _name + " is not a Latin square");
        }
        row[x] = col[y] = 1;
        if (x == 0) {
          _inverse[a] = b;
        }
      }
    }
  }

  FiniteGroup FiniteGroup::cyclic(int n) {
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        t[a * n + b] = (a + b) % n;
      }
    }
    return FiniteGroup("C" + std::to_string(n), n, std::move(t));
  }

  FiniteGroup FiniteGroup::direct_product(FiniteGroup const& g, FiniteGroup const& h, std::string name) {
    int const        n = g.order() * h.order();
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        t[a * n + b] = g.mul(a / h.order(), b / h.order()) * h.order() + h.mul(a % h.order(), b % h.order());
      }
    }
    if (name.empty()) {
      name = g.name() + " x " + h.name();
    }
    return FiniteGroup(std::move(name), n, std::move(t));
  }

  FiniteGroup FiniteGroup::cyclic_extension(FiniteGroup const&      n,
                                            int                     p,
                                            std::vector<int> const& alpha,
                                            int                     z,
                                            std::string             name) {
    int const m = n.order();
    // powers[i] = alpha^i
    std::vector<std::vector<int>> powers(p, std::vector<int>(m));
    std::iota(powers[0].begin(), powers[0].end(), 0);
    for (int i = 1; i < p; ++i) {
      for (int y = 0; y < m; ++y) {
        powers[i][y] = alpha[powers[i - 1][y]];
      }
    }
    int const        order = m * p;
    std::vector<int> t(static_cast<std::size_t>(order) * order);
    for (int a = 0; a < order; ++a) {
      int x = a % m, i = a / m;
      for (int b = 0; b < order; ++b) {
        int y = b % m, j = b / m;
        int v = n.mul(x, powers[i][y]);
        int k = i + j;
        if (k >= p) {
          v = n.mul(v, z);
          k -= p;
        }
        t[a * order + b] = k * m + v;
      }
    }
    return FiniteGroup(std::move(name), order, std::move(t));
  }

  int FiniteGroup::element_order(int a) const {
    int k = 1;
    for (int x = a; x != 0; x = mul(x, a)) {
      ++k;
    }
    return k;
  }

  bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < _order; ++a) {
      for (int b = a + 1; b < _order; ++b) {
        if (mul(a, b) != mul(b, a)) {
          return false;
        }
      }
    }
    return true;
  }

  bool FiniteGroup::is_associative() const {
    for (int a = 0; a < _order; ++a) {
      for (int b = 0; b < _order; ++b) {
        int ab = mul(a, b);
        for (int c = 0; c < _order; ++c) {
          if (mul(ab, c) != mul(a, mul(b, c))) {
            return false;
          }
        }
      }
    }
    return true;
  }

  std::vector<int> FiniteGroup::closure(std::vector<int> const& gens) const {
    std::vector<char> in(_order, 0);
    std::vector<int>  elems{0};
    in[0] = 1;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (int g : gens) {
        int y = mul(elems[i], g);
        if (!in[y]) {
          in[y] = 1;
          elems.push_back(y);
        }
      }
    }
    return elems;
  }

  std::vector<int> FiniteGroup::generators() const {
    std::vector<int>  gens;
    std::vector<char> in(_order, 0);
    in[0]         = 1;
    std::size_t n = 1;
    while (n < static_cast<std::size_t>(_order)) {
      int best = -1;
      for (int a = 1; a < _order; ++a) {
        if (!in[a] && (best < 0 || element_order(a) > element_order(best))) {
          best = a;
        }
      }
      gens.push_back(best);
      auto sub = closure(gens);
      n        = sub.size();
      for (int x : sub) {
        in[x] = 1;
      }
    }
    return gens;
  }

  Presentation FiniteGroup::presentation() const {
    auto const   gens = generators();
    Presentation pres;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      pres.generators.push_back("g" + std::to_string(i + 1));
    }
    std::vector<Word> word(_order);
    std::vector<char> seen(_order, 0);
    std::vector<int>  queue{0};
    seen[0] = 1;
    // tree[x] = true where x * gens[i] was first reached from x
    std::vector<std::vector<char>> tree(_order, std::vector<char>(gens.size(), 0));
    for (std::size_t q = 0; q < queue.size(); ++q) {
      int x = queue[q];
      for (std::size_t i = 0; i < gens.size(); ++i) {
        int y = mul(x, gens[i]);
        if (!seen[y]) {
          seen[y] = 1;
          word[y] = word[x];
          word[y].push_back(letter(static_cast<int>(i)));
          tree[x][i] = 1;
          queue.push_back(y);
        }
      }
    }
    for (int x = 0; x < _order; ++x) {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (tree[x][i]) {
          continue;
        }
        Word r = word[x];
        r.push_back(letter(static_cast<int>(i)));
        r = cyclic_reduce(concat(r, inverse(word[mul(x, gens[i])])));
        if (!r.empty()) {
          pres.relators.push_back(std::move(r));
        }
      }
    }
    return pres;
  }

  namespace {

    std::vector<int> centralizer_sizes(FiniteGroup const& g) {
      std::vector<int> c(g.order(), 0);
      for (int a = 0; a < g.order(); ++a) {
        for (int b = 0; b < g.order(); ++b) {
          c[a] += g.mul(a, b) == g.mul(b, a);
        }
      }
      return c;
    }

    std::vector<int> element_orders(FiniteGroup const& g) {
      std::vector<int> o(g.order());
      for (int a = 0; a < g.order(); ++a) {
        o[a] = g.element_order(a);
      }
      return o;
    }

  }  // namespace

  GroupInvariants invariants(FiniteGroup const& g) {
    GroupInvariants inv;
    inv.order   = g.order();
    inv.abelian = g.is_abelian();
    std::vector<int> commutators;
    for (int a = 0; a < g.order(); ++a) {
      for (int b = 0; b < g.order(); ++b) {
        commutators.push_back(g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)));
      }
    }
    std::sort(commutators.begin(), commutators.end());
    commutators.erase(std::unique(commutators.begin(), commutators.end()), commutators.end());
    inv.derived = static_cast<int>(g.closure(commutators).size());
    auto orders = element_orders(g);
    auto cents  = centralizer_sizes(g);
    for (int a = 0; a < g.order(); ++a) {
      inv.order_centralizer.emplace_back(orders[a], cents[a]);
    }
    std::sort(inv.order_centralizer.begin(), inv.order_centralizer.end());
    return inv;
  }

  void for_each_isomorphism(FiniteGroup const&                                   g,
                            FiniteGroup const&                                   h,
                            std::function<bool(std::vector<int> const&)> const& visit) {
    if (g.order() != h.order() || invariants(g) != invariants(h)) {
      return;
    }
    auto const gens  = g.generators();
    auto const go    = element_orders(g);
    auto const ho    = element_orders(h);
    auto const gc    = centralizer_sizes(g);
    auto const hc    = centralizer_sizes(h);
    int const  order = g.order();

    std::vector<std::vector<int>> cands(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (int b = 0; b < order; ++b) {
        if (ho[b] == go[gens[i]] && hc[b] == gc[gens[i]]) {
          cands[i].push_back(b);
        }
      }
    }

    std::vector<int>  images(gens.size());
    std::vector<int>  phi(order);
    std::vector<char> used(order);
    // Extends the partial assignment of the first k generators to the
    // subgroup they generate; false on a clash or loss of injectivity.
    auto consistent = [&](std::size_t k) {
      std::fill(phi.begin(), phi.end(), -1);
      std::fill(used.begin(), used.end(), 0);
      phi[0]  = 0;
      used[0] = 1;
      std::vector<int> queue{0};
      for (std::size_t q = 0; q < queue.size(); ++q) {
        int x = queue[q];
        for (std::size_t j = 0; j < k; ++j) {
          int y  = g.mul(x, gens[j]);
          int im = h.mul(phi[x], images[j]);
          if (phi[y] < 0) {
            if (used[im]) {
              return false;
            }
            phi[y]   = im;
            used[im] = 1;
            queue.push_back(y);
          } else if (phi[y] != im) {
            return false;
          }
        }
      }
      return true;
    };

    bool stop = false;
    std::function<void(std::size_t)> dfs = [&](std::size_t i) {
      if (i == gens.size()) {
        stop = !visit(phi);
        return;
      }
      for (int c : cands[i]) {
        images[i] = c;
        if (consistent(i + 1)) {
          dfs(i + 1);
          if (stop) {
            return;
          }
        }
      }
    };
    dfs(0);
  }

  std::optional<std::vector<int>> find_isomorphism(FiniteGroup const& g, FiniteGroup const& h) {
    std::optional<std::vector<int>> found;
    for_each_isomorphism(g, h, [&](std::vector<int> const& phi) {
      found = phi;
      return false;
    });
    return found;
  }

  std::vector<std::vector<int>> automorphisms(FiniteGroup const& g) {
    std::vector<std::vector<int>> out;
    for_each_isomorphism(g, g, [&](std::vector<int> const& phi) {
      out.push_back(phi);
      return true;
    });
    return out;
  }

  namespace {

    template <typename T, typename Mul>
    FiniteGroup from_generators(T identity, std::vector<T> const& gens, Mul mul, std::string name) {
      std::vector<T> elems{identity};
      std::map<T, int> index{{identity, 0}};
      for (std::size_t i = 0; i < elems.size(); ++i) {
        for (auto const& g : gens) {
          T y = mul(elems[i], g);
          if (index.emplace(y, static_cast<int>(elems.size())).second) {
            elems.push_back(y);
          }
        }
      }
      int const        n = static_cast<int>(elems.size());
      std::vector<int> t(static_cast<std::size_t>(n) * n);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          t[a * n + b] = index.at(mul(elems[a], elems[b]));
        }
      }
      return FiniteGroup(std::move(name), n, std::move(t));
    }

    FiniteGroup symmetric4() {
      using Perm = std::array<int, 4>;
      auto compose = [](Perm const& p, Perm const& q) {
        Perm r{};
        for (int i = 0; i < 4; ++i) {
          r[i] = p[q[i]];
        }
        return r;
      };
      return from_generators(Perm{0, 1, 2, 3}, {Perm{1, 2, 3, 0}, Perm{1, 0, 2, 3}}, compose, "S4");
    }

    FiniteGroup special_linear_2_3() {
      using Mat = std::array<int, 4>;
      auto mul = [](Mat const& a, Mat const& b) {
        return Mat{(a[0] * b[0] + a[1] * b[2]) % 3, (a[0] * b[1] + a[1] * b[3]) % 3,
                   (a[2] * b[0] + a[3] * b[2]) % 3, (a[2] * b[1] + a[3] * b[3]) % 3};
      };
      return from_generators(Mat{1, 0, 0, 1}, {Mat{1, 1, 0, 1}, Mat{0, 2, 1, 0}}, mul, "SL(2,3)");
    }

    std::vector<int> inversion(int n) {
      std::vector<int> a(n);
      for (int x = 0; x < n; ++x) {
        a[x] = (n - x) % n;
      }
      return a;
    }

    std::vector<std::pair<int, int>> prime_powers(int n) {
      std::vector<std::pair<int, int>> out;
      for (int p = 2; p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
          n /= p;
          ++e;
        }
        if (e > 0) {
          out.emplace_back(p, e);
        }
      }
      return out;
    }

    void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
      if (n == 0) {
        out.push_back(cur);
        return;
      }
      for (int k = std::min(n, max_part); k >= 1; --k) {
        cur.push_back(k);
        partitions(n - k, k, cur, out);
        cur.pop_back();
      }
    }

    // Every abelian group of order n as a product of cyclic groups given by
    // invariant factors d1 | d2 | ...
    std::vector<FiniteGroup> abelian_groups(int n) {
      std::vector<std::vector<int>> factor_lists{{}};
      for (auto [p, e] : prime_powers(n)) {
        std::vector<std::vector<int>> parts;
        std::vector<int>              cur;
        partitions(e, e, cur, parts);
        std::vector<std::vector<int>> next;
        for (auto const& fl : factor_lists) {
          for (auto const& part : parts) {
            // part is descending; align the largest parts with the largest factors
            std::vector<int> f = fl;
            f.resize(std::max(f.size(), part.size()), 1);
            std::sort(f.rbegin(), f.rend());
            for (std::size_t i = 0; i < part.size(); ++i) {
              for (int k = 0; k < part[i]; ++k) {
                f[i] *= p;
              }
            }
            next.push_back(std::move(f));
          }
        }
        factor_lists = std::move(next);
      }
      std::vector<FiniteGroup> out;
      for (auto f : factor_lists) {
        std::sort(f.begin(), f.end());
        FiniteGroup g = FiniteGroup::cyclic(f.empty() ? 1 : f[0]);
        for (std::size_t i = 1; i < f.size(); ++i) {
          g = FiniteGroup::direct_product(g, FiniteGroup::cyclic(f[i]));
        }
        out.push_back(std::move(g));
      }
      return out;
    }

    std::vector<FiniteGroup> named_nonabelian(int n) {
      std::vector<FiniteGroup> out;
      if (n % 2 == 0 && n >= 6) {
        int m = n / 2;
        out.push_back(FiniteGroup::cyclic_extension(FiniteGroup::cyclic(m), 2, inversion(m), 0,
                                                    m == 3 ? "S3" : "D" + std::to_string(n)));
      }
      if (n % 4 == 0 && n >= 8) {
        int m = n / 4;
        std::string name = m == 2 ? "Q8" : m == 4 ? "Q16" : "Dic" + std::to_string(n);
        out.push_back(FiniteGroup::cyclic_extension(FiniteGroup::cyclic(2 * m), 2, inversion(2 * m), m, name));
      }
      if (n == 12) {
        auto v4 = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
        // (1,0) -> (0,1) -> (1,1) -> (1,0)
        out.push_back(FiniteGroup::cyclic_extension(v4, 3, {0, 3, 1, 2}, 0, "A4"));
      }
      if (n == 24) {
        out.push_back(symmetric4());
        out.push_back(special_linear_2_3());
      }
      return out;
    }

    struct Bucket {
      std::vector<FiniteGroup>     groups;
      std::vector<GroupInvariants> invs;

      // Adds g unless an isomorphic group is already present.
      bool add(FiniteGroup g) {
        if (!g.is_associative()) {
          throw std::logic_error("constructed table of " + g.name() + " is not associative");
        }
        auto inv = invariants(g);
        for (std::size_t i = 0; i < groups.size(); ++i) {
          if (invs[i] == inv && find_isomorphism(g, groups[i])) {
            return false;
          }
        }
        groups.push_back(std::move(g));
        invs.push_back(std::move(inv));
        return true;
      }
    };

  }  // namespace

  GroupCatalog GroupCatalog::build(int max_order) {
    if (max_order < 1 || max_order > 255) {
      throw std::invalid_argument("group catalog order must be in 1..255");
    }
    std::vector<Bucket> buckets(max_order + 1);
    buckets[1].add(FiniteGroup());
    for (int n = 2; n <= max_order; ++n) {
      Bucket& bucket = buckets[n];
      for (auto& g : abelian_groups(n)) {
        bucket.add(std::move(g));
      }
      for (auto& g : named_nonabelian(n)) {
        bucket.add(std::move(g));
      }
      // Every group of these orders is solvable, so it has a normal subgroup
      // of prime index p and is a cyclic extension of it.
      int unnamed = 0;
      for (auto [p, e] : prime_powers(n)) {
        (void) e;
        for (auto const& base : buckets[n / p].groups) {
          int const m = base.order();
          for (auto const& alpha : automorphisms(base)) {
            std::vector<int> ap(m);
            for (int y = 0; y < m; ++y) {
              int v = y;
              for (int i = 0; i < p; ++i) {
                v = alpha[v];
              }
              ap[y] = v;
            }
            for (int z = 0; z < m; ++z) {
              if (alpha[z] != z) {
                continue;
              }
              bool inner = true;
              for (int y = 0; y < m && inner; ++y) {
                inner = ap[y] == base.mul(base.mul(z, y), base.inv(z));
              }
              if (!inner) {
                continue;
              }
              std::string name = "G" + std::to_string(n) + "." + std::to_string(unnamed + 1);
              if (bucket.add(FiniteGroup::cyclic_extension(base, p, alpha, z, name))) {
                ++unnamed;
              }
            }
          }
        }
      }
    }
    GroupCatalog cat;
    cat._max_order = max_order;
    for (int n = 1; n <= max_order; ++n) {
      auto& gs = buckets[n].groups;
      std::stable_partition(gs.begin(), gs.end(), [](FiniteGroup const& g) { return g.is_abelian(); });
      for (auto& g : gs) {
        cat._groups.push_back(std::make_shared<FiniteGroup const>(std::move(g)));
      }
    }
    return cat;
  }

  std::vector<GroupPtr> GroupCatalog::of_order(int n) const {
    std::vector<GroupPtr> out;
    for (auto const& g : _groups) {
      if (g->order() == n) {
        out.push_back(g);
      }
    }
    return out;
  }

  namespace {

    constexpr char kMagic[8] = {'P', 'L', 'S', 'G', 'R', 'P', 'S', '\n'};

    void put_u32(std::ostream& out, std::uint32_t v) {
      for (int i = 0; i < 4; ++i) {
        out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
      }
    }

    std::uint32_t get_u32(std::istream& in) {
      std::uint32_t v = 0;
      for (int i = 0; i < 4; ++i) {
        int c = in.get();
        if (c == EOF) {
          throw std::runtime_error("truncated group catalog");
        }
        v |= static_cast<std::uint32_t>(c & 0xFF) << (8 * i);
      }
      return v;
    }

  }  // namespace

  void GroupCatalog::save(std::filesystem::path const& path) const {
    if (path.has_parent_path()) {
      std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot write " + path.string());
    }
    out.write(kMagic, sizeof(kMagic));
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(_max_order));
    put_u32(out, static_cast<std::uint32_t>(_groups.size()));
    for (auto const& g : _groups) {
      put_u32(out, static_cast<std::uint32_t>(g->name().size()));
      out.write(g->name().data(), static_cast<std::streamsize>(g->name().size()));
      put_u32(out, static_cast<std::uint32_t>(g->order()));
      for (int v : g->table()) {
        out.put(static_cast<char>(v));
      }
    }
    if (!out) {
      throw std::runtime_error("error writing " + path.string());
    }
  }

  GroupCatalog GroupCatalog::load(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw std::runtime_error("cannot read " + path.string());
    }
    char magic[sizeof(kMagic)];
    in.read(magic, sizeof(magic));
    if (!in || !std::equal(magic, magic + sizeof(magic), kMagic)) {
      throw std::runtime_error(path.string() + " is not a group catalog");
    }
    if (auto v = get_u32(in); v != kVersion) {
      throw std::runtime_error(path.string() + ": unsupported group catalog version " + std::to_string(v));
    }
    GroupCatalog cat;
    cat._max_order   = static_cast<int>(get_u32(in));
    std::uint32_t nr = get_u32(in);
    for (std::uint32_t i = 0; i < nr; ++i) {
      std::string name(get_u32(in), '\0');
      in.read(name.data(), static_cast<std::streamsize>(name.size()));
      int order = static_cast<int>(get_u32(in));
      if (order < 1 || order > 255) {
        throw std::runtime_error("bad group order in " + path.string());
      }
      std::vector<int> t(static_cast<std::size_t>(order) * order);
      for (auto& v : t) {
        int c = in.get();
        if (c == EOF) {
          throw std::runtime_error("truncated group catalog");
        }
        v = c;
      }
      FiniteGroup g(std::move(name), order, std::move(t));
      if (!g.is_associative()) {
        throw std::runtime_error("non-associative table for " + g.name() + " in " + path.string());
      }
      cat._groups.push_back(std::make_shared<FiniteGroup const>(std::move(g)));
    }
    return cat;
  }

  GroupCatalog GroupCatalog::load_or_build(std::filesystem::path const& path, int max_order) {
    if (std::filesystem::exists(path)) {
      auto cat = load(path);
      if (cat.max_order() >= max_order) {
        return cat;
      }
    }
    auto cat = build(max_order);
    cat.save(path);
    return cat;
  }

}  // namespace plsg

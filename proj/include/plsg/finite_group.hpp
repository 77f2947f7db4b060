#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "plsg/presentation.hpp"

namespace plsg {

  // A group given by its Cayley table. Element 0 is the identity.
  class FiniteGroup {
   public:
    FiniteGroup() : FiniteGroup("C1", 1, {0}) {}

    // Checks that 0 is a two-sided identity and that the table is a Latin
    // square. Associativity is checked separately.
    FiniteGroup(std::string name, int order, std::vector<int> table);

    static FiniteGroup cyclic(int n);
    static FiniteGroup direct_product(FiniteGroup const& g, FiniteGroup const& h, std::string name = {});

    // Elements are x t^k with x in n and 0 <= k < p; t acts on n by alpha
    // and t^p = z.
    static FiniteGroup cyclic_extension(FiniteGroup const&      n,
                                        int                     p,
                                        std::vector<int> const& alpha,
                                        int                     z,
                                        std::string             name);

    int                     order() const noexcept { return _order; }
    int                     mul(int a, int b) const { return _table[a * _order + b]; }
    int                     inv(int a) const { return _inverse[a]; }
    int                     element_order(int a) const;
    bool                    is_abelian() const;
    bool                    is_associative() const;
    std::string const&      name() const noexcept { return _name; }
    void                    set_name(std::string name) { _name = std::move(name); }
    std::vector<int> const& table() const noexcept { return _table; }

    // Elements generated by `gens`.
    std::vector<int> closure(std::vector<int> const& gens) const;

    // A small generating set; each element has maximal order among those
    // outside the subgroup generated by the earlier ones.
    std::vector<int> generators() const;

    // Relators read off a spanning tree of the Cayley graph; generator i is
    // generators()[i].
    Presentation presentation() const;

   private:
    std::string      _name;
    int              _order = 0;
    std::vector<int> _table;
    std::vector<int> _inverse;
  };

  struct GroupInvariants {
    int                              order   = 0;
    bool                             abelian = false;
    int                              derived = 0;
    std::vector<std::pair<int, int>> order_centralizer;  // sorted (element order, centralizer size)

    auto operator<=>(GroupInvariants const&) const = default;
  };

  GroupInvariants invariants(FiniteGroup const& g);

  // Calls `visit` with each isomorphism g -> h as an element map; stops when
  // `visit` returns false.
  void for_each_isomorphism(FiniteGroup const&                                   g,
                            FiniteGroup const&                                   h,
                            std::function<bool(std::vector<int> const&)> const& visit);

  std::optional<std::vector<int>> find_isomorphism(FiniteGroup const& g, FiniteGroup const& h);
  std::vector<std::vector<int>>   automorphisms(FiniteGroup const& g);

  using GroupPtr = std::shared_ptr<FiniteGroup const>;

  // One group per isomorphism class of each order up to max_order, sorted by
  // order with abelian groups first.
  class GroupCatalog {
   public:
    static constexpr std::uint32_t kVersion = 1;

    static GroupCatalog build(int max_order);
    static GroupCatalog load(std::filesystem::path const& path);
    void                save(std::filesystem::path const& path) const;

    // Loads `path` if it holds a catalog of at least max_order, otherwise
    // builds one and writes it there.
    static GroupCatalog load_or_build(std::filesystem::path const& path, int max_order);

    int                          max_order() const noexcept { return _max_order; }
    std::vector<GroupPtr> const& groups() const noexcept { return _groups; }
    std::vector<GroupPtr>        of_order(int n) const;

   private:
    int                   _max_order = 0;
    std::vector<GroupPtr> _groups;
  };

}  // namespace plsg

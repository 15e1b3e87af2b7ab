#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dendro/groups.hpp"

using namespace dendro;

TEST_CASE("group catalog validates") {
  auto groups = FiniteGroup::all_of_order_up_to(8);
  // 1,2,3,4(x2),5,6(x2),7,8(x5): 14 groups
  CHECK(groups.size() == 14);
  int order8 = 0;
  for (auto& g : groups)
    if (g.n == 8) ++order8;
  CHECK(order8 == 5);
  // pairwise non-isomorphic within each order
  for (size_t i = 0; i < groups.size(); ++i)
    for (size_t j = i + 1; j < groups.size(); ++j)
      CHECK_FALSE(groups_isomorphic(groups[i], groups[j]));
}

TEST_CASE("isomorphism testing") {
  CHECK(groups_isomorphic(FiniteGroup::cyclic(6),
                          FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3))));
  CHECK_FALSE(groups_isomorphic(FiniteGroup::cyclic(4), FiniteGroup::klein4()));
  CHECK_FALSE(groups_isomorphic(FiniteGroup::dihedral4(), FiniteGroup::quaternion8()));
}

TEST_CASE("hall extraction from group brackets") {
  for (auto& g : FiniteGroup::all_of_order_up_to(8)) {
    auto rep = hall_extract(magma_from_group(g));
    CHECK(rep.relations_hold);
    CHECK(rep.group_axioms_hold);
    CHECK(rep.bracket_recovered);
    REQUIRE(rep.group.has_value());
    CHECK(groups_isomorphic(*rep.group, g));
  }
}

TEST_CASE("hall extraction failures carry witnesses") {
  // left projection fails [a,a] = e on two or more elements
  PointedMagma m;
  m.n = 2;
  m.e = 0;
  m.bracket = {{0, 0}, {1, 1}};
  auto rep = hall_extract(m);
  CHECK_FALSE(rep.relations_hold);
  CHECK(rep.failed_relation == "[a,a] = e");
  CHECK(rep.witness == std::vector<int>{1});

  // from Z/3 via a - b: relations hold and Z/3 comes back
  auto z3 = FiniteGroup::cyclic(3);
  auto rep3 = hall_extract(magma_from_group(z3));
  CHECK(rep3.relations_hold);
  CHECK(groups_isomorphic(*rep3.group, z3));

  // singleton magma is trivially a group
  PointedMagma one;
  one.n = 1;
  one.e = 0;
  one.bracket = {{0}};
  CHECK(hall_extract(one).group_axioms_hold);
}

TEST_CASE("hall search orders 1..3") {
  auto r1 = hall_search(1);
  CHECK(r1.tables_checked == 1);
  CHECK(r1.passing == 1);
  CHECK(r1.every_group_arises);

  auto r2 = hall_search(2);
  CHECK(r2.tables_checked == 16);  // every binary operation on two elements
  CHECK(r2.passing == 1);
  CHECK(r2.all_extract_to_groups);
  CHECK(r2.every_group_arises);
  CHECK(r2.groups_found == std::vector<std::string>{"Z/2"});

  auto r3 = hall_search(3);
  CHECK(r3.tables_checked == 19683);  // 3^9
  CHECK(r3.passing >= 1);
  CHECK(r3.all_extract_to_groups);
  CHECK(r3.every_group_arises);
  CHECK(r3.groups_found == std::vector<std::string>{"Z/3"});
}

TEST_CASE("hall search order 4 with pruning") {
  auto r4 = hall_search(4, 2);
  CHECK(r4.all_extract_to_groups);
  CHECK(r4.every_group_arises);  // both Z/4 and the Klein group appear
  CHECK(r4.groups_found.size() == 2);
}

TEST_CASE("nerve truncations and bousfield maps") {
  for (auto& g : FiniteGroup::all_of_order_up_to(6)) {
    auto x = SimplicialTruncation::nerve_of_monoid(g.mul, g.e, 3);
    CHECK(x.reduced());
    for (int n = 2; n <= 3; ++n) {
      auto rep = bousfield_psi(x, n);
      CHECK(rep.bijective);
    }
  }

  // psi_2 on the nerve of Z/2 is (g1, g2) -> (g1, g1 g2)
  auto z2 = FiniteGroup::cyclic(2);
  auto x = SimplicialTruncation::nerve_of_monoid(z2.mul, z2.e, 3);
  auto rep = bousfield_psi(x, 2);
  // simplex (1, 1) has index 3: edges (1, 1+1=0)
  CHECK(rep.map[3] == std::vector<int>{1, 0});

  // the idempotent two-element monoid {1, z}, z^2 = z, fails psi_2
  std::vector<std::vector<int>> mul = {{0, 1}, {1, 1}};
  auto y = SimplicialTruncation::nerve_of_monoid(mul, 0, 3);
  auto rep_y = bousfield_psi(y, 2);
  CHECK_FALSE(rep_y.bijective);

  // a discrete point is trivially bijective
  std::vector<std::vector<int>> triv = {{0}};
  auto pt = SimplicialTruncation::nerve_of_monoid(triv, 0, 3);
  CHECK(bousfield_psi(pt, 2).bijective);
  CHECK(bousfield_psi(pt, 3).bijective);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dendro/actions.hpp"
#include "test_operads_shared.hpp"

using namespace dendro;

namespace {

const GradedSet X2{{"x"}, {2}};

GSet regular_gset(const FiniteGroup& g) {
  GSet x;
  x.group = g;
  x.n = g.n;
  x.act = g.mul;
  return x;
}

}  // namespace

TEST_CASE("group action validation") {
  auto p = TruncatedOperad::truncate_free(X2, 3);
  CHECK(p.sizes == std::vector<long>{0, 1, 2, 12});

  auto triv = trivial_action(FiniteGroup::symmetric3(), p);
  CHECK(validate_group_action(triv).valid);

  // Z/2 swapping the two elements of T_{x^2}(2)
  auto z2 = FiniteGroup::cyclic(2);
  GroupActionOnOperad swap = trivial_action(z2, p);
  swap.act[2][1] = {1, 0};
  CHECK(validate_group_action(swap).valid);

  // a broken table is caught with a witness
  GroupActionOnOperad bad = trivial_action(z2, p);
  bad.act[3][1][0] = 1;  // g.x = 1 but g.(g.x) should return to 0; here g.1 = 1
  auto rep = validate_group_action(bad);
  CHECK_FALSE(rep.valid);
  CHECK(rep.failure == "action is not associative");
  CHECK(rep.witness.size() == 4);
}

TEST_CASE("endomorphism operad action") {
  auto z2 = FiniteGroup::cyclic(2);
  auto e = endomorphism_action(regular_gset(z2), 2);
  CHECK(validate_group_action(e).valid);
  CHECK(e.operad.sizes[0] == 2);   // |X|^{|X|^0} = 2
  CHECK(e.operad.sizes[1] == 4);   // |X|^{|X|}
  CHECK(e.operad.sizes[2] == 16);  // |X|^{|X|^2}

  // with the regular Z/2 action, prefix composition has no fixed functions,
  // and E_X(1) splits into two orbits {id, swap} and {const0, const1}
  CHECK(endo_fixed_points(e, 1) == 0);
  CHECK(endo_orbits(e, 1) == 2);

  // trivial G gives the trivial action
  auto triv = endomorphism_action(regular_gset(FiniteGroup::cyclic(1)), 2);
  for (int n = 0; n <= 2; ++n) CHECK(endo_fixed_points(triv, n) == triv.operad.sizes[n]);
}

TEST_CASE("goper coproduct special case") {
  auto p = TruncatedOperad::truncate_free(X2, 3);
  for (auto g : {FiniteGroup::cyclic(2), FiniteGroup::symmetric3()}) {
    auto cop = goper_coproduct_special(p, g);
    CHECK(validate_group_action(cop).valid);
    for (int n = 0; n <= 3; ++n) CHECK(cop.operad.sizes[n] == g.n * p.sizes[n]);
  }
  // trivial group gives P back
  auto cop1 = goper_coproduct_special(p, FiniteGroup::cyclic(1));
  CHECK(cop1.operad.sizes == p.sizes);
}

TEST_CASE("quotient classes of H x_G P") {
  // H = G = Z/3 acting regularly on P(n) = Z/3: |classes| = |P(n)|
  auto z3 = FiniteGroup::cyclic(3);
  std::vector<int> phi = {0, 1, 2};
  CHECK(quotient_classes(z3, z3, phi, z3.mul, 3) == 3);
  // trivial G: no identification
  auto z1 = FiniteGroup::cyclic(1);
  std::vector<std::vector<int>> idact = {{0, 1, 2}};
  CHECK(quotient_classes(z3, z1, {0}, idact, 3) == 9);
}

TEST_CASE("theory objects") {
  CHECK(TheoryObjectGOper::lambda_minus1(1).display() == "(F_1, *)");
  auto l2 = TheoryObjectGOper::lambda_n(2, 2);
  CHECK(l2.display() == "(e, P_{2,2})");
  CHECK(TheoryObjectGOper::coproduct({}).display() == "(e, *)");
  auto c = TheoryObjectGOper::coproduct(
      {TheoryObjectGOper::lambda_minus1(2), TheoryObjectGOper::lambda_n(3, 1),
       TheoryObjectGOper::lambda_n(1, 1)});
  CHECK(c.display() == "(F_2, F_2 x P_{1,3})");
}

TEST_CASE("cat action axioms") {
  // one-object category from a group acting on a single-colored operad with
  // constant moment: the regular translation action on morphism sets
  auto act = group_on_words_action(FiniteGroup::cyclic(2), 3);
  auto rep = validate_cat_action(act);
  CHECK(rep.valid);

  // breaking mu(gamma) = mu(g) is caught: give the operad a second object
  // and declare a gamma entry whose output moment moves
  auto bad = two_object_action();
  bad.gamma_entries.push_back({{2, {0}}, 4});  // gamma(m; id_a) declared as p
  auto rep_bad = validate_cat_action(bad);
  CHECK_FALSE(rep_bad.valid);
  bool found = false;
  for (auto& f : rep_bad.failures) found = found || f.find("mu(gamma") != std::string::npos;
  CHECK(found);
}

TEST_CASE("do_hom counts and oracle") {
  auto a = two_object_action();
  CHECK(validate_cat_action(a).valid);

  // 0-and-1 level counts
  DOObject o0{0, std::nullopt};
  CHECK(do_hom(o0, a).size() == 2);  // objects
  DOObject o1{1, std::nullopt};
  CHECK(do_hom(o1, a).size() == 4);  // morphisms
  DOObject oeta{0, Tree::eta()};
  CHECK(do_hom(oeta, a).size() == 2);  // colors

  // oracle: double loop over chains x betas with the moment condition
  for (int n = 0; n <= 2; ++n) {
    std::vector<std::optional<Tree>> rs = {std::nullopt, Tree::eta(), Tree::corolla(1),
                                           Tree::corolla(2), Tree::linear(2),
                                           two_two_stack_tree()};
    for (auto& r : rs) {
      if (r.has_value() && r->n_vertices() > 2) continue;
      DOObject obj{n, r};
      CHECK(static_cast<long>(do_hom(obj, a).size()) == do_hom_oracle(obj, a));
    }
  }
}

TEST_CASE("the object map into the theory of group actions on operads") {
  // [n ! R] -> (F_n, F_n x J(R)): free rank n, generator arities = valences
  for (int n = 0; n <= 3; ++n)
    for (const Tree& r : enumerate_trees(3, 3)) {
      DOObject obj{n, r};
      auto t = do_to_theory(obj);
      CHECK(t.free_rank == n);
      std::vector<int> want;
      for (int v = 0; v < r.n_vertices(); ++v) want.push_back(r.valence(v));
      std::sort(want.begin(), want.end());
      CHECK(t.generator_arities == want);
    }
  DOObject o{2, std::nullopt};
  CHECK(do_to_theory(o).display() == "(F_2, *)");
}

TEST_CASE("do segal core description") {
  DOObject obj{3, Tree::corolla(2)};
  auto core = do_segal_core(obj);
  CHECK(core.gamma_ks == std::vector<int>{0, 1, 2});
  CHECK(core.zeta_vertices.size() == 1);
  CHECK(core.moment_on_colors_via_identities);
}

TEST_CASE("strict core check for a groupoid acting on a single-colored operad") {
  auto act = group_on_words_action(FiniteGroup::cyclic(2), 3);
  for (int n = 0; n <= 3; ++n) {
    std::vector<std::optional<Tree>> rs = {std::nullopt, Tree::eta(), Tree::corolla(1),
                                           Tree::corolla(2), Tree::linear(2),
                                           two_two_stack_tree()};
    for (auto& r : rs) {
      DOObject obj{n, r};
      auto rep = do_segal_check(obj, act);
      CHECK(rep.bijective);
    }
  }
  // [0 ! C_m]: the core is the object itself
  DOObject oc{0, Tree::corolla(2)};
  auto rep = do_segal_check(oc, act);
  CHECK(rep.elements == rep.core_tuples);

  // a non-invertible acting category breaks the star reconstruction
  auto mon = monoid_action();
  DOObject o2{2, std::nullopt};
  auto rep_mon = do_segal_check(o2, mon);
  CHECK_FALSE(rep_mon.bijective);
}

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dendro/groups.hpp"
#include "dendro/operad.hpp"
#include "dendro/presheaf.hpp"

namespace dendro {

// arity-truncated single-colored operad: plain carrier sets per arity, with
// composition tables where defined
struct TruncatedOperad {
  int arity_bound = 0;
  std::vector<long> sizes;  // 0..arity_bound
  std::string name;

  static TruncatedOperad truncate_free(const GradedSet& m, int arity_bound);
};

// a group acting on the carriers P(n); no compatibility with the operad
// structure is required
struct GroupActionOnOperad {
  FiniteGroup group;
  TruncatedOperad operad;
  std::vector<std::vector<std::vector<int>>> act;  // act[n][g][x]
};

struct ActionReport {
  bool valid = true;
  std::string failure;
  std::vector<int> witness;  // (n, g, h, x) or similar
};
ActionReport validate_group_action(const GroupActionOnOperad& a);
GroupActionOnOperad trivial_action(const FiniteGroup& g, const TruncatedOperad& p);

// G-set as an action table gset[g][x]
struct GSet {
  FiniteGroup group;
  int n = 0;
  std::vector<std::vector<int>> act;
};
// endomorphism operad E_X(n) = X^{X^n} with (g.f)(x...) = g.(f(x...))
GroupActionOnOperad endomorphism_action(const GSet& x, int arity_bound);
long endo_fixed_points(const GroupActionOnOperad& a, int arity);
long endo_orbits(const GroupActionOnOperad& a, int arity);

// (e, P) ⨿ (G, *) = (G, G x P): carrier G x P(n), G acting on the left factor
GroupActionOnOperad goper_coproduct_special(const TruncatedOperad& p, const FiniteGroup& g);
// classes of H x_G P(n) under (h phi(g), x) ~ (h, g x)
long quotient_classes(const FiniteGroup& h, const FiniteGroup& g,
                      const std::vector<int>& phi,  // hom G -> H
                      const std::vector<std::vector<int>>& g_act, int pn);

// symbolic object of the theory of group actions on operads
struct TheoryObjectGOper {
  int free_rank = 0;                 // n_{-1}
  std::vector<int> generator_arities;  // multiset, sorted
  std::string display() const;       // "(F_r, F_r x P_{a,b,...})"

  static TheoryObjectGOper lambda_minus1(int set_size);
  static TheoryObjectGOper lambda_n(int arity, int set_size);
  static TheoryObjectGOper coproduct(const std::vector<TheoryObjectGOper>& parts);
};

// ---------------------------------------------------------------------------
// categories acting on colored operads

struct FiniteCategory {
  int n_objects = 0;
  std::vector<std::pair<int, int>> mor;  // (source, target)
  std::vector<int> identity;             // per object
  std::map<std::pair<int, int>, int> comp;  // (f, g) with t(g) = s(f) -> f o g

  int source(int f) const { return mor[f].first; }
  int target(int f) const { return mor[f].second; }
  int compose(int f, int g) const;  // f after g
  void validate() const;
  static FiniteCategory from_group(const FiniteGroup& g);
  // two objects, an isomorphism between them and its inverse
  static FiniteCategory iso_pair();
  // two objects, one non-invertible arrow
  static FiniteCategory arrow();
};

// a finite colored operad with a category action on its operations
struct CatActionOnColoredOperad {
  FiniteCategory cat;
  std::shared_ptr<const TableColoredEval> operad;
  std::vector<int> mu;                        // per operation -> object
  std::map<std::pair<int, int>, int> act;     // (f, op) with s(f) = mu(op) -> op
  // declared composition/sigma data to check the gamma and sigma axioms on
  std::vector<std::pair<std::pair<int, std::vector<int>>, int>> gamma_entries;
  std::vector<std::pair<std::pair<int, std::vector<int>>, int>> sigma_entries;

  int mu_color(int color) const { return mu[operad->identity(color)]; }
  int apply(int f, int op) const;
};

struct CatActionReport {
  bool valid = true;
  std::vector<std::string> failures;  // axiom names with witnesses
};
CatActionReport validate_cat_action(const CatActionOnColoredOperad& a);

// an object [n ! R] of the wreath-style index category; R empty when absent
struct DOObject {
  int n = 0;
  std::optional<Tree> r;
};

// the object map [n ! R] -> (F_n, F_n x J(R)) into the theory of group
// actions on operads
TheoryObjectGOper do_to_theory(const DOObject& obj);

// a pair (alpha: [n] -> C, beta: R -> P) with alpha(0) = mu(beta(root))
struct DOHomElement {
  std::vector<int> alpha;        // n composable morphisms
  int alpha0 = 0;                // the source object when n = 0
  std::vector<int> edge_colors;  // beta on colors (empty when R absent)
  std::vector<int> vertex_ops;   // beta on vertices
};
std::vector<DOHomElement> do_hom(const DOObject& obj, const CatActionOnColoredOperad& a);

struct DOSegalCore {
  std::vector<int> gamma_ks;  // k = 0..n-1: the [1 ! empty] legs
  std::vector<int> zeta_vertices;  // one [0 ! C_v] leg per vertex of R
  bool moment_on_colors_via_identities = true;  // convention flag
};
DOSegalCore do_segal_core(const DOObject& obj);

struct DOSegalReport {
  long elements = 0;
  long core_tuples = 0;
  bool bijective = false;
};
// strict core compatibility for the nerve-type presheaf of (C ! P)
DOSegalReport do_segal_check(const DOObject& obj, const CatActionOnColoredOperad& a);

}  // namespace dendro

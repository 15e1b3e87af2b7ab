#pragma once

// shared builders and independent oracles used by the actions tests and the
// acceptance suite

#include <optional>

#include "dendro/actions.hpp"

namespace dendro {

inline Tree two_two_stack_tree() {
  return Tree("e0", {{"a", "e0", {"e1", "e2"}}, {"b", "e1", {"e3", "e4"}}});
}

// two-object groupoid acting on a two-color operad with six operations:
// colors {a, b}; id_a, id_b, m:(a,a)->a, n:(a)->b, p:(a,a)->b, q:(b)->b;
// the isomorphism u translates the mu = 0 block onto the mu = 1 block
inline CatActionOnColoredOperad two_object_action() {
  CatActionOnColoredOperad act;
  act.cat = FiniteCategory::iso_pair();  // id0, id1, u, u^{-1}
  std::vector<TableColoredEval::OpData> ops = {
      {"id_a", {0}, 0}, {"id_b", {1}, 1}, {"m", {0, 0}, 0},
      {"n", {0}, 1},    {"p", {0, 0}, 1}, {"q", {1}, 1},
  };
  auto p = std::make_shared<TableColoredEval>(2, ops, std::vector<int>{0, 1});
  p->set_sigma(2, {2, 1}, 2);
  p->set_sigma(4, {2, 1}, 4);
  p->set_gamma(2, {0, 0}, 2);
  p->set_gamma(4, {0, 0}, 4);
  act.operad = p;
  act.mu = {0, 1, 0, 1, 1, 0};  // q lives over the object 0
  auto setact = [&](int f, int op, int res) { act.act[{f, op}] = res; };
  // u moves the mu=0 block {id_a, m, q} to the mu=1 block {n, p, id_b}
  setact(2, 0, 3);
  setact(2, 2, 4);
  setact(2, 5, 1);
  setact(3, 3, 0);
  setact(3, 4, 2);
  setact(3, 1, 5);
  act.gamma_entries = {{{2, {0, 0}}, 2}, {{4, {0, 0}}, 4}};
  act.sigma_entries = {{{2, {2, 1}}, 2}, {{4, {2, 1}}, 4}};
  return act;
}

// a group as a one-object groupoid acting on a single-colored operad whose
// arity-1 and arity-2 operations are group elements, by left translation
inline CatActionOnColoredOperad group_on_words_action(const FiniteGroup& g, int) {
  CatActionOnColoredOperad act;
  act.cat = FiniteCategory::from_group(g);
  std::vector<TableColoredEval::OpData> ops;
  for (int w = 0; w < g.n; ++w) ops.push_back({"u" + std::to_string(w), {0}, 0});
  for (int w = 0; w < g.n; ++w) ops.push_back({"b" + std::to_string(w), {0, 0}, 0});
  auto p = std::make_shared<TableColoredEval>(1, ops, std::vector<int>{g.e});
  for (int w = 0; w < g.n; ++w) p->set_sigma(g.n + w, {2, 1}, g.n + w);
  act.operad = p;
  act.mu.assign(2 * g.n, 0);
  for (int f = 0; f < g.n; ++f)
    for (int w = 0; w < g.n; ++w) {
      act.act[{f, w}] = g.mul[f][w];
      act.act[{f, g.n + w}] = g.n + g.mul[f][w];
    }
  for (int w = 0; w < g.n; ++w)
    act.sigma_entries.push_back({{g.n + w, {2, 1}}, g.n + w});
  return act;
}

// the two-element idempotent monoid as a one-object category acting trivially
// on the unit operad
inline CatActionOnColoredOperad monoid_action() {
  CatActionOnColoredOperad act;
  FiniteCategory c;
  c.n_objects = 1;
  c.mor = {{0, 0}, {0, 0}};
  c.identity = {0};
  c.comp[{0, 0}] = 0;
  c.comp[{0, 1}] = 1;
  c.comp[{1, 0}] = 1;
  c.comp[{1, 1}] = 1;
  c.validate();
  act.cat = c;
  auto p = std::make_shared<TableColoredEval>(
      1, std::vector<TableColoredEval::OpData>{{"id", {0}, 0}}, std::vector<int>{0});
  act.operad = p;
  act.mu = {0};
  act.act[{1, 0}] = 0;
  return act;
}

// independent oracle for do_hom: a plain double loop over morphism tuples and
// raw (coloring, operation) tables filtered by the definitions
inline long do_hom_oracle(const DOObject& obj, const CatActionOnColoredOperad& a) {
  int n_mor = static_cast<int>(a.cat.mor.size());
  std::vector<std::vector<int>> alphas;
  {
    std::vector<int> tuple(obj.n, 0);
    for (;;) {
      bool composable = true;
      for (int i = 0; i + 1 < obj.n; ++i)
        composable = composable && a.cat.target(tuple[i]) == a.cat.source(tuple[i + 1]);
      if (composable) alphas.push_back(tuple);
      int i = obj.n - 1;
      while (i >= 0 && tuple[i] == n_mor - 1) tuple[i--] = 0;
      if (i < 0) break;
      ++tuple[i];
      if (obj.n == 0) break;
    }
    if (obj.n == 0) alphas.assign(1, {});
  }
  long count = 0;
  if (!obj.r.has_value()) {
    if (obj.n == 0) return a.cat.n_objects;
    return static_cast<long>(alphas.size());
  }
  const Tree& t = *obj.r;
  int nc = a.operad->n_colors(), no = a.operad->n_ops();
  std::vector<int> colors(t.n_edges(), 0), vops(t.n_vertices(), 0);
  for (;;) {
    for (;;) {
      bool valid = true;
      for (int v = 0; v < t.n_vertices() && valid; ++v) {
        std::vector<int> want;
        for (int in : t.in_edges(v)) want.push_back(colors[in]);
        valid = a.operad->profile(vops[v]) == want &&
                a.operad->out_color(vops[v]) == colors[t.out_edge(v)];
      }
      if (valid) {
        int c = a.mu_color(colors[t.root()]);
        if (obj.n == 0)
          ++count;
        else
          for (auto& ch : alphas)
            if (a.cat.source(ch[0]) == c) ++count;
      }
      if (t.n_vertices() == 0) break;
      int i = t.n_vertices() - 1;
      while (i >= 0 && vops[i] == no - 1) vops[i--] = 0;
      if (i < 0) break;
      ++vops[i];
    }
    int i = t.n_edges() - 1;
    while (i >= 0 && colors[i] == nc - 1) colors[i--] = 0;
    if (i < 0) break;
    ++colors[i];
  }
  return count;
}

}  // namespace dendro

#include "dendro/actions.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "dendro/kan.hpp"

namespace dendro {

TruncatedOperad TruncatedOperad::truncate_free(const GradedSet& m, int arity_bound) {
  TruncatedOperad p;
  p.arity_bound = arity_bound;
  p.name = "T_M";
  for (int n = 0; n <= arity_bound; ++n)
    p.sizes.push_back(static_cast<long>(elements(m, n, std::max(n, 1)).elems.size()));
  return p;
}

ActionReport validate_group_action(const GroupActionOnOperad& a) {
  ActionReport rep;
  const FiniteGroup& g = a.group;
  for (int n = 0; n <= a.operad.arity_bound; ++n) {
    long pn = a.operad.sizes[n];
    if (static_cast<long>(a.act[n].size()) != g.n) {
      rep.valid = false;
      rep.failure = "action table missing a group element";
      rep.witness = {n};
      return rep;
    }
    for (int x = 0; x < pn; ++x)
      if (a.act[n][g.e][x] != x) {
        rep.valid = false;
        rep.failure = "unit acts nontrivially";
        rep.witness = {n, x};
        return rep;
      }
    for (int u = 0; u < g.n; ++u)
      for (int v = 0; v < g.n; ++v)
        for (int x = 0; x < pn; ++x)
          if (a.act[n][u][a.act[n][v][x]] != a.act[n][g.mul[u][v]][x]) {
            rep.valid = false;
            rep.failure = "action is not associative";
            rep.witness = {n, u, v, x};
            return rep;
          }
  }
  return rep;
}

GroupActionOnOperad trivial_action(const FiniteGroup& g, const TruncatedOperad& p) {
  GroupActionOnOperad a;
  a.group = g;
  a.operad = p;
  for (int n = 0; n <= p.arity_bound; ++n) {
    std::vector<std::vector<int>> per_g(g.n, std::vector<int>(p.sizes[n]));
    for (int gg = 0; gg < g.n; ++gg)
      for (long x = 0; x < p.sizes[n]; ++x) per_g[gg][x] = static_cast<int>(x);
    a.act.push_back(std::move(per_g));
  }
  return a;
}

GroupActionOnOperad endomorphism_action(const GSet& xs, int arity_bound) {
  GroupActionOnOperad a;
  a.group = xs.group;
  a.operad.arity_bound = arity_bound;
  a.operad.name = "E_X";
  long args = 1;  // |X|^n
  for (int n = 0; n <= arity_bound; ++n) {
    long fn = 1;  // |X|^{|X|^n}
    for (long i = 0; i < args; ++i) fn *= xs.n;
    a.operad.sizes.push_back(fn);
    // f encoded base-|X| over the argument tuples
    std::vector<std::vector<int>> per_g(xs.group.n, std::vector<int>(fn));
    for (int g = 0; g < xs.group.n; ++g)
      for (long f = 0; f < fn; ++f) {
        long out = 0, pow = 1, rest = f;
        for (long i = 0; i < args; ++i) {
          int val = static_cast<int>(rest % xs.n);
          rest /= xs.n;
          out += static_cast<long>(xs.act[g][val]) * pow;
          pow *= xs.n;
        }
        per_g[g][f] = static_cast<int>(out);
      }
    a.act.push_back(std::move(per_g));
    args *= xs.n;
  }
  return a;
}

long endo_fixed_points(const GroupActionOnOperad& a, int arity) {
  long fixed = 0;
  for (long x = 0; x < a.operad.sizes[arity]; ++x) {
    bool fix = true;
    for (int g = 0; g < a.group.n; ++g) fix = fix && a.act[arity][g][x] == x;
    fixed += fix ? 1 : 0;
  }
  return fixed;
}

long endo_orbits(const GroupActionOnOperad& a, int arity) {
  UnionFind uf(static_cast<int>(a.operad.sizes[arity]));
  for (int g = 0; g < a.group.n; ++g)
    for (long x = 0; x < a.operad.sizes[arity]; ++x)
      uf.unite(static_cast<int>(x), a.act[arity][g][x]);
  return uf.classes();
}

GroupActionOnOperad goper_coproduct_special(const TruncatedOperad& p, const FiniteGroup& g) {
  GroupActionOnOperad a;
  a.group = g;
  a.operad.arity_bound = p.arity_bound;
  a.operad.name = "(G, G x " + p.name + ")";
  for (int n = 0; n <= p.arity_bound; ++n) {
    long sz = g.n * p.sizes[n];
    a.operad.sizes.push_back(sz);
    std::vector<std::vector<int>> per_g(g.n, std::vector<int>(sz));
    for (int h = 0; h < g.n; ++h)
      for (long e = 0; e < sz; ++e) {
        int gg = static_cast<int>(e / p.sizes[n]);
        long x = e % p.sizes[n];
        per_g[h][e] = static_cast<int>(g.mul[h][gg] * p.sizes[n] + x);
      }
    a.act.push_back(std::move(per_g));
  }
  return a;
}

long quotient_classes(const FiniteGroup& h, const FiniteGroup& g, const std::vector<int>& phi,
                      const std::vector<std::vector<int>>& g_act, int pn) {
  UnionFind uf(h.n * pn);
  for (int hh = 0; hh < h.n; ++hh)
    for (int gg = 0; gg < g.n; ++gg)
      for (int x = 0; x < pn; ++x)
        uf.unite(h.mul[hh][phi[gg]] * pn + x, hh * pn + g_act[gg][x]);
  return uf.classes();
}

std::string TheoryObjectGOper::display() const {
  std::string grp = free_rank == 0 ? "e" : "F_" + std::to_string(free_rank);
  if (generator_arities.empty()) return "(" + grp + ", *)";
  std::string p = "P_{";
  for (size_t i = 0; i < generator_arities.size(); ++i) {
    if (i) p += ",";
    p += std::to_string(generator_arities[i]);
  }
  p += "}";
  if (free_rank == 0) return "(e, " + p + ")";
  return "(" + grp + ", " + grp + " x " + p + ")";
}

TheoryObjectGOper TheoryObjectGOper::lambda_minus1(int set_size) {
  TheoryObjectGOper t;
  t.free_rank = set_size;
  return t;
}

TheoryObjectGOper TheoryObjectGOper::lambda_n(int arity, int set_size) {
  TheoryObjectGOper t;
  t.generator_arities.assign(set_size, arity);
  return t;
}

TheoryObjectGOper TheoryObjectGOper::coproduct(const std::vector<TheoryObjectGOper>& parts) {
  TheoryObjectGOper t;
  for (auto& p : parts) {
    t.free_rank += p.free_rank;
    t.generator_arities.insert(t.generator_arities.end(), p.generator_arities.begin(),
                               p.generator_arities.end());
  }
  std::sort(t.generator_arities.begin(), t.generator_arities.end());
  return t;
}

// ---------------------------------------------------------------------------

int FiniteCategory::compose(int f, int g) const {
  if (source(f) != target(g)) throw std::invalid_argument("morphisms not composable");
  return comp.at({f, g});
}

void FiniteCategory::validate() const {
  for (int o = 0; o < n_objects; ++o) {
    if (source(identity[o]) != o || target(identity[o]) != o)
      throw std::logic_error("identity endpoints");
  }
  for (int f = 0; f < static_cast<int>(mor.size()); ++f) {
    if (compose(f, identity[source(f)]) != f || compose(identity[target(f)], f) != f)
      throw std::logic_error("identity law");
    for (int g = 0; g < static_cast<int>(mor.size()); ++g) {
      if (target(g) != source(f)) continue;
      int fg = compose(f, g);
      if (source(fg) != source(g) || target(fg) != target(f))
        throw std::logic_error("composition endpoints");
      for (int h = 0; h < static_cast<int>(mor.size()); ++h) {
        if (target(h) != source(g)) continue;
        if (compose(compose(f, g), h) != compose(f, compose(g, h)))
          throw std::logic_error("associativity");
      }
    }
  }
}

FiniteCategory FiniteCategory::from_group(const FiniteGroup& g) {
  FiniteCategory c;
  c.n_objects = 1;
  for (int i = 0; i < g.n; ++i) c.mor.push_back({0, 0});
  c.identity = {g.e};
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) c.comp[{a, b}] = g.mul[a][b];
  c.validate();
  return c;
}

FiniteCategory FiniteCategory::iso_pair() {
  FiniteCategory c;
  c.n_objects = 2;
  c.mor = {{0, 0}, {1, 1}, {0, 1}, {1, 0}};  // id0, id1, u, u^{-1}
  c.identity = {0, 1};
  auto set = [&](int f, int g, int r) { c.comp[{f, g}] = r; };
  set(0, 0, 0);
  set(1, 1, 1);
  set(2, 0, 2);
  set(1, 2, 2);
  set(3, 1, 3);
  set(0, 3, 3);
  set(3, 2, 0);
  set(2, 3, 1);
  c.validate();
  return c;
}

FiniteCategory FiniteCategory::arrow() {
  FiniteCategory c;
  c.n_objects = 2;
  c.mor = {{0, 0}, {1, 1}, {0, 1}};
  c.identity = {0, 1};
  c.comp[{0, 0}] = 0;
  c.comp[{1, 1}] = 1;
  c.comp[{2, 0}] = 2;
  c.comp[{1, 2}] = 2;
  c.validate();
  return c;
}

int CatActionOnColoredOperad::apply(int f, int op) const {
  if (cat.source(f) != mu[op]) throw std::invalid_argument("moment mismatch");
  if (f == cat.identity[mu[op]]) {
    auto it = act.find({f, op});
    return it == act.end() ? op : it->second;
  }
  return act.at({f, op});
}

CatActionReport validate_cat_action(const CatActionOnColoredOperad& a) {
  CatActionReport rep;
  auto fail = [&](const std::string& s) {
    rep.valid = false;
    rep.failures.push_back(s);
  };
  int n_mor = static_cast<int>(a.cat.mor.size());
  int n_ops = a.operad->n_ops();
  // totality on the fiber product
  for (int f = 0; f < n_mor; ++f)
    for (int op = 0; op < n_ops; ++op) {
      if (a.cat.source(f) != a.mu[op]) continue;
      if (f == a.cat.identity[a.mu[op]]) continue;
      if (!a.act.count({f, op}))
        fail("action not total at (f=" + std::to_string(f) + ", op=" + std::to_string(op) + ")");
    }
  if (!rep.valid) return rep;
  for (int f = 0; f < n_mor; ++f)
    for (int op = 0; op < n_ops; ++op) {
      if (a.cat.source(f) != a.mu[op]) continue;
      int fg = a.apply(f, op);
      if (a.mu[fg] != a.cat.target(f))
        fail("mu(f.g) = t(f) fails at (" + std::to_string(f) + "," + std::to_string(op) + ")");
      if (a.operad->profile(fg) != a.operad->profile(op))
        fail("s(f.g) = s(g) fails at (" + std::to_string(f) + "," + std::to_string(op) + ")");
    }
  // unit and mixed associativity
  for (int op = 0; op < n_ops; ++op)
    if (a.apply(a.cat.identity[a.mu[op]], op) != op)
      fail("id . g = g fails at op " + std::to_string(op));
  for (int f = 0; f < n_mor; ++f)
    for (int f2 = 0; f2 < n_mor; ++f2) {
      if (a.cat.target(f2) != a.cat.source(f)) continue;
      for (int op = 0; op < n_ops; ++op) {
        if (a.mu[op] != a.cat.source(f2)) continue;
        if (a.apply(f, a.apply(f2, op)) != a.apply(a.cat.compose(f, f2), op))
          fail("f.(f'.g) = (ff').g fails at (" + std::to_string(f) + "," + std::to_string(f2) +
               "," + std::to_string(op) + ")");
      }
    }
  // moment is invariant under operadic composition, on the declared entries
  for (auto& [key, result] : a.gamma_entries) {
    if (a.mu[result] != a.mu[key.first])
      fail("mu(gamma(g;...)) = mu(g) fails at op " + std::to_string(key.first));
  }
  // equivariance with the symmetric action, on the declared entries
  for (auto& [key, result] : a.sigma_entries) {
    auto& [op, perm] = key;
    for (int f = 0; f < n_mor; ++f) {
      if (a.cat.source(f) != a.mu[op]) continue;
      if (a.apply(f, result) != a.operad->sigma_op(a.apply(f, op), perm))
        fail("sigma(f.g) = f.(sigma g) fails at (f=" + std::to_string(f) +
             ", op=" + std::to_string(op) + ")");
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

// all chains of n composable morphisms starting anywhere
void chains(const FiniteCategory& c, int n, std::vector<std::vector<int>>& out) {
  std::vector<int> acc;
  std::function<void(int)> rec = [&](int at) {
    if (static_cast<int>(acc.size()) == n) {
      out.push_back(acc);
      return;
    }
    for (int f = 0; f < static_cast<int>(c.mor.size()); ++f) {
      if (c.source(f) != at) continue;
      acc.push_back(f);
      rec(c.target(f));
      acc.pop_back();
    }
  };
  if (n == 0) return;
  for (int o = 0; o < c.n_objects; ++o) rec(o);
}

// beta-data on a tree: edge colorings plus vertex operations
void betas(const Tree& t, const TableColoredEval& p,
           std::vector<std::pair<std::vector<int>, std::vector<int>>>& out) {
  std::vector<int> colors(t.n_edges(), -1), ops(t.n_vertices(), -1);
  std::function<void(std::vector<int>)> rec = [&](std::vector<int> pending) {
    int v = -1;
    for (size_t i = 0; i < pending.size(); ++i)
      if (pending[i] >= 0) {
        v = pending[i];
        pending[i] = -1;
        break;
      }
    if (v < 0) {
      out.push_back({colors, ops});
      return;
    }
    const auto& ins = t.in_edges(v);
    for (int op : p.ops_by_out(colors[t.out_edge(v)], t.valence(v))) {
      auto prof = p.profile(op);
      ops[v] = op;
      for (size_t i = 0; i < ins.size(); ++i) colors[ins[i]] = prof[i];
      auto next = pending;
      for (int in : ins) {
        int w = t.top(in);
        if (w >= 0) next.push_back(w);
      }
      rec(next);
      for (int in : ins) colors[in] = -1;
      ops[v] = -1;
    }
  };
  for (int c = 0; c < p.n_colors(); ++c) {
    colors[t.root()] = c;
    std::vector<int> pending;
    int w = t.top(t.root());
    if (w >= 0) pending.push_back(w);
    rec(pending);
    colors[t.root()] = -1;
  }
}

}  // namespace

TheoryObjectGOper do_to_theory(const DOObject& obj) {
  std::vector<TheoryObjectGOper> parts = {TheoryObjectGOper::lambda_minus1(obj.n)};
  if (obj.r.has_value())
    for (int v = 0; v < obj.r->n_vertices(); ++v)
      parts.push_back(TheoryObjectGOper::lambda_n(obj.r->valence(v), 1));
  return TheoryObjectGOper::coproduct(parts);
}

std::vector<DOHomElement> do_hom(const DOObject& obj, const CatActionOnColoredOperad& a) {
  std::vector<DOHomElement> out;
  std::vector<std::vector<int>> alpha_chains;
  chains(a.cat, obj.n, alpha_chains);

  auto alpha0_of = [&](const std::vector<int>& chain, int fallback) {
    return chain.empty() ? fallback : a.cat.source(chain[0]);
  };

  if (!obj.r.has_value()) {
    if (obj.n == 0) {
      for (int o = 0; o < a.cat.n_objects; ++o) {
        DOHomElement e;
        e.alpha0 = o;
        out.push_back(e);
      }
    } else {
      for (auto& ch : alpha_chains) {
        DOHomElement e;
        e.alpha = ch;
        e.alpha0 = alpha0_of(ch, 0);
        out.push_back(e);
      }
    }
    return out;
  }

  const Tree& t = *obj.r;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> all_betas;
  betas(t, *a.operad, all_betas);
  auto moment_of_beta = [&](const std::vector<int>& colors) {
    return a.mu_color(colors[t.root()]);
  };
  if (obj.n == 0) {
    for (auto& [colors, ops] : all_betas) {
      DOHomElement e;
      e.alpha0 = moment_of_beta(colors);
      e.edge_colors = colors;
      e.vertex_ops = ops;
      out.push_back(e);
    }
    return out;
  }
  for (auto& ch : alpha_chains)
    for (auto& [colors, ops] : all_betas) {
      if (alpha0_of(ch, -1) != moment_of_beta(colors)) continue;
      DOHomElement e;
      e.alpha = ch;
      e.alpha0 = alpha0_of(ch, 0);
      e.edge_colors = colors;
      e.vertex_ops = ops;
      out.push_back(e);
    }
  return out;
}

DOSegalCore do_segal_core(const DOObject& obj) {
  DOSegalCore core;
  for (int k = 0; k < obj.n; ++k) core.gamma_ks.push_back(k);
  if (obj.r.has_value())
    for (int v = 0; v < obj.r->n_vertices(); ++v) core.zeta_vertices.push_back(v);
  return core;
}

DOSegalReport do_segal_check(const DOObject& obj, const CatActionOnColoredOperad& a) {
  DOSegalReport rep;
  auto elements = do_hom(obj, a);
  rep.elements = static_cast<long>(elements.size());
  bool has_vertices = obj.r.has_value() && obj.r->n_vertices() > 0;

  // restriction to the core legs only: star composites and corolla data
  auto restrict = [&](const DOHomElement& e) {
    std::vector<int> key;
    for (int k = 0; k < obj.n; ++k) {
      int m = e.alpha[0];
      for (int i = 1; i <= k; ++i) m = a.cat.compose(e.alpha[i], m);
      key.push_back(m);
    }
    if (has_vertices) {
      const Tree& t = *obj.r;
      for (int v = 0; v < t.n_vertices(); ++v) {
        key.push_back(e.vertex_ops[v]);
        key.push_back(e.edge_colors[t.out_edge(v)]);
        for (int in : t.in_edges(v)) key.push_back(e.edge_colors[in]);
      }
    }
    return key;
  };

  // compatible tuples: star legs out of a common object, corolla legs gluing
  // along shared edges, and the root moment tying the two when both exist
  std::vector<long> star(a.cat.n_objects, 0);
  for (int f = 0; f < static_cast<int>(a.cat.mor.size()); ++f) ++star[a.cat.source(f)];
  auto stars_at = [&](int c) {
    long s = 1;
    for (int k = 0; k < obj.n; ++k) s *= star[c];
    return s;
  };
  long tuples = 0;
  if (!has_vertices) {
    // empty core except for the star legs
    if (obj.n == 0)
      tuples = 1;
    else
      for (int c = 0; c < a.cat.n_objects; ++c) tuples += stars_at(c);
  } else {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> all_betas;
    betas(*obj.r, *a.operad, all_betas);
    for (auto& [colors, ops] : all_betas) {
      (void)ops;
      if (obj.n == 0)
        ++tuples;
      else
        tuples += stars_at(a.mu_color(colors[obj.r->root()]));
    }
  }
  rep.core_tuples = tuples;

  std::set<std::vector<int>> image;
  bool injective = true;
  for (auto& e : elements) injective = injective && image.insert(restrict(e)).second;
  rep.bijective = injective && rep.elements == rep.core_tuples;
  return rep;
}

}  // namespace dendro

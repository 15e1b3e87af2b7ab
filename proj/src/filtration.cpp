#include "dendro/filtration.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace dendro {

namespace {

// all single-vertex elements of the given arity
std::vector<Element> single_vertex_elements(const GradedSet& m, int arity) {
  std::vector<Element> out;
  for (int g = 0; g < m.size(); ++g) {
    if (m.valences[g] != arity) continue;
    std::vector<int> perm(arity);
    for (int i = 0; i < arity; ++i) perm[i] = i + 1;
    std::sort(perm.begin(), perm.end());
    do {
      out.push_back(sigma_action(Element::generator(g, arity), perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  std::sort(out.begin(), out.end(),
            [](const Element& a, const Element& b) { return a.key() < b.key(); });
  return out;
}

std::string assignment_key(const std::vector<Element>& a) {
  std::string s;
  for (auto& e : a) s += e.key() + "|";
  return s;
}

}  // namespace

bool is_primitive(const std::vector<Element>& assignment) {
  for (auto& e : assignment)
    if (e.n_vertices() != 1) return false;
  return true;
}

PrimitiveSet primitives(std::shared_ptr<const Skeleton> sk, int s, const GradedSet& m) {
  PrimitiveSet out;
  const Tree& t = sk->tree(s);
  out.labelings = 1;
  for (int v = 0; v < t.n_vertices(); ++v) {
    long matching = 0;
    for (int g = 0; g < m.size(); ++g) matching += m.valences[g] == t.valence(v) ? 1 : 0;
    out.labelings *= matching;
  }
  // dendrices: product of single-vertex element choices per vertex
  std::vector<std::vector<Element>> per_vertex;
  for (int v = 0; v < t.n_vertices(); ++v)
    per_vertex.push_back(single_vertex_elements(m, t.valence(v)));
  std::vector<Element> acc;
  std::function<void(int)> rec = [&](int v) {
    if (v == t.n_vertices()) {
      out.dendrex_list.push_back(acc);
      return;
    }
    for (auto& e : per_vertex[v]) {
      acc.push_back(e);
      rec(v + 1);
      acc.pop_back();
    }
  };
  rec(0);
  std::sort(out.dendrex_list.begin(), out.dendrex_list.end(),
            [](const std::vector<Element>& a, const std::vector<Element>& b) {
              return assignment_key(a) < assignment_key(b);
            });
  out.dendrices = static_cast<long>(out.dendrex_list.size());

  // orbits under the automorphism action
  std::map<std::string, int> index;
  for (size_t i = 0; i < out.dendrex_list.size(); ++i)
    index[assignment_key(out.dendrex_list[i])] = static_cast<int>(i);
  UnionFind uf(static_cast<int>(out.dendrex_list.size()));
  for (int ai : sk->automorphism_indices(s)) {
    const auto& alpha = sk->hom(s, s)[ai];
    for (size_t i = 0; i < out.dendrex_list.size(); ++i) {
      auto pulled = pull_assignment(m, alpha, out.dendrex_list[i]);
      uf.unite(static_cast<int>(i), index.at(assignment_key(pulled)));
    }
  }
  out.orbits = uf.classes();
  std::set<int> seen;
  for (size_t i = 0; i < out.dendrex_list.size(); ++i)
    if (seen.insert(uf.find(static_cast<int>(i))).second)
      out.orbit_representatives.push_back(static_cast<int>(i));
  return out;
}

namespace {

std::set<int> leaf_labels(const Element::Node& n) {
  std::set<int> out;
  std::function<void(const Element::Node&)> rec = [&](const Element::Node& x) {
    if (x.is_leaf()) {
      out.insert(x.leaf);
      return;
    }
    for (auto& a : x.args) rec(a);
  };
  rec(n);
  return out;
}

Element relabel(const Element& e, const std::map<int, int>& map, int new_arity) {
  Element out = e;
  std::function<void(Element::Node&)> rec = [&](Element::Node& n) {
    if (n.is_leaf()) {
      n.leaf = map.at(n.leaf);
      return;
    }
    for (auto& a : n.args) rec(a);
  };
  rec(out.root);
  out.arity = new_arity;
  return out;
}

}  // namespace

Factorization spread_apart(std::shared_ptr<const Tree> s, const std::vector<Element>& beta,
                           const GradedSet& m) {
  Factorization out;
  auto cur_tree = s;
  std::vector<Element> cur = beta;

  // phase 1: inner cofaces while a label has two or more vertices
  for (;;) {
    int v = -1;
    for (int w = 0; w < cur_tree->n_vertices(); ++w)
      if (cur[w].n_vertices() >= 2) {
        v = w;
        break;
      }
    if (v < 0) break;
    const Element& term = cur[v];
    // cut at the first non-leaf child of the root node
    int pos = -1;
    for (size_t i = 0; i < term.root.args.size(); ++i)
      if (!term.root.args[i].is_leaf()) {
        pos = static_cast<int>(i);
        break;
      }
    const Element::Node& g_node = term.root.args[pos];
    std::set<int> cut = leaf_labels(g_node);

    const auto& ins = cur_tree->in_edges(v);
    std::vector<int> tops;
    for (int label : cut) tops.push_back(ins[label - 1]);
    auto [split, fresh] = cur_tree->inner_coface(v, tops);
    auto split_ptr = std::make_shared<Tree>(split);
    OmegaMorphism delta = coface_of_split(cur_tree, split_ptr, fresh);

    // rebuild the assignment on the split tree
    int v_lo = split_ptr->vertex_index(cur_tree->vertex_name(v) + "_lo");
    int v_hi = split_ptr->vertex_index(cur_tree->vertex_name(v) + "_hi");
    std::vector<Element> next(split_ptr->n_vertices());
    for (int w = 0; w < cur_tree->n_vertices(); ++w) {
      if (w == v) continue;
      next[split_ptr->vertex_index(cur_tree->vertex_name(w))] = cur[w];
    }
    // upper vertex: the cut subterm, labels renumbered along its input order
    {
      const auto& hi_ins = split_ptr->in_edges(v_hi);
      std::map<int, int> lmap;
      for (size_t p = 0; p < hi_ins.size(); ++p) {
        auto it = std::find(ins.begin(), ins.end(), hi_ins[p]);
        lmap[static_cast<int>(it - ins.begin()) + 1] = static_cast<int>(p) + 1;
      }
      Element g_elt;
      g_elt.root = g_node;
      next[v_hi] = relabel(g_elt, lmap, static_cast<int>(cut.size()));
    }
    // lower vertex: the remaining term with the cut replaced by a fresh leaf
    {
      const auto& lo_ins = split_ptr->in_edges(v_lo);
      int fresh_edge = split_ptr->edge_index(fresh);
      std::map<int, int> lmap;
      int fresh_label = -1;
      for (size_t p = 0; p < lo_ins.size(); ++p) {
        if (lo_ins[p] == fresh_edge) {
          fresh_label = static_cast<int>(p) + 1;
          continue;
        }
        auto it = std::find(ins.begin(), ins.end(), lo_ins[p]);
        lmap[static_cast<int>(it - ins.begin()) + 1] = static_cast<int>(p) + 1;
      }
      lmap[0] = fresh_label;  // 0 marks the cut leaf
      Element f_elt;
      f_elt.root = term.root;
      Element::Node cut_leaf;
      cut_leaf.leaf = 0;
      f_elt.root.args[pos] = cut_leaf;
      next[v_lo] = relabel(f_elt, lmap, static_cast<int>(lo_ins.size()));
    }
    // the step must pull the new assignment back to the old one
    auto check = pull_assignment(m, delta, next);
    if (assignment_key(check) != assignment_key(cur))
      throw std::logic_error("inner coface step failed to recover the dendrex");
    out.steps.push_back(delta);
    cur_tree = split_ptr;
    cur = std::move(next);
  }

  // phase 2: codegeneracies while a label is the identity
  for (;;) {
    int v = -1;
    for (int w = 0; w < cur_tree->n_vertices(); ++w)
      if (cur[w] == Element::identity()) {
        v = w;
        break;
      }
    if (v < 0) break;
    auto collapsed = std::make_shared<Tree>(cur_tree->codegeneracy(v));
    OmegaMorphism sigma = codegeneracy_morphism(cur_tree, v, collapsed);
    std::vector<Element> next(collapsed->n_vertices());
    for (int w = 0; w < cur_tree->n_vertices(); ++w) {
      if (w == v) continue;
      next[collapsed->vertex_index(cur_tree->vertex_name(w))] = cur[w];
    }
    auto check = pull_assignment(m, sigma, next);
    if (assignment_key(check) != assignment_key(cur))
      throw std::logic_error("codegeneracy step failed to recover the dendrex");
    out.steps.push_back(sigma);
    cur_tree = collapsed;
    cur = std::move(next);
  }

  if (!is_primitive(cur) && cur_tree->n_vertices() > 0)
    throw std::logic_error("spread apart did not terminate at a primitive");

  out.terminal_tree = cur_tree;
  out.terminal = cur;
  for (auto& e : cur) out.primitive.labeling.push_back(e.root.gen);
  out.primitive.witness = cur_tree->n_vertices() > 0
                              ? replan(*cur_tree, cur, canonical_planar(*cur_tree))
                              : PlanarStructure{};
  out.primitive.assignment = cur;
  return out;
}

bool factorization_recovers(const Factorization& f, std::shared_ptr<const Tree> s,
                            const std::vector<Element>& beta, const GradedSet& m) {
  // stepwise
  std::vector<Element> cur = f.terminal;
  for (auto it = f.steps.rbegin(); it != f.steps.rend(); ++it)
    cur = pull_assignment(m, *it, cur);
  if (assignment_key(cur) != assignment_key(beta)) return false;
  // and through the composite morphism
  if (!f.steps.empty()) {
    OmegaMorphism comp = f.steps[0];
    for (size_t i = 1; i < f.steps.size(); ++i) comp = compose(f.steps[i], comp);
    if (!comp.src().same_named_tree(*s)) return false;
    auto pulled = pull_assignment(m, comp, f.terminal);
    if (assignment_key(pulled) != assignment_key(beta)) return false;
  }
  return true;
}

SubPresheaf psi(std::shared_ptr<const NervePresheaf> nerve, const GradedSet& m, int n) {
  auto sk = nerve->skel_ptr();
  std::vector<std::pair<int, int>> seeds;
  for (int t = 0; t < sk->size(); ++t) {
    if (sk->tree(t).n_vertices() > n) continue;
    auto prim = primitives(sk, t, m);
    for (auto& a : prim.dendrex_list) seeds.push_back({t, index_of_assignment(*nerve, t, a)});
    if (sk->tree(t).n_vertices() == 0) seeds.push_back({t, 0});  // the point of the nerve at eta
  }
  return generate_sub(nerve, seeds);
}

FiltrationReport verify_filtration(std::shared_ptr<const Skeleton> sk, const GradedSet& m) {
  FiltrationReport rep;
  int bound = sk->max_vertices;
  auto nerve = nerve_of_free(sk, m, std::max(0, sk->max_valence - 1));

  for (int s = 0; s < sk->size(); ++s)
    rep.per_level_sizes.push_back({s, nerve->size(s)});

  std::vector<SubPresheaf> psis;
  for (int n = 0; n <= bound; ++n) psis.push_back(psi(nerve, m, n));
  for (int n = 1; n <= bound; ++n) rep.monotone &= sub_contains(psis[n], psis[n - 1]);

  // exhaustiveness by spreading every dendrex apart
  for (int s = 0; s < sk->size(); ++s) {
    for (int x = 0; x < nerve->size(s); ++x) {
      auto beta = assignment_of(*nerve, s, x);
      auto fact = spread_apart(sk->tree_ptr(s), beta, m);
      bool ok = factorization_recovers(fact, sk->tree_ptr(s), beta, m);
      int stage = fact.terminal_tree->n_vertices();
      rep.max_stage_needed = std::max(rep.max_stage_needed, stage);
      if (stage <= bound) ok = ok && psis[stage].mask[s][x];
      rep.exhaustive = rep.exhaustive && ok;
    }
    rep.psi_reaches_nerve =
        rep.psi_reaches_nerve && psis[bound].level_size(s) == nerve->size(s);
  }

  // pushout cardinalities: Psi^n from Psi^{n-1} by attaching one reduced
  // representable per primitive orbit along its external boundary
  for (int n = 1; n <= bound; ++n) {
    std::vector<std::pair<int, PrimitiveSet>> prims;  // (tree, primitives)
    for (int t = 0; t < sk->size(); ++t)
      if (sk->tree(t).n_vertices() == n) {
        auto p = primitives(sk, t, m);
        if (p.dendrices > 0) prims.push_back({t, std::move(p)});
      }
    std::vector<std::pair<int, SubPresheaf>> cells;  // per tree: boundary mask
    std::vector<std::shared_ptr<const ReducedPresheaf>> reps;
    for (auto& [t, p] : prims) {
      auto red = reduce(representable(sk, t));
      reps.push_back(red);
      cells.push_back({t, external_boundary(red, t)});
    }
    for (int s = 0; s < sk->size(); ++s) {
      FiltrationLevelCount row;
      row.n = n;
      row.tree = s;
      row.psi_size = psis[n].level_size(s);
      row.prev_size = psis[n - 1].level_size(s);
      for (size_t i = 0; i < prims.size(); ++i) {
        long free_cells = reps[i]->size(s) - cells[i].second.level_size(s);
        row.attached_cells += prims[i].second.orbits * free_cells;
      }
      row.match = (row.psi_size == row.prev_size + row.attached_cells);
      rep.pushout_counts_match = rep.pushout_counts_match && row.match;
      rep.counts.push_back(row);
    }
  }

  // restrictions of primitives to proper subtrees generate inside the
  // previous stage
  for (int s = 0; s < sk->size(); ++s) {
    int n = sk->tree(s).n_vertices();
    if (n < 1 || n > bound) continue;
    auto prim = primitives(sk, s, m);
    if (prim.dendrices == 0) continue;
    auto parent = sk->tree_ptr(s);
    for (auto& sub : parent->subtrees()) {
      if (static_cast<int>(sub.vertices.size()) >= n) continue;
      Tree mat = parent->materialize(sub);
      auto [repnt, emap] = canonicalize(mat);
      int ridx = sk->index_of_code(repnt.canonical_code());
      if (ridx < 0) continue;
      std::vector<int> inv(repnt.n_edges());
      for (int e = 0; e < mat.n_edges(); ++e) inv[emap[e]] = e;
      std::vector<int> em(repnt.n_edges());
      for (int e = 0; e < repnt.n_edges(); ++e)
        em[e] = parent->edge_index(mat.edge_name(inv[e]));
      OmegaMorphism iota(sk->tree_ptr(ridx), parent, em);
      for (int pi : prim.orbit_representatives) {
        auto pulled = pull_assignment(m, iota, prim.dendrex_list[pi]);
        int idx = index_of_assignment(*nerve, ridx, pulled);
        auto generated = generate_sub(nerve, {{ridx, idx}});
        rep.subtree_property = rep.subtree_property && sub_contains(psis[n - 1], generated);
      }
    }
  }
  return rep;
}

}  // namespace dendro

#include "dendro/tree.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace dendro {

namespace {
bool id_less(const std::string& a, const std::string& b) { return IdLess{}(a, b); }
}  // namespace

Tree::Tree(std::string root_name,
           std::vector<std::tuple<std::string, std::string, std::vector<std::string>>> vertices) {
  std::set<std::string, IdLess> names;
  names.insert(root_name);
  for (auto& [vn, out, ins] : vertices) {
    names.insert(out);
    for (auto& e : ins) names.insert(e);
  }
  edge_names_.assign(names.begin(), names.end());
  auto idx = [&](const std::string& n) {
    return static_cast<int>(std::lower_bound(edge_names_.begin(), edge_names_.end(), n, id_less) -
                            edge_names_.begin());
  };
  root_ = idx(root_name);
  for (auto& [vn, out, ins] : vertices) {
    VertexData v;
    v.name = vn;
    v.out = idx(out);
    for (auto& e : ins) v.in.push_back(idx(e));
    verts_.push_back(std::move(v));
  }
  finalize();
}

void Tree::finalize() {
  if (edge_names_.empty()) {
    edge_names_ = {"e0"};
    root_ = 0;
  }
  int ne = n_edges();
  top_.assign(ne, -1);
  bottom_.assign(ne, -1);
  for (int v = 0; v < n_vertices(); ++v) {
    auto& vd = verts_[v];
    std::sort(vd.in.begin(), vd.in.end(), [&](int a, int b) {
      return id_less(edge_names_[a], edge_names_[b]);
    });
    for (size_t i = 1; i < vd.in.size(); ++i)
      if (vd.in[i] == vd.in[i - 1]) throw std::invalid_argument("duplicate incoming edge");
    if (top_[vd.out] != -1) throw std::invalid_argument("edge has two vertices above it");
    top_[vd.out] = v;
    for (int e : vd.in) {
      if (bottom_[e] != -1) throw std::invalid_argument("edge has two vertices below it");
      if (e == vd.out) throw std::invalid_argument("vertex input equals its output");
      bottom_[e] = v;
    }
  }
  if (bottom_[root_] != -1) throw std::invalid_argument("root edge has a vertex below it");
  // connectivity: walk upward from the root
  std::vector<char> seen_e(ne, 0);
  std::vector<int> stack = {root_};
  int reached_v = 0;
  while (!stack.empty()) {
    int e = stack.back();
    stack.pop_back();
    if (seen_e[e]) continue;
    seen_e[e] = 1;
    int v = top_[e];
    if (v >= 0) {
      ++reached_v;
      for (int in : verts_[v].in) stack.push_back(in);
    }
  }
  for (int e = 0; e < ne; ++e)
    if (!seen_e[e]) throw std::invalid_argument("tree is not connected");
  if (reached_v != n_vertices()) throw std::invalid_argument("unreachable vertex");
  for (int e = 0; e < ne; ++e)
    if (e != root_ && bottom_[e] == -1) throw std::invalid_argument("edge with no vertex below that is not the root");
}

Tree Tree::eta() { return Tree("e0", {}); }

Tree Tree::corolla(int n) {
  if (n < 0) throw std::invalid_argument("corolla arity must be >= 0");
  std::vector<std::string> ins;
  for (int i = 1; i <= n; ++i) ins.push_back("e" + std::to_string(i));
  return Tree("e0", {{"v0", "e0", ins}});
}

Tree Tree::linear(int n) {
  if (n < 0) throw std::invalid_argument("linear length must be >= 0");
  std::vector<std::tuple<std::string, std::string, std::vector<std::string>>> vs;
  for (int i = 1; i <= n; ++i)
    vs.push_back({"v" + std::to_string(i), "e" + std::to_string(i - 1),
                  {"e" + std::to_string(i)}});
  return Tree("e0", vs);
}

int Tree::edge_index(const std::string& name) const {
  for (int e = 0; e < n_edges(); ++e)
    if (edge_names_[e] == name) return e;
  throw std::invalid_argument("no edge named " + name);
}

int Tree::vertex_index(const std::string& name) const {
  for (int v = 0; v < n_vertices(); ++v)
    if (verts_[v].name == name) return v;
  throw std::invalid_argument("no vertex named " + name);
}

std::vector<int> Tree::leaf_edges() const {
  std::vector<int> out;
  for (int e = 0; e < n_edges(); ++e)
    if (top_[e] < 0) out.push_back(e);
  return out;
}

bool Tree::is_linear() const {
  for (int v = 0; v < n_vertices(); ++v)
    if (valence(v) != 1) return false;
  return true;
}

std::string Tree::edge_code(int e) const {
  int v = top_[e];
  if (v < 0) return ".";
  std::vector<std::string> kids;
  for (int in : verts_[v].in) kids.push_back(edge_code(in));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (auto& k : kids) s += k;
  s += ")";
  return s;
}

const std::string& Tree::canonical_code() const {
  if (code_.empty()) code_ = edge_code(root_);
  return code_;
}

bool Tree::same_named_tree(const Tree& other) const {
  if (edge_names_ != other.edge_names_ || root_ != other.root_) return false;
  if (n_vertices() != other.n_vertices()) return false;
  // vertices may be listed in any order
  std::map<int, std::vector<int>> mine, theirs;
  for (auto& v : verts_) mine[v.out] = v.in;
  for (auto& v : other.verts_) theirs[v.out] = v.in;
  return mine == theirs;
}

std::vector<std::map<int, int>> subtree_isomorphisms(const Tree& a, int edge_a,
                                                     const Tree& b, int edge_b) {
  if (a.edge_code(edge_a) != b.edge_code(edge_b)) return {};
  std::vector<std::map<int, int>> out;
  int va = a.top(edge_a), vb = b.top(edge_b);
  if (va < 0) {
    out.push_back({{edge_a, edge_b}});
    return out;
  }
  const auto& ka = a.in_edges(va);
  const auto& kb = b.in_edges(vb);
  int k = static_cast<int>(ka.size());
  // match children with equal codes, all ways
  std::vector<std::string> ca(k), cb(k);
  for (int i = 0; i < k; ++i) ca[i] = a.edge_code(ka[i]);
  for (int i = 0; i < k; ++i) cb[i] = b.edge_code(kb[i]);
  std::vector<int> assign(k, -1);
  std::vector<char> used(k, 0);
  std::function<void(int, std::map<int, int>)> rec = [&](int i, std::map<int, int> acc) {
    if (i == k) {
      acc[edge_a] = edge_b;
      out.push_back(std::move(acc));
      return;
    }
    for (int j = 0; j < k; ++j) {
      if (used[j] || ca[i] != cb[j]) continue;
      for (auto& sub : subtree_isomorphisms(a, ka[i], b, kb[j])) {
        auto next = acc;
        next.insert(sub.begin(), sub.end());
        used[j] = 1;
        rec(i + 1, std::move(next));
        used[j] = 0;
      }
    }
  };
  rec(0, {});
  return out;
}

std::vector<std::vector<int>> isomorphisms_onto(const Tree& a, const Tree& b) {
  std::vector<std::vector<int>> out;
  for (auto& m : subtree_isomorphisms(a, a.root(), b, b.root())) {
    std::vector<int> perm(a.n_edges());
    for (auto& [x, y] : m) perm[x] = y;
    out.push_back(std::move(perm));
  }
  return out;
}

std::vector<std::vector<int>> Tree::automorphisms() const {
  return isomorphisms_onto(*this, *this);
}

std::vector<Tree::Subtree> Tree::subtrees() const {
  // per root edge, choices of upward-closed vertex sets
  std::vector<Subtree> out;
  std::function<std::vector<std::vector<int>>(int)> choices = [&](int e) {
    std::vector<std::vector<int>> res;
    res.push_back({});  // stop: e is a leaf of the subtree
    int v = top_[e];
    if (v >= 0) {
      std::vector<std::vector<std::vector<int>>> per_child;
      for (int in : verts_[v].in) per_child.push_back(choices(in));
      std::vector<int> acc = {v};
      std::function<void(size_t)> prod = [&](size_t i) {
        if (i == per_child.size()) {
          auto s = acc;
          std::sort(s.begin(), s.end());
          res.push_back(std::move(s));
          return;
        }
        for (auto& c : per_child[i]) {
          size_t before = acc.size();
          acc.insert(acc.end(), c.begin(), c.end());
          prod(i + 1);
          acc.resize(before);
        }
      };
      prod(0);
    }
    return res;
  };
  for (int e = 0; e < n_edges(); ++e) {
    for (auto& vs : choices(e)) {
      Subtree s;
      s.root_edge = e;
      s.vertices = vs;
      std::set<int> edges = {e};
      for (int v : vs)
        for (int in : verts_[v].in) edges.insert(in);
      s.edges.assign(edges.begin(), edges.end());
      std::set<int> vset(vs.begin(), vs.end());
      for (int ed : s.edges) {
        int t = top_[ed];
        if (t < 0 || !vset.count(t)) s.leaves.push_back(ed);
      }
      std::sort(s.leaves.begin(), s.leaves.end(), [&](int x, int y) {
        return id_less(edge_names_[x], edge_names_[y]);
      });
      out.push_back(std::move(s));
    }
  }
  return out;
}

Tree Tree::materialize(const Subtree& s) const {
  std::vector<std::tuple<std::string, std::string, std::vector<std::string>>> vs;
  for (int v : s.vertices) {
    std::vector<std::string> ins;
    for (int e : verts_[v].in) ins.push_back(edge_names_[e]);
    vs.push_back({verts_[v].name, edge_names_[verts_[v].out], ins});
  }
  return Tree(edge_names_[s.root_edge], vs);
}

std::string Tree::fresh_edge_name() const {
  for (int i = 0;; ++i) {
    std::string cand = "f" + std::to_string(i);
    bool clash = false;
    for (auto& n : edge_names_)
      if (n == cand) { clash = true; break; }
    if (!clash) return cand;
  }
}

std::pair<Tree, std::string> Tree::inner_coface(int v, const std::vector<int>& tops) const {
  std::set<int> topset(tops.begin(), tops.end());
  if (topset.size() != tops.size()) throw std::invalid_argument("split repeats an edge");
  for (int e : tops) {
    bool found = false;
    for (int in : verts_[v].in) found |= (in == e);
    if (!found) throw std::invalid_argument("split edge is not an input of the vertex");
  }
  std::string fresh = fresh_edge_name();
  std::vector<std::tuple<std::string, std::string, std::vector<std::string>>> vs;
  for (int w = 0; w < n_vertices(); ++w) {
    if (w == v) continue;
    std::vector<std::string> ins;
    for (int e : verts_[w].in) ins.push_back(edge_names_[e]);
    vs.push_back({verts_[w].name, edge_names_[verts_[w].out], ins});
  }
  std::vector<std::string> low_ins = {fresh}, high_ins;
  for (int e : verts_[v].in) {
    if (topset.count(e))
      high_ins.push_back(edge_names_[e]);
    else
      low_ins.push_back(edge_names_[e]);
  }
  std::string vn = verts_[v].name;
  vs.push_back({vn + "_lo", edge_names_[verts_[v].out], low_ins});
  vs.push_back({vn + "_hi", fresh, high_ins});
  return {Tree(edge_names_[root_], vs), fresh};
}

Tree Tree::codegeneracy(int v) const {
  if (valence(v) != 1) throw std::invalid_argument("codegeneracy needs a unary vertex");
  int in = verts_[v].in[0], out = verts_[v].out;
  std::vector<std::tuple<std::string, std::string, std::vector<std::string>>> vs;
  auto rename = [&](int e) { return e == in ? edge_names_[out] : edge_names_[e]; };
  for (int w = 0; w < n_vertices(); ++w) {
    if (w == v) continue;
    std::vector<std::string> ins;
    for (int e : verts_[w].in) ins.push_back(rename(e));
    vs.push_back({verts_[w].name, rename(verts_[w].out), ins});
  }
  return Tree(edge_names_[root_], vs);
}

Tree Tree::contract(int e) const {
  if (!is_inner(e)) throw std::invalid_argument("can only contract an inner edge");
  int hi = top_[e], lo = bottom_[e];
  std::vector<std::tuple<std::string, std::string, std::vector<std::string>>> vs;
  for (int w = 0; w < n_vertices(); ++w) {
    if (w == hi || w == lo) continue;
    std::vector<std::string> ins;
    for (int x : verts_[w].in) ins.push_back(edge_names_[x]);
    vs.push_back({verts_[w].name, edge_names_[verts_[w].out], ins});
  }
  std::vector<std::string> merged;
  for (int x : verts_[lo].in)
    if (x != e) merged.push_back(edge_names_[x]);
  for (int x : verts_[hi].in) merged.push_back(edge_names_[x]);
  vs.push_back({verts_[lo].name, edge_names_[verts_[lo].out], merged});
  return Tree(edge_names_[root_], vs);
}

Tree tree_from_code(const std::string& code) {
  // grammar: "." leaf | "(" code* ")" vertex
  int counter = 0;
  std::vector<std::tuple<std::string, std::string, std::vector<std::string>>> vs;
  size_t pos = 0;
  std::function<std::string()> parse = [&]() -> std::string {
    std::string name = "e" + std::to_string(counter++);
    if (pos >= code.size()) throw std::invalid_argument("bad code");
    if (code[pos] == '.') {
      ++pos;
      return name;
    }
    if (code[pos] != '(') throw std::invalid_argument("bad code");
    ++pos;
    std::vector<std::string> kids;
    while (pos < code.size() && code[pos] != ')') kids.push_back(parse());
    if (pos >= code.size()) throw std::invalid_argument("bad code");
    ++pos;  // ')'
    vs.push_back({"v" + name, name, kids});
    return name;
  };
  std::string root = parse();
  if (pos != code.size()) throw std::invalid_argument("bad code");
  return Tree(root, vs);
}

std::pair<Tree, std::vector<int>> canonicalize(const Tree& t) {
  Tree rep = tree_from_code(t.canonical_code());
  auto isos = isomorphisms_onto(t, rep);
  // deterministic choice: lexicographically least edge map
  auto best = *std::min_element(isos.begin(), isos.end());
  return {rep, best};
}

std::vector<Tree> enumerate_trees(int max_vertices, int max_valence) {
  // codes of trees with exactly n vertices, valences <= max_valence
  std::vector<std::vector<std::string>> by_n(max_vertices + 1);
  by_n[0] = {"."};
  for (int n = 1; n <= max_vertices; ++n) {
    std::set<std::string> acc;
    // root vertex of valence k, children form a multiset of subtrees with n-1
    // vertices total; enumerate code-sorted child sequences
    for (int k = 0; k <= max_valence; ++k) {
      std::vector<std::string> kids;
      std::function<void(int, int)> rec = [&](int left, int budget) {
        if (left == 0) {
          if (budget != 0) return;
          auto sorted = kids;
          std::sort(sorted.begin(), sorted.end());
          std::string code = "(";
          for (auto& c : sorted) code += c;
          code += ")";
          acc.insert(code);
          return;
        }
        for (int m = 0; m <= budget; ++m) {
          if (m > 0 && static_cast<int>(by_n.size()) <= m) continue;
          for (auto& c : by_n[m]) {
            kids.push_back(c);
            rec(left - 1, budget - m);
            kids.pop_back();
          }
        }
      };
      rec(k, n - 1);
    }
    by_n[n].assign(acc.begin(), acc.end());
  }
  std::vector<Tree> out;
  for (int n = 0; n <= max_vertices; ++n)
    for (auto& c : by_n[n]) out.push_back(tree_from_code(c));
  return out;
}

}  // namespace dendro

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dendro {

// Order used for edge/vertex identifiers everywhere: shorter strings first,
// then lexicographic. Keeps "e2" < "e10" and makes planar conventions stable
// under renaming schemes that pad or not.
struct IdLess {
  bool operator()(const std::string& a, const std::string& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// A finite rooted non-planar tree. Edges and vertices carry opaque string
// names; every structural comparison goes through canonical codes or explicit
// embeddings. Immutable after construction.
class Tree {
 public:
  struct VertexData {
    std::string name;
    int out = -1;              // edge index toward the root
    std::vector<int> in;       // incoming edge indices, sorted by IdLess on names
  };

  Tree() = default;  // eta with a default edge name
  // vertices given as (name, out edge name, incoming edge names)
  Tree(std::string root_name,
       std::vector<std::tuple<std::string, std::string, std::vector<std::string>>> vertices);

  static Tree eta();
  static Tree corolla(int n);
  static Tree linear(int n);

  int n_edges() const { return static_cast<int>(edge_names_.size()); }
  int n_vertices() const { return static_cast<int>(verts_.size()); }
  int root() const { return root_; }
  const std::string& edge_name(int e) const { return edge_names_[e]; }
  const std::string& vertex_name(int v) const { return verts_[v].name; }
  int edge_index(const std::string& name) const;
  int vertex_index(const std::string& name) const;

  // vertex whose outgoing edge is e (the vertex just above e), or -1
  int top(int e) const { return top_[e]; }
  // vertex having e among its incoming edges (just below e), or -1
  int bottom(int e) const { return bottom_[e]; }
  int out_edge(int v) const { return verts_[v].out; }
  // canonical planar order: sorted by IdLess
  const std::vector<int>& in_edges(int v) const { return verts_[v].in; }
  int valence(int v) const { return static_cast<int>(verts_[v].in.size()); }

  std::vector<int> leaf_edges() const;
  bool is_leaf(int e) const { return top_[e] < 0; }
  bool is_inner(int e) const { return top_[e] >= 0 && bottom_[e] >= 0; }
  bool is_linear() const;

  // injective-on-iso-classes encoding; equal iff trees are isomorphic
  // (root-preserving, non-planar)
  const std::string& canonical_code() const;
  std::string edge_code(int e) const;  // code of the subtree hanging above e

  bool same_named_tree(const Tree& other) const;

  // all root-preserving self-isomorphisms, as edge permutations
  std::vector<std::vector<int>> automorphisms() const;

  struct Subtree {
    std::vector<int> vertices;  // parent vertex indices, sorted
    std::vector<int> edges;     // parent edge indices, sorted
    int root_edge = 0;
    std::vector<int> leaves;    // leaf edges of the subtree, canonical order
  };
  // all connected subtrees (>= 1 edge), including single edges and the tree
  // itself; each inherits its root from the lowest edge
  std::vector<Subtree> subtrees() const;
  Tree materialize(const Subtree& s) const;  // keeps parent edge/vertex names

  // split vertex v: edges in `tops` move to a new upper vertex whose output
  // is a fresh inner edge attached to v. Returns (bigger tree, new edge name).
  std::pair<Tree, std::string> inner_coface(int v, const std::vector<int>& tops) const;
  // remove a unary vertex, merging its two edges (the outgoing name survives)
  Tree codegeneracy(int v) const;
  // contract an inner edge, merging its two endpoint vertices
  Tree contract(int e) const;

  std::string fresh_edge_name() const;

 private:
  std::vector<std::string> edge_names_;
  std::vector<VertexData> verts_;
  int root_ = 0;
  std::vector<int> top_, bottom_;
  mutable std::string code_;  // cached canonical code

  void finalize();  // build incidence, sort, validate
};

// edge bijections a-subtree -> b-subtree preserving incidence;
// automorphisms(t) == isomorphisms_onto(t, t)
std::vector<std::map<int, int>> subtree_isomorphisms(const Tree& a, int edge_a,
                                                     const Tree& b, int edge_b);
std::vector<std::vector<int>> isomorphisms_onto(const Tree& a, const Tree& b);

// canonical representative of the isomorphism class (edges named e0, e1, ...
// by a preorder walk with code-sorted children), plus the edge map a -> rep
std::pair<Tree, std::vector<int>> canonicalize(const Tree& t);
Tree tree_from_code(const std::string& code);

// all canonical trees with <= max_vertices vertices and valences <= max_valence,
// sorted by (vertex count, code)
std::vector<Tree> enumerate_trees(int max_vertices, int max_valence);

}  // namespace dendro

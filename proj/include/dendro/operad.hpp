#pragma once

#include <string>
#include <vector>

#include "dendro/tree.hpp"

namespace dendro {

// A finite set with valences; generates a free symmetric operad.
struct GradedSet {
  std::vector<std::string> names;
  std::vector<int> valences;

  int size() const { return static_cast<int>(names.size()); }
  int find(const std::string& n) const;
  bool has_small_generators() const;  // any generator of valence <= 1
  static GradedSet single(const std::string& name, int valence) { return {{name}, {valence}}; }
};

// graded set V(S) of a tree: one generator per vertex, graded by valence
GradedSet vertex_graded_set(const Tree& t);

// Element of the free symmetric operad on a graded set: a planar tree with
// vertices labeled by generators of matching valence and leaves labeled
// bijectively by 1..arity. No quotient is taken; leaf labels break all
// symmetry, so structural equality is element equality.
struct Element {
  struct Node {
    int gen = -1;             // generator index, or -1 for a leaf
    int leaf = 0;             // 1-based input slot when gen < 0
    std::vector<Node> args;
    bool is_leaf() const { return gen < 0; }
  };
  Node root;
  int arity = 0;

  static Element identity();                       // the vertex-free shape at arity 1
  static Element generator(int gen, int valence);  // bare generator, leaves 1..valence

  int n_vertices() const;
  std::string key() const;  // canonical serialization, used for ordering/equality
  bool operator==(const Element& o) const { return key() == o.key(); }

  void validate(const GradedSet& m) const;  // valences match, labels bijective
};

// operadic composition with the block relabeling convention: inputs of the
// i-th argument occupy slots j_1+..+j_{i-1}+1 .. j_1+..+j_i
Element gamma(const Element& f, const std::vector<Element>& args);
// substitution that keeps the arguments' own leaf labels (args[i-1] replaces
// the leaf labeled i); gamma == graft after block-shifting the args
Element graft(const Element& f, const std::vector<Element>& args);
// right symmetric action; perm is 1-based with perm[i-1] = sigma(i)
Element sigma_action(const Element& f, const std::vector<int>& perm);

struct ElementEnumeration {
  std::vector<Element> elems;  // sorted by key
  bool complete = false;
};
// all elements of T_M(arity) with at most max_vertices labeled vertices
ElementEnumeration elements(const GradedSet& m, int arity, int max_vertices);

// A map of free operads T_source -> T_target, determined by generator images.
struct MapSpec {
  GradedSet source, target;
  std::vector<Element> images;  // per source generator, arity = its valence

  std::string key() const;
  bool operator==(const MapSpec& o) const { return key() == o.key(); }
  // every generator to the identity element (valences must all be 1)
  static MapSpec units(const GradedSet& source, const GradedSet& target);
  static MapSpec identity(const GradedSet& m);
  void validate() const;
};

// homomorphic extension of a spec to an arbitrary element
Element apply_spec(const MapSpec& spec, const Element& e);
// g after f
MapSpec compose_specs(const MapSpec& g, const MapSpec& f);

struct MapEnumeration {
  std::vector<MapSpec> maps;  // sorted by key
  bool complete = false;
};
// all maps T_N -> T_M whose generator images have <= max_vertices vertices
MapEnumeration hom_free(const GradedSet& n, const GradedSet& m, int max_vertices);

}  // namespace dendro

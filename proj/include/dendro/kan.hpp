#pragma once

#include "dendro/presheaf.hpp"

namespace dendro {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), size_(n, 1), classes_(n) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }
  int find(int a) const {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --classes_;
    return true;
  }
  bool same(int a, int b) const { return find(a) == find(b); }
  int classes() const { return classes_; }

 private:
  mutable std::vector<int> parent_;
  std::vector<int> size_;
  int classes_;
};

// colim of a set-valued functor as a quotient of the disjoint union
struct QuotientSet {
  std::vector<int> offsets;  // per component
  int carrier = 0;
  UnionFind uf{0};

  int index(int component, int elt) const { return offsets[component] + elt; }
  int classes() const { return uf.classes(); }
  std::vector<int> representatives() const;  // least carrier index per class
};

using RelationPair = std::pair<std::pair<int, int>, std::pair<int, int>>;
QuotientSet colim_quotient(const std::vector<int>& component_sizes,
                           const std::vector<RelationPair>& relations);

// an object of the comma category J/T_N on the O side: a map T_N -> J(R)
struct CommaObject {
  int tree = -1;
  MapSpec g;
  std::string key() const { return std::to_string(tree) + "|" + g.key(); }
};

struct CommaEnumeration {
  std::vector<CommaObject> objects;
  bool seeds_complete = false;  // hom_free complete at the bound, per tree
};
// all (R, g) with images of <= elt_bound vertices, closed under J(b) o -
CommaEnumeration comma_objects(std::shared_ptr<const Skeleton> sk, const GradedSet& n,
                               int elt_bound, bool close = true);

// Upsilon-tilde on the g-component of the reduced representable of S: the
// class of a : R -> S goes to J(a) o g; the basepoint goes to the map sending
// every generator to the unit
MapSpec upsilon_tilde(std::shared_ptr<const Skeleton> sk, int s,
                      const std::shared_ptr<const ReducedPresheaf>& omega_s_reduced,
                      const CommaObject& g, int elt);

struct KanReport {
  long classes = 0;
  long hom_count = 0;
  bool upsilon_constant = true;
  bool injective = true;
  bool surjective = true;
  bool zigzag_ok = true;
  bool witness_ok = true;  // lknerve: the explicit surjectivity witness formula
  bool bijective = false;
  bool truncated = false;
  long carrier = 0;
  long n_objects = 0;
  std::vector<std::pair<std::string, std::string>> witnesses;  // class rep -> hom key
};

// left Kan extension of Omega[S]_* along J, evaluated at T_N
KanReport verify_lke(std::shared_ptr<const Skeleton> sk, int s, const GradedSet& n,
                     int elt_bound);
// left Kan extension of nerve(T_M) along J, evaluated at T_N
KanReport verify_lknerve(std::shared_ptr<const Skeleton> sk, const GradedSet& m,
                         const GradedSet& n, int elt_bound);

struct PullbackLevel {
  int tree = -1;
  long nerve_count = 0;
  long hom_count = 0;
  bool roundtrip = true;
};
struct PullbackReport {
  std::vector<PullbackLevel> levels;
  bool natural = true;
  bool pass = true;
  bool truncated = false;
};
// nerve(T_M) vs J^* Hom(T_M, -) via I, level by level with naturality
PullbackReport verify_pullback_hom(std::shared_ptr<const Skeleton> sk, const GradedSet& m,
                                   int elt_bound);

struct SplitScReport {
  std::vector<KanReport> summands;  // one per vertex of S
  long coproduct_classes = 0;
  long hom_total = 0;
  bool bijective = false;
  bool core_is_coproduct = false;  // Sc[S]_* = coprod of reduced corolla representables
  bool truncated = false;
};
SplitScReport verify_splitsc(std::shared_ptr<const Skeleton> sk, int s, const GradedSet& n,
                             int elt_bound);

}  // namespace dendro

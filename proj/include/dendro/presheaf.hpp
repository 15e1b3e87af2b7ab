#pragma once

#include <functional>
#include <map>
#include <memory>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

#include "dendro/omega.hpp"

namespace dendro {

struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A finitely presented presheaf on a bounded skeleton of Omega. Levels are
// 0..size(s)-1 per skeleton tree; the action of f in hom(r,s) pulls level s
// back to level r.
class Presheaf {
 public:
  explicit Presheaf(std::shared_ptr<const Skeleton> sk) : skel_(std::move(sk)) {}
  virtual ~Presheaf() = default;

  const Skeleton& skel() const { return *skel_; }
  std::shared_ptr<const Skeleton> skel_ptr() const { return skel_; }

  virtual int size(int s) const = 0;
  virtual int act(int r, int s, int mor, int x) const = 0;
  virtual std::string label(int s, int x) const;
  // basepoint index at linear trees for reduced presheaves, else -1
  virtual int basepoint(int) const { return -1; }
  virtual bool truncated() const { return false; }

  int act_key(const Skeleton::MorKey& k, int x) const { return act(k.r, k.s, k.idx, x); }
  // memoized full action table of one morphism
  const std::vector<int>& action_table(const Skeleton::MorKey& k) const;
  bool is_reduced() const;
  long total_size() const;

 private:
  std::shared_ptr<const Skeleton> skel_;
  mutable std::map<std::tuple<int, int, int>, std::vector<int>> act_memo_;
  mutable std::shared_mutex memo_mu_;
};

using PresheafPtr = std::shared_ptr<const Presheaf>;

// ---------------------------------------------------------------------------
// representables

class RepresentablePresheaf : public Presheaf {
 public:
  RepresentablePresheaf(std::shared_ptr<const Skeleton> sk, int target);
  int target() const { return target_; }
  int size(int s) const override;
  int act(int r, int s, int mor, int x) const override;
  std::string label(int s, int x) const override;

 private:
  int target_;
};

PresheafPtr representable(std::shared_ptr<const Skeleton> sk, int target);

// ---------------------------------------------------------------------------
// nerves

// finite-ish colored operad interface; operations are dense ids
class ColoredOperadEval {
 public:
  virtual ~ColoredOperadEval() = default;
  virtual int n_colors() const = 0;
  // operations with the given output color and arity, with their input colors
  virtual std::vector<int> ops_by_out(int out_color, int arity) const = 0;
  virtual std::vector<int> profile(int op) const = 0;
  virtual int out_color(int op) const = 0;
  virtual int identity(int color) const = 0;
  virtual int compose_op(int op, const std::vector<int>& args) const = 0;
  virtual int sigma_op(int op, const std::vector<int>& perm) const = 0;
  virtual std::string op_label(int op) const;
  virtual bool complete() const { return true; }
};

// free symmetric operad on a graded set, elements interned on demand
class FreeOperadEval : public ColoredOperadEval {
 public:
  FreeOperadEval(GradedSet m, int max_vertices);
  int n_colors() const override { return 1; }
  std::vector<int> ops_by_out(int out_color, int arity) const override;
  std::vector<int> profile(int op) const override;
  int out_color(int) const override { return 0; }
  int identity(int) const override;
  int compose_op(int op, const std::vector<int>& args) const override;
  int sigma_op(int op, const std::vector<int>& perm) const override;
  std::string op_label(int op) const override;
  bool complete() const override;

  const GradedSet& gens() const { return m_; }
  int max_vertices() const { return max_vertices_; }
  const Element& element_of(int op) const;
  int op_of(const Element& e) const;  // interns

 private:
  GradedSet m_;
  int max_vertices_;
  mutable std::vector<Element> elems_;
  mutable std::map<std::string, int> by_key_;
  mutable bool saw_truncation_ = false;
};

// free colored operad of a tree: operations are subtrees with ordered leaves
class TreeOperadEval : public ColoredOperadEval {
 public:
  explicit TreeOperadEval(std::shared_ptr<const Tree> t);
  int n_colors() const override { return tree_->n_edges(); }
  std::vector<int> ops_by_out(int out_color, int arity) const override;
  std::vector<int> profile(int op) const override;
  int out_color(int op) const override;
  int identity(int color) const override;
  int compose_op(int op, const std::vector<int>& args) const override;
  int sigma_op(int op, const std::vector<int>& perm) const override;
  std::string op_label(int op) const override;

 private:
  struct Op {
    std::vector<int> verts;  // empty = identity on root_edge
    int root_edge;
    std::vector<int> leaves;  // ordered
  };
  int intern(Op op) const;
  std::shared_ptr<const Tree> tree_;
  mutable std::vector<Op> ops_;
  mutable std::map<std::string, int> by_key_;
  mutable std::map<std::pair<int, int>, std::vector<int>> by_out_arity_;
};

// single- or multi-colored operad given by explicit tables
class TableColoredEval : public ColoredOperadEval {
 public:
  struct OpData {
    std::string name;
    std::vector<int> profile;
    int out;
  };
  TableColoredEval(int n_colors, std::vector<OpData> ops, std::vector<int> identities);
  void set_gamma(int op, const std::vector<int>& args, int result);
  void set_sigma(int op, const std::vector<int>& perm, int result);

  int n_colors() const override { return n_colors_; }
  std::vector<int> ops_by_out(int out_color, int arity) const override;
  std::vector<int> profile(int op) const override { return ops_[op].profile; }
  int out_color(int op) const override { return ops_[op].out; }
  int identity(int color) const override { return identities_[color]; }
  int compose_op(int op, const std::vector<int>& args) const override;
  int sigma_op(int op, const std::vector<int>& perm) const override;
  std::string op_label(int op) const override { return ops_[op].name; }
  int n_ops() const { return static_cast<int>(ops_.size()); }

 private:
  int n_colors_;
  std::vector<OpData> ops_;
  std::vector<int> identities_;
  std::map<std::pair<int, std::vector<int>>, int> gamma_, sigma_;
};

// an element of nerve(P) at a tree: an edge coloring plus compatible vertex
// operations
struct NerveElt {
  std::vector<int> edge_colors;
  std::vector<int> vertex_ops;
  auto operator<=>(const NerveElt&) const = default;
};

class NervePresheaf : public Presheaf {
 public:
  NervePresheaf(std::shared_ptr<const Skeleton> sk, std::shared_ptr<const ColoredOperadEval> p);
  int size(int s) const override;
  int act(int r, int s, int mor, int x) const override;
  std::string label(int s, int x) const override;
  bool truncated() const override { return !eval_->complete(); }
  // single-colored nerves are reduced; the basepoint is the all-identities
  // assignment
  int basepoint(int s) const override;

  const ColoredOperadEval& eval() const { return *eval_; }
  const NerveElt& elt(int s, int x) const { return levels_[s][x]; }
  int index_of(int s, const NerveElt& e) const;
  // pullback of an element along an arbitrary morphism into the tree
  NerveElt pull(const OmegaMorphism& f, const NerveElt& x) const;

 private:
  std::shared_ptr<const ColoredOperadEval> eval_;
  std::vector<std::vector<NerveElt>> levels_;
};

std::shared_ptr<const NervePresheaf> nerve_of_free(std::shared_ptr<const Skeleton> sk,
                                                   const GradedSet& m, int elt_bound);

// vertex assignments <-> nerve elements for single-colored free operads
std::vector<Element> assignment_of(const NervePresheaf& n, int s, int x);
int index_of_assignment(const NervePresheaf& n, int s, const std::vector<Element>& a);
// pullback of a T_M vertex assignment along any Omega morphism
std::vector<Element> pull_assignment(const GradedSet& m, const OmegaMorphism& f,
                                     const std::vector<Element>& x);

// ---------------------------------------------------------------------------
// constructions

class ReducedPresheaf : public Presheaf {
 public:
  explicit ReducedPresheaf(PresheafPtr inner);
  int size(int s) const override;
  int act(int r, int s, int mor, int x) const override;
  std::string label(int s, int x) const override;
  int basepoint(int s) const override { return skel().is_linear(s) ? 0 : -1; }
  bool truncated() const override { return inner_->truncated(); }

  const Presheaf& inner() const { return *inner_; }
  int project(int s, int inner_idx) const;
  int lift(int s, int reduced_idx) const;  // -1 for a basepoint with no preimage

 private:
  PresheafPtr inner_;
  std::vector<std::vector<int>> proj_, lift_;
  std::vector<int> reduced_size_;
};

std::shared_ptr<const ReducedPresheaf> reduce(PresheafPtr x);

class EmptyPresheaf : public Presheaf {
 public:
  using Presheaf::Presheaf;
  int size(int) const override { return 0; }
  int act(int, int, int, int) const override { throw std::logic_error("empty presheaf"); }
};

// X x K for a constant finite set K
class ProductWithSet : public Presheaf {
 public:
  ProductWithSet(PresheafPtr x, int k);
  int size(int s) const override { return x_->size(s) * k_; }
  int act(int r, int s, int mor, int e) const override;
  std::string label(int s, int e) const override;

 private:
  PresheafPtr x_;
  int k_;
};

// X (x) K for reduced X: product at nonlinear levels, smash with K_+ at
// linear levels
class TensorPresheaf : public Presheaf {
 public:
  TensorPresheaf(std::shared_ptr<const ReducedPresheaf> x, int k);
  int size(int s) const override;
  int act(int r, int s, int mor, int e) const override;
  std::string label(int s, int e) const override;
  int basepoint(int s) const override { return skel().is_linear(s) ? 0 : -1; }

 private:
  std::shared_ptr<const ReducedPresheaf> x_;
  int k_;
  int encode(int s, int x, int c) const;
  std::pair<int, int> decode(int s, int e) const;
};

// reduced coproduct: disjoint union at nonlinear trees, wedge at linear trees
class ReducedCoproduct : public Presheaf {
 public:
  explicit ReducedCoproduct(std::vector<std::shared_ptr<const ReducedPresheaf>> parts);
  int size(int s) const override;
  int act(int r, int s, int mor, int e) const override;
  int basepoint(int s) const override { return skel().is_linear(s) ? 0 : -1; }

 private:
  std::vector<std::shared_ptr<const ReducedPresheaf>> parts_;
};

class TabledPresheaf : public Presheaf {
 public:
  TabledPresheaf(std::shared_ptr<const Skeleton> sk, std::vector<int> sizes,
                 std::vector<std::vector<std::string>> labels = {});
  void set_table(const Skeleton::MorKey& k, std::vector<int> table);
  int size(int s) const override { return sizes_[s]; }
  int act(int r, int s, int mor, int x) const override;
  std::string label(int s, int x) const override;
  // fill missing tables by composing known ones; throws if the provided
  // generators do not determine the action
  void saturate() const;
  bool has_table(const Skeleton::MorKey& k) const;

 private:
  std::vector<int> sizes_;
  std::vector<std::vector<std::string>> labels_;
  mutable std::map<std::tuple<int, int, int>, std::vector<int>> tables_;
};

// ---------------------------------------------------------------------------
// sub-presheaves and checks

struct SubPresheaf {
  PresheafPtr parent;
  std::vector<std::vector<char>> mask;

  bool contains(int s, int x) const { return mask[s][x] != 0; }
  int level_size(int s) const;
  long total() const;
};

SubPresheaf empty_sub(PresheafPtr parent);
SubPresheaf full_sub(PresheafPtr parent);
// smallest sub-presheaf containing the seeds (worklist over all morphisms)
SubPresheaf generate_sub(PresheafPtr parent, const std::vector<std::pair<int, int>>& seeds);
bool sub_contains(const SubPresheaf& a, const SubPresheaf& b);  // b <= a levelwise
SubPresheaf sub_union(const SubPresheaf& a, const SubPresheaf& b);
// standalone copy with reindexed levels and tables for all morphisms
std::shared_ptr<const TabledPresheaf> as_presheaf(const SubPresheaf& sub);

// Sc[S]: union of the corolla subrepresentables inside the representable
SubPresheaf segal_core(std::shared_ptr<const Skeleton> sk, int s);
// union of the images of reduced representables of co-dimension-1 subtrees
SubPresheaf external_boundary(std::shared_ptr<const ReducedPresheaf> omega_s_reduced, int s);

struct NormalityReport {
  bool normal = true;
  int witness_tree = -1;
  int witness_auto = -1;
  int witness_elt = -1;
};
NormalityReport is_normal(const SubPresheaf& x);          // X -> parent inclusion
NormalityReport is_normal_object(PresheafPtr x);          // empty -> X

// functoriality of the stored action over the listed trees
bool check_functorial(const Presheaf& x, const std::vector<int>& trees);

using NatTrans = std::vector<std::vector<int>>;  // per tree, per element of X
std::vector<NatTrans> hom_presheaf(const Presheaf& x, const Presheaf& y, long limit = -1);
bool natural_iso_exists(const Presheaf& x, const Presheaf& y);
// checks a concretely given levelwise map for naturality + bijectivity
bool is_natural_iso(const Presheaf& x, const Presheaf& y, const NatTrans& t);

// levelwise disjoint union (not the reduced coproduct)
class DisjointUnionPresheaf : public Presheaf {
 public:
  DisjointUnionPresheaf(PresheafPtr a, PresheafPtr b)
      : Presheaf(a->skel_ptr()), a_(std::move(a)), b_(std::move(b)) {}
  int size(int s) const override { return a_->size(s) + b_->size(s); }
  int act(int r, int s, int mor, int x) const override {
    if (x < a_->size(s)) return a_->act(r, s, mor, x);
    return a_->size(r) + b_->act(r, s, mor, x - a_->size(s));
  }
  std::string label(int s, int x) const override {
    return x < a_->size(s) ? a_->label(s, x) : "adj:" + b_->label(s, x - a_->size(s));
  }

 private:
  PresheafPtr a_, b_;
};

// the terminal single-colored operad, truncated: one operation per arity
std::shared_ptr<const TableColoredEval> terminal_operad_eval(int max_arity);

// nerve(free colored operad of S) agrees with the representable at S via the
// canonical identification (edge colors are the edge map)
bool nerve_matches_representable(std::shared_ptr<const Skeleton> sk, int s);
// Z_* = X (x) K for X = reduce(representable(s)), via the canonical map
bool tensor_identity_holds(std::shared_ptr<const ReducedPresheaf> x, int k);
bool tensor_identity_holds(std::shared_ptr<const Skeleton> sk, int s, int k);

struct SegalLevel {
  int tree = -1;
  long elements = 0;
  long core_maps = 0;
  bool bijective = false;
};
struct SegalReport {
  std::vector<SegalLevel> levels;  // all skeleton trees except eta
  long eta_elements = 0;           // flagged separately: Sc[eta] is empty
  bool eta_bijective = false;
  bool pass = true;  // over non-eta levels
  bool truncated = false;
};
SegalReport check_strict_segal(PresheafPtr x, int jobs = 1);

}  // namespace dendro

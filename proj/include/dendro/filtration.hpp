#pragma once

#include "dendro/kan.hpp"
#include "dendro/presheaf.hpp"

namespace dendro {

// a nerve element of T_M whose vertex labels are bare generators under the
// witness planar structure
struct PrimitiveDendrex {
  std::vector<int> labeling;          // generator index per vertex
  PlanarStructure witness;            // realizes the bare reading
  std::vector<Element> assignment;    // the dendrex itself (canonical reading)
};

struct PrimitiveSet {
  long labelings = 0;   // valence-matching labelings V(S) -> M
  long dendrices = 0;   // nerve elements with single-vertex labels
  long orbits = 0;      // Aut(S)-orbits of dendrices
  std::vector<std::vector<Element>> dendrex_list;       // sorted
  std::vector<int> orbit_representatives;               // least index per orbit
};
PrimitiveSet primitives(std::shared_ptr<const Skeleton> sk, int s, const GradedSet& m);
bool is_primitive(const std::vector<Element>& assignment);

// chain of morphisms m_i : S_i -> S_{i+1} (inner cofaces and codegeneracies)
// with beta_i = m_i^*(beta_{i+1}); the terminal assignment is primitive
struct Factorization {
  std::vector<OmegaMorphism> steps;
  std::shared_ptr<const Tree> terminal_tree;
  std::vector<Element> terminal;       // primitive assignment on terminal_tree
  PrimitiveDendrex primitive;          // labeling + witness extracted from it
};
Factorization spread_apart(std::shared_ptr<const Tree> s, const std::vector<Element>& beta,
                           const GradedSet& m);
// recompose the factorization and compare with the input
bool factorization_recovers(const Factorization& f, std::shared_ptr<const Tree> s,
                            const std::vector<Element>& beta, const GradedSet& m);

// sub-presheaf of nerve(T_M) generated by primitives on trees with <= n vertices
SubPresheaf psi(std::shared_ptr<const NervePresheaf> nerve, const GradedSet& m, int n);

struct FiltrationLevelCount {
  int n = 0;
  int tree = -1;
  long psi_size = 0;
  long prev_size = 0;
  long attached_cells = 0;  // sum over orbit reps of |(Omega[T]_* minus boundary)_S|
  bool match = false;
};
struct FiltrationReport {
  bool exhaustive = true;         // every dendrex spreads apart and recomposes
  bool monotone = true;           // Psi^{n-1} <= Psi^n
  bool pushout_counts_match = true;
  bool subtree_property = true;   // restrictions of primitives land one stage down
  bool psi_reaches_nerve = true;  // Psi^bound == nerve on the skeleton
  int max_stage_needed = 0;       // largest |R| over all spread-apart terminals
  std::vector<FiltrationLevelCount> counts;
  std::vector<std::pair<int, long>> per_level_sizes;  // tree -> nerve size
};
FiltrationReport verify_filtration(std::shared_ptr<const Skeleton> sk, const GradedSet& m);

}  // namespace dendro

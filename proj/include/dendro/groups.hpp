#pragma once

#include <optional>
#include <string>
#include <vector>

namespace dendro {

struct FiniteGroup {
  int n = 1;
  std::vector<std::vector<int>> mul;  // mul[a][b]
  int e = 0;
  std::string name;

  int inverse(int a) const;
  void validate() const;  // associativity, identity, inverses

  static FiniteGroup cyclic(int n);
  static FiniteGroup klein4();
  static FiniteGroup symmetric3();
  static FiniteGroup dihedral4();    // order 8
  static FiniteGroup quaternion8();  // order 8
  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);
  static std::vector<FiniteGroup> all_of_order_up_to(int n);  // n <= 8
};

bool groups_isomorphic(const FiniteGroup& a, const FiniteGroup& b);

// a pointed binary operation; nothing is assumed, the Hall relations are
// checked
struct PointedMagma {
  int n = 1;
  std::vector<std::vector<int>> bracket;
  int e = 0;
};
PointedMagma magma_from_group(const FiniteGroup& g);  // [a,b] = a b^{-1}

struct HallReport {
  bool relations_hold = false;
  std::string failed_relation;  // with witnesses when not
  std::vector<int> witness;
  bool group_axioms_hold = false;
  bool bracket_recovered = false;  // [a,b] == a * inv(b) in the extracted group
  std::optional<FiniteGroup> group;
};
HallReport hall_extract(const PointedMagma& m);

struct HallSearchReport {
  int order = 0;
  long tables_checked = 0;
  long passing = 0;
  bool all_extract_to_groups = true;
  bool every_group_arises = false;
  std::vector<std::string> groups_found;  // iso-class names
};
HallSearchReport hall_search(int order, int jobs = 1);

// truncated simplicial set: levels 0..k with face and degeneracy tables
struct SimplicialTruncation {
  int k = 0;
  std::vector<int> level_sizes;                 // 0..k
  std::vector<std::vector<std::vector<int>>> face;  // face[m][i] : X_m -> X_{m-1}
  std::vector<std::vector<std::vector<int>>> degen;  // degen[m][i] : X_m -> X_{m+1}

  void validate() const;  // simplicial identities in range
  bool reduced() const { return level_sizes[0] == 1; }
  // nerve of a finite monoid, truncated at level k
  static SimplicialTruncation nerve_of_monoid(const std::vector<std::vector<int>>& mul, int e,
                                              int k);
};

struct BousfieldReport {
  int n = 0;
  bool injective = false;
  bool surjective = false;
  bool bijective = false;
  std::vector<std::vector<int>> map;  // X_n -> (X_1)^n
};
// the map induced by gamma^k : [1] -> [n], 0 -> 0 and 1 -> k+1
BousfieldReport bousfield_psi(const SimplicialTruncation& x, int n);

}  // namespace dendro

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>

#include "dendro/operad.hpp"
#include "dendro/tree.hpp"

namespace dendro {

// A total order on each vertex's incoming edges.
struct PlanarStructure {
  std::vector<std::vector<int>> order;  // per vertex, a permutation of in_edges
};
PlanarStructure canonical_planar(const Tree& t);

// Image of a source vertex: an operation of the target's free colored operad,
// i.e. a subtree with its leaves matched to the vertex's inputs. An empty
// vertex list is the identity operation on root_edge.
struct VertexImage {
  std::vector<int> subtree_vertices;  // target vertices, sorted
  int root_edge = 0;
  std::vector<int> input_leaf;  // per source input (canonical order), target leaf edge
};

// A map in Omega, i.e. a colored-operad map between the free colored operads
// of two trees. Distinct edge colors make the map determined by its edge
// assignment; vertex images are derived at construction.
class OmegaMorphism {
 public:
  OmegaMorphism(std::shared_ptr<const Tree> src, std::shared_ptr<const Tree> tgt,
                std::vector<int> edge_map);
  static std::optional<OmegaMorphism> try_make(std::shared_ptr<const Tree> src,
                                               std::shared_ptr<const Tree> tgt,
                                               std::vector<int> edge_map);
  static OmegaMorphism identity(std::shared_ptr<const Tree> t);
  static OmegaMorphism from_names(std::shared_ptr<const Tree> src,
                                  std::shared_ptr<const Tree> tgt,
                                  const std::map<std::string, std::string>& edge_names);

  const Tree& src() const { return *src_; }
  const Tree& tgt() const { return *tgt_; }
  std::shared_ptr<const Tree> src_ptr() const { return src_; }
  std::shared_ptr<const Tree> tgt_ptr() const { return tgt_; }
  const std::vector<int>& edge_map() const { return edge_map_; }
  int map_edge(int e) const { return edge_map_[e]; }
  const VertexImage& vertex_image(int v) const { return images_[v]; }

  bool is_iso() const;
  bool is_identity_assignment(int v) const { return images_[v].subtree_vertices.empty(); }
  int degenerate_vertices() const;  // count of vertices sent to identities
  bool factors_through_eta() const;

  bool operator==(const OmegaMorphism& o) const;
  bool operator<(const OmegaMorphism& o) const { return edge_map_ < o.edge_map_; }

 private:
  struct raw_t {};
  OmegaMorphism(raw_t, std::shared_ptr<const Tree> src, std::shared_ptr<const Tree> tgt,
                std::vector<int> edge_map)
      : src_(std::move(src)), tgt_(std::move(tgt)), edge_map_(std::move(edge_map)) {}

  std::shared_ptr<const Tree> src_, tgt_;
  std::vector<int> edge_map_;
  std::vector<VertexImage> images_;
};

// complete enumeration of Hom_Omega(R, S), sorted by edge map
std::vector<OmegaMorphism> hom_omega(std::shared_ptr<const Tree> r,
                                     std::shared_ptr<const Tree> s);
OmegaMorphism compose(const OmegaMorphism& g, const OmegaMorphism& f);  // g after f

OmegaMorphism subtree_inclusion(std::shared_ptr<const Tree> sub,
                                std::shared_ptr<const Tree> parent);
// coface attached to Tree::inner_coface / Tree::contract
OmegaMorphism coface_of_split(std::shared_ptr<const Tree> s,
                              std::shared_ptr<const Tree> split, const std::string& fresh);
OmegaMorphism codegeneracy_morphism(std::shared_ptr<const Tree> s, int unary_vertex,
                                    std::shared_ptr<const Tree> collapsed);
OmegaMorphism iso_from_perm(std::shared_ptr<const Tree> src, std::shared_ptr<const Tree> tgt,
                            const std::vector<int>& edge_perm);

// J on objects and morphisms: a tree goes to the free operad on its vertices;
// a morphism's vertex images are read as elements via canonical planar orders.
MapSpec j_morphism(const OmegaMorphism& f);
Element vertex_image_term(const OmegaMorphism& f, int v);

// nerve elements of a single-colored operad T_M at a tree R are vertex
// assignments; I packages them as operad maps J(R) -> T_M and back
MapSpec i_map(const Tree& r, const GradedSet& m, const std::vector<Element>& assignment);
std::vector<Element> i_inverse(const MapSpec& spec);

// planar structure under which every a(v) = tau_v . x_v reads as the bare x_v
PlanarStructure replan(const Tree& t, const std::vector<Element>& assignment,
                       const PlanarStructure& p);
Element read_with_planar(const Tree& t, int v, const Element& canonical_reading,
                         const PlanarStructure& p);

// the chosen skeletal subcategory: canonical trees with bounded vertex count
// and valence, with cached Hom-sets
class Skeleton {
 public:
  Skeleton(int max_vertices, int max_valence);

  int max_vertices, max_valence;
  int size() const { return static_cast<int>(trees_.size()); }
  const Tree& tree(int i) const { return *trees_[i]; }
  std::shared_ptr<const Tree> tree_ptr(int i) const { return trees_[i]; }
  int eta_index() const { return eta_; }
  bool is_linear(int i) const { return linear_[i]; }
  int index_of_code(const std::string& code) const;       // -1 when absent
  int corolla_index(int valence) const;

  const std::vector<OmegaMorphism>& hom(int r, int s) const;
  int hom_size(int r, int s) const { return static_cast<int>(hom(r, s).size()); }
  int find_morphism(int r, int s, const std::vector<int>& edge_map) const;
  const std::vector<int>& automorphism_indices(int s) const;  // indices into hom(s,s)

  struct MorKey {
    int r, s, idx;
    auto operator<=>(const MorKey&) const = default;
  };
  const OmegaMorphism& mor(const MorKey& k) const { return hom(k.r, k.s)[k.idx]; }
  MorKey compose_keys(const MorKey& f, const MorKey& g) const;  // g after f: f:r->s, g:s->q

  enum class GenKind { Iso, Coface, Codegeneracy };
  struct Generator {
    MorKey key;
    GenKind kind;
  };
  std::vector<Generator> generators() const;  // all pairs, |dV| <= 1 filtered

 private:
  std::vector<std::shared_ptr<const Tree>> trees_;
  std::map<std::string, int> by_code_;
  std::vector<char> linear_;
  int eta_ = 0;
  mutable std::map<std::pair<int, int>, std::vector<OmegaMorphism>> hom_cache_;
  mutable std::map<std::pair<int, int>, std::map<std::vector<int>, int>> index_cache_;
  mutable std::map<int, std::vector<int>> auto_cache_;
  mutable std::shared_mutex mu_;
};

}  // namespace dendro

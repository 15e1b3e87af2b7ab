#include "dendro/omega.hpp"

#include <algorithm>
#include <mutex>
#include <functional>
#include <stdexcept>

namespace dendro {

PlanarStructure canonical_planar(const Tree& t) {
  PlanarStructure p;
  for (int v = 0; v < t.n_vertices(); ++v) p.order.push_back(t.in_edges(v));
  return p;
}

namespace {

// the operation of the target's colored operad with given root color and leaf
// set: the unique subtree with that root and leaf set, if one exists. Start
// from the paths root -> leaf, then absorb branches that must close off with
// nullary vertices.
std::optional<std::vector<int>> span_subtree(const Tree& tgt, int root_edge,
                                             const std::vector<int>& leaves) {
  std::set<int> leafset(leaves.begin(), leaves.end());
  if (leafset.size() != leaves.size()) return std::nullopt;  // repeated colors
  if (leafset.size() == 1 && *leafset.begin() == root_edge)
    return std::vector<int>{};  // identity operation
  std::set<int> verts;
  for (int l : leaves) {
    int e = l;
    while (e != root_edge) {
      int w = tgt.bottom(e);
      if (w < 0) return std::nullopt;  // fell off the root
      verts.insert(w);
      e = tgt.out_edge(w);
    }
  }
  for (bool grew = true; grew;) {
    grew = false;
    std::set<int> edges = {root_edge};
    for (int w : verts)
      for (int in : tgt.in_edges(w)) edges.insert(in);
    for (int e : edges) {
      int t = tgt.top(e);
      bool is_leaf = (t < 0) || !verts.count(t);
      if (is_leaf && !leafset.count(e)) {
        if (t < 0) return std::nullopt;  // a genuine leaf we cannot absorb
        verts.insert(t);
        grew = true;
      }
      if (!is_leaf && leafset.count(e)) return std::nullopt;  // required leaf is internal
    }
  }
  if (verts.empty()) return std::nullopt;
  std::set<int> edges = {root_edge};
  for (int w : verts)
    for (int in : tgt.in_edges(w)) edges.insert(in);
  for (int w : verts)
    if (!edges.count(tgt.out_edge(w))) return std::nullopt;
  for (int l : leaves)
    if (!edges.count(l)) return std::nullopt;
  return std::vector<int>(verts.begin(), verts.end());
}

}  // namespace

std::optional<OmegaMorphism> OmegaMorphism::try_make(std::shared_ptr<const Tree> src,
                                                     std::shared_ptr<const Tree> tgt,
                                                     std::vector<int> edge_map) {
  if (static_cast<int>(edge_map.size()) != src->n_edges()) return std::nullopt;
  OmegaMorphism m(raw_t{}, std::move(src), std::move(tgt), std::move(edge_map));
  for (int v = 0; v < m.src().n_vertices(); ++v) {
    VertexImage img;
    img.root_edge = m.edge_map_[m.src().out_edge(v)];
    for (int in : m.src().in_edges(v)) img.input_leaf.push_back(m.edge_map_[in]);
    auto verts = span_subtree(m.tgt(), img.root_edge, img.input_leaf);
    if (!verts) return std::nullopt;
    img.subtree_vertices = *verts;
    m.images_.push_back(std::move(img));
  }
  return m;
}

OmegaMorphism::OmegaMorphism(std::shared_ptr<const Tree> src, std::shared_ptr<const Tree> tgt,
                             std::vector<int> edge_map)
    : src_(std::move(src)), tgt_(std::move(tgt)), edge_map_(std::move(edge_map)) {
  auto m = try_make(src_, tgt_, edge_map_);
  if (!m) throw std::invalid_argument("edge map does not define a morphism in Omega");
  images_ = std::move(m->images_);
}

OmegaMorphism OmegaMorphism::identity(std::shared_ptr<const Tree> t) {
  std::vector<int> id(t->n_edges());
  for (size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  return OmegaMorphism(t, t, id);
}

OmegaMorphism OmegaMorphism::from_names(std::shared_ptr<const Tree> src,
                                        std::shared_ptr<const Tree> tgt,
                                        const std::map<std::string, std::string>& edge_names) {
  std::vector<int> em(src->n_edges());
  for (int e = 0; e < src->n_edges(); ++e) {
    auto it = edge_names.find(src->edge_name(e));
    if (it == edge_names.end()) throw std::invalid_argument("edge map missing an edge");
    em[e] = tgt->edge_index(it->second);
  }
  return OmegaMorphism(std::move(src), std::move(tgt), std::move(em));
}

bool OmegaMorphism::is_iso() const {
  if (src().n_edges() != tgt().n_edges()) return false;
  std::vector<char> hit(edge_map_.size(), 0);
  for (int e : edge_map_) {
    if (hit[e]) return false;
    hit[e] = 1;
  }
  // bijective on edges forces vertices onto single vertices
  return true;
}

int OmegaMorphism::degenerate_vertices() const {
  int c = 0;
  for (auto& img : images_) c += img.subtree_vertices.empty() ? 1 : 0;
  return c;
}

bool OmegaMorphism::factors_through_eta() const {
  return src().n_vertices() == degenerate_vertices() &&
         std::all_of(edge_map_.begin(), edge_map_.end(),
                     [&](int e) { return e == edge_map_[src().root()]; });
}

bool OmegaMorphism::operator==(const OmegaMorphism& o) const {
  return edge_map_ == o.edge_map_ && src().same_named_tree(o.src()) &&
         tgt().same_named_tree(o.tgt());
}

std::vector<OmegaMorphism> hom_omega(std::shared_ptr<const Tree> r,
                                     std::shared_ptr<const Tree> s) {
  // group target subtrees by (root edge, leaf count)
  std::map<std::pair<int, int>, std::vector<Tree::Subtree>> ops;
  for (auto& sub : s->subtrees())
    ops[{sub.root_edge, static_cast<int>(sub.leaves.size())}].push_back(sub);

  std::vector<OmegaMorphism> out;
  std::vector<int> em(r->n_edges(), -1);

  // vertices become ready once their outgoing edge is assigned
  std::function<void(std::vector<int>)> rec = [&](std::vector<int> pending) {
    int v = -1;
    for (size_t i = 0; i < pending.size(); ++i)
      if (pending[i] >= 0) {
        v = pending[i];
        pending[i] = -1;
        break;
      }
    if (v < 0) {
      auto m = OmegaMorphism::try_make(r, s, em);
      if (m) out.push_back(std::move(*m));
      return;
    }
    int root_img = em[r->out_edge(v)];
    int k = r->valence(v);
    auto it = ops.find({root_img, k});
    if (it == ops.end()) return;
    const auto& ins = r->in_edges(v);
    for (auto& sub : it->second) {
      // all bijections ins -> sub.leaves
      std::vector<int> idx(k);
      for (int i = 0; i < k; ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end());
      do {
        for (int i = 0; i < k; ++i) em[ins[i]] = sub.leaves[idx[i]];
        auto next = pending;
        for (int i = 0; i < k; ++i) {
          int t = r->top(ins[i]);
          if (t >= 0) next.push_back(t);
        }
        rec(next);
      } while (std::next_permutation(idx.begin(), idx.end()));
      for (int i = 0; i < k; ++i) em[ins[i]] = -1;
    }
  };

  for (int e0 = 0; e0 < s->n_edges(); ++e0) {
    em.assign(r->n_edges(), -1);
    em[r->root()] = e0;
    std::vector<int> pending;
    int t = r->top(r->root());
    if (t >= 0) pending.push_back(t);
    rec(pending);
  }
  std::sort(out.begin(), out.end());
  return out;
}

OmegaMorphism compose(const OmegaMorphism& g, const OmegaMorphism& f) {
  if (!f.tgt().same_named_tree(g.src()))
    throw std::invalid_argument("composition endpoints do not match");
  std::vector<int> em(f.src().n_edges());
  for (int e = 0; e < f.src().n_edges(); ++e) em[e] = g.map_edge(f.map_edge(e));
  return OmegaMorphism(f.src_ptr(), g.tgt_ptr(), em);
}

OmegaMorphism subtree_inclusion(std::shared_ptr<const Tree> sub,
                                std::shared_ptr<const Tree> parent) {
  std::map<std::string, std::string> names;
  for (int e = 0; e < sub->n_edges(); ++e) names[sub->edge_name(e)] = sub->edge_name(e);
  return OmegaMorphism::from_names(std::move(sub), std::move(parent), names);
}

OmegaMorphism coface_of_split(std::shared_ptr<const Tree> s,
                              std::shared_ptr<const Tree> split, const std::string&) {
  std::map<std::string, std::string> names;
  for (int e = 0; e < s->n_edges(); ++e) names[s->edge_name(e)] = s->edge_name(e);
  return OmegaMorphism::from_names(std::move(s), std::move(split), names);
}

OmegaMorphism codegeneracy_morphism(std::shared_ptr<const Tree> s, int unary_vertex,
                                    std::shared_ptr<const Tree> collapsed) {
  int in = s->in_edges(unary_vertex)[0], out = s->out_edge(unary_vertex);
  std::map<std::string, std::string> names;
  for (int e = 0; e < s->n_edges(); ++e)
    names[s->edge_name(e)] = s->edge_name(e == in ? out : e);
  return OmegaMorphism::from_names(std::move(s), std::move(collapsed), names);
}

OmegaMorphism iso_from_perm(std::shared_ptr<const Tree> src, std::shared_ptr<const Tree> tgt,
                            const std::vector<int>& edge_perm) {
  return OmegaMorphism(std::move(src), std::move(tgt), edge_perm);
}

Element vertex_image_term(const OmegaMorphism& f, int v) {
  const VertexImage& img = f.vertex_image(v);
  const Tree& tgt = f.tgt();
  std::set<int> verts(img.subtree_vertices.begin(), img.subtree_vertices.end());
  std::map<int, int> leaf_slot;  // target leaf edge -> 1-based input slot of v
  for (size_t i = 0; i < img.input_leaf.size(); ++i)
    leaf_slot[img.input_leaf[i]] = static_cast<int>(i) + 1;
  std::function<Element::Node(int)> rec = [&](int e) -> Element::Node {
    int w = tgt.top(e);
    if (w < 0 || !verts.count(w)) {
      Element::Node n;
      n.leaf = leaf_slot.at(e);
      return n;
    }
    Element::Node n;
    n.gen = w;
    for (int in : tgt.in_edges(w)) n.args.push_back(rec(in));
    return n;
  };
  Element out;
  out.root = rec(img.root_edge);
  out.arity = static_cast<int>(img.input_leaf.size());
  return out;
}

MapSpec j_morphism(const OmegaMorphism& f) {
  MapSpec spec;
  spec.source = vertex_graded_set(f.src());
  spec.target = vertex_graded_set(f.tgt());
  for (int v = 0; v < f.src().n_vertices(); ++v) spec.images.push_back(vertex_image_term(f, v));
  return spec;
}

MapSpec i_map(const Tree& r, const GradedSet& m, const std::vector<Element>& assignment) {
  MapSpec spec;
  spec.source = vertex_graded_set(r);
  spec.target = m;
  spec.images = assignment;
  spec.validate();
  return spec;
}

std::vector<Element> i_inverse(const MapSpec& spec) { return spec.images; }

Element read_with_planar(const Tree& t, int v, const Element& canonical_reading,
                         const PlanarStructure& p) {
  // position j of the canonical order holds input slot l_j; under p the slot
  // connected to p.order[v][j] moves accordingly
  const auto& canon = t.in_edges(v);
  const auto& perm_edges = p.order[v];
  int k = t.valence(v);
  std::vector<int> perm(k);  // perm[j] = canonical position of p's j-th edge
  for (int j = 0; j < k; ++j) {
    auto it = std::find(canon.begin(), canon.end(), perm_edges[j]);
    if (it == canon.end()) throw std::invalid_argument("planar order not over the inputs");
    perm[j] = static_cast<int>(it - canon.begin()) + 1;
  }
  return sigma_action(canonical_reading, perm);
}

PlanarStructure replan(const Tree& t, const std::vector<Element>& assignment,
                       const PlanarStructure& p) {
  PlanarStructure out;
  out.order.resize(t.n_vertices());
  for (int v = 0; v < t.n_vertices(); ++v) {
    const Element& a = read_with_planar(t, v, assignment[v], p);
    if (a.root.is_leaf() || a.n_vertices() != 1)
      throw std::invalid_argument("assignment is not of the form tau . generator");
    const auto& edges = p.order[v];
    std::vector<int> reordered(edges.size());
    for (size_t j = 0; j < a.root.args.size(); ++j) {
      if (!a.root.args[j].is_leaf()) throw std::invalid_argument("not a single-vertex element");
      reordered[j] = edges[a.root.args[j].leaf - 1];
    }
    out.order[v] = reordered;
  }
  return out;
}

Skeleton::Skeleton(int mv, int mval) : max_vertices(mv), max_valence(mval) {
  for (auto& t : enumerate_trees(mv, mval)) {
    auto p = std::make_shared<Tree>(t);
    by_code_[p->canonical_code()] = static_cast<int>(trees_.size());
    linear_.push_back(p->is_linear() ? 1 : 0);
    trees_.push_back(std::move(p));
  }
  eta_ = by_code_.at(".");
}

int Skeleton::index_of_code(const std::string& code) const {
  auto it = by_code_.find(code);
  return it == by_code_.end() ? -1 : it->second;
}

int Skeleton::corolla_index(int valence) const {
  std::string code = "(";
  for (int i = 0; i < valence; ++i) code += ".";
  code += ")";
  int i = index_of_code(code);
  if (i < 0) throw std::invalid_argument("corolla valence exceeds the skeleton bound");
  return i;
}

const std::vector<OmegaMorphism>& Skeleton::hom(int r, int s) const {
  {
    std::shared_lock lk(mu_);
    auto it = hom_cache_.find({r, s});
    if (it != hom_cache_.end()) return it->second;
  }
  auto homs = hom_omega(trees_[r], trees_[s]);
  std::unique_lock lk(mu_);
  auto it = hom_cache_.find({r, s});
  if (it != hom_cache_.end()) return it->second;  // another thread won the race
  auto& slot = hom_cache_[{r, s}];
  slot = std::move(homs);
  auto& idx = index_cache_[{r, s}];
  for (size_t i = 0; i < slot.size(); ++i) idx[slot[i].edge_map()] = static_cast<int>(i);
  return slot;
}

int Skeleton::find_morphism(int r, int s, const std::vector<int>& edge_map) const {
  hom(r, s);
  std::shared_lock lk(mu_);
  auto& idx = index_cache_.at({r, s});
  auto it = idx.find(edge_map);
  if (it == idx.end()) throw std::invalid_argument("morphism not found in skeleton Hom-set");
  return it->second;
}

const std::vector<int>& Skeleton::automorphism_indices(int s) const {
  const auto& hs = hom(s, s);
  {
    std::shared_lock lk(mu_);
    auto it = auto_cache_.find(s);
    if (it != auto_cache_.end()) return it->second;
  }
  std::vector<int> res;
  for (size_t i = 0; i < hs.size(); ++i)
    if (hs[i].is_iso()) res.push_back(static_cast<int>(i));
  std::unique_lock lk(mu_);
  auto it = auto_cache_.find(s);
  if (it != auto_cache_.end()) return it->second;
  return auto_cache_.emplace(s, std::move(res)).first->second;
}

Skeleton::MorKey Skeleton::compose_keys(const MorKey& f, const MorKey& g) const {
  if (f.s != g.r) throw std::invalid_argument("keys not composable");
  auto c = compose(mor(g), mor(f));
  return {f.r, g.s, find_morphism(f.r, g.s, c.edge_map())};
}

std::vector<Skeleton::Generator> Skeleton::generators() const {
  std::vector<Generator> out;
  for (int r = 0; r < size(); ++r)
    for (int s = 0; s < size(); ++s) {
      int dv = tree(s).n_vertices() - tree(r).n_vertices();
      if (dv < -1 || dv > 1) continue;
      const auto& hs = hom(r, s);
      for (size_t i = 0; i < hs.size(); ++i) {
        const auto& m = hs[i];
        MorKey k{r, s, static_cast<int>(i)};
        if (dv == 0 && m.is_iso())
          out.push_back({k, GenKind::Iso});
        else if (dv == 1 && m.degenerate_vertices() == 0)
          out.push_back({k, GenKind::Coface});
        else if (dv == -1 && m.degenerate_vertices() == 1)
          out.push_back({k, GenKind::Codegeneracy});
      }
    }
  return out;
}

}  // namespace dendro

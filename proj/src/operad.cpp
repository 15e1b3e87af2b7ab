#include "dendro/operad.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace dendro {

int GradedSet::find(const std::string& n) const {
  for (int i = 0; i < size(); ++i)
    if (names[i] == n) return i;
  throw std::invalid_argument("no generator named " + n);
}

bool GradedSet::has_small_generators() const {
  for (int v : valences)
    if (v <= 1) return true;
  return false;
}

GradedSet vertex_graded_set(const Tree& t) {
  GradedSet g;
  for (int v = 0; v < t.n_vertices(); ++v) {
    g.names.push_back(t.vertex_name(v));
    g.valences.push_back(t.valence(v));
  }
  return g;
}

Element Element::identity() {
  Element e;
  e.root.gen = -1;
  e.root.leaf = 1;
  e.arity = 1;
  return e;
}

Element Element::generator(int gen, int valence) {
  Element e;
  e.root.gen = gen;
  for (int i = 1; i <= valence; ++i) {
    Node leaf;
    leaf.leaf = i;
    e.root.args.push_back(leaf);
  }
  e.arity = valence;
  return e;
}

int Element::n_vertices() const {
  std::function<int(const Node&)> rec = [&](const Node& n) -> int {
    if (n.is_leaf()) return 0;
    int c = 1;
    for (auto& a : n.args) c += rec(a);
    return c;
  };
  return rec(root);
}

std::string Element::key() const {
  std::string s;
  std::function<void(const Node&)> rec = [&](const Node& n) {
    if (n.is_leaf()) {
      s += "L" + std::to_string(n.leaf);
      return;
    }
    s += "g" + std::to_string(n.gen) + "(";
    for (auto& a : n.args) rec(a);
    s += ")";
  };
  rec(root);
  return s;
}

void Element::validate(const GradedSet& m) const {
  std::vector<int> seen;
  std::function<void(const Node&)> rec = [&](const Node& n) {
    if (n.is_leaf()) {
      seen.push_back(n.leaf);
      return;
    }
    if (n.gen < 0 || n.gen >= m.size()) throw std::invalid_argument("bad generator index");
    if (static_cast<int>(n.args.size()) != m.valences[n.gen])
      throw std::invalid_argument("vertex label valence mismatch");
    for (auto& a : n.args) rec(a);
  };
  rec(root);
  std::sort(seen.begin(), seen.end());
  if (static_cast<int>(seen.size()) != arity) throw std::invalid_argument("arity mismatch");
  for (int i = 0; i < arity; ++i)
    if (seen[i] != i + 1) throw std::invalid_argument("leaf labels not a bijection onto 1..n");
}

namespace {
Element::Node shift_leaves(const Element::Node& n, int offset) {
  Element::Node out = n;
  if (out.is_leaf()) {
    out.leaf += offset;
    return out;
  }
  for (auto& a : out.args) a = shift_leaves(a, offset);
  return out;
}

Element::Node substitute(const Element::Node& n, const std::vector<Element>& by_label) {
  if (n.is_leaf()) return by_label[n.leaf - 1].root;
  Element::Node out = n;
  for (auto& a : out.args) a = substitute(a, by_label);
  return out;
}
}  // namespace

Element graft(const Element& f, const std::vector<Element>& args) {
  if (static_cast<int>(args.size()) != f.arity)
    throw std::invalid_argument("graft arity mismatch");
  Element out;
  out.root = substitute(f.root, args);
  out.arity = 0;
  for (auto& a : args) out.arity += a.arity;
  return out;
}

Element gamma(const Element& f, const std::vector<Element>& args) {
  if (static_cast<int>(args.size()) != f.arity)
    throw std::invalid_argument("gamma arity mismatch");
  std::vector<Element> shifted = args;
  int offset = 0;
  for (auto& a : shifted) {
    Element b = a;
    b.root = shift_leaves(a.root, offset);
    offset += a.arity;
    a = b;
  }
  return graft(f, shifted);
}

Element sigma_action(const Element& f, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != f.arity)
    throw std::invalid_argument("permutation size mismatch");
  std::vector<int> inv(perm.size() + 1, 0);
  for (size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i) + 1;
  Element out = f;
  std::function<void(Element::Node&)> rec = [&](Element::Node& n) {
    if (n.is_leaf()) {
      n.leaf = inv[n.leaf];
      return;
    }
    for (auto& a : n.args) rec(a);
  };
  rec(out.root);
  return out;
}

ElementEnumeration elements(const GradedSet& m, int arity, int max_vertices) {
  if (arity < 0 || max_vertices < 0) throw std::invalid_argument("bad bounds");
  // shapes with `leaves` leaf slots and <= `budget` vertices; leaves carry
  // placeholder labels by preorder position, permuted afterwards
  std::function<std::vector<Element::Node>(int, int)> shapes = [&](int leaves, int budget) {
    std::vector<Element::Node> out;
    if (leaves == 1) {
      Element::Node l;
      l.leaf = 0;
      out.push_back(l);
    }
    if (budget == 0) return out;
    for (int g = 0; g < m.size(); ++g) {
      int k = m.valences[g];
      // distribute `leaves` over k children and budget-1 vertices
      std::vector<Element::Node> acc(k);
      std::function<void(int, int, int)> rec = [&](int i, int lv, int bd) {
        if (i == k) {
          if (lv != 0) return;
          Element::Node n;
          n.gen = g;
          n.args.assign(acc.begin(), acc.end());
          out.push_back(n);
          return;
        }
        for (int l = 0; l <= lv; ++l)
          for (auto& c : shapes(l, bd)) {
            acc[i] = c;
            // vertices actually used by c
            std::function<int(const Element::Node&)> nv = [&](const Element::Node& n) -> int {
              if (n.is_leaf()) return 0;
              int t = 1;
              for (auto& a : n.args) t += nv(a);
              return t;
            };
            int used = nv(c);
            if (used <= bd) rec(i + 1, lv - l, bd - used);
          }
      };
      rec(0, leaves, budget - 1);
    }
    return out;
  };

  ElementEnumeration result;
  std::set<std::string> seen;
  for (auto& shape : shapes(arity, max_vertices)) {
    // assign each permutation of 1..arity to the leaf slots in preorder
    std::vector<int> perm(arity);
    std::iota(perm.begin(), perm.end(), 1);
    do {
      Element e;
      e.arity = arity;
      e.root = shape;
      int pos = 0;
      std::function<void(Element::Node&)> fill = [&](Element::Node& n) {
        if (n.is_leaf()) {
          n.leaf = perm[pos++];
          return;
        }
        for (auto& a : n.args) fill(a);
      };
      fill(e.root);
      if (seen.insert(e.key()).second) result.elems.push_back(std::move(e));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  std::sort(result.elems.begin(), result.elems.end(),
            [](const Element& a, const Element& b) { return a.key() < b.key(); });
  result.complete = !m.has_small_generators() && max_vertices >= std::max(arity - 1, 0);
  return result;
}

std::string MapSpec::key() const {
  std::string s;
  for (auto& e : images) s += e.key() + ";";
  return s;
}

MapSpec MapSpec::units(const GradedSet& source, const GradedSet& target) {
  MapSpec m;
  m.source = source;
  m.target = target;
  for (int v : source.valences) {
    if (v != 1) throw std::invalid_argument("units map needs an all-unary source");
    m.images.push_back(Element::identity());
  }
  return m;
}

MapSpec MapSpec::identity(const GradedSet& g) {
  MapSpec m;
  m.source = g;
  m.target = g;
  for (int i = 0; i < g.size(); ++i) m.images.push_back(Element::generator(i, g.valences[i]));
  return m;
}

void MapSpec::validate() const {
  if (static_cast<int>(images.size()) != source.size())
    throw std::invalid_argument("one image per generator required");
  for (int i = 0; i < source.size(); ++i) {
    if (images[i].arity != source.valences[i])
      throw std::invalid_argument("image arity must match generator valence");
    images[i].validate(target);
  }
}

Element apply_spec(const MapSpec& spec, const Element& e) {
  std::function<Element(const Element::Node&)> rec = [&](const Element::Node& n) -> Element {
    if (n.is_leaf()) {
      Element l;
      l.root = n;
      l.arity = 0;  // placeholder; graft ignores arities of leaf stubs
      l.root.leaf = n.leaf;
      return l;
    }
    std::vector<Element> kids;
    for (auto& a : n.args) kids.push_back(rec(a));
    Element img = spec.images[n.gen];
    Element out;
    out.root = substitute(img.root, kids);
    return out;
  };
  Element out = rec(e.root);
  out.arity = e.arity;
  return out;
}

MapSpec compose_specs(const MapSpec& g, const MapSpec& f) {
  MapSpec out;
  out.source = f.source;
  out.target = g.target;
  for (auto& img : f.images) out.images.push_back(apply_spec(g, img));
  for (size_t i = 0; i < out.images.size(); ++i) out.images[i].arity = f.images[i].arity;
  return out;
}

MapEnumeration hom_free(const GradedSet& n, const GradedSet& m, int max_vertices) {
  MapEnumeration out;
  out.complete = true;
  std::vector<ElementEnumeration> per_gen;
  for (int i = 0; i < n.size(); ++i) {
    per_gen.push_back(elements(m, n.valences[i], max_vertices));
    out.complete = out.complete && per_gen.back().complete;
  }
  std::vector<Element> acc;
  std::function<void(int)> rec = [&](int i) {
    if (i == n.size()) {
      MapSpec s;
      s.source = n;
      s.target = m;
      s.images = acc;
      out.maps.push_back(std::move(s));
      return;
    }
    for (auto& e : per_gen[i].elems) {
      acc.push_back(e);
      rec(i + 1);
      acc.pop_back();
    }
  };
  rec(0);
  std::sort(out.maps.begin(), out.maps.end(),
            [](const MapSpec& a, const MapSpec& b) { return a.key() < b.key(); });
  return out;
}

}  // namespace dendro

#include "dendro/presheaf.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <set>

#include "dendro/util.hpp"

namespace dendro {

std::string Presheaf::label(int s, int x) const {
  return skel().tree(s).canonical_code() + "#" + std::to_string(x);
}

const std::vector<int>& Presheaf::action_table(const Skeleton::MorKey& k) const {
  {
    std::shared_lock lk(memo_mu_);
    auto it = act_memo_.find({k.r, k.s, k.idx});
    if (it != act_memo_.end()) return it->second;
  }
  std::vector<int> table(size(k.s));
  for (int x = 0; x < size(k.s); ++x) table[x] = act(k.r, k.s, k.idx, x);
  std::unique_lock lk(memo_mu_);
  return act_memo_.emplace(std::make_tuple(k.r, k.s, k.idx), std::move(table)).first->second;
}

bool Presheaf::is_reduced() const {
  if (size(skel().eta_index()) != 1) return false;
  for (int s = 0; s < skel().size(); ++s)
    if (skel().is_linear(s) && basepoint(s) < 0) return false;
  return true;
}

long Presheaf::total_size() const {
  long t = 0;
  for (int s = 0; s < skel().size(); ++s) t += size(s);
  return t;
}

// ---------------------------------------------------------------------------

RepresentablePresheaf::RepresentablePresheaf(std::shared_ptr<const Skeleton> sk, int target)
    : Presheaf(std::move(sk)), target_(target) {}

int RepresentablePresheaf::size(int s) const { return skel().hom_size(s, target_); }

int RepresentablePresheaf::act(int r, int s, int mor, int x) const {
  auto c = compose(skel().hom(s, target_)[x], skel().hom(r, s)[mor]);
  return skel().find_morphism(r, target_, c.edge_map());
}

std::string RepresentablePresheaf::label(int s, int x) const {
  const auto& m = skel().hom(s, target_)[x];
  std::string out;
  for (int e = 0; e < m.src().n_edges(); ++e) {
    if (e) out += ",";
    out += m.src().edge_name(e) + ">" + m.tgt().edge_name(m.map_edge(e));
  }
  return out;
}

PresheafPtr representable(std::shared_ptr<const Skeleton> sk, int target) {
  return std::make_shared<RepresentablePresheaf>(std::move(sk), target);
}

// ---------------------------------------------------------------------------

std::string ColoredOperadEval::op_label(int op) const { return "op" + std::to_string(op); }

namespace {
std::mutex g_intern_mu;
}

FreeOperadEval::FreeOperadEval(GradedSet m, int max_vertices)
    : m_(std::move(m)), max_vertices_(max_vertices) {}

const Element& FreeOperadEval::element_of(int op) const { return elems_[op]; }

int FreeOperadEval::op_of(const Element& e) const {
  std::scoped_lock lk(g_intern_mu);
  auto it = by_key_.find(e.key());
  if (it != by_key_.end()) return it->second;
  int id = static_cast<int>(elems_.size());
  elems_.push_back(e);
  by_key_[e.key()] = id;
  return id;
}

std::vector<int> FreeOperadEval::ops_by_out(int, int arity) const {
  auto en = elements(m_, arity, max_vertices_);
  {
    std::scoped_lock lk(g_intern_mu);
    if (!en.complete) saw_truncation_ = true;
  }
  std::vector<int> out;
  for (auto& e : en.elems) out.push_back(op_of(e));
  return out;
}

std::vector<int> FreeOperadEval::profile(int op) const {
  return std::vector<int>(elems_[op].arity, 0);
}

int FreeOperadEval::identity(int) const { return op_of(Element::identity()); }

int FreeOperadEval::compose_op(int op, const std::vector<int>& args) const {
  std::vector<Element> as;
  for (int a : args) as.push_back(element_of(a));
  return op_of(gamma(element_of(op), as));
}

int FreeOperadEval::sigma_op(int op, const std::vector<int>& perm) const {
  return op_of(sigma_action(element_of(op), perm));
}

std::string FreeOperadEval::op_label(int op) const {
  std::string s;
  std::function<void(const Element::Node&)> rec = [&](const Element::Node& n) {
    if (n.is_leaf()) {
      s += std::to_string(n.leaf);
      return;
    }
    s += m_.names[n.gen] + "(";
    for (size_t i = 0; i < n.args.size(); ++i) {
      if (i) s += " ";
      rec(n.args[i]);
    }
    s += ")";
  };
  rec(elems_[op].root);
  return s;
}

bool FreeOperadEval::complete() const {
  std::scoped_lock lk(g_intern_mu);
  return !saw_truncation_;
}

// ---------------------------------------------------------------------------

TreeOperadEval::TreeOperadEval(std::shared_ptr<const Tree> t) : tree_(std::move(t)) {
  for (auto& sub : tree_->subtrees()) {
    int k = static_cast<int>(sub.leaves.size());
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end());
    do {
      Op op;
      op.verts = sub.vertices;
      op.root_edge = sub.root_edge;
      for (int i = 0; i < k; ++i) op.leaves.push_back(sub.leaves[idx[i]]);
      int id = intern(op);
      auto key = std::make_pair(op.root_edge, k);
      auto& bucket = by_out_arity_[key];
      if (std::find(bucket.begin(), bucket.end(), id) == bucket.end()) bucket.push_back(id);
      op.leaves.clear();
    } while (std::next_permutation(idx.begin(), idx.end()));
  }
}

int TreeOperadEval::intern(Op op) const {
  std::string key = std::to_string(op.root_edge) + "|";
  for (int v : op.verts) key += std::to_string(v) + ",";
  key += "|";
  for (int l : op.leaves) key += std::to_string(l) + ",";
  std::scoped_lock lk(g_intern_mu);
  auto it = by_key_.find(key);
  if (it != by_key_.end()) return it->second;
  int id = static_cast<int>(ops_.size());
  ops_.push_back(std::move(op));
  by_key_[key] = id;
  return id;
}

std::vector<int> TreeOperadEval::ops_by_out(int out_color, int arity) const {
  auto it = by_out_arity_.find({out_color, arity});
  return it == by_out_arity_.end() ? std::vector<int>{} : it->second;
}

std::vector<int> TreeOperadEval::profile(int op) const { return ops_[op].leaves; }
int TreeOperadEval::out_color(int op) const { return ops_[op].root_edge; }

int TreeOperadEval::identity(int color) const {
  Op op;
  op.root_edge = color;
  op.leaves = {color};
  return intern(op);
}

int TreeOperadEval::compose_op(int op, const std::vector<int>& args) const {
  const Op base = ops_[op];
  Op out;
  out.root_edge = base.root_edge;
  std::set<int> verts(base.verts.begin(), base.verts.end());
  if (args.size() != base.leaves.size()) throw std::logic_error("tree operad gamma arity");
  for (size_t i = 0; i < args.size(); ++i) {
    const Op& a = ops_[args[i]];
    if (a.root_edge != base.leaves[i]) throw std::logic_error("tree operad gamma colors");
    verts.insert(a.verts.begin(), a.verts.end());
    out.leaves.insert(out.leaves.end(), a.leaves.begin(), a.leaves.end());
  }
  out.verts.assign(verts.begin(), verts.end());
  return intern(out);
}

int TreeOperadEval::sigma_op(int op, const std::vector<int>& perm) const {
  const Op& base = ops_[op];
  Op out;
  out.root_edge = base.root_edge;
  out.verts = base.verts;
  for (size_t j = 0; j < perm.size(); ++j) out.leaves.push_back(base.leaves[perm[j] - 1]);
  return intern(out);
}

std::string TreeOperadEval::op_label(int op) const {
  const Op& o = ops_[op];
  std::string s = tree_->edge_name(o.root_edge) + "<-(";
  for (size_t i = 0; i < o.leaves.size(); ++i) {
    if (i) s += " ";
    s += tree_->edge_name(o.leaves[i]);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------

TableColoredEval::TableColoredEval(int n_colors, std::vector<OpData> ops,
                                   std::vector<int> identities)
    : n_colors_(n_colors), ops_(std::move(ops)), identities_(std::move(identities)) {
  for (int c = 0; c < n_colors_; ++c) {
    const OpData& id = ops_[identities_[c]];
    if (id.out != c || id.profile != std::vector<int>{c})
      throw std::invalid_argument("identity operation has the wrong profile");
  }
}

void TableColoredEval::set_gamma(int op, const std::vector<int>& args, int result) {
  gamma_[{op, args}] = result;
}
void TableColoredEval::set_sigma(int op, const std::vector<int>& perm, int result) {
  sigma_[{op, perm}] = result;
}

std::vector<int> TableColoredEval::ops_by_out(int out_color, int arity) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(ops_.size()); ++i)
    if (ops_[i].out == out_color && static_cast<int>(ops_[i].profile.size()) == arity)
      out.push_back(i);
  return out;
}

int TableColoredEval::compose_op(int op, const std::vector<int>& args) const {
  bool all_id = true;
  for (size_t i = 0; i < args.size(); ++i) all_id &= (args[i] == identities_[ops_[op].profile[i]]);
  if (all_id) return op;
  if (op == identities_[ops_[op].out] && args.size() == 1) return args[0];
  auto it = gamma_.find({op, args});
  if (it == gamma_.end()) throw TruncationError("composition not in the operad table");
  return it->second;
}

int TableColoredEval::sigma_op(int op, const std::vector<int>& perm) const {
  bool id = true;
  for (size_t i = 0; i < perm.size(); ++i) id &= (perm[i] == static_cast<int>(i) + 1);
  if (id) return op;
  auto it = sigma_.find({op, perm});
  if (it == sigma_.end()) throw TruncationError("symmetric action not in the operad table");
  return it->second;
}

// ---------------------------------------------------------------------------

NervePresheaf::NervePresheaf(std::shared_ptr<const Skeleton> sk,
                             std::shared_ptr<const ColoredOperadEval> p)
    : Presheaf(std::move(sk)), eval_(std::move(p)) {
  levels_.resize(skel().size());
  for (int s = 0; s < skel().size(); ++s) {
    const Tree& t = skel().tree(s);
    std::vector<NerveElt> level;
    NerveElt cur;
    cur.edge_colors.assign(t.n_edges(), -1);
    cur.vertex_ops.assign(t.n_vertices(), -1);
    // vertices become ready when their outgoing edge is colored
    std::function<void(std::vector<int>)> rec = [&](std::vector<int> pending) {
      int v = -1;
      for (size_t i = 0; i < pending.size(); ++i)
        if (pending[i] >= 0) {
          v = pending[i];
          pending[i] = -1;
          break;
        }
      if (v < 0) {
        level.push_back(cur);
        return;
      }
      const auto& ins = t.in_edges(v);
      for (int op : eval_->ops_by_out(cur.edge_colors[t.out_edge(v)], t.valence(v))) {
        auto prof = eval_->profile(op);
        cur.vertex_ops[v] = op;
        for (size_t i = 0; i < ins.size(); ++i) cur.edge_colors[ins[i]] = prof[i];
        auto next = pending;
        for (int in : ins) {
          int w = t.top(in);
          if (w >= 0) next.push_back(w);
        }
        rec(next);
        for (int in : ins) cur.edge_colors[in] = -1;
        cur.vertex_ops[v] = -1;
      }
    };
    for (int c = 0; c < eval_->n_colors(); ++c) {
      cur.edge_colors[t.root()] = c;
      std::vector<int> pending;
      int w = t.top(t.root());
      if (w >= 0) pending.push_back(w);
      rec(pending);
      cur.edge_colors[t.root()] = -1;
    }
    std::sort(level.begin(), level.end());
    levels_[s] = std::move(level);
  }
}

int NervePresheaf::size(int s) const { return static_cast<int>(levels_[s].size()); }

int NervePresheaf::index_of(int s, const NerveElt& e) const {
  auto& lv = levels_[s];
  auto it = std::lower_bound(lv.begin(), lv.end(), e);
  if (it == lv.end() || !(*it == e)) {
    if (!eval_->complete())
      throw TruncationError("nerve action left the truncated enumeration");
    throw std::logic_error("nerve element not found");
  }
  return static_cast<int>(it - lv.begin());
}

NerveElt NervePresheaf::pull(const OmegaMorphism& f, const NerveElt& x) const {
  const Tree& r = f.src();
  const Tree& s = f.tgt();
  NerveElt out;
  out.edge_colors.resize(r.n_edges());
  for (int e = 0; e < r.n_edges(); ++e) out.edge_colors[e] = x.edge_colors[f.map_edge(e)];
  for (int v = 0; v < r.n_vertices(); ++v) {
    const VertexImage& img = f.vertex_image(v);
    std::set<int> verts(img.subtree_vertices.begin(), img.subtree_vertices.end());
    // evaluate the image subtree bottom-up; returns (op, leaf edges in
    // traversal order)
    std::function<std::pair<int, std::vector<int>>(int)> ev =
        [&](int e) -> std::pair<int, std::vector<int>> {
      int w = s.top(e);
      if (w < 0 || !verts.count(w)) return {eval_->identity(x.edge_colors[e]), {e}};
      std::vector<int> args, leaves;
      for (int in : s.in_edges(w)) {
        auto [op, ls] = ev(in);
        args.push_back(op);
        leaves.insert(leaves.end(), ls.begin(), ls.end());
      }
      return {eval_->compose_op(x.vertex_ops[w], args), leaves};
    };
    auto [op, leaves] = ev(img.root_edge);
    std::vector<int> tau(leaves.size());
    for (size_t j = 0; j < img.input_leaf.size(); ++j) {
      auto it = std::find(leaves.begin(), leaves.end(), img.input_leaf[j]);
      if (it == leaves.end()) throw std::logic_error("pull: leaf mismatch");
      tau[j] = static_cast<int>(it - leaves.begin()) + 1;
    }
    out.vertex_ops.push_back(eval_->sigma_op(op, tau));
  }
  return out;
}

int NervePresheaf::act(int r, int s, int mor, int x) const {
  return index_of(r, pull(skel().hom(r, s)[mor], levels_[s][x]));
}

int NervePresheaf::basepoint(int s) const {
  if (eval_->n_colors() != 1 || !skel().is_linear(s)) return -1;
  const Tree& t = skel().tree(s);
  NerveElt e;
  e.edge_colors.assign(t.n_edges(), 0);
  e.vertex_ops.assign(t.n_vertices(), eval_->identity(0));
  return index_of(s, e);
}

std::string NervePresheaf::label(int s, int x) const {
  const NerveElt& e = levels_[s][x];
  const Tree& t = skel().tree(s);
  std::string out;
  if (eval_->n_colors() > 1) {
    for (int i = 0; i < t.n_edges(); ++i)
      out += t.edge_name(i) + "=" + std::to_string(e.edge_colors[i]) + ";";
  }
  for (int v = 0; v < t.n_vertices(); ++v)
    out += t.vertex_name(v) + "=" + eval_->op_label(e.vertex_ops[v]) + ";";
  if (out.empty()) out = "pt";
  return out;
}

std::shared_ptr<const NervePresheaf> nerve_of_free(std::shared_ptr<const Skeleton> sk,
                                                   const GradedSet& m, int elt_bound) {
  return std::make_shared<NervePresheaf>(sk, std::make_shared<FreeOperadEval>(m, elt_bound));
}

std::vector<Element> assignment_of(const NervePresheaf& n, int s, int x) {
  auto* fe = dynamic_cast<const FreeOperadEval*>(&n.eval());
  if (!fe) throw std::logic_error("assignment_of needs a free single-colored nerve");
  std::vector<Element> out;
  for (int op : n.elt(s, x).vertex_ops) out.push_back(fe->element_of(op));
  return out;
}

int index_of_assignment(const NervePresheaf& n, int s, const std::vector<Element>& a) {
  auto* fe = dynamic_cast<const FreeOperadEval*>(&n.eval());
  if (!fe) throw std::logic_error("index_of_assignment needs a free single-colored nerve");
  NerveElt e;
  e.edge_colors.assign(n.skel().tree(s).n_edges(), 0);
  for (auto& el : a) e.vertex_ops.push_back(fe->op_of(el));
  return n.index_of(s, e);
}

std::vector<Element> pull_assignment(const GradedSet& m, const OmegaMorphism& f,
                                     const std::vector<Element>& x) {
  MapSpec as_spec;
  as_spec.source = vertex_graded_set(f.tgt());
  as_spec.target = m;
  as_spec.images = x;
  std::vector<Element> out;
  for (int v = 0; v < f.src().n_vertices(); ++v)
    out.push_back(apply_spec(as_spec, vertex_image_term(f, v)));
  for (int v = 0; v < f.src().n_vertices(); ++v) out[v].arity = f.src().valence(v);
  return out;
}

// ---------------------------------------------------------------------------

ReducedPresheaf::ReducedPresheaf(PresheafPtr inner)
    : Presheaf(inner->skel_ptr()), inner_(std::move(inner)) {
  const Skeleton& sk = skel();
  int eta = sk.eta_index();
  proj_.resize(sk.size());
  lift_.resize(sk.size());
  reduced_size_.resize(sk.size());
  for (int s = 0; s < sk.size(); ++s) {
    int n = inner_->size(s);
    if (!sk.is_linear(s)) {
      proj_[s].resize(n);
      lift_[s].resize(n);
      for (int i = 0; i < n; ++i) proj_[s][i] = lift_[s][i] = i;
      reduced_size_[s] = n;
      continue;
    }
    const auto& to_eta = sk.hom(s, eta);
    if (to_eta.size() != 1) throw std::logic_error("linear tree with several maps to eta");
    std::set<int> collapsed;
    for (int x = 0; x < inner_->size(eta); ++x) collapsed.insert(inner_->act(s, eta, 0, x));
    proj_[s].assign(n, -1);
    lift_[s].assign(1, -1);
    for (int i : collapsed) {
      proj_[s][i] = 0;
      lift_[s][0] = i;
    }
    for (int i = 0; i < n; ++i)
      if (proj_[s][i] < 0) {
        proj_[s][i] = static_cast<int>(lift_[s].size());
        lift_[s].push_back(i);
      }
    reduced_size_[s] = static_cast<int>(lift_[s].size());
  }
}

int ReducedPresheaf::size(int s) const { return reduced_size_[s]; }
int ReducedPresheaf::project(int s, int inner_idx) const { return proj_[s][inner_idx]; }
int ReducedPresheaf::lift(int s, int reduced_idx) const { return lift_[s][reduced_idx]; }

int ReducedPresheaf::act(int r, int s, int mor, int x) const {
  if (skel().is_linear(s) && x == 0) {
    if (!skel().is_linear(r)) throw std::logic_error("map from nonlinear to linear tree");
    return 0;
  }
  int xi = lift_[s][x];
  return proj_[r][inner_->act(r, s, mor, xi)];
}

std::string ReducedPresheaf::label(int s, int x) const {
  if (skel().is_linear(s) && x == 0) return "*";
  return inner_->label(s, lift_[s][x]);
}

std::shared_ptr<const ReducedPresheaf> reduce(PresheafPtr x) {
  return std::make_shared<ReducedPresheaf>(std::move(x));
}

// ---------------------------------------------------------------------------

ProductWithSet::ProductWithSet(PresheafPtr x, int k) : Presheaf(x->skel_ptr()), x_(std::move(x)), k_(k) {
  if (k <= 0) throw std::invalid_argument("product with an empty set is the empty presheaf");
}

int ProductWithSet::act(int r, int s, int mor, int e) const {
  return x_->act(r, s, mor, e / k_) * k_ + e % k_;
}

std::string ProductWithSet::label(int s, int e) const {
  return "(" + x_->label(s, e / k_) + "," + std::to_string(e % k_) + ")";
}

TensorPresheaf::TensorPresheaf(std::shared_ptr<const ReducedPresheaf> x, int k)
    : Presheaf(x->skel_ptr()), x_(std::move(x)), k_(k) {
  if (k <= 0) throw std::invalid_argument("tensor with an empty set");
}

int TensorPresheaf::size(int s) const {
  int n = x_->size(s);
  return skel().is_linear(s) ? 1 + (n - 1) * k_ : n * k_;
}

int TensorPresheaf::encode(int s, int x, int c) const {
  if (!skel().is_linear(s)) return x * k_ + c;
  return x == 0 ? 0 : 1 + (x - 1) * k_ + c;
}

std::pair<int, int> TensorPresheaf::decode(int s, int e) const {
  if (!skel().is_linear(s)) return {e / k_, e % k_};
  if (e == 0) return {0, 0};
  return {1 + (e - 1) / k_, (e - 1) % k_};
}

int TensorPresheaf::act(int r, int s, int mor, int e) const {
  auto [x, c] = decode(s, e);
  if (skel().is_linear(s) && x == 0) return 0;
  int y = x_->act(r, s, mor, x);
  if (skel().is_linear(r) && y == 0) return 0;
  return encode(r, y, c);
}

std::string TensorPresheaf::label(int s, int e) const {
  auto [x, c] = decode(s, e);
  if (skel().is_linear(s) && x == 0) return "*";
  return "(" + x_->label(s, x) + "," + std::to_string(c) + ")";
}

ReducedCoproduct::ReducedCoproduct(std::vector<std::shared_ptr<const ReducedPresheaf>> parts)
    : Presheaf(parts.at(0)->skel_ptr()), parts_(std::move(parts)) {}

int ReducedCoproduct::size(int s) const {
  int n = 0;
  for (auto& p : parts_) n += p->size(s);
  if (skel().is_linear(s)) n = 1 + n - static_cast<int>(parts_.size());
  return n;
}

int ReducedCoproduct::act(int r, int s, int mor, int e) const {
  bool lin_s = skel().is_linear(s), lin_r = skel().is_linear(r);
  if (lin_s && e == 0) return 0;
  int part = 0, local = -1;
  if (lin_s) {
    int off = e - 1;
    for (size_t p = 0; p < parts_.size(); ++p) {
      int m = parts_[p]->size(s) - 1;
      if (off < m) {
        part = static_cast<int>(p);
        local = off + 1;
        break;
      }
      off -= m;
    }
  } else {
    int off = e;
    for (size_t p = 0; p < parts_.size(); ++p) {
      int m = parts_[p]->size(s);
      if (off < m) {
        part = static_cast<int>(p);
        local = off;
        break;
      }
      off -= m;
    }
  }
  int y = parts_[part]->act(r, s, mor, local);
  if (lin_r && y == 0) return 0;
  int base = lin_r ? 1 : 0;
  for (int p = 0; p < part; ++p) base += parts_[p]->size(r) - (lin_r ? 1 : 0);
  return base + y - (lin_r ? 1 : 0);
}

// ---------------------------------------------------------------------------

TabledPresheaf::TabledPresheaf(std::shared_ptr<const Skeleton> sk, std::vector<int> sizes,
                               std::vector<std::vector<std::string>> labels)
    : Presheaf(std::move(sk)), sizes_(std::move(sizes)), labels_(std::move(labels)) {}

void TabledPresheaf::set_table(const Skeleton::MorKey& k, std::vector<int> table) {
  if (static_cast<int>(table.size()) != sizes_[k.s])
    throw std::invalid_argument("action table has the wrong size");
  for (int y : table)
    if (y < 0 || y >= sizes_[k.r]) throw std::invalid_argument("action table value out of range");
  tables_[{k.r, k.s, k.idx}] = std::move(table);
}

bool TabledPresheaf::has_table(const Skeleton::MorKey& k) const {
  return tables_.count({k.r, k.s, k.idx}) > 0;
}

int TabledPresheaf::act(int r, int s, int mor, int x) const {
  auto it = tables_.find({r, s, mor});
  if (it == tables_.end()) {
    saturate();
    it = tables_.find({r, s, mor});
    if (it == tables_.end()) throw std::logic_error("action table missing after saturation");
  }
  return it->second[x];
}

std::string TabledPresheaf::label(int s, int x) const {
  if (s < static_cast<int>(labels_.size()) && x < static_cast<int>(labels_[s].size()))
    return labels_[s][x];
  return Presheaf::label(s, x);
}

void TabledPresheaf::saturate() const {
  const Skeleton& sk = skel();
  // identities
  for (int s = 0; s < sk.size(); ++s) {
    int idx = sk.find_morphism(s, s, OmegaMorphism::identity(sk.tree_ptr(s)).edge_map());
    auto key = std::make_tuple(s, s, idx);
    if (!tables_.count(key)) {
      std::vector<int> id(sizes_[s]);
      for (int i = 0; i < sizes_[s]; ++i) id[i] = i;
      tables_[key] = id;
    }
  }
  auto gens = sk.generators();
  bool grew = true;
  while (grew) {
    grew = false;
    for (int r = 0; r < sk.size(); ++r)
      for (int s = 0; s < sk.size(); ++s) {
        const auto& hs = sk.hom(r, s);
        for (int m = 0; m < static_cast<int>(hs.size()); ++m) {
          if (tables_.count({r, s, m})) continue;
          // peel a generator off the source side: m = g o f
          for (auto& g : gens) {
            if (g.key.r != r) continue;
            auto fit = tables_.find({g.key.r, g.key.s, g.key.idx});
            if (fit == tables_.end()) continue;
            int t = g.key.s;
            const auto& f_em = sk.mor(g.key).edge_map();
            for (int gm = 0; gm < sk.hom_size(t, s); ++gm) {
              auto git = tables_.find({t, s, gm});
              if (git == tables_.end()) continue;
              const auto& g_em = sk.hom(t, s)[gm].edge_map();
              // compare composite edge maps
              bool eq = true;
              const auto& m_em = hs[m].edge_map();
              for (size_t e = 0; e < f_em.size() && eq; ++e)
                eq = (g_em[f_em[e]] == m_em[e]);
              if (!eq) continue;
              std::vector<int> table(sizes_[s]);
              for (int x = 0; x < sizes_[s]; ++x) table[x] = fit->second[git->second[x]];
              tables_[{r, s, m}] = std::move(table);
              grew = true;
              break;
            }
            if (tables_.count({r, s, m})) break;
          }
        }
      }
  }
}

// ---------------------------------------------------------------------------

int SubPresheaf::level_size(int s) const {
  int n = 0;
  for (char c : mask[s]) n += c ? 1 : 0;
  return n;
}

long SubPresheaf::total() const {
  long n = 0;
  for (int s = 0; s < static_cast<int>(mask.size()); ++s) n += level_size(s);
  return n;
}

SubPresheaf empty_sub(PresheafPtr parent) {
  SubPresheaf sub;
  sub.mask.resize(parent->skel().size());
  for (int s = 0; s < parent->skel().size(); ++s) sub.mask[s].assign(parent->size(s), 0);
  sub.parent = std::move(parent);
  return sub;
}

SubPresheaf full_sub(PresheafPtr parent) {
  SubPresheaf sub = empty_sub(parent);
  for (auto& lv : sub.mask) std::fill(lv.begin(), lv.end(), 1);
  return sub;
}

SubPresheaf generate_sub(PresheafPtr parent, const std::vector<std::pair<int, int>>& seeds) {
  SubPresheaf sub = empty_sub(parent);
  const Skeleton& sk = parent->skel();
  std::vector<std::pair<int, int>> work;
  for (auto& [s, x] : seeds)
    if (!sub.mask[s][x]) {
      sub.mask[s][x] = 1;
      work.push_back({s, x});
    }
  while (!work.empty()) {
    auto [s, x] = work.back();
    work.pop_back();
    for (int r = 0; r < sk.size(); ++r) {
      int n = sk.hom_size(r, s);
      for (int m = 0; m < n; ++m) {
        int y = parent->action_table({r, s, m})[x];
        if (!sub.mask[r][y]) {
          sub.mask[r][y] = 1;
          work.push_back({r, y});
        }
      }
    }
  }
  return sub;
}

bool sub_contains(const SubPresheaf& a, const SubPresheaf& b) {
  for (size_t s = 0; s < a.mask.size(); ++s)
    for (size_t x = 0; x < a.mask[s].size(); ++x)
      if (b.mask[s][x] && !a.mask[s][x]) return false;
  return true;
}

SubPresheaf sub_union(const SubPresheaf& a, const SubPresheaf& b) {
  SubPresheaf out = a;
  for (size_t s = 0; s < out.mask.size(); ++s)
    for (size_t x = 0; x < out.mask[s].size(); ++x) out.mask[s][x] |= b.mask[s][x];
  return out;
}

std::shared_ptr<const TabledPresheaf> as_presheaf(const SubPresheaf& sub) {
  const Skeleton& sk = sub.parent->skel();
  std::vector<std::vector<int>> local(sk.size());  // parent idx -> local idx
  std::vector<int> sizes(sk.size(), 0);
  std::vector<std::vector<std::string>> labels(sk.size());
  for (int s = 0; s < sk.size(); ++s) {
    local[s].assign(sub.parent->size(s), -1);
    for (int x = 0; x < sub.parent->size(s); ++x)
      if (sub.mask[s][x]) {
        local[s][x] = sizes[s]++;
        labels[s].push_back(sub.parent->label(s, x));
      }
  }
  auto out = std::make_shared<TabledPresheaf>(sub.parent->skel_ptr(), sizes, labels);
  for (int r = 0; r < sk.size(); ++r)
    for (int s = 0; s < sk.size(); ++s) {
      int n = sk.hom_size(r, s);
      for (int m = 0; m < n; ++m) {
        const auto& pt = sub.parent->action_table({r, s, m});
        std::vector<int> table(sizes[s]);
        for (int x = 0; x < sub.parent->size(s); ++x)
          if (sub.mask[s][x]) table[local[s][x]] = local[r][pt[x]];
        out->set_table({r, s, m}, std::move(table));
      }
    }
  return out;
}

// ---------------------------------------------------------------------------

namespace {
// morphism from the canonical form of a subtree into the parent tree
std::pair<int, OmegaMorphism> canonical_embedding(const Skeleton& sk,
                                                  std::shared_ptr<const Tree> parent,
                                                  const Tree::Subtree& sub) {
  Tree mat = parent->materialize(sub);
  auto [rep, emap] = canonicalize(mat);
  int ridx = sk.index_of_code(rep.canonical_code());
  if (ridx < 0) throw std::logic_error("subtree not in skeleton");
  std::vector<int> inv(rep.n_edges());
  for (int e = 0; e < mat.n_edges(); ++e) inv[emap[e]] = e;
  std::vector<int> em(rep.n_edges());
  for (int e = 0; e < rep.n_edges(); ++e) em[e] = parent->edge_index(mat.edge_name(inv[e]));
  return {ridx, OmegaMorphism(sk.tree_ptr(ridx), parent, em)};
}
}  // namespace

SubPresheaf segal_core(std::shared_ptr<const Skeleton> sk, int s) {
  auto rep = representable(sk, s);
  std::vector<std::pair<int, int>> seeds;
  auto parent = sk->tree_ptr(s);
  for (auto& sub : parent->subtrees()) {
    if (sub.vertices.size() != 1) continue;
    auto [cidx, m] = canonical_embedding(*sk, parent, sub);
    seeds.push_back({cidx, sk->find_morphism(cidx, s, m.edge_map())});
  }
  return generate_sub(rep, seeds);
}

SubPresheaf external_boundary(std::shared_ptr<const ReducedPresheaf> omega_s_reduced, int s) {
  auto sk = omega_s_reduced->skel_ptr();
  const Tree& t = sk->tree(s);
  if (t.n_vertices() < 1) throw std::invalid_argument("external boundary needs a vertex");
  auto* rep = dynamic_cast<const RepresentablePresheaf*>(&omega_s_reduced->inner());
  if (!rep || rep->target() != s) throw std::invalid_argument("expected reduce(representable(s))");
  std::vector<std::pair<int, int>> seeds;
  auto parent = sk->tree_ptr(s);
  for (auto& sub : parent->subtrees()) {
    if (static_cast<int>(sub.vertices.size()) != t.n_vertices() - 1) continue;
    auto [ridx, m] = canonical_embedding(*sk, parent, sub);
    int idx = sk->find_morphism(ridx, s, m.edge_map());
    seeds.push_back({ridx, omega_s_reduced->project(ridx, idx)});
  }
  return generate_sub(omega_s_reduced, seeds);
}

// ---------------------------------------------------------------------------

NormalityReport is_normal(const SubPresheaf& x) {
  const Skeleton& sk = x.parent->skel();
  NormalityReport rep;
  for (int s = 0; s < sk.size(); ++s) {
    for (int ai : sk.automorphism_indices(s)) {
      const auto& alpha = sk.hom(s, s)[ai];
      bool is_id = true;
      for (int e = 0; e < static_cast<int>(alpha.edge_map().size()); ++e)
        is_id &= alpha.edge_map()[e] == e;
      if (is_id) continue;
      const auto& table = x.parent->action_table({s, s, ai});
      for (int y = 0; y < x.parent->size(s); ++y) {
        if (x.mask[s][y]) continue;
        if (table[y] == y) {
          rep.normal = false;
          rep.witness_tree = s;
          rep.witness_auto = ai;
          rep.witness_elt = y;
          return rep;
        }
      }
    }
  }
  return rep;
}

NormalityReport is_normal_object(PresheafPtr x) { return is_normal(empty_sub(std::move(x))); }

bool check_functorial(const Presheaf& x, const std::vector<int>& trees) {
  const Skeleton& sk = x.skel();
  std::vector<char> in_scope(sk.size(), 0);
  for (int s : trees) in_scope[s] = 1;
  for (int s : trees) {
    int idx = sk.find_morphism(s, s, OmegaMorphism::identity(sk.tree_ptr(s)).edge_map());
    for (int e = 0; e < x.size(s); ++e)
      if (x.act(s, s, idx, e) != e) return false;
  }
  // (u o v)* = v* o u* for every generator u and arbitrary v gives the
  // general case by peeling one generator at a time
  for (auto& u : sk.generators()) {
    if (!in_scope[u.key.r] || !in_scope[u.key.s]) continue;
    const auto& ut = x.action_table(u.key);
    for (int r : trees) {
      int nv = sk.hom_size(r, u.key.r);
      for (int v = 0; v < nv; ++v) {
        Skeleton::MorKey vk{r, u.key.r, v};
        auto uv = sk.compose_keys(vk, u.key);
        const auto& vt = x.action_table(vk);
        const auto& uvt = x.action_table(uv);
        for (int e = 0; e < x.size(u.key.s); ++e)
          if (uvt[e] != vt[ut[e]]) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

struct HomSearch {
  const Presheaf& X;
  const Presheaf& Y;
  bool bijective;
  long limit;
  std::vector<NatTrans> found;
  NatTrans cur;
  std::vector<std::vector<char>> used;

  bool consistent(int s, int x, int val) {
    const Skeleton& sk = X.skel();
    for (int r = 0; r < sk.size(); ++r) {
      int n = sk.hom_size(r, s);
      for (int m = 0; m < n; ++m) {
        int y = X.action_table({r, s, m})[x];
        if (cur[r].size() > static_cast<size_t>(y) && cur[r][y] >= 0)
          if (cur[r][y] != Y.action_table({r, s, m})[val]) return false;
      }
      // morphisms out of s into r act the other way: f* : X_r -> X_s
      int n2 = sk.hom_size(s, r);
      for (int m = 0; m < n2; ++m) {
        if (X.size(r) == 0) continue;
        const auto& xt = X.action_table({s, r, m});
        const auto& yt = Y.action_table({s, r, m});
        for (int xr = 0; xr < X.size(r); ++xr) {
          if (cur[r].size() <= static_cast<size_t>(xr) || cur[r][xr] < 0) continue;
          if (xt[xr] == x && yt[cur[r][xr]] != val) return false;
        }
      }
    }
    return true;
  }

  void rec(int s, int x) {
    const Skeleton& sk = X.skel();
    while (s < sk.size() && x >= X.size(s)) {
      ++s;
      x = 0;
    }
    if (s == sk.size()) {
      found.push_back(cur);
      return;
    }
    if (limit >= 0 && static_cast<long>(found.size()) >= limit) return;
    for (int val = 0; val < Y.size(s); ++val) {
      if (bijective && used[s][val]) continue;
      if (!consistent(s, x, val)) continue;
      cur[s][x] = val;
      if (bijective) used[s][val] = 1;
      rec(s, x + 1);
      cur[s][x] = -1;
      if (bijective) used[s][val] = 0;
      if (limit >= 0 && static_cast<long>(found.size()) >= limit) return;
    }
  }
};

}  // namespace

std::vector<NatTrans> hom_presheaf(const Presheaf& x, const Presheaf& y, long limit) {
  HomSearch hs{x, y, false, limit, {}, {}, {}};
  hs.cur.resize(x.skel().size());
  for (int s = 0; s < x.skel().size(); ++s) hs.cur[s].assign(x.size(s), -1);
  hs.rec(0, 0);
  return hs.found;
}

bool natural_iso_exists(const Presheaf& x, const Presheaf& y) {
  for (int s = 0; s < x.skel().size(); ++s)
    if (x.size(s) != y.size(s)) return false;
  HomSearch hs{x, y, true, 1, {}, {}, {}};
  hs.cur.resize(x.skel().size());
  hs.used.resize(x.skel().size());
  for (int s = 0; s < x.skel().size(); ++s) {
    hs.cur[s].assign(x.size(s), -1);
    hs.used[s].assign(y.size(s), 0);
  }
  hs.rec(0, 0);
  return !hs.found.empty();
}

bool is_natural_iso(const Presheaf& x, const Presheaf& y, const NatTrans& t) {
  const Skeleton& sk = x.skel();
  for (int s = 0; s < sk.size(); ++s) {
    if (x.size(s) != y.size(s)) return false;
    std::vector<char> hit(y.size(s), 0);
    for (int e = 0; e < x.size(s); ++e) {
      if (t[s][e] < 0 || t[s][e] >= y.size(s) || hit[t[s][e]]) return false;
      hit[t[s][e]] = 1;
    }
  }
  for (int r = 0; r < sk.size(); ++r)
    for (int s = 0; s < sk.size(); ++s) {
      int n = sk.hom_size(r, s);
      for (int m = 0; m < n; ++m) {
        if (x.size(s) == 0) continue;
        const auto& xt = x.action_table({r, s, m});
        const auto& yt = y.action_table({r, s, m});
        for (int e = 0; e < x.size(s); ++e)
          if (t[r][xt[e]] != yt[t[s][e]]) return false;
      }
    }
  return true;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const TableColoredEval> terminal_operad_eval(int max_arity) {
  std::vector<TableColoredEval::OpData> ops;
  for (int k = 0; k <= max_arity; ++k) {
    std::vector<int> prof(k, 0);
    ops.push_back({"u" + std::to_string(k), prof, 0});
  }
  if (max_arity < 1) throw std::invalid_argument("terminal operad needs arity >= 1");
  auto eval = std::make_shared<TableColoredEval>(1, ops, std::vector<int>{1});
  // gamma u_k(u_{j1}..u_{jk}) = u_{j1+..+jk}; the symmetric action is trivial
  std::function<void(int, std::vector<int>, int)> gen = [&](int k, std::vector<int> acc,
                                                            int tot) {
    if (static_cast<int>(acc.size()) == k) {
      if (tot <= max_arity) eval->set_gamma(k, acc, tot);
      return;
    }
    for (int j = 0; j + tot <= max_arity; ++j) {
      acc.push_back(j);
      gen(k, acc, tot + j);
      acc.pop_back();
    }
  };
  for (int k = 0; k <= max_arity; ++k) gen(k, {}, 0);
  for (int k = 2; k <= max_arity; ++k) {
    std::vector<int> p(k);
    for (int i = 0; i < k; ++i) p[i] = i + 1;
    do {
      eval->set_sigma(k, p, k);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return eval;
}

bool nerve_matches_representable(std::shared_ptr<const Skeleton> sk, int s) {
  auto nerve = std::make_shared<NervePresheaf>(sk, std::make_shared<TreeOperadEval>(sk->tree_ptr(s)));
  auto rep = representable(sk, s);
  NatTrans t(sk->size());
  for (int r = 0; r < sk->size(); ++r) {
    if (nerve->size(r) != rep->size(r)) return false;
    t[r].resize(nerve->size(r));
    for (int x = 0; x < nerve->size(r); ++x)
      t[r][x] = sk->find_morphism(r, s, nerve->elt(r, x).edge_colors);
  }
  return is_natural_iso(*nerve, *rep, t);
}

bool tensor_identity_holds(std::shared_ptr<const Skeleton> sk, int s, int k) {
  return tensor_identity_holds(reduce(representable(sk, s)), k);
}

bool tensor_identity_holds(std::shared_ptr<const ReducedPresheaf> x, int k) {
  auto sk = x->skel_ptr();
  auto tensor = std::make_shared<TensorPresheaf>(x, k);
  auto z_star = reduce(std::make_shared<ProductWithSet>(x, k));
  NatTrans t(sk->size());
  for (int q = 0; q < sk->size(); ++q) {
    if (z_star->size(q) != tensor->size(q)) return false;
    t[q].resize(z_star->size(q));
    for (int e = 0; e < z_star->size(q); ++e) {
      if (sk->is_linear(q) && e == 0) {
        t[q][e] = 0;
        continue;
      }
      int inner = z_star->lift(q, e);
      int xi = inner / k, c = inner % k;
      if (sk->is_linear(q)) {
        if (xi == 0) return false;  // the collapsed image is the basepoint block
        t[q][e] = 1 + (xi - 1) * k + c;
      } else {
        t[q][e] = xi * k + c;
      }
    }
  }
  return is_natural_iso(*z_star, *tensor, t);
}

SegalReport check_strict_segal(PresheafPtr x, int jobs) {
  const Skeleton& sk = x->skel();
  SegalReport report;
  report.truncated = x->truncated();
  int eta = sk.eta_index();
  report.eta_elements = x->size(eta);
  report.eta_bijective = (x->size(eta) == 1);

  std::vector<int> targets;
  for (int s = 0; s < sk.size(); ++s)
    if (s != eta) targets.push_back(s);
  std::vector<SegalLevel> levels(targets.size());

  parallel_for_indexed(static_cast<int>(targets.size()), jobs, [&](int ti) {
    int s = targets[ti];
    auto parent = sk.tree_ptr(s);
    // corolla generators of the core
    std::vector<int> cidx;                  // canonical corolla index per vertex
    std::vector<Skeleton::MorKey> mv;       // inclusion morphism per vertex
    for (auto& sub : parent->subtrees()) {
      if (sub.vertices.size() != 1) continue;
      auto [ci, m] = canonical_embedding(sk, parent, sub);
      cidx.push_back(ci);
      mv.push_back({ci, s, sk.find_morphism(ci, s, m.edge_map())});
    }
    int k = static_cast<int>(cidx.size());
    // coincidence constraints: for r and (v,g),(w,h) with m_v o g == m_w o h
    struct Constraint {
      int r, v, gw, w, hw;  // gw in hom(r,c_v), hw in hom(r,c_w)
    };
    std::vector<Constraint> constraints;
    for (int r = 0; r < sk.size(); ++r) {
      std::map<std::vector<int>, std::vector<std::pair<int, int>>> buckets;
      for (int v = 0; v < k; ++v) {
        const auto& mvm = sk.mor(mv[v]);
        int n = sk.hom_size(r, cidx[v]);
        for (int g = 0; g < n; ++g) {
          const auto& gm = sk.hom(r, cidx[v])[g];
          std::vector<int> em(gm.edge_map().size());
          for (size_t e = 0; e < em.size(); ++e) em[e] = mvm.map_edge(gm.map_edge(static_cast<int>(e)));
          buckets[em].push_back({v, g});
        }
      }
      for (auto& [em, entries] : buckets)
        for (size_t i = 1; i < entries.size(); ++i)
          constraints.push_back(
              {r, entries[0].first, entries[0].second, entries[i].first, entries[i].second});
    }
    // enumerate compatible tuples
    long compatible = 0;
    std::set<std::vector<int>> compat_set;
    std::vector<int> tuple(k, -1);
    std::function<void(int)> rec = [&](int v) {
      if (v == k) {
        for (auto& c : constraints)
          if (x->action_table({c.r, cidx[c.v], c.gw})[tuple[c.v]] !=
              x->action_table({c.r, cidx[c.w], c.hw})[tuple[c.w]])
            return;
        ++compatible;
        compat_set.insert(tuple);
        return;
      }
      for (int val = 0; val < x->size(cidx[v]); ++val) {
        tuple[v] = val;
        rec(v + 1);
      }
      tuple[v] = -1;
    };
    rec(0);
    // restriction map
    std::set<std::vector<int>> image;
    bool injective = true;
    for (int e = 0; e < x->size(s); ++e) {
      std::vector<int> tup(k);
      for (int v = 0; v < k; ++v) tup[v] = x->action_table(mv[v])[e];
      injective &= image.insert(tup).second;
    }
    SegalLevel lv;
    lv.tree = s;
    lv.elements = x->size(s);
    lv.core_maps = compatible;
    lv.bijective = injective && image == compat_set;
    levels[ti] = lv;
  });
  report.levels = levels;
  for (auto& lv : report.levels) report.pass &= lv.bijective;
  return report;
}

}  // namespace dendro

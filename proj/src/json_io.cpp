#include "dendro/json_io.hpp"

#include <fstream>
#include <sstream>

namespace dendro {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json_or_file(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] != '{' && arg[0] != '[') text = read_text_file(arg);
  return json::parse(text);
}

json tree_to_json(const Tree& t) {
  json vs = json::array();
  for (int v = 0; v < t.n_vertices(); ++v) {
    json ins = json::array();
    for (int e : t.in_edges(v)) ins.push_back(t.edge_name(e));
    vs.push_back({{"id", t.vertex_name(v)}, {"out", t.edge_name(t.out_edge(v))}, {"in", ins}});
  }
  return {{"root", t.edge_name(t.root())}, {"vertices", vs}};
}

Tree tree_from_json(const json& j) {
  std::vector<std::tuple<std::string, std::string, std::vector<std::string>>> vs;
  for (auto& v : j.at("vertices")) {
    std::vector<std::string> ins;
    for (auto& e : v.at("in")) ins.push_back(e.get<std::string>());
    vs.push_back({v.at("id").get<std::string>(), v.at("out").get<std::string>(), ins});
  }
  return Tree(j.at("root").get<std::string>(), vs);
}

Tree parse_tree_arg(const std::string& arg) {
  if (arg == "eta") return Tree::eta();
  if (arg.rfind("linear:", 0) == 0) return Tree::linear(std::stoi(arg.substr(7)));
  if (arg.rfind("corolla:", 0) == 0) return Tree::corolla(std::stoi(arg.substr(8)));
  if (arg.rfind("code:", 0) == 0) return tree_from_code(arg.substr(5));
  return tree_from_json(parse_json_or_file(arg));
}

json graded_set_to_json(const GradedSet& g) {
  json gens = json::array();
  for (int i = 0; i < g.size(); ++i)
    gens.push_back({{"name", g.names[i]}, {"valence", g.valences[i]}});
  return {{"gens", gens}};
}

GradedSet graded_set_from_json(const json& j) {
  GradedSet g;
  for (auto& e : j.at("gens")) {
    g.names.push_back(e.at("name").get<std::string>());
    g.valences.push_back(e.at("valence").get<int>());
    if (g.valences.back() < 0) throw std::invalid_argument("negative valence");
  }
  return g;
}

GradedSet parse_gens_arg(const std::string& arg) {
  return graded_set_from_json(parse_json_or_file(arg));
}

json element_to_json(const Element& e, const GradedSet& m) {
  std::function<json(const Element::Node&)> rec = [&](const Element::Node& n) -> json {
    if (n.is_leaf()) return {{"leaf", n.leaf}};
    json args = json::array();
    for (auto& a : n.args) args.push_back(rec(a));
    return {{"op", m.names[n.gen]}, {"args", args}};
  };
  return rec(e.root);
}

Element element_from_json(const json& j, const GradedSet& m) {
  std::function<Element::Node(const json&)> rec = [&](const json& n) -> Element::Node {
    Element::Node out;
    if (n.contains("leaf")) {
      out.leaf = n.at("leaf").get<int>();
      return out;
    }
    out.gen = m.find(n.at("op").get<std::string>());
    for (auto& a : n.at("args")) out.args.push_back(rec(a));
    return out;
  };
  Element e;
  e.root = rec(j);
  int arity = 0;
  std::function<void(const Element::Node&)> count = [&](const Element::Node& n) {
    if (n.is_leaf()) {
      ++arity;
      return;
    }
    for (auto& a : n.args) count(a);
  };
  count(e.root);
  e.arity = arity;
  e.validate(m);
  return e;
}

json presheaf_to_json(const Presheaf& x) {
  const Skeleton& sk = x.skel();
  json levels = json::array();
  for (int s = 0; s < sk.size(); ++s) {
    json elems = json::array();
    for (int e = 0; e < x.size(s); ++e) elems.push_back(x.label(s, e));
    levels.push_back({{"tree", sk.tree(s).canonical_code()}, {"elements", elems}});
  }
  json gens = json::array();
  for (auto& g : sk.generators()) {
    const auto& m = sk.mor(g.key);
    json emap = json::object();
    for (int e = 0; e < m.src().n_edges(); ++e)
      emap[m.src().edge_name(e)] = m.tgt().edge_name(m.map_edge(e));
    std::string kind = g.kind == Skeleton::GenKind::Iso           ? "iso"
                       : g.kind == Skeleton::GenKind::Coface      ? "coface"
                                                                  : "codegeneracy";
    json table = json::array();
    for (int e = 0; e < x.size(g.key.s); ++e) table.push_back(x.act_key(g.key, e));
    gens.push_back({{"kind", kind},
                    {"source", sk.tree(g.key.r).canonical_code()},
                    {"target", sk.tree(g.key.s).canonical_code()},
                    {"edge_map", emap},
                    {"table", table}});
  }
  return {{"skeleton", {{"max_vertices", sk.max_vertices}, {"max_valence", sk.max_valence}}},
          {"levels", levels},
          {"action", gens},
          {"truncated", x.truncated()}};
}

std::shared_ptr<TabledPresheaf> presheaf_from_json(const json& j) {
  auto sk = std::make_shared<Skeleton>(j.at("skeleton").at("max_vertices").get<int>(),
                                       j.at("skeleton").at("max_valence").get<int>());
  std::vector<int> sizes(sk->size(), 0);
  std::vector<std::vector<std::string>> labels(sk->size());
  for (auto& lv : j.at("levels")) {
    int s = sk->index_of_code(lv.at("tree").get<std::string>());
    if (s < 0) throw std::invalid_argument("unknown tree code in presheaf levels");
    for (auto& e : lv.at("elements")) labels[s].push_back(e.get<std::string>());
    sizes[s] = static_cast<int>(labels[s].size());
  }
  auto out = std::make_shared<TabledPresheaf>(sk, sizes, labels);
  for (auto& g : j.at("action")) {
    int r = sk->index_of_code(g.at("source").get<std::string>());
    int s = sk->index_of_code(g.at("target").get<std::string>());
    if (r < 0 || s < 0) throw std::invalid_argument("unknown tree code in action table");
    std::map<std::string, std::string> names;
    for (auto& [k, v] : g.at("edge_map").items()) names[k] = v.get<std::string>();
    auto m = OmegaMorphism::from_names(sk->tree_ptr(r), sk->tree_ptr(s), names);
    int idx = sk->find_morphism(r, s, m.edge_map());
    std::vector<int> table;
    for (auto& t : g.at("table")) table.push_back(t.get<int>());
    out->set_table({r, s, idx}, std::move(table));
  }
  return out;
}

json group_to_json(const FiniteGroup& g) {
  return {{"n", g.n}, {"e", g.e}, {"mul", g.mul}, {"name", g.name}};
}

FiniteGroup group_from_json(const json& j) {
  FiniteGroup g;
  g.n = j.at("n").get<int>();
  g.e = j.at("e").get<int>();
  g.mul = j.at("mul").get<std::vector<std::vector<int>>>();
  if (j.contains("name")) g.name = j.at("name").get<std::string>();
  g.validate();
  return g;
}

json magma_to_json(const PointedMagma& m) {
  return {{"n", m.n}, {"e", m.e}, {"bracket", m.bracket}};
}

PointedMagma magma_from_json(const json& j) {
  PointedMagma m;
  m.n = j.at("n").get<int>();
  m.e = j.at("e").get<int>();
  m.bracket = j.at("bracket").get<std::vector<std::vector<int>>>();
  if (static_cast<int>(m.bracket.size()) != m.n) throw std::invalid_argument("bracket size");
  for (auto& row : m.bracket) {
    if (static_cast<int>(row.size()) != m.n) throw std::invalid_argument("bracket row size");
    for (int x : row)
      if (x < 0 || x >= m.n) throw std::invalid_argument("bracket value out of range");
  }
  return m;
}

GroupActionOnOperad group_action_from_json(const json& j) {
  GroupActionOnOperad a;
  a.group = group_from_json(j.at("group"));
  a.operad.sizes = j.at("operad_sizes").get<std::vector<long>>();
  a.operad.arity_bound = static_cast<int>(a.operad.sizes.size()) - 1;
  a.operad.name = j.value("operad_name", "P");
  a.act = j.at("act").get<std::vector<std::vector<std::vector<int>>>>();
  return a;
}

CatActionOnColoredOperad cat_action_from_json(const json& j) {
  CatActionOnColoredOperad a;
  const json& c = j.at("category");
  a.cat.n_objects = c.at("objects").get<int>();
  for (auto& m : c.at("morphisms"))
    a.cat.mor.push_back({m.at("s").get<int>(), m.at("t").get<int>()});
  a.cat.identity = c.at("identity").get<std::vector<int>>();
  for (auto& e : c.at("comp"))
    a.cat.comp[{e.at(0).get<int>(), e.at(1).get<int>()}] = e.at(2).get<int>();
  a.cat.validate();

  const json& p = j.at("operad");
  std::vector<TableColoredEval::OpData> ops;
  for (auto& o : p.at("ops"))
    ops.push_back({o.at("name").get<std::string>(), o.at("profile").get<std::vector<int>>(),
                   o.at("out").get<int>()});
  auto eval = std::make_shared<TableColoredEval>(p.at("colors").get<int>(), ops,
                                                 p.at("identities").get<std::vector<int>>());
  if (p.contains("sigma"))
    for (auto& e : p.at("sigma")) {
      eval->set_sigma(e.at("op").get<int>(), e.at("perm").get<std::vector<int>>(),
                      e.at("result").get<int>());
      a.sigma_entries.push_back(
          {{e.at("op").get<int>(), e.at("perm").get<std::vector<int>>()}, e.at("result").get<int>()});
    }
  if (p.contains("gamma"))
    for (auto& e : p.at("gamma")) {
      eval->set_gamma(e.at("op").get<int>(), e.at("args").get<std::vector<int>>(),
                      e.at("result").get<int>());
      a.gamma_entries.push_back(
          {{e.at("op").get<int>(), e.at("args").get<std::vector<int>>()}, e.at("result").get<int>()});
    }
  a.operad = eval;
  a.mu = j.at("mu").get<std::vector<int>>();
  for (auto& e : j.at("act"))
    a.act[{e.at(0).get<int>(), e.at(1).get<int>()}] = e.at(2).get<int>();
  return a;
}

json hall_report_to_json(const HallReport& r) {
  json out = {{"relations_hold", r.relations_hold},
              {"group_axioms_hold", r.group_axioms_hold},
              {"bracket_recovered", r.bracket_recovered}};
  if (!r.relations_hold) {
    out["failed_relation"] = r.failed_relation;
    out["witness"] = r.witness;
  }
  if (r.group) out["group"] = group_to_json(*r.group);
  return out;
}

json hall_search_to_json(const HallSearchReport& r) {
  return {{"order", r.order},
          {"tables_checked", r.tables_checked},
          {"passing", r.passing},
          {"all_extract_to_groups", r.all_extract_to_groups},
          {"every_group_arises", r.every_group_arises},
          {"groups_found", r.groups_found}};
}

json kan_report_to_json(const KanReport& r) {
  json w = json::array();
  for (auto& [a, b] : r.witnesses) w.push_back({{"element", a}, {"hom", b}});
  return {{"classes", r.classes},
          {"hom_count", r.hom_count},
          {"bijective", r.bijective},
          {"upsilon_constant", r.upsilon_constant},
          {"injective", r.injective},
          {"surjective", r.surjective},
          {"zigzag_ok", r.zigzag_ok},
          {"witness_ok", r.witness_ok},
          {"truncated", r.truncated},
          {"carrier", r.carrier},
          {"comma_objects", r.n_objects},
          {"witnesses", w}};
}

json pullback_report_to_json(const PullbackReport& r, const Skeleton& sk) {
  json levels = json::array();
  for (auto& lv : r.levels)
    levels.push_back({{"tree", sk.tree(lv.tree).canonical_code()},
                      {"nerve", lv.nerve_count},
                      {"hom", lv.hom_count},
                      {"roundtrip", lv.roundtrip}});
  return {{"pass", r.pass}, {"natural", r.natural}, {"truncated", r.truncated}, {"levels", levels}};
}

json splitsc_report_to_json(const SplitScReport& r) {
  json summands = json::array();
  for (auto& s : r.summands) summands.push_back(kan_report_to_json(s));
  return {{"coproduct_classes", r.coproduct_classes},
          {"hom_total", r.hom_total},
          {"bijective", r.bijective},
          {"core_is_coproduct", r.core_is_coproduct},
          {"truncated", r.truncated},
          {"summands", summands}};
}

json segal_report_to_json(const SegalReport& r, const Skeleton& sk) {
  json levels = json::array();
  for (auto& lv : r.levels)
    levels.push_back({{"tree", sk.tree(lv.tree).canonical_code()},
                      {"elements", lv.elements},
                      {"core_maps", lv.core_maps},
                      {"bijective", lv.bijective}});
  return {{"pass", r.pass},
          {"eta_elements", r.eta_elements},
          {"eta_bijective", r.eta_bijective},
          {"eta_flagged_separately", true},
          {"truncated", r.truncated},
          {"levels", levels}};
}

json filtration_report_to_json(const FiltrationReport& r, const Skeleton& sk) {
  json counts = json::array();
  for (auto& c : r.counts)
    if (c.psi_size != 0 || c.attached_cells != 0 || c.prev_size != 0)
      counts.push_back({{"n", c.n},
                        {"tree", sk.tree(c.tree).canonical_code()},
                        {"psi", c.psi_size},
                        {"previous", c.prev_size},
                        {"attached", c.attached_cells},
                        {"match", c.match}});
  json sizes = json::array();
  for (auto& [s, size] : r.per_level_sizes)
    if (size) sizes.push_back({{"tree", sk.tree(s).canonical_code()}, {"size", size}});
  return {{"exhaustive", r.exhaustive},
          {"monotone", r.monotone},
          {"pushout_counts_match", r.pushout_counts_match},
          {"subtree_property", r.subtree_property},
          {"psi_reaches_nerve", r.psi_reaches_nerve},
          {"max_stage_needed", r.max_stage_needed},
          {"pushout_counts", counts},
          {"per_level_sizes", sizes}};
}

}  // namespace dendro

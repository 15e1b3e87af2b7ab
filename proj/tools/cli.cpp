// dendro: batch front-end for the tree / operad / dendroidal-set toolkit.
// every subcommand prints one JSON report to stdout; diagnostics go to stderr.
// exit codes: 0 pass, 1 check failure, 2 usage error, 3 truncated output
// without --allow-truncated.

#include <CLI11.hpp>
#include <chrono>
#include <iostream>

#include "dendro/json_io.hpp"
#include "dendro/util.hpp"

using namespace dendro;

namespace {

struct Global {
  int jobs = 1;
  bool allow_truncated = false;
  bool meta = false;
};

int emit(const Global& g, const std::string& command, const json& inputs, const json& results,
         bool failed, bool truncated, const json& witnesses = nullptr) {
  json report = {{"command", command},
                 {"inputs", inputs},
                 {"truncated", truncated},
                 {"results", results}};
  if (!witnesses.is_null()) report["witnesses"] = witnesses;
  if (g.meta) {
    auto now = std::chrono::system_clock::now().time_since_epoch();
    report["meta"] = {
        {"unix_ms", std::chrono::duration_cast<std::chrono::milliseconds>(now).count()}};
  }
  std::cout << report.dump(2) << "\n";
  if (failed) return 1;
  if (truncated && !g.allow_truncated) return 3;
  return 0;
}

json tree_summary(const Tree& t) {
  return {{"code", t.canonical_code()},
          {"vertices", t.n_vertices()},
          {"edges", t.n_edges()},
          {"linear", t.is_linear()},
          {"tree", tree_to_json(t)}};
}

std::string tree_dot(const Tree& t) {
  std::string out = "graph tree {\n";
  out += "  root [shape=point];\n";
  for (int v = 0; v < t.n_vertices(); ++v)
    out += "  " + t.vertex_name(v) + " [shape=circle];\n";
  for (int e = 0; e < t.n_edges(); ++e) {
    std::string hi = t.top(e) >= 0 ? t.vertex_name(t.top(e)) : "leaf_" + t.edge_name(e);
    std::string lo = t.bottom(e) >= 0 ? t.vertex_name(t.bottom(e)) : "root";
    if (t.top(e) < 0) out += "  " + hi + " [shape=none,label=\"\"];\n";
    out += "  " + lo + " -- " + hi + " [label=\"" + t.edge_name(e) + "\"];\n";
  }
  return out + "}\n";
}

GradedSet default_x2() { return GradedSet{{"x"}, {2}}; }

// shared verify implementations ------------------------------------------

json run_omega_delta(int bound, bool& pass) {
  json rows = json::array();
  for (int m = 0; m <= bound; ++m)
    for (int n = 0; n <= bound; ++n) {
      long homs = static_cast<long>(
          hom_omega(std::make_shared<Tree>(Tree::linear(m)), std::make_shared<Tree>(Tree::linear(n)))
              .size());
      // number of monotone maps {0..m} -> {0..n} in closed form
      long binom = 1;
      for (int i = 1; i <= m + 1; ++i) binom = binom * (n + i) / i;
      bool ok = homs == binom;
      pass = pass && ok;
      rows.push_back({{"m", m}, {"n", n}, {"hom", homs}, {"monotone", binom}, {"equal", ok}});
    }
  return rows;
}

json run_nerve_rep(std::shared_ptr<const Skeleton> sk, bool& pass) {
  json rows = json::array();
  for (int s = 0; s < sk->size(); ++s) {
    bool ok = nerve_matches_representable(sk, s);
    pass = pass && ok;
    rows.push_back({{"tree", sk->tree(s).canonical_code()}, {"match", ok}});
  }
  return rows;
}

json run_tensor(std::shared_ptr<const Skeleton> sk, int jobs, bool& pass) {
  std::vector<json> rows(sk->size());
  std::vector<char> oks(sk->size(), 1);
  parallel_for_indexed(sk->size(), jobs, [&](int s) {
    auto x = reduce(representable(sk, s));
    json per = json::array();
    for (int k = 1; k <= 3; ++k) {
      bool ok = tensor_identity_holds(x, k);
      oks[s] = oks[s] && ok;
      per.push_back({{"tree", sk->tree(s).canonical_code()}, {"k", k}, {"holds", ok}});
    }
    rows[s] = per;
  });
  json out = json::array();
  for (int s = 0; s < sk->size(); ++s) {
    pass = pass && oks[s];
    for (auto& r : rows[s]) out.push_back(r);
  }
  return out;
}

json run_normal(int bound, int max_valence, int jobs, bool& pass, json& witnesses) {
  auto sk = std::make_shared<Skeleton>(bound, max_valence);
  std::vector<json> rows(sk->size());
  std::vector<char> oks(sk->size(), 1);
  parallel_for_indexed(sk->size(), jobs, [&](int s) {
    auto rep = is_normal_object(reduce(representable(sk, s)));
    oks[s] = rep.normal ? 1 : 0;
    rows[s] = {{"tree", sk->tree(s).canonical_code()}, {"normal", rep.normal}};
  });
  json out = json::array();
  for (int s = 0; s < sk->size(); ++s) {
    pass = pass && oks[s];
    out.push_back(rows[s]);
  }
  // the symmetric counterexample must be rejected with a witness
  auto sk3 = std::make_shared<Skeleton>(3, 3);
  auto nerve = nerve_of_free(sk3, default_x2(), 2);
  auto adjoined = std::make_shared<DisjointUnionPresheaf>(
      nerve, std::make_shared<NervePresheaf>(sk3, terminal_operad_eval(3)));
  auto bad = is_normal_object(adjoined);
  pass = pass && !bad.normal;
  if (!bad.normal)
    witnesses = {{"counterexample_tree", sk3->tree(bad.witness_tree).canonical_code()},
                 {"fixed_element", adjoined->label(bad.witness_tree, bad.witness_elt)}};
  json wrapped = {{"representables", out}, {"counterexample_rejected", !bad.normal}};
  return wrapped;
}

json run_bousfield(bool& pass) {
  json rows = json::array();
  for (auto& g : FiniteGroup::all_of_order_up_to(6)) {
    auto x = SimplicialTruncation::nerve_of_monoid(g.mul, g.e, 3);
    for (int n = 2; n <= 3; ++n) {
      auto rep = bousfield_psi(x, n);
      pass = pass && rep.bijective;
      rows.push_back({{"group", g.name}, {"n", n}, {"bijective", rep.bijective}});
    }
  }
  std::vector<std::vector<int>> idem = {{0, 1}, {1, 1}};
  auto y = SimplicialTruncation::nerve_of_monoid(idem, 0, 3);
  auto rep = bousfield_psi(y, 2);
  pass = pass && !rep.bijective;
  rows.push_back({{"monoid", "idempotent{1,z}"}, {"n", 2}, {"bijective", rep.bijective}});
  return rows;
}

json run_goper(bool& pass) {
  auto p = TruncatedOperad::truncate_free(default_x2(), 3);
  json rows = json::array();
  for (auto g : {FiniteGroup::cyclic(2), FiniteGroup::symmetric3()}) {
    auto cop = goper_coproduct_special(p, g);
    bool ok = validate_group_action(cop).valid;
    for (int n = 0; n <= 3; ++n) ok = ok && cop.operad.sizes[n] == g.n * p.sizes[n];
    pass = pass && ok;
    rows.push_back({{"group", g.name}, {"sizes", cop.operad.sizes}, {"ok", ok}});
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"set-level dendroidal combinatorics toolkit"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--jobs", g.jobs, "worker threads for enumerations")->capture_default_str();
  app.add_flag("--allow-truncated", g.allow_truncated,
               "exit 0 even when an enumeration was truncated");
  app.add_flag("--meta", g.meta, "attach a timestamp outside the payload");

  // trees ------------------------------------------------------------------
  auto* trees = app.add_subcommand("trees", "enumerate and canonicalize trees");
  auto* t_enum = trees->add_subcommand("enumerate", "canonical trees up to a vertex bound");
  int max_vertices = 3, max_valence = 3;
  t_enum->add_option("--max-vertices", max_vertices)->capture_default_str();
  t_enum->add_option("--max-valence", max_valence)->capture_default_str();
  auto* t_canon = trees->add_subcommand("canonical", "canonical code of a tree");
  std::string t_input, t_compare;
  t_canon->add_option("--input", t_input)->required();
  t_canon->add_option("--compare", t_compare);
  auto* t_aut = trees->add_subcommand("aut", "automorphism group of a tree");
  t_aut->add_option("--input", t_input)->required();
  auto* t_dot = trees->add_subcommand("dot", "DOT rendering of a tree");
  t_dot->add_option("--input", t_input)->required();

  // hom ---------------------------------------------------------------------
  auto* hom = app.add_subcommand("hom", "Hom-sets in Omega or between free operads");
  std::string h_src, h_tgt, h_src_gens, h_tgt_gens;
  int h_elt_bound = 2;
  hom->add_option("--source", h_src, "source tree");
  hom->add_option("--target", h_tgt, "target tree");
  hom->add_option("--source-gens", h_src_gens, "graded set N for T_N");
  hom->add_option("--target-gens", h_tgt_gens, "graded set M for T_M");
  hom->add_option("--elt-bound", h_elt_bound, "vertex bound on generator images")
      ->capture_default_str();

  // nerve ---------------------------------------------------------------------
  auto* nerve_cmd = app.add_subcommand("nerve", "nerve of a free operad as presheaf JSON");
  std::string n_gens;
  int n_mv = 3, n_mval = 3, n_elt_bound = -1;
  nerve_cmd->add_option("--gens", n_gens)->required();
  nerve_cmd->add_option("--max-vertices", n_mv)->capture_default_str();
  nerve_cmd->add_option("--max-valence", n_mval)->capture_default_str();
  nerve_cmd->add_option("--elt-bound", n_elt_bound,
                        "vertex bound on elements (default: max-valence - 1)");

  // segal-check ----------------------------------------------------------------
  auto* segal = app.add_subcommand("segal-check", "strict Segal condition for a presheaf");
  std::string s_input;
  segal->add_option("--input", s_input, "presheaf JSON (or a nerve report)")->required();

  // kan-verify -----------------------------------------------------------------
  auto* kan = app.add_subcommand("kan-verify", "left Kan extension statements");
  std::string k_prop, k_tree = "corolla:2", k_gens, k_nerve_gens;
  int k_tree_bound = 3, k_elt_bound = 2, k_mval = 3;
  kan->add_option("--proposition", k_prop, "lke | lknerve | pullback | splitsc")->required();
  kan->add_option("--tree", k_tree, "the tree S (lke, splitsc)");
  kan->add_option("--gens", k_gens, "graded set N (lke, lknerve, splitsc) or M (pullback)");
  kan->add_option("--nerve-gens", k_nerve_gens, "graded set M (lknerve)");
  kan->add_option("--tree-bound", k_tree_bound)->capture_default_str();
  kan->add_option("--elt-bound", k_elt_bound)->capture_default_str();
  kan->add_option("--max-valence", k_mval)->capture_default_str();

  // filtration-verify -----------------------------------------------------------
  auto* filt = app.add_subcommand("filtration-verify", "primitive-dendrex filtration");
  std::string f_gens;
  int f_bound = 3, f_mval = 3;
  filt->add_option("--gens", f_gens)->required();
  filt->add_option("--bound", f_bound)->capture_default_str();
  filt->add_option("--max-valence", f_mval)->capture_default_str();

  // action ------------------------------------------------------------------
  auto* action = app.add_subcommand("action", "validate group/category actions on operads");
  auto* a_validate = action->add_subcommand("validate", "check the action axioms");
  std::string a_kind, a_input;
  a_validate->add_option("--kind", a_kind, "group | category")->required();
  a_validate->add_option("--input", a_input)->required();

  // bousfield -----------------------------------------------------------------
  auto* bous = app.add_subcommand("bousfield", "Hall bracket machinery");
  auto* b_extract = bous->add_subcommand("extract", "group extraction from a bracket");
  std::string b_magma;
  b_extract->add_option("--magma", b_magma)->required();
  auto* b_search = bous->add_subcommand("search", "exhaust bracket tables of a given order");
  int b_order = 3;
  b_search->add_option("--order", b_order)->required();

  // verify ----------------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "aggregated proposition checks");
  std::string v_prop, v_gens, v_input, v_tree = "corolla:2";
  int v_bound = 3, v_order = 3, v_elt_bound = 2, v_mval = 3;
  verify->add_option("--prop", v_prop,
                     "omega-delta | nerve-rep | segal | i-bijection | pullback | lke | lknerve "
                     "| splitsc | filtration | tensor | normal | hall | bousfield | goper")
      ->required();
  verify->add_option("--gens", v_gens);
  verify->add_option("--input", v_input);
  verify->add_option("--tree", v_tree);
  verify->add_option("--bound", v_bound)->capture_default_str();
  verify->add_option("--elt-bound", v_elt_bound)->capture_default_str();
  verify->add_option("--max-valence", v_mval)->capture_default_str();
  verify->add_option("--order", v_order)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    // trees
    if (t_enum->parsed()) {
      json rows = json::array();
      for (auto& t : enumerate_trees(max_vertices, max_valence)) rows.push_back(tree_summary(t));
      return emit(g, "trees enumerate",
                  {{"max_vertices", max_vertices}, {"max_valence", max_valence}},
                  {{"count", rows.size()}, {"trees", rows}}, false, false);
    }
    if (t_canon->parsed()) {
      Tree t = parse_tree_arg(t_input);
      json results = {{"code", t.canonical_code()}};
      if (!t_compare.empty()) {
        Tree u = parse_tree_arg(t_compare);
        results["compare_code"] = u.canonical_code();
        results["isomorphic"] = t.canonical_code() == u.canonical_code();
      }
      return emit(g, "trees canonical", {{"input", t_input}, {"compare", t_compare}}, results,
                  false, false);
    }
    if (t_aut->parsed()) {
      Tree t = parse_tree_arg(t_input);
      auto auts = t.automorphisms();
      json maps = json::array();
      for (auto& a : auts) {
        json m = json::object();
        for (int e = 0; e < t.n_edges(); ++e) m[t.edge_name(e)] = t.edge_name(a[e]);
        maps.push_back(m);
      }
      return emit(g, "trees aut", {{"input", t_input}},
                  {{"order", auts.size()}, {"automorphisms", maps}}, false, false);
    }
    if (t_dot->parsed()) {
      Tree t = parse_tree_arg(t_input);
      return emit(g, "trees dot", {{"input", t_input}}, {{"dot", tree_dot(t)}}, false, false);
    }

    // hom
    if (hom->parsed()) {
      if (!h_src.empty() && !h_tgt.empty()) {
        auto r = std::make_shared<Tree>(parse_tree_arg(h_src));
        auto s = std::make_shared<Tree>(parse_tree_arg(h_tgt));
        auto homs = hom_omega(r, s);
        json list = json::array();
        for (auto& m : homs) {
          json em = json::object();
          for (int e = 0; e < r->n_edges(); ++e) em[r->edge_name(e)] = s->edge_name(m.map_edge(e));
          list.push_back(em);
        }
        return emit(g, "hom", {{"source", h_src}, {"target", h_tgt}},
                    {{"count", homs.size()}, {"morphisms", list}}, false, false);
      }
      if (!h_src_gens.empty() && !h_tgt_gens.empty()) {
        GradedSet n = parse_gens_arg(h_src_gens), m = parse_gens_arg(h_tgt_gens);
        auto homs = hom_free(n, m, h_elt_bound);
        json list = json::array();
        for (auto& spec : homs.maps) {
          json images = json::object();
          for (int i = 0; i < n.size(); ++i)
            images[n.names[i]] = element_to_json(spec.images[i], m);
          list.push_back(images);
        }
        return emit(g, "hom",
                    {{"source_gens", h_src_gens},
                     {"target_gens", h_tgt_gens},
                     {"elt_bound", h_elt_bound}},
                    {{"count", homs.maps.size()}, {"complete", homs.complete}, {"maps", list}},
                    false, !homs.complete);
      }
      std::cerr << "hom needs either --source/--target or --source-gens/--target-gens;\n"
                   "free-operad Hom-sets additionally need --elt-bound when the source has\n"
                   "generators of valence <= 1 (the finiteness criterion fails there)\n";
      return 2;
    }

    // nerve
    if (nerve_cmd->parsed()) {
      GradedSet m = parse_gens_arg(n_gens);
      int bound = n_elt_bound >= 0 ? n_elt_bound : std::max(0, n_mval - 1);
      auto sk = std::make_shared<Skeleton>(n_mv, n_mval);
      auto nerve = nerve_of_free(sk, m, bound);
      return emit(g, "nerve",
                  {{"gens", graded_set_to_json(m)},
                   {"max_vertices", n_mv},
                   {"max_valence", n_mval},
                   {"elt_bound", bound}},
                  {{"presheaf", presheaf_to_json(*nerve)}}, false, nerve->truncated());
    }

    // segal-check
    if (segal->parsed()) {
      json j = parse_json_or_file(s_input);
      if (j.contains("results") && j["results"].contains("presheaf"))
        j = j["results"]["presheaf"];
      auto x = presheaf_from_json(j);
      std::vector<int> all(x->skel().size());
      for (int i = 0; i < x->skel().size(); ++i) all[i] = i;
      bool functorial = check_functorial(*x, all);
      auto rep = check_strict_segal(x, g.jobs);
      json results = segal_report_to_json(rep, x->skel());
      results["functorial"] = functorial;
      return emit(g, "segal-check", {{"input", s_input}}, results, !rep.pass || !functorial,
                  rep.truncated);
    }

    // kan-verify
    if (kan->parsed()) {
      auto sk = std::make_shared<Skeleton>(k_tree_bound, k_mval);
      json inputs = {{"proposition", k_prop},
                     {"tree", k_tree},
                     {"tree_bound", k_tree_bound},
                     {"elt_bound", k_elt_bound},
                     {"max_valence", k_mval}};
      if (k_prop == "pullback") {
        GradedSet m = k_gens.empty() ? default_x2() : parse_gens_arg(k_gens);
        auto rep = verify_pullback_hom(sk, m, k_elt_bound);
        return emit(g, "kan-verify", inputs, pullback_report_to_json(rep, *sk), !rep.pass,
                    rep.truncated);
      }
      GradedSet n = k_gens.empty() ? GradedSet{{"v"}, {2}} : parse_gens_arg(k_gens);
      if (k_prop == "lknerve") {
        GradedSet m = k_nerve_gens.empty() ? default_x2() : parse_gens_arg(k_nerve_gens);
        auto rep = verify_lknerve(sk, m, n, k_elt_bound);
        return emit(g, "kan-verify", inputs, kan_report_to_json(rep), !rep.bijective,
                    rep.truncated);
      }
      Tree t = parse_tree_arg(k_tree);
      int s = sk->index_of_code(t.canonical_code());
      if (s < 0) {
        std::cerr << "tree exceeds the skeleton bounds\n";
        return 2;
      }
      if (k_prop == "lke") {
        auto rep = verify_lke(sk, s, n, k_elt_bound);
        return emit(g, "kan-verify", inputs, kan_report_to_json(rep), !rep.bijective,
                    rep.truncated);
      }
      if (k_prop == "splitsc") {
        auto rep = verify_splitsc(sk, s, n, k_elt_bound);
        return emit(g, "kan-verify", inputs, splitsc_report_to_json(rep),
                    !(rep.bijective && rep.core_is_coproduct), rep.truncated);
      }
      std::cerr << "unknown proposition; available: lke lknerve pullback splitsc\n";
      return 2;
    }

    // filtration-verify
    if (filt->parsed()) {
      GradedSet m = parse_gens_arg(f_gens);
      auto sk = std::make_shared<Skeleton>(f_bound, f_mval);
      auto rep = verify_filtration(sk, m);
      bool pass = rep.exhaustive && rep.monotone && rep.pushout_counts_match &&
                  rep.subtree_property;
      return emit(g, "filtration-verify",
                  {{"gens", graded_set_to_json(m)}, {"bound", f_bound}, {"max_valence", f_mval}},
                  filtration_report_to_json(rep, *sk), !pass, false);
    }

    // action validate
    if (a_validate->parsed()) {
      json j = parse_json_or_file(a_input);
      if (a_kind == "group") {
        auto a = group_action_from_json(j);
        auto rep = validate_group_action(a);
        return emit(g, "action validate", {{"kind", a_kind}},
                    {{"valid", rep.valid}, {"failure", rep.failure}, {"witness", rep.witness}},
                    !rep.valid, false);
      }
      if (a_kind == "category") {
        auto a = cat_action_from_json(j);
        auto rep = validate_cat_action(a);
        return emit(g, "action validate", {{"kind", a_kind}},
                    {{"valid", rep.valid}, {"failures", rep.failures}}, !rep.valid, false);
      }
      std::cerr << "unknown kind; available: group category\n";
      return 2;
    }

    // bousfield
    if (b_extract->parsed()) {
      auto m = magma_from_json(parse_json_or_file(b_magma));
      auto rep = hall_extract(m);
      bool ok = rep.relations_hold && rep.group_axioms_hold && rep.bracket_recovered;
      return emit(g, "bousfield extract", {{"magma", magma_to_json(m)}},
                  hall_report_to_json(rep), !ok, false);
    }
    if (b_search->parsed()) {
      auto rep = hall_search(b_order, g.jobs);
      bool ok = rep.all_extract_to_groups && rep.every_group_arises;
      return emit(g, "bousfield search", {{"order", b_order}}, hall_search_to_json(rep), !ok,
                  false);
    }

    // verify
    if (verify->parsed()) {
      bool pass = true;
      json witnesses;
      if (v_prop == "omega-delta") {
        json rows = run_omega_delta(std::min(v_bound, 4) >= 0 ? std::max(v_bound, 0) : 4, pass);
        return emit(g, "verify", {{"prop", v_prop}, {"bound", v_bound}}, {{"cases", rows}}, !pass,
                    false);
      }
      auto sk = std::make_shared<Skeleton>(v_bound, v_mval);
      if (v_prop == "nerve-rep") {
        json rows = run_nerve_rep(sk, pass);
        return emit(g, "verify", {{"prop", v_prop}, {"bound", v_bound}}, {{"levels", rows}},
                    !pass, false);
      }
      if (v_prop == "segal") {
        std::shared_ptr<const Presheaf> x;
        bool truncated = false;
        if (!v_input.empty()) {
          json j = parse_json_or_file(v_input);
          if (j.contains("results") && j["results"].contains("presheaf"))
            j = j["results"]["presheaf"];
          auto loaded = presheaf_from_json(j);
          loaded->saturate();  // tables become read-only before the parallel check
          x = loaded;
        } else {
          GradedSet m = v_gens.empty() ? default_x2() : parse_gens_arg(v_gens);
          auto nerve = nerve_of_free(sk, m, std::max(v_elt_bound, v_mval - 1));
          truncated = nerve->truncated();
          x = nerve;
        }
        auto rep = check_strict_segal(x, g.jobs);
        return emit(g, "verify", {{"prop", v_prop}}, segal_report_to_json(rep, x->skel()),
                    !rep.pass, truncated || rep.truncated);
      }
      if (v_prop == "i-bijection" || v_prop == "pullback") {
        GradedSet m = v_gens.empty() ? default_x2() : parse_gens_arg(v_gens);
        auto rep = verify_pullback_hom(sk, m, v_elt_bound);
        bool ok = v_prop == "pullback" ? rep.pass : [&] {
          bool all = true;
          for (auto& lv : rep.levels) all = all && lv.roundtrip;
          return all;
        }();
        return emit(g, "verify", {{"prop", v_prop}, {"gens", graded_set_to_json(m)}},
                    pullback_report_to_json(rep, *sk), !ok, rep.truncated);
      }
      if (v_prop == "lke" || v_prop == "splitsc") {
        GradedSet n = v_gens.empty() ? GradedSet{{"v"}, {2}} : parse_gens_arg(v_gens);
        Tree t = parse_tree_arg(v_tree);
        int s = sk->index_of_code(t.canonical_code());
        if (s < 0) {
          std::cerr << "tree exceeds the skeleton bounds\n";
          return 2;
        }
        if (v_prop == "lke") {
          auto rep = verify_lke(sk, s, n, v_elt_bound);
          return emit(g, "verify", {{"prop", v_prop}}, kan_report_to_json(rep), !rep.bijective,
                      rep.truncated);
        }
        auto rep = verify_splitsc(sk, s, n, v_elt_bound);
        return emit(g, "verify", {{"prop", v_prop}}, splitsc_report_to_json(rep),
                    !(rep.bijective && rep.core_is_coproduct), rep.truncated);
      }
      if (v_prop == "lknerve") {
        GradedSet n = v_gens.empty() ? GradedSet{{"v"}, {2}} : parse_gens_arg(v_gens);
        auto rep = verify_lknerve(sk, default_x2(), n, v_elt_bound);
        return emit(g, "verify", {{"prop", v_prop}}, kan_report_to_json(rep), !rep.bijective,
                    rep.truncated);
      }
      if (v_prop == "filtration") {
        GradedSet m = v_gens.empty() ? default_x2() : parse_gens_arg(v_gens);
        auto rep = verify_filtration(sk, m);
        bool ok = rep.exhaustive && rep.monotone && rep.pushout_counts_match &&
                  rep.subtree_property;
        return emit(g, "verify", {{"prop", v_prop}}, filtration_report_to_json(rep, *sk), !ok,
                    false);
      }
      if (v_prop == "tensor") {
        json rows = run_tensor(sk, g.jobs, pass);
        return emit(g, "verify", {{"prop", v_prop}}, {{"cases", rows}}, !pass, false);
      }
      if (v_prop == "normal") {
        json rows = run_normal(std::max(v_bound, 4), v_mval, g.jobs, pass, witnesses);
        return emit(g, "verify", {{"prop", v_prop}}, rows, !pass, false, witnesses);
      }
      if (v_prop == "hall") {
        auto rep = hall_search(v_order, g.jobs);
        bool ok = rep.all_extract_to_groups && rep.every_group_arises;
        for (auto& grp : FiniteGroup::all_of_order_up_to(8)) {
          auto r = hall_extract(magma_from_group(grp));
          ok = ok && r.relations_hold && r.bracket_recovered &&
               groups_isomorphic(*r.group, grp);
        }
        return emit(g, "verify", {{"prop", v_prop}, {"order", v_order}},
                    hall_search_to_json(rep), !ok, false);
      }
      if (v_prop == "bousfield") {
        json rows = run_bousfield(pass);
        return emit(g, "verify", {{"prop", v_prop}}, {{"cases", rows}}, !pass, false);
      }
      if (v_prop == "goper") {
        json rows = run_goper(pass);
        return emit(g, "verify", {{"prop", v_prop}}, {{"cases", rows}}, !pass, false);
      }
      std::cerr << "unknown proposition; available: omega-delta nerve-rep segal i-bijection "
                   "pullback lke lknerve splitsc filtration tensor normal hall bousfield goper\n";
      return 2;
    }
  } catch (const TruncationError& e) {
    std::cerr << "truncated enumeration: " << e.what() << "\n";
    return g.allow_truncated ? 0 : 3;
  } catch (const json::exception& e) {
    std::cerr << "malformed JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

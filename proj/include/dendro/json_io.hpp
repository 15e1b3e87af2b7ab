#pragma once

#include <json.hpp>

#include "dendro/actions.hpp"
#include "dendro/filtration.hpp"
#include "dendro/groups.hpp"
#include "dendro/kan.hpp"
#include "dendro/presheaf.hpp"

namespace dendro {

using nlohmann::json;

// {"root": str, "vertices": [{"id": str, "out": str, "in": [str,...]}]}
json tree_to_json(const Tree& t);
Tree tree_from_json(const json& j);
// inline JSON, a file path, or the shorthands eta | linear:k | corolla:k | code:<canonical>
Tree parse_tree_arg(const std::string& arg);

// {"gens": [{"name": str, "valence": nat}]}
json graded_set_to_json(const GradedSet& g);
GradedSet graded_set_from_json(const json& j);
GradedSet parse_gens_arg(const std::string& arg);

// nested planar term: {"op": str, "args": [...]} with leaves {"leaf": nat}
json element_to_json(const Element& e, const GradedSet& m);
Element element_from_json(const json& j, const GradedSet& m);

// per-canonical-tree element lists plus generator action tables
json presheaf_to_json(const Presheaf& x);
std::shared_ptr<TabledPresheaf> presheaf_from_json(const json& j);

json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const json& j);
json magma_to_json(const PointedMagma& m);
PointedMagma magma_from_json(const json& j);

GroupActionOnOperad group_action_from_json(const json& j);
CatActionOnColoredOperad cat_action_from_json(const json& j);

json hall_report_to_json(const HallReport& r);
json hall_search_to_json(const HallSearchReport& r);
json kan_report_to_json(const KanReport& r);
json pullback_report_to_json(const PullbackReport& r, const Skeleton& sk);
json splitsc_report_to_json(const SplitScReport& r);
json segal_report_to_json(const SegalReport& r, const Skeleton& sk);
json filtration_report_to_json(const FiltrationReport& r, const Skeleton& sk);

std::string read_text_file(const std::string& path);
json parse_json_or_file(const std::string& arg);

}  // namespace dendro

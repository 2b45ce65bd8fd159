#pragma once

#include <json.hpp>
#include <string>

#include "steprev/petri.hpp"
#include "steprev/sts.hpp"

namespace steprev {

using Json = nlohmann::ordered_json;

inline constexpr const char* kNetSchema = "steprev-net/1";
inline constexpr const char* kStsSchema = "steprev-sts/1";

/// Action ids in documents: "a" (forward), "~a" (reverse), "~a[tag]" (indexed
/// reverse). parse checks the id against the declared kind/base/index.
Json action_to_json(const ActionName& a);
ActionName action_from_json(const Json& j);

PTNet net_from_json(const Json& doc);       // throws SchemaError with field path
Json net_to_json(const PTNet& net);         // canonical: sorted, zero-free

StepTransitionSystem sts_from_json(const Json& doc);
Json sts_to_json(const StepTransitionSystem& sts);

Json step_to_json(const Step& alpha);
Step step_from_json(const Json& j, const std::set<ActionName>& alphabet);

Json marking_to_json(const Marking& m);

/// DOT rendering: states as nodes (initials doubly circled), step literals as
/// edge labels; ∅-loops omitted for readability.
std::string sts_to_dot(const StepTransitionSystem& sts);

Json load_json_file(const std::string& path);

}  // namespace steprev

#include "steprev/io.hpp"

#include <fstream>

namespace steprev {

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::SchemaError, where + ": " + what);
}

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.contains(name)) schema_error(where, std::string("missing field '") + name + "'");
  return j.at(name);
}

Int int_from(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      schema_error(where, "not an integer: " + j.dump());
    }
  }
  schema_error(where, "expected integer, got " + j.dump());
}

Json int_to(const Int& v) {
  // values beyond 64-bit go out as strings, accepted back by int_from
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return Json(static_cast<long long>(v));
  return Json(v.str());
}

}  // namespace

Json action_to_json(const ActionName& a) {
  Json j;
  j["id"] = a.to_string();
  j["kind"] = to_string(a.kind);
  j["base"] = a.base;
  if (a.kind == ActionKind::IndexedReverse) j["index"] = a.index;
  return j;
}

ActionName action_from_json(const Json& j) {
  const std::string where = "actions";
  std::string id = field(j, "id", where).get<std::string>();
  ActionName a = ActionName::parse(id);
  std::string kind = field(j, "kind", where).get<std::string>();
  if (kind != to_string(a.kind))
    schema_error(where, "kind '" + kind + "' does not match id '" + id + "'");
  if (field(j, "base", where).get<std::string>() != a.base)
    schema_error(where, "base does not match id '" + id + "'");
  if (a.kind == ActionKind::IndexedReverse &&
      field(j, "index", where).get<std::string>() != a.index)
    schema_error(where, "index does not match id '" + id + "'");
  return a;
}

Json step_to_json(const Step& alpha) {
  Json j = Json::object();
  for (const auto& [a, n] : alpha.entries()) j[a.to_string()] = int_to(n);
  return j;
}

Step step_from_json(const Json& j, const std::set<ActionName>& alphabet) {
  if (!j.is_object()) schema_error("step", "expected object");
  Step out;
  for (const auto& [key, val] : j.items()) {
    ActionName a = ActionName::parse(key);
    if (!alphabet.count(a)) schema_error("step", "undeclared action " + key);
    Int n = int_from(val, "step");
    if (n <= 0) schema_error("step", "non-positive count for " + key);
    out.set(a, n);
  }
  return out;
}

Json marking_to_json(const Marking& m) {
  Json j = Json::object();
  for (const auto& [p, v] : m.entries()) j[p] = int_to(v);
  return j;
}

PTNet net_from_json(const Json& doc) {
  if (field(doc, "schema", "document").get<std::string>() != kNetSchema)
    schema_error("document", "expected schema " + std::string(kNetSchema));
  PTNet net;
  size_t n_markings = 0;
  for (const auto& pj : field(doc, "places", "document")) {
    std::string id = field(pj, "id", "places").get<std::string>();
    if (net.has_place(id)) schema_error("places", "duplicate place " + id);
    net.places.push_back(id);
    const Json& init = field(pj, "initial", "places");
    if (!init.is_array() || init.empty()) schema_error("places", id + ": initial must be a non-empty array");
    if (n_markings == 0) {
      n_markings = init.size();
      net.initial_markings.resize(n_markings);
    } else if (init.size() != n_markings) {
      schema_error("places", id + ": initial column count mismatch");
    }
    for (size_t i = 0; i < n_markings; ++i) {
      Int v = int_from(init.at(i), "places." + id + ".initial");
      if (v < 0) schema_error("places", id + ": negative initial marking");
      net.initial_markings[i].set(id, v);
    }
  }
  for (const auto& aj : field(doc, "actions", "document")) {
    ActionName a = action_from_json(aj);
    if (!net.actions.insert(a).second) schema_error("actions", "duplicate " + a.to_string());
  }
  auto find_action = [&](const std::string& id, const std::string& where) {
    ActionName a = ActionName::parse(id);
    if (!net.actions.count(a)) schema_error(where, "undeclared action " + id);
    return a;
  };
  for (const auto& arc : field(doc, "arcs", "document")) {
    std::string from = field(arc, "from", "arcs").get<std::string>();
    std::string to = field(arc, "to", "arcs").get<std::string>();
    Int w = int_from(field(arc, "weight", "arcs"), "arcs");
    if (w <= 0) schema_error("arcs", "non-positive weight on " + from + " -> " + to);
    if (net.has_place(from)) {
      ActionName a = find_action(to, "arcs");
      if (net.pre.count({from, a})) schema_error("arcs", "duplicate arc " + from + " -> " + to);
      net.pre[{from, a}] = w;
    } else if (net.has_place(to)) {
      ActionName a = find_action(from, "arcs");
      if (net.post.count({a, to})) schema_error("arcs", "duplicate arc " + from + " -> " + to);
      net.post[{a, to}] = w;
    } else {
      schema_error("arcs", "neither endpoint is a place: " + from + " -> " + to);
    }
  }
  if (doc.contains("readArcs")) {
    for (const auto& ra : doc.at("readArcs")) {
      std::string place = field(ra, "place", "readArcs").get<std::string>();
      if (!net.has_place(place)) schema_error("readArcs", "undeclared place " + place);
      ActionName a = find_action(field(ra, "action", "readArcs").get<std::string>(), "readArcs");
      Int v = int_from(field(ra, "value", "readArcs"), "readArcs");
      if (v < 0) schema_error("readArcs", "negative value");
      net.read[{place, a}] = v;
    }
  }
  try {
    net.check_well_formed();
  } catch (const Error& e) {
    schema_error("document", e.what());
  }
  return net;
}

Json net_to_json(const PTNet& net) {
  Json doc;
  doc["schema"] = kNetSchema;
  doc["places"] = Json::array();
  std::vector<std::string> sorted_places = net.places;
  std::sort(sorted_places.begin(), sorted_places.end());
  for (const auto& p : sorted_places) {
    Json pj;
    pj["id"] = p;
    pj["initial"] = Json::array();
    for (const auto& m : net.initial_markings) pj["initial"].push_back(int_to(m.at(p)));
    doc["places"].push_back(pj);
  }
  doc["actions"] = Json::array();
  for (const auto& a : net.actions) doc["actions"].push_back(action_to_json(a));
  doc["arcs"] = Json::array();
  for (const auto& p : sorted_places)
    for (const auto& a : net.actions) {
      Int w = net.f_pre(p, a);
      if (w != 0)
        doc["arcs"].push_back({{"from", p}, {"to", a.to_string()}, {"weight", int_to(w)}});
    }
  for (const auto& a : net.actions)
    for (const auto& p : sorted_places) {
      Int w = net.f_post(a, p);
      if (w != 0)
        doc["arcs"].push_back({{"from", a.to_string()}, {"to", p}, {"weight", int_to(w)}});
    }
  if (net.has_read_arcs()) {
    doc["readArcs"] = Json::array();
    for (const auto& [key, v] : net.read)
      doc["readArcs"].push_back(
          {{"place", key.first}, {"action", key.second.to_string()}, {"value", int_to(v)}});
  }
  return doc;
}

StepTransitionSystem sts_from_json(const Json& doc) {
  if (field(doc, "schema", "document").get<std::string>() != kStsSchema)
    schema_error("document", "expected schema " + std::string(kStsSchema));
  StepTransitionSystem sts;
  for (const auto& sj : field(doc, "states", "document")) {
    std::string id = sj.get<std::string>();
    if (!sts.states.insert(id).second) schema_error("states", "duplicate state " + id);
  }
  for (const auto& aj : field(doc, "actions", "document")) {
    ActionName a = action_from_json(aj);
    if (!sts.actions.insert(a).second) schema_error("actions", "duplicate " + a.to_string());
  }
  for (const auto& ij : field(doc, "initials", "document")) {
    std::string id = ij.get<std::string>();
    if (!sts.states.count(id)) schema_error("initials", "undeclared state " + id);
    sts.initials.push_back(id);
  }
  if (sts.initials.empty()) schema_error("initials", "must be non-empty");
  for (const auto& tj : field(doc, "transitions", "document")) {
    Transition t;
    t.src = field(tj, "from", "transitions").get<std::string>();
    t.dst = field(tj, "to", "transitions").get<std::string>();
    t.step = step_from_json(field(tj, "step", "transitions"), sts.actions);
    if (!sts.states.count(t.src)) schema_error("transitions", "undeclared state " + t.src);
    if (!sts.states.count(t.dst)) schema_error("transitions", "undeclared state " + t.dst);
    if (!sts.transitions.insert(t).second)
      schema_error("transitions",
                   "duplicate triple " + t.src + " -" + step_literal(t.step) + "-> " + t.dst);
  }
  return sts;
}

Json sts_to_json(const StepTransitionSystem& sts) {
  Json doc;
  doc["schema"] = kStsSchema;
  doc["states"] = Json::array();
  for (const auto& s : sts.states) doc["states"].push_back(s);
  doc["initials"] = Json::array();
  for (const auto& s : sts.initials) doc["initials"].push_back(s);
  doc["actions"] = Json::array();
  for (const auto& a : sts.actions) doc["actions"].push_back(action_to_json(a));
  doc["transitions"] = Json::array();
  for (const auto& t : sts.transitions)
    doc["transitions"].push_back(
        {{"from", t.src}, {"step", step_to_json(t.step)}, {"to", t.dst}});
  return doc;
}

std::string sts_to_dot(const StepTransitionSystem& sts) {
  std::ostringstream out;
  out << "digraph sts {\n";
  std::set<std::string> initials(sts.initials.begin(), sts.initials.end());
  std::map<std::string, int> ids;
  for (const auto& s : sts.states) {
    int id = static_cast<int>(ids.size());
    ids[s] = id;
    out << "  n" << id << " [label=\"" << s << "\", shape="
        << (initials.count(s) ? "doublecircle" : "circle") << "];\n";
  }
  for (const auto& t : sts.transitions) {
    if (t.step.empty() && t.src == t.dst) continue;  // implicit empty loops
    out << "  n" << ids.at(t.src) << " -> n" << ids.at(t.dst) << " [label=\""
        << step_literal(t.step) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SchemaError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::SchemaError, path + ": " + e.what());
  }
}

}  // namespace steprev

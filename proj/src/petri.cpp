#include "steprev/petri.hpp"

#include <algorithm>
#include <deque>

namespace steprev {

bool PTNet::has_place(const std::string& p) const {
  return std::find(places.begin(), places.end(), p) != places.end();
}

Int PTNet::f_pre(const std::string& p, const ActionName& a) const {
  auto it = pre.find({p, a});
  return it == pre.end() ? Int(0) : it->second;
}

Int PTNet::f_post(const ActionName& a, const std::string& p) const {
  auto it = post.find({a, p});
  return it == post.end() ? Int(0) : it->second;
}

void PTNet::set_pre(const std::string& p, const ActionName& a, const Int& w) {
  if (w == 0)
    pre.erase({p, a});
  else
    pre[{p, a}] = w;
}

void PTNet::set_post(const ActionName& a, const std::string& p, const Int& w) {
  if (w == 0)
    post.erase({a, p});
  else
    post[{a, p}] = w;
}

void PTNet::check_well_formed() const {
  std::set<std::string> place_set(places.begin(), places.end());
  if (place_set.size() != places.size())
    throw Error(ErrorCode::InvalidNet, "duplicate place name");
  auto check_place = [&](const std::string& p) {
    if (!place_set.count(p)) throw Error(ErrorCode::UnknownPlace, p);
  };
  auto check_action = [&](const ActionName& a) {
    if (!actions.count(a)) throw Error(ErrorCode::UnknownAction, a.to_string());
  };
  for (const auto& [key, w] : pre) {
    check_place(key.first);
    check_action(key.second);
    if (w <= 0) throw Error(ErrorCode::InvalidNet, "non-positive arc weight");
  }
  for (const auto& [key, w] : post) {
    check_action(key.first);
    check_place(key.second);
    if (w <= 0) throw Error(ErrorCode::InvalidNet, "non-positive arc weight");
  }
  for (const auto& [key, v] : read) {
    check_place(key.first);
    check_action(key.second);
    if (v < 0) throw Error(ErrorCode::InvalidNet, "negative read value");
  }
  if (initial_markings.empty()) throw Error(ErrorCode::InvalidNet, "no initial marking");
  for (const auto& m : initial_markings) {
    if (!m.is_multiset()) throw Error(ErrorCode::InvalidNet, "negative initial marking");
    for (const auto& [p, n] : m.entries()) check_place(p);
  }
  // no action may fire with unbounded autoconcurrency: it must consume from
  // some place or be pinned by a read arc
  for (const auto& a : actions) {
    bool constrained = false;
    for (const auto& p : places)
      if (f_pre(p, a) > 0 || read.count({p, a})) {
        constrained = true;
        break;
      }
    if (!constrained)
      throw Error(ErrorCode::InvalidNet,
                  "action with empty preset and no read arcs: " + a.to_string());
  }
}

StepVectors step_vectors(const PTNet& net, const Step& alpha) {
  StepVectors out;
  for (const auto& [a, n] : alpha.entries()) {
    if (!net.actions.count(a)) throw Error(ErrorCode::UnknownAction, a.to_string());
    for (const auto& p : net.places) {
      out.pre.add(p, n * net.f_pre(p, a));
      out.post.add(p, n * net.f_post(a, p));
    }
  }
  out.eff = out.post - out.pre;
  return out;
}

bool enabled(const PTNet& net, const Marking& m, const Step& alpha) {
  auto vecs = step_vectors(net, alpha);
  if (!vecs.pre.leq(m)) return false;
  for (const auto& [a, n] : alpha.entries())
    for (const auto& [key, v] : net.read)
      if (key.second == a && m.at(key.first) != v) return false;
  return true;
}

Marking fire(const PTNet& net, const Marking& m, const Step& alpha) {
  if (!enabled(net, m, alpha))
    throw Error(ErrorCode::NotEnabled, step_literal(alpha) + " at " + m.literal());
  return m + step_vectors(net, alpha).eff;
}

namespace {

/// Enumerate enabled steps by depth-first extension over the action list.
/// Enabling is monotone-decreasing in the step, so a disabled partial step
/// prunes the whole branch for PT arcs; read arcs only restrict further.
void enumerate_steps(const PTNet& net, const Marking& m,
                     const std::vector<ActionName>& actions, size_t idx, Step& current,
                     const Int& size, int max_step_size, std::set<Step>& out) {
  if (size > 0) out.insert(current);
  if (size >= max_step_size || idx >= actions.size()) return;
  for (size_t i = idx; i < actions.size(); ++i) {
    current.add(actions[i], 1);
    if (enabled(net, m, current))
      enumerate_steps(net, m, actions, i, current, size + 1, max_step_size, out);
    current.add(actions[i], -1);
  }
}

}  // namespace

std::set<Step> enabled_steps(const PTNet& net, const Marking& m, int max_step_size) {
  if (max_step_size < 1) throw Error(ErrorCode::SchemaError, "max_step_size must be >= 1");
  std::vector<ActionName> actions(net.actions.begin(), net.actions.end());
  std::set<Step> out;
  Step current;
  enumerate_steps(net, m, actions, 0, current, 0, max_step_size, out);
  // the bound truncated real behaviour iff a maximal-size step extends
  for (const auto& alpha : out) {
    if (alpha.total() != max_step_size) continue;
    for (const auto& a : actions) {
      Step bigger = alpha;
      bigger.add(a, 1);
      if (enabled(net, m, bigger))
        throw Error(ErrorCode::StepBoundExceeded,
                    "enabled step " + step_literal(bigger) + " exceeds bound " +
                        std::to_string(max_step_size) + " at " + m.literal());
    }
  }
  return out;
}

CrgResult build_crg(const PTNet& net, const CrgLimits& limits) {
  net.check_well_formed();
  CrgResult result;
  result.sts.actions = net.actions;
  std::deque<std::string> work;
  auto visit = [&](const Marking& m) {
    std::string id = m.literal();
    if (result.marking_of.emplace(id, m).second) {
      if (static_cast<long>(result.marking_of.size()) > limits.max_states)
        throw Error(ErrorCode::StateBoundExceeded,
                    "more than " + std::to_string(limits.max_states) + " reachable markings");
      result.sts.states.insert(id);
      result.sts.transitions.insert({id, {}, id});  // empty loop
      work.push_back(id);
    }
    return id;
  };
  for (const auto& m0 : net.initial_markings) result.sts.initials.push_back(visit(m0));
  while (!work.empty()) {
    std::string id = work.front();
    work.pop_front();
    Marking m = result.marking_of.at(id);
    for (const auto& alpha : enabled_steps(net, m, limits.max_step_size)) {
      std::string target = visit(m + step_vectors(net, alpha).eff);
      result.sts.transitions.insert({id, alpha, target});
    }
  }
  return result;
}

PTNet subnet(const PTNet& net, const std::set<ActionName>& keep) {
  for (const auto& a : keep)
    if (!net.actions.count(a)) throw Error(ErrorCode::UnknownAction, a.to_string());
  PTNet out = net;
  out.actions = keep;
  std::erase_if(out.pre, [&](const auto& kv) { return !keep.count(kv.first.second); });
  std::erase_if(out.post, [&](const auto& kv) { return !keep.count(kv.first.first); });
  std::erase_if(out.read, [&](const auto& kv) { return !keep.count(kv.first.second); });
  return out;
}

ReverseStructure check_reverse_structure(
    const PTNet& net, const std::map<ActionName, std::set<ActionName>>& pairing) {
  ReverseStructure out;
  bool all_reverse = true, all_strict = true;
  for (const auto& a : net.actions) {
    if (!a.is_forward()) continue;
    auto it = pairing.find(a);
    if (it == pairing.end() || it->second.empty())
      throw Error(ErrorCode::IncompletePairing, "no reverse listed for " + a.to_string());
    ReverseStructure::PerAction verdict;
    verdict.is_reverse = true;
    verdict.is_strict_reverse = true;
    auto va = step_vectors(net, Step{{a, 1}});
    for (const auto& r : it->second) {
      if (!net.actions.count(r)) throw Error(ErrorCode::UnknownAction, r.to_string());
      if (r.kind == ActionKind::IndexedReverse) out.has_split_reverses = true;
      auto vr = step_vectors(net, Step{{r, 1}});
      if (vr.eff != -va.eff) {
        verdict.is_reverse = false;
        verdict.is_strict_reverse = false;
        verdict.detail = r.to_string() + " does not undo the effect of " + a.to_string();
        break;
      }
      if (vr.pre != va.post || vr.post != va.pre) {
        verdict.is_strict_reverse = false;
        verdict.detail = r.to_string() + " is a reverse but not strict";
      }
    }
    all_reverse = all_reverse && verdict.is_reverse;
    all_strict = all_strict && verdict.is_strict_reverse;
    out.per_action[a] = verdict;
  }
  out.has_reverses = all_reverse && !out.per_action.empty();
  out.has_strict_reverses = all_strict && !out.per_action.empty();
  return out;
}

}  // namespace steprev

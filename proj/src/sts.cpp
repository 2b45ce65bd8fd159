#include "steprev/sts.hpp"

#include <algorithm>
#include <deque>

namespace steprev {

void StepTransitionSystem::check_well_formed() const {
  if (initials.empty()) throw Error(ErrorCode::UnknownState, "no initial state");
  for (const auto& s : initials)
    if (!states.count(s)) throw Error(ErrorCode::UnknownState, "initial " + s);
  for (const auto& t : transitions) {
    if (!states.count(t.src)) throw Error(ErrorCode::UnknownState, t.src);
    if (!states.count(t.dst)) throw Error(ErrorCode::UnknownState, t.dst);
    for (const auto& [a, n] : t.step.entries()) {
      if (!actions.count(a)) throw Error(ErrorCode::UnknownAction, a.to_string());
      if (n <= 0) throw Error(ErrorCode::SchemaError, "non-positive step entry");
    }
  }
}

std::vector<const Transition*> StepTransitionSystem::out(const std::string& s) const {
  std::vector<const Transition*> result;
  // transitions is ordered by (src, step, dst), so the range scan is sorted
  auto it = transitions.lower_bound(Transition{s, {}, {}});
  for (; it != transitions.end() && it->src == s; ++it) result.push_back(&*it);
  return result;
}

StepTransitionSystem restrict_sts(const StepTransitionSystem& sts, RestrictMode mode) {
  StepTransitionSystem out = sts;
  out.transitions.clear();
  for (const auto& t : sts.transitions) {
    bool keep = false;
    switch (mode) {
      case RestrictMode::Seq: keep = t.step.total() <= 1; break;
      case RestrictMode::Set: keep = t.step.is_set(); break;
      case RestrictMode::Spike: keep = t.step.entries().size() <= 1; break;
    }
    if (keep) out.transitions.insert(t);
  }
  return out;
}

StepTransitionSystem restrict_sts(const StepTransitionSystem& sts,
                                  const std::set<ActionName>& subset) {
  for (const auto& a : subset)
    if (!sts.actions.count(a)) throw Error(ErrorCode::UnknownAction, a.to_string());
  StepTransitionSystem out = sts;
  out.actions = subset;
  out.transitions.clear();
  for (const auto& t : sts.transitions) {
    bool keep = true;
    for (const auto& [a, n] : t.step.entries())
      if (!subset.count(a)) { keep = false; break; }
    if (keep) out.transitions.insert(t);
  }
  return out;
}

std::optional<std::string> successor(const StepTransitionSystem& sts, const std::string& s,
                                     const Step& alpha) {
  std::optional<std::string> found;
  for (const Transition* t : sts.out(s)) {
    if (t->step != alpha) continue;
    if (found && *found != t->dst)
      throw Error(ErrorCode::ForwardDeterminismViolated,
                  s + " -" + step_literal(alpha) + "-> {" + *found + ", " + t->dst + "}");
    found = t->dst;
  }
  return found;
}

std::set<std::string> reachable_from(const StepTransitionSystem& sts,
                                     const std::vector<std::string>& seeds) {
  std::set<std::string> seen(seeds.begin(), seeds.end());
  std::deque<std::string> work(seeds.begin(), seeds.end());
  while (!work.empty()) {
    std::string s = work.front();
    work.pop_front();
    for (const Transition* t : sts.out(s))
      if (seen.insert(t->dst).second) work.push_back(t->dst);
  }
  return seen;
}

std::set<std::string> pred_closure(const StepTransitionSystem& sts, const std::string& s) {
  if (!sts.states.count(s)) throw Error(ErrorCode::UnknownState, s);
  std::map<std::string, std::vector<std::string>> preds;
  for (const auto& t : sts.transitions) preds[t.dst].push_back(t.src);
  std::set<std::string> seen{s};
  std::deque<std::string> work{s};
  while (!work.empty()) {
    std::string cur = work.front();
    work.pop_front();
    for (const auto& p : preds[cur])
      if (seen.insert(p).second) work.push_back(p);
  }
  return seen;
}

std::set<std::string> home_states(const StepTransitionSystem& sts) {
  std::set<std::string> homes;
  for (const auto& s : sts.states)
    if (pred_closure(sts, s) == sts.states) homes.insert(s);
  return homes;
}

bool is_home_cover(const StepTransitionSystem& sts, const std::set<std::string>& cover) {
  std::set<std::string> covered;
  for (const auto& s : cover) {
    auto pred = pred_closure(sts, s);
    covered.insert(pred.begin(), pred.end());
  }
  return covered == sts.states;
}

StepTransitionSystem component(const StepTransitionSystem& sts, const std::string& r) {
  if (!sts.states.count(r)) throw Error(ErrorCode::UnknownState, r);
  auto keep = reachable_from(sts, {r});
  StepTransitionSystem out;
  out.states = keep;
  out.actions = sts.actions;
  out.initials = {r};
  for (const auto& t : sts.transitions)
    if (keep.count(t.src)) out.transitions.insert(t);
  return out;
}

namespace {

MatchResult fail(std::string witness) {
  MatchResult r;
  r.ok = false;
  r.witness = std::move(witness);
  return r;
}

}  // namespace

MatchResult check_inclusion(const StepTransitionSystem& a, const StepTransitionSystem& b) {
  for (const auto& t : a.actions)
    if (!b.actions.count(t))
      return fail("MissingAction: " + t.to_string() + " not in target alphabet");
  if (a.initials.size() != b.initials.size())
    return fail("StateCountMismatch: initial lists differ in length");
  MatchResult r;
  r.ok = true;
  std::deque<std::string> work;
  for (size_t i = 0; i < a.initials.size(); ++i) {
    auto [it, fresh] = r.psi.emplace(a.initials[i], b.initials[i]);
    if (!fresh && it->second != b.initials[i])
      return fail("InitialMismatch: " + a.initials[i] + " paired with both " + it->second +
                  " and " + b.initials[i]);
    if (fresh) work.push_back(a.initials[i]);
  }
  // forced BFS: ψ is unique because a is reachable and b forward-deterministic
  while (!work.empty()) {
    std::string s = work.front();
    work.pop_front();
    for (const Transition* t : a.out(s)) {
      auto image = successor(b, r.psi.at(s), t->step);
      if (!image)
        return fail("MissingImage: " + t->src + " -" + step_literal(t->step) + "-> " + t->dst +
                    " has no image at " + r.psi.at(s));
      auto [it, fresh] = r.psi.emplace(t->dst, *image);
      if (fresh)
        work.push_back(t->dst);
      else if (it->second != *image)
        return fail("ImageClash: " + t->dst + " forced to both " + it->second + " and " + *image);
    }
  }
  if (r.psi.size() != a.states.size())
    return fail("Unreached: some source state is unreachable from the initials");
  if (a.states.size() != b.states.size())
    return fail("StateCountMismatch: " + std::to_string(a.states.size()) + " vs " +
                std::to_string(b.states.size()));
  std::set<std::string> image;
  for (const auto& [s, t] : r.psi)
    if (!image.insert(t).second) return fail("NotInjective: two states map to " + t);
  return r;
}

MatchResult check_isomorphism(const StepTransitionSystem& a, const StepTransitionSystem& b) {
  MatchResult fwd = check_inclusion(a, b);
  if (!fwd) return fwd;
  for (const auto& t : b.actions)
    if (!a.actions.count(t))
      return fail("MissingAction: " + t.to_string() + " only in target alphabet");
  if (a.transitions.size() != b.transitions.size())
    return fail("ExtraTransition: transition counts differ (" +
                std::to_string(a.transitions.size()) + " vs " +
                std::to_string(b.transitions.size()) + ")");
  // ψ carries every a-transition to a distinct b-transition; equal counts make
  // the image exhaustive, so both inclusions hold
  return fwd;
}

}  // namespace steprev

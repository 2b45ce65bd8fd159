#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "steprev/vec.hpp"

namespace steprev {

struct Transition {
  std::string src;
  Step step;
  std::string dst;

  auto operator<=>(const Transition&) const = default;
};

/// Step transition system (S, T, ->, S0). initials is ordered and non-empty;
/// a singleton list is the ordinary single-initial case.
struct StepTransitionSystem {
  std::set<std::string> states;
  std::set<ActionName> actions;
  std::set<Transition> transitions;
  std::vector<std::string> initials;

  void check_well_formed() const;  // throws UnknownState / UnknownAction

  /// Outgoing transitions of s, in (step, target) order.
  std::vector<const Transition*> out(const std::string& s) const;
};

enum class RestrictMode { Seq, Set, Spike };

/// Keep only transitions whose step passes the mode filter (|α| <= 1, α a set,
/// |supp(α)| <= 1). States, actions and initials are unchanged.
StepTransitionSystem restrict_sts(const StepTransitionSystem& sts, RestrictMode mode);

/// Keep only transitions whose step is supported on the action subset; the
/// declared alphabet shrinks to the subset.
StepTransitionSystem restrict_sts(const StepTransitionSystem& sts,
                                  const std::set<ActionName>& subset);

/// Unique target of (s, α, .), or nullopt. Throws if FD is violated at (s, α).
std::optional<std::string> successor(const StepTransitionSystem& sts, const std::string& s,
                                     const Step& alpha);

/// Forward closure of a set of seed states.
std::set<std::string> reachable_from(const StepTransitionSystem& sts,
                                     const std::vector<std::string>& seeds);

/// Backward closure pred(s): all states from which s is reachable.
std::set<std::string> pred_closure(const StepTransitionSystem& sts, const std::string& s);

std::set<std::string> home_states(const StepTransitionSystem& sts);
bool is_home_cover(const StepTransitionSystem& sts, const std::set<std::string>& cover);

/// Component Σ_r: restriction to the states reachable from r, with r as the
/// single initial state.
StepTransitionSystem component(const StepTransitionSystem& sts, const std::string& r);

struct MatchResult {
  bool ok = false;
  std::map<std::string, std::string> psi;  // forced state map a -> b
  std::string witness;                     // non-empty iff !ok

  explicit operator bool() const { return ok; }
};

/// Inclusion a ⊴ b: the forced BFS map ψ from initials exists, is a bijection
/// on states, and carries every a-transition to a b-transition.
MatchResult check_inclusion(const StepTransitionSystem& a, const StepTransitionSystem& b);

/// Isomorphism: inclusion both ways; equivalently forced ψ matches outgoing
/// transition sets exactly.
MatchResult check_isomorphism(const StepTransitionSystem& a, const StepTransitionSystem& b);

}  // namespace steprev

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "steprev/sts.hpp"
#include "steprev/vec.hpp"

namespace steprev {

/// Place/transition net, optionally with weighted read arcs. A net with an
/// empty read map is a plain PT-net. initial_markings is ordered, non-empty;
/// several entries model one unmarked net started from several markings.
struct PTNet {
  std::vector<std::string> places;  // declaration order, kept for output
  std::set<ActionName> actions;
  std::map<std::pair<std::string, ActionName>, Int> pre;   // F(p, a) > 0 entries
  std::map<std::pair<ActionName, std::string>, Int> post;  // F(a, p) > 0 entries
  std::map<std::pair<std::string, ActionName>, Int> read;  // R(p, a), exact-match
  std::vector<Marking> initial_markings;

  bool has_read_arcs() const { return !read.empty(); }
  bool has_place(const std::string& p) const;

  Int f_pre(const std::string& p, const ActionName& a) const;
  Int f_post(const ActionName& a, const std::string& p) const;
  void set_pre(const std::string& p, const ActionName& a, const Int& w);
  void set_post(const ActionName& a, const std::string& p, const Int& w);

  /// Throws InvalidNet unless weights are positive, endpoints declared,
  /// markings non-negative, and every action either consumes from some place
  /// or carries a read arc (the standing no-free-autoconcurrency assumption).
  void check_well_formed() const;
};

using PTRNet = PTNet;

struct StepVectors {
  Marking pre;    // Σ α(a) F(p,a)
  Marking post;   // Σ α(a) F(a,p)
  PlaceVec eff;   // post - pre
};

StepVectors step_vectors(const PTNet& net, const Step& alpha);

/// PRE(α) <= M, and for read arcs: M(p) = R(p,a) for every a in supp(α) with
/// R(p,a) defined.
bool enabled(const PTNet& net, const Marking& m, const Step& alpha);

Marking fire(const PTNet& net, const Marking& m, const Step& alpha);

/// All enabled steps with 1 <= |α| <= max_step_size. Throws StepBoundExceeded
/// when some enabled step of size max_step_size extends to an enabled step of
/// size max_step_size + 1 (the bound truncated real behaviour).
std::set<Step> enabled_steps(const PTNet& net, const Marking& m, int max_step_size);

struct CrgLimits {
  long max_states = 100000;
  int max_step_size = 8;
};

struct CrgResult {
  StepTransitionSystem sts;  // states are canonical marking literals
  std::map<std::string, Marking> marking_of;
  enum class LimitsHit { None, States, StepSize } limits_hit = LimitsHit::None;
};

/// BFS over enabled steps from each initial marking; ∅-loops are added at
/// every state. Fails loudly (StateBoundExceeded / StepBoundExceeded) when a
/// limit is hit, so a returned graph is always complete.
CrgResult build_crg(const PTNet& net, const CrgLimits& limits = {});

/// N|_T': actions restricted, arcs touching dropped actions removed, places
/// and markings unchanged.
PTNet subnet(const PTNet& net, const std::set<ActionName>& keep);

struct ReverseStructure {
  struct PerAction {
    bool is_reverse = false;        // eff(ā) = -eff(a) for every listed ā
    bool is_strict_reverse = false; // PRE(ā) = POST(a) and POST(ā) = PRE(a)
    std::string detail;
  };
  std::map<ActionName, PerAction> per_action;
  bool has_reverses = false;
  bool has_strict_reverses = false;
  bool has_split_reverses = false;  // some pairing target is indexed
};

/// Verify eff/PRE/POST equations per forward action against its claimed
/// reverse set. Throws IncompletePairing when a forward action has no entry.
ReverseStructure check_reverse_structure(
    const PTNet& net, const std::map<ActionName, std::set<ActionName>>& pairing);

}  // namespace steprev

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "steprev/cest.hpp"
#include "steprev/petri.hpp"
#include "steprev/simplex.hpp"
#include "steprev/sts.hpp"

namespace steprev {

/// ≤-minimal steps not enabled at s whose every single-action decrement is
/// enabled (or empty). Enumeration is capped per action at (max multiplicity
/// over enabled steps) + 1; a place disabling a minimal step disables every
/// larger one because PRE is monotone.
std::set<Step> minimal_disabled_steps(const StepTransitionSystem& sts, const std::string& s,
                                      long cap_product_limit = 2000000);

struct SeparationInstance {
  enum class Kind { EventState, StateState } kind = Kind::EventState;
  std::string s;
  Step step;        // event-state: the disabled step
  std::string s2;   // state-state only
  int branch = 0;   // state-state: 0 = M_s - M_s2 >= 1, 1 = the mirror

  std::string describe() const;
};

/// Candidate place: per-action in/out weights plus the token count at every
/// state (determined by one base value per undirected component).
struct PlaceSolution {
  std::map<ActionName, Int> f_in;   // F(p, t)
  std::map<ActionName, Int> f_out;  // F(t, p)
  std::map<std::string, Int> tokens;  // state -> M_s(p), all states

  Int in(const ActionName& a) const;
  Int out(const ActionName& a) const;
};

struct UnsolvableReport {
  SeparationInstance instance;
  std::vector<Rat> certificate;  // Farkas multipliers of the instance LP
  std::string detail;
};

struct SynthesisOutcome {
  bool solved = false;
  PTNet net;                                // valid iff solved
  std::map<std::string, Marking> psi;       // state -> marking, valid iff solved
  std::optional<UnsolvableReport> failure;  // set iff !solved
  std::string note;
};

struct SynthesisConfig {
  bool verify = true;        // re-check by CRG isomorphism per component
  int seq_cap = kDefaultSeqCap;
  long max_states = 100000;
};

/// Shared LP context for one system: displacements, cycle basis, the
/// homogeneous constraint block (cycle consistency, non-negativity, enabling).
class SeparationContext {
 public:
  explicit SeparationContext(const StepTransitionSystem& sts);

  const StepTransitionSystem& sts() const { return *sts_; }
  const DisplacementMap& disp() const { return disp_; }
  const std::vector<ActionName>& alphabet() const { return alphabet_; }

  /// Solve the base constraints plus the instance's separating inequality.
  std::variant<PlaceSolution, FarkasRay> solve(const SeparationInstance& inst) const;

  /// Does an existing place already witness the instance?
  bool witnesses(const PlaceSolution& p, const SeparationInstance& inst) const;

  /// Substitution check of every base constraint plus the instance's
  /// separating inequality; used by tests to validate integer scaling.
  bool satisfies_all(const PlaceSolution& p, const SeparationInstance& inst) const;

  /// δ(s) - δ(s2) as a dense vector (state-state grouping key).
  IntVector delta_diff(const std::string& s, const std::string& s2) const;

 private:
  const StepTransitionSystem* sts_;
  DisplacementMap disp_;
  std::vector<ActionName> alphabet_;
  std::map<ActionName, int> col_;
  IntMatrix cycle_rows_;
  LinearProgram base_;  // homogeneous block over (f_in, f_out, bases)
  int n_vars_ = 0;

  void append_instance_row(LinearProgram& lp, const SeparationInstance& inst) const;
  PlaceSolution to_place(const RatVector& x) const;
  friend struct SeparationContextTestAccess;
};

/// Region synthesis of a (multi-initial) step transition system. Solved
/// outcomes are always re-verified by CRG isomorphism per component unless
/// config.verify is off; a verification mismatch throws VerificationFailed.
SynthesisOutcome synthesize(const StepTransitionSystem& sts, const SynthesisConfig& config = {});

/// Decide solvability of Σ^mixrev via the equivalence with solvability of Σ
/// and of r̄Σ over the cover: synthesize both, combine on success.
SynthesisOutcome decide_mixed_reversibility(const StepTransitionSystem& sts,
                                            const std::set<std::string>& cover,
                                            const SynthesisConfig& config = {});

/// Decide solvability of Σ^rev for set systems with a home state: solve the
/// mixed reversal, then cut mixed steps with the step-bound transform.
SynthesisOutcome decide_direct_reversibility_set(const StepTransitionSystem& sts,
                                                 const SynthesisConfig& config = {});

struct StepFiniteness {
  bool step_finite = true;  // every finite system is
  Int max_step_size = 0;
};

StepFiniteness is_step_finite(const StepTransitionSystem& sts);

}  // namespace steprev

#pragma once

#include "steprev/petri.hpp"
#include "steprev/reversal.hpp"
#include "steprev/sts.hpp"
#include "steprev/synthesis.hpp"

namespace steprev {

struct TransformReport {
  PTNet output;
  std::string spec;  // which reversal of which system the output must realize
  bool pass = false;
  std::string witness;                 // non-empty iff !pass
  std::map<std::string, Marking> psi;  // state of the target system -> marking
  long added_places = 0;
  long added_actions = 0;
};

/// Step-bound transform: given a net solving Σ^mixrev, add places p_{a,b̄}
/// (k tokens, unit self-loop to a, weight-k self-loop to b̄) that forbid
/// mixing forward and reverse actions in one step. Output solves Σ^setrev.
/// k must be at least the max step size of Σ; defaults to exactly that.
TransformReport mix2set_transform(const PTNet& net, const StepTransitionSystem& forward_sts,
                                  std::optional<Int> k = std::nullopt,
                                  const CrgLimits& limits = {});

/// Strict-reverse combination: N' solves Σ, N'' solves r̄Σ over the cover.
/// Arcs follow PRE(a) = PRE'(a) ⊎ POST''(ā) and its three mirrors; initial
/// marking ψ'(s0) ⊎ ψ''(s0). Output solves Σ^mixrev and has strict reverses.
TransformReport combine_reversal(const StepTransitionSystem& sts,
                                 const std::set<std::string>& cover, const PTNet& n1,
                                 const PTNet& n2, const CrgLimits& limits = {});

/// Arc normalization: wherever F(p,ā) < F(a,p), raise both self-loop sides so
/// that PRE(ā) >= POST(a) and POST(ā) >= PRE(a), preserving effects exactly.
/// Idempotent. Requires eff(ā) = -eff(a) for every forward a.
PTNet normalize_reverse_arcs(const PTNet& net);

/// Copy-place lift: from a net over T ∪ T̄ whose CRG sits between the reversed
/// spike restriction and the mixed reverse of Σ, produce a net solving Σ^mixrev
/// by giving each offending (p, ā) pair a suitably rewired copy place p_a.
TransformReport lift_to_mixed(const PTNet& net, const StepTransitionSystem& forward_sts,
                              const CrgLimits& limits = {});

/// Mutex places p_{a,b̄} with one token and four unit self-loop arcs, for a
/// set system Σ: cuts every mixed step, turning a Σ^mixrev net into a Σ^rev one.
TransformReport add_direction_mutexes(const PTNet& net, const StepTransitionSystem& forward_sts,
                                      const CrgLimits& limits = {});

/// Marking-indexed split reverse with read arcs: for every reachable M and
/// ≤-maximal α ∈ income(M), fresh actions ā_{α,M,i} with strict-reverse arcs
/// on P, read arcs pinning all of M, plus the two mutex gadget families.
/// Output is a read-arc net whose CRG is a split reverse of CRG_N.
TransformReport split_reverse_with_read_arcs(const PTNet& net, const CrgLimits& limits = {});

/// Check that candidate_net's CRG, with the scaffolding places projected away,
/// is a split reverse of original_net's CRG under the given SEQ policy.
SplitVerdict verify_net_split_reverse(const PTNet& candidate_net, const PTNet& original_net,
                                      SeqPolicy policy, const CrgLimits& limits = {});

}  // namespace steprev

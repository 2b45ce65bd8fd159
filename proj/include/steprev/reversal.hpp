#pragma once

#include "steprev/cest.hpp"
#include "steprev/sts.hpp"

namespace steprev {

enum class ReversalMode { Direct, Set, Mixed };

/// Σ^rev / Σ^setrev / Σ^mixrev. Requires the input to pass all CEST axioms.
/// direct: add (s⊕α, ᾱ, s) per transition; set: only when α is a set;
/// mixed: transition set replaced by {(s⊕α, ᾱ+β, s⊕β) : s -(α+β)->}, which
/// subsumes the originals (α = ∅) and the direct reverses (β = ∅).
StepTransitionSystem reverse(const StepTransitionSystem& sts, ReversalMode mode);

/// r̄Σ over a home cover R: transitions {(s', ᾱ, s) : s -α-> s'} over the
/// reversed alphabet, initials R. Component r̄Σ_r is component(result, r); its
/// state set is the backward closure pred(r) of the forward system.
StepTransitionSystem reverse_multi(const StepTransitionSystem& sts,
                                   const std::set<std::string>& cover);

enum class SeqPolicy { Strict, AfterNoidx };

struct SplitReverseCandidate {
  StepTransitionSystem sts;  // alphabet T ⊎ T' with T' indexed reverses
  SeqPolicy seq_policy = SeqPolicy::AfterNoidx;
};

struct SplitVerdict {
  bool pass = false;
  std::string witness;
  explicit operator bool() const { return pass; }
};

/// Split-reverse check: (i) T and noidx(T') disjoint; (ii) the noidx image of
/// the candidate equals reverse(original, direct) exactly (same states, same
/// initials, equal transition sets after noidx); (iii) SEQ per policy, on the
/// indexed system (strict) or on the noidx image (after-noidx).
SplitVerdict verify_split_reverse(const SplitReverseCandidate& candidate,
                                  const StepTransitionSystem& original);

}  // namespace steprev

#include "steprev/reversal.hpp"

#include <functional>

namespace steprev {

namespace {

std::set<ActionName> reversed_alphabet(const std::set<ActionName>& actions) {
  std::set<ActionName> out;
  for (const auto& a : actions) out.insert(rev(a));
  return out;
}

void require_cest(const StepTransitionSystem& sts) {
  auto report = validate_cest(sts);
  if (!report.all_pass()) {
    std::string which;
    for (const auto* v : {&report.el, &report.rea, &report.seq, &report.fd, &report.ce})
      if (!v->pass) which = v->witness;
    throw Error(ErrorCode::NotCest, which);
  }
}

/// All splits γ = α + β in both orders, as (α, β) pairs.
void for_each_split(const Step& gamma, const std::function<void(const Step&, const Step&)>& fn) {
  std::vector<std::pair<ActionName, Int>> items(gamma.entries().begin(), gamma.entries().end());
  Step alpha;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == items.size()) {
      fn(alpha, gamma - alpha);
      return;
    }
    for (Int c = 0; c <= items[i].second; ++c) {
      alpha.set(items[i].first, c);
      rec(i + 1);
    }
    alpha.set(items[i].first, 0);
  };
  rec(0);
}

}  // namespace

StepTransitionSystem reverse(const StepTransitionSystem& sts, ReversalMode mode) {
  require_cest(sts);
  StepTransitionSystem out;
  out.states = sts.states;
  out.initials = sts.initials;
  out.actions = sts.actions;
  for (const auto& a : reversed_alphabet(sts.actions)) out.actions.insert(a);
  if (mode == ReversalMode::Mixed) {
    // transition set replaced wholesale: (s⊕α, ᾱ+β, s⊕β) over all splits
    for (const auto& t : sts.transitions) {
      for_each_split(t.step, [&](const Step& alpha, const Step& beta) {
        auto src = successor(sts, t.src, alpha);
        auto dst = successor(sts, t.src, beta);
        if (!src || !dst) return;  // SEQ guarantees presence; guarded anyway
        out.transitions.insert({*src, reverse_step(alpha) + beta, *dst});
      });
    }
    return out;
  }
  out.transitions = sts.transitions;
  for (const auto& t : sts.transitions) {
    if (mode == ReversalMode::Set && !t.step.is_set()) continue;
    out.transitions.insert({t.dst, reverse_step(t.step), t.src});
  }
  return out;
}

StepTransitionSystem reverse_multi(const StepTransitionSystem& sts,
                                   const std::set<std::string>& cover) {
  if (!is_home_cover(sts, cover)) {
    std::string list;
    for (const auto& s : cover) list += (list.empty() ? "" : ",") + s;
    throw Error(ErrorCode::NotAHomeCover, "{" + list + "}");
  }
  StepTransitionSystem out;
  out.states = sts.states;
  out.actions = reversed_alphabet(sts.actions);
  out.initials.assign(cover.begin(), cover.end());
  for (const auto& t : sts.transitions)
    out.transitions.insert({t.dst, reverse_step(t.step), t.src});
  return out;
}

namespace {

AxiomVerdict seq_only(const StepTransitionSystem& sts) {
  auto report = validate_cest(sts);
  return report.seq;
}

}  // namespace

SplitVerdict verify_split_reverse(const SplitReverseCandidate& candidate,
                                  const StepTransitionSystem& original) {
  require_cest(original);
  const StepTransitionSystem& cand = candidate.sts;

  std::set<ActionName> forward, indexed;
  for (const auto& a : cand.actions) {
    if (a.kind == ActionKind::IndexedReverse)
      indexed.insert(a);
    else
      forward.insert(a);
  }
  for (const auto& a : indexed)
    if (forward.count(noidx(a)) || original.actions.count(noidx(a)))
      return {false, "alphabet overlap after noidx: " + a.to_string()};

  StepTransitionSystem image = cand;
  image.actions.clear();
  image.transitions.clear();
  for (const auto& a : cand.actions) image.actions.insert(noidx(a));
  for (const auto& t : cand.transitions) image.transitions.insert({t.src, noidx(t.step), t.dst});

  StepTransitionSystem direct = reverse(original, ReversalMode::Direct);
  if (image.states != direct.states)
    return {false, "state sets of the noidx image and the direct reverse differ"};
  if (image.initials != direct.initials) return {false, "initial states differ"};
  for (const auto& t : direct.transitions)
    if (!image.transitions.count(t))
      return {false, "missing after noidx: " + t.src + " -" + step_literal(t.step) + "-> " + t.dst};
  for (const auto& t : image.transitions)
    if (!direct.transitions.count(t))
      return {false, "extra after noidx: " + t.src + " -" + step_literal(t.step) + "-> " + t.dst};

  const StepTransitionSystem& seq_target =
      candidate.seq_policy == SeqPolicy::Strict ? cand : image;
  AxiomVerdict seq = seq_only(seq_target);
  if (!seq.pass) return {false, "SEQ: " + seq.witness};
  return {true, ""};
}

}  // namespace steprev

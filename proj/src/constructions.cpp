#include "steprev/constructions.hpp"

#include <algorithm>

namespace steprev {

namespace {

std::set<ActionName> forward_actions(const std::set<ActionName>& actions) {
  std::set<ActionName> out;
  for (const auto& a : actions)
    if (a.is_forward()) out.insert(a);
  return out;
}

int step_limit_for(const StepTransitionSystem& sts) {
  Int k = 0;
  for (const auto& t : sts.transitions) k = std::max(k, t.step.total());
  return std::max(1, static_cast<int>(k));
}

/// Verify that the net's CRG realizes the target system; fill psi on success.
bool verify_against(const PTNet& net, const StepTransitionSystem& target, CrgLimits limits,
                    std::map<std::string, Marking>* psi, std::string* witness) {
  limits.max_step_size = step_limit_for(target);
  CrgResult crg;
  try {
    crg = build_crg(net, limits);
  } catch (const Error& e) {
    *witness = std::string("exploration failed: ") + e.what();
    return false;
  }
  auto match = check_isomorphism(target, crg.sts);
  if (!match) {
    *witness = match.witness;
    return false;
  }
  if (psi) {
    psi->clear();
    for (const auto& [s, id] : match.psi) (*psi)[s] = crg.marking_of.at(id);
  }
  return true;
}

std::string fresh_place(const PTNet& net, std::string name) {
  while (net.has_place(name)) name += "'";
  return name;
}

}  // namespace

TransformReport mix2set_transform(const PTNet& net, const StepTransitionSystem& forward_sts,
                                  std::optional<Int> k_opt, const CrgLimits& limits) {
  StepTransitionSystem mixrev = reverse(forward_sts, ReversalMode::Mixed);
  std::map<std::string, Marking> psi_in;
  std::string witness;
  if (!verify_against(net, mixrev, limits, &psi_in, &witness))
    throw Error(ErrorCode::PreconditionFailed,
                "input does not realize the mixed reversal: " + witness);
  Int k_min = is_step_finite(forward_sts).max_step_size;
  Int k = k_opt.value_or(k_min);
  if (k < k_min)
    throw Error(ErrorCode::PreconditionFailed, "step bound below the max step size of the system");

  TransformReport report;
  report.spec = "set reversal of the forward system";
  report.output = net;
  std::vector<std::string> fresh;
  for (const auto& a : forward_actions(net.actions)) {
    for (const auto& b : net.actions) {
      if (b.kind != ActionKind::Reverse) continue;
      std::string p = fresh_place(report.output,
                                  "pab(" + a.to_string() + "," + b.to_string() + ")");
      report.output.places.push_back(p);
      fresh.push_back(p);
      report.output.set_pre(p, a, 1);
      report.output.set_post(a, p, 1);
      report.output.set_pre(p, b, k);
      report.output.set_post(b, p, k);
      for (auto& m0 : report.output.initial_markings) m0.set(p, k);
      ++report.added_places;
    }
  }

  StepTransitionSystem setrev = reverse(forward_sts, ReversalMode::Set);
  report.pass = verify_against(report.output, setrev, limits, &report.psi, &report.witness);
  return report;
}

TransformReport combine_reversal(const StepTransitionSystem& sts,
                                 const std::set<std::string>& cover, const PTNet& n1,
                                 const PTNet& n2_in, const CrgLimits& limits) {
  std::map<std::string, Marking> psi1, psi2;
  std::string witness;
  if (!verify_against(n1, sts, limits, &psi1, &witness))
    throw Error(ErrorCode::PreconditionFailed, "first net does not solve the system: " + witness);
  StepTransitionSystem rsts = reverse_multi(sts, cover);
  PTNet n2 = n2_in;
  // disjoint place sets; rename second-net places on collision
  std::map<std::string, std::string> renamed;
  for (auto& p : n2.places) {
    if (!n1.has_place(p)) continue;
    std::string np = p + "#2";
    while (n1.has_place(np) || n2.has_place(np)) np += "'";
    renamed[p] = np;
  }
  if (!renamed.empty()) {
    auto fix = [&](const std::string& p) {
      auto it = renamed.find(p);
      return it == renamed.end() ? p : it->second;
    };
    PTNet fixed;
    fixed.actions = n2.actions;
    for (const auto& p : n2.places) fixed.places.push_back(fix(p));
    for (const auto& [key, w] : n2.pre) fixed.pre[{fix(key.first), key.second}] = w;
    for (const auto& [key, w] : n2.post) fixed.post[{key.first, fix(key.second)}] = w;
    for (const auto& [key, w] : n2.read) fixed.read[{fix(key.first), key.second}] = w;
    for (const auto& m : n2.initial_markings) {
      Marking nm;
      for (const auto& [p, v] : m.entries()) nm.set(fix(p), v);
      fixed.initial_markings.push_back(nm);
    }
    n2 = fixed;
  }
  if (!verify_against(n2, rsts, limits, &psi2, &witness))
    throw Error(ErrorCode::PreconditionFailed,
                "second net does not solve the reverse system: " + witness);

  TransformReport report;
  report.spec = "mixed reversal of the forward system, with strict reverses";
  PTNet& out = report.output;
  out.places = n1.places;
  for (const auto& p : n2.places) out.places.push_back(p);
  for (const auto& a : sts.actions) {
    if (!a.is_forward()) throw Error(ErrorCode::PreconditionFailed, "system alphabet not forward");
    ActionName ra = rev(a);
    out.actions.insert(a);
    out.actions.insert(ra);
    // PRE(a) = PRE'(a) ⊎ POST''(ā); POST(a) = POST'(a) ⊎ PRE''(ā); mirrored for ā
    for (const auto& p : n1.places) {
      out.set_pre(p, a, n1.f_pre(p, a));
      out.set_post(a, p, n1.f_post(a, p));
      out.set_pre(p, ra, n1.f_post(a, p));
      out.set_post(ra, p, n1.f_pre(p, a));
    }
    for (const auto& p : n2.places) {
      out.set_pre(p, a, n2.f_post(ra, p));
      out.set_post(a, p, n2.f_pre(p, ra));
      out.set_pre(p, ra, n2.f_pre(p, ra));
      out.set_post(ra, p, n2.f_post(ra, p));
    }
  }
  for (const auto& s0 : sts.initials)
    out.initial_markings.push_back(combine(psi1.at(s0), psi2.at(s0), CombineMode::DisjointUnion));

  std::map<ActionName, std::set<ActionName>> pairing;
  for (const auto& a : sts.actions) pairing[a] = {rev(a)};
  auto structure = check_reverse_structure(out, pairing);
  if (!structure.has_strict_reverses) {
    report.pass = false;
    report.witness = "combined net lost strict reverses";
    return report;
  }

  StepTransitionSystem mixrev = reverse(sts, ReversalMode::Mixed);
  report.pass = verify_against(out, mixrev, limits, &report.psi, &report.witness);
  if (report.pass) {
    for (const auto& s : sts.states) {
      Marking expect = combine(psi1.at(s), psi2.at(s), CombineMode::DisjointUnion);
      if (report.psi.at(s) != expect) {
        report.pass = false;
        report.witness = "marking map disagrees with the piecewise union at " + s;
        break;
      }
    }
  }
  return report;
}

PTNet normalize_reverse_arcs(const PTNet& net) {
  auto fwd_set = forward_actions(net.actions);
  if (fwd_set.empty()) throw Error(ErrorCode::NotAReverseNet, "no forward actions");
  for (const auto& a : net.actions)
    if (a.kind == ActionKind::IndexedReverse)
      throw Error(ErrorCode::NotAReverseNet, "indexed action " + a.to_string());
  for (const auto& a : fwd_set) {
    ActionName ra = rev(a);
    if (!net.actions.count(ra))
      throw Error(ErrorCode::NotAReverseNet, "missing reverse of " + a.to_string());
    auto va = step_vectors(net, Step{{a, 1}});
    auto vr = step_vectors(net, Step{{ra, 1}});
    if (vr.eff != -va.eff)
      throw Error(ErrorCode::NotAReverseNet,
                  rev(a).to_string() + " does not undo the effect of " + a.to_string());
  }
  PTNet out = net;
  for (const auto& a : fwd_set) {
    ActionName ra = rev(a);
    for (const auto& p : net.places) {
      if (net.f_pre(p, ra) < net.f_post(a, p)) {
        out.set_pre(p, ra, net.f_post(a, p));
        out.set_post(ra, p, net.f_pre(p, a));
      }
    }
  }
  return out;
}

TransformReport lift_to_mixed(const PTNet& net, const StepTransitionSystem& forward_sts,
                              const CrgLimits& limits) {
  StepTransitionSystem mixrev = reverse(forward_sts, ReversalMode::Mixed);
  StepTransitionSystem spikerev =
      reverse(restrict_sts(forward_sts, RestrictMode::Spike), ReversalMode::Direct);
  CrgLimits in_limits = limits;
  in_limits.max_step_size = step_limit_for(mixrev);
  CrgResult crg = build_crg(net, in_limits);
  if (auto m = check_inclusion(spikerev, crg.sts); !m)
    throw Error(ErrorCode::PreconditionFailed,
                "reversed spike restriction not included in the net behaviour: " + m.witness);
  if (auto m = check_inclusion(crg.sts, mixrev); !m)
    throw Error(ErrorCode::PreconditionFailed,
                "net behaviour not included in the mixed reversal: " + m.witness);
  auto fwd_set = forward_actions(net.actions);
  if (auto m = check_isomorphism(forward_sts, build_crg(subnet(net, fwd_set), in_limits).sts); !m)
    throw Error(ErrorCode::PreconditionFailed,
                "forward subnet does not realize the system: " + m.witness);

  PTNet norm = normalize_reverse_arcs(net);
  TransformReport report;
  report.spec = "mixed reversal of the forward system";
  PTNet& out = report.output;
  out = norm;
  // strict reverse arcs on the original places; oversized requirements move
  // to copy places that track the original place in lockstep
  for (const auto& a : fwd_set) {
    ActionName ra = rev(a);
    for (const auto& p : norm.places) {
      out.set_pre(p, ra, norm.f_post(a, p));
      out.set_post(ra, p, norm.f_pre(p, a));
    }
  }
  for (const auto& a : fwd_set) {
    ActionName ra = rev(a);
    for (const auto& p : norm.places) {
      if (norm.f_pre(p, ra) <= norm.f_post(a, p)) continue;
      std::string cp = fresh_place(out, "cp(" + p + "," + a.to_string() + ")");
      out.places.push_back(cp);
      ++report.added_places;
      out.set_pre(cp, ra, norm.f_pre(p, ra));
      out.set_post(ra, cp, norm.f_post(ra, p));
      for (const auto& u : norm.actions) {
        if (u == ra) continue;
        Int eff = norm.f_post(u, p) - norm.f_pre(p, u);
        if (eff > 0)
          out.set_post(u, cp, eff);
        else if (eff < 0)
          out.set_pre(cp, u, -eff);
      }
      for (size_t i = 0; i < out.initial_markings.size(); ++i)
        out.initial_markings[i].set(cp, norm.initial_markings[i].at(p));
    }
  }
  report.pass = verify_against(out, mixrev, limits, &report.psi, &report.witness);
  return report;
}

TransformReport add_direction_mutexes(const PTNet& net, const StepTransitionSystem& forward_sts,
                                      const CrgLimits& limits) {
  for (const auto& t : forward_sts.transitions)
    if (!t.step.is_set())
      throw Error(ErrorCode::NotASetSystem, "non-set step " + step_literal(t.step));
  StepTransitionSystem mixrev = reverse(forward_sts, ReversalMode::Mixed);
  std::string witness;
  if (!verify_against(net, mixrev, limits, nullptr, &witness))
    throw Error(ErrorCode::PreconditionFailed,
                "input does not realize the mixed reversal: " + witness);

  TransformReport report;
  report.spec = "direct reversal of the forward set system";
  report.output = net;
  for (const auto& a : forward_sts.actions) {
    for (const auto& b : forward_sts.actions) {
      ActionName rb = rev(b);
      std::string p = fresh_place(report.output,
                                  "mx(" + a.to_string() + "," + rb.to_string() + ")");
      report.output.places.push_back(p);
      ++report.added_places;
      report.output.set_pre(p, a, 1);
      report.output.set_post(a, p, 1);
      report.output.set_pre(p, rb, 1);
      report.output.set_post(rb, p, 1);
      for (auto& m0 : report.output.initial_markings) m0.set(p, 1);
    }
  }
  StepTransitionSystem direct = reverse(forward_sts, ReversalMode::Direct);
  report.pass = verify_against(report.output, direct, limits, &report.psi, &report.witness);
  return report;
}

SplitVerdict verify_net_split_reverse(const PTNet& candidate_net, const PTNet& original_net,
                                      SeqPolicy policy, const CrgLimits& limits) {
  CrgResult orig = build_crg(original_net, limits);
  CrgLimits cand_limits = limits;
  cand_limits.max_step_size = step_limit_for(orig.sts);
  CrgResult cand;
  try {
    cand = build_crg(candidate_net, cand_limits);
  } catch (const Error& e) {
    return {false, std::string("candidate exploration failed: ") + e.what()};
  }

  // the scaffolding places must stay at their initial counts everywhere, so
  // projecting them away is a bijective renaming
  std::set<std::string> base_places(original_net.places.begin(), original_net.places.end());
  Marking scaffold0;
  for (const auto& [p, v] : candidate_net.initial_markings.at(0).entries())
    if (!base_places.count(p)) scaffold0.set(p, v);
  StepTransitionSystem projected;
  projected.actions = candidate_net.actions;
  std::map<std::string, std::string> rename;
  for (const auto& [id, m] : cand.marking_of) {
    Marking base, extra;
    for (const auto& [p, v] : m.entries())
      (base_places.count(p) ? base : extra).set(p, v);
    if (extra != scaffold0)
      return {false, "scaffolding places drift at " + id};
    rename[id] = base.literal();
    projected.states.insert(base.literal());
  }
  for (const auto& t : cand.sts.transitions)
    projected.transitions.insert({rename.at(t.src), t.step, rename.at(t.dst)});
  for (const auto& s : cand.sts.initials) projected.initials.push_back(rename.at(s));
  if (projected.states.size() != cand.sts.states.size())
    return {false, "projection identifies two reachable markings"};

  return verify_split_reverse({projected, policy}, orig.sts);
}

TransformReport split_reverse_with_read_arcs(const PTNet& net, const CrgLimits& limits) {
  CrgResult crg = build_crg(net, limits);
  Int max_step = 0;
  for (const auto& t : crg.sts.transitions) max_step = std::max(max_step, t.step.total());
  Int n = std::max(Int(1), max_step);

  std::map<std::string, std::set<Step>> income;
  for (const auto& t : crg.sts.transitions)
    if (!t.step.empty()) income[t.dst].insert(t.step);

  TransformReport report;
  report.spec = "split reverse of the net behaviour (read-arc construction)";
  PTNet& out = report.output;
  out = net;

  std::map<std::string, std::vector<std::vector<ActionName>>> groups;  // state -> groups
  for (const auto& [state, steps] : income) {
    const Marking& m = crg.marking_of.at(state);
    for (const auto& alpha : steps) {
      bool maximal = true;
      for (const auto& beta : steps)
        if (alpha != beta && alpha.leq(beta)) {
          maximal = false;
          break;
        }
      if (!maximal) continue;
      std::vector<ActionName> group;
      for (const auto& [a, count] : alpha.entries()) {
        for (Int i = 1; i <= count; ++i) {
          std::string tag = step_literal(alpha) + "@" + state + "#" + i.str();
          ActionName ra = indexed_rev(a.base, tag);
          group.push_back(ra);
          out.actions.insert(ra);
          ++report.added_actions;
          for (const auto& p : net.places) {
            out.set_pre(p, ra, net.f_post(a, p));   // PRE|_P = POST_N(a)
            out.set_post(ra, p, net.f_pre(p, a));   // POST|_P = PRE_N(a)
            out.read[{p, ra}] = m.at(p);            // pin the full marking
          }
        }
      }
      groups[state].push_back(group);
    }
  }

  // mutex against forward actions: a reverse group must fire alone w.r.t. T
  std::set<ActionName> forwards = net.actions;
  for (const auto& [state, gs] : groups)
    for (const auto& group : gs)
      for (const auto& ra : group)
        for (const auto& b : forwards) {
          std::string p = fresh_place(out, "g(" + ra.to_string() + "," + b.to_string() + ")");
          out.places.push_back(p);
          ++report.added_places;
          out.set_pre(p, ra, n);
          out.set_post(ra, p, n);
          out.set_pre(p, b, 1);
          out.set_post(b, p, 1);
          for (auto& m0 : out.initial_markings) m0.set(p, n);
        }
  // mutex between different maximal-step groups pinned to the same marking
  for (const auto& [state, gs] : groups)
    for (size_t i = 0; i < gs.size(); ++i)
      for (size_t j = i + 1; j < gs.size(); ++j)
        for (const auto& t1 : gs[i])
          for (const auto& t2 : gs[j]) {
            std::string p =
                fresh_place(out, "mx(" + t1.to_string() + "," + t2.to_string() + ")");
            out.places.push_back(p);
            ++report.added_places;
            out.set_pre(p, t1, 1);
            out.set_post(t1, p, 1);
            out.set_pre(p, t2, 1);
            out.set_post(t2, p, 1);
            for (auto& m0 : out.initial_markings) m0.set(p, 1);
          }

  SplitVerdict verdict = verify_net_split_reverse(out, net, SeqPolicy::AfterNoidx, limits);
  report.pass = verdict.pass;
  report.witness = verdict.witness;
  if (report.pass) {
    Marking scaffold0;
    std::set<std::string> base_places(net.places.begin(), net.places.end());
    for (const auto& [p, v] : out.initial_markings.at(0).entries())
      if (!base_places.count(p)) scaffold0.set(p, v);
    for (const auto& [id, m] : crg.marking_of) report.psi[id] = m + scaffold0;
  }
  return report;
}

}  // namespace steprev

#include "steprev/synthesis.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "steprev/constructions.hpp"
#include "steprev/reversal.hpp"

namespace steprev {

namespace {

boost::multiprecision::cpp_int lcm_int(const Int& a, const Int& b) {
  return boost::multiprecision::lcm(a, b);
}

}  // namespace

std::set<Step> minimal_disabled_steps(const StepTransitionSystem& sts, const std::string& s,
                                      long cap_product_limit) {
  if (!sts.states.count(s)) throw Error(ErrorCode::UnknownState, s);
  std::set<Step> enabled_here;
  enabled_here.insert(Step{});
  for (const Transition* t : sts.out(s)) enabled_here.insert(t->step);

  std::vector<ActionName> alphabet(sts.actions.begin(), sts.actions.end());
  std::map<ActionName, Int> cap;
  Int product = 1;
  for (const auto& a : alphabet) {
    Int top = 0;
    for (const auto& alpha : enabled_here) top = std::max(top, alpha.at(a));
    cap[a] = top + 1;
    product *= cap[a] + 1;
    if (product > cap_product_limit)
      throw Error(ErrorCode::CapExceeded, "minimal disabled step enumeration too large at " + s);
  }

  std::set<Step> out;
  Step beta;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == alphabet.size()) {
      if (beta.empty() || enabled_here.count(beta)) return;
      for (const auto& [a, n] : beta.entries()) {
        Step less = beta;
        less.add(a, -1);
        if (!enabled_here.count(less)) return;
      }
      out.insert(beta);
      return;
    }
    for (Int c = 0; c <= cap[alphabet[i]]; ++c) {
      beta.set(alphabet[i], c);
      rec(i + 1);
    }
    beta.set(alphabet[i], 0);
  };
  rec(0);
  return out;
}

std::string SeparationInstance::describe() const {
  if (kind == Kind::EventState)
    return "event-state: step " + step_literal(step) + " must stay disabled at " + s;
  return "state-state: " + s + " and " + s2 + " must get different token counts (branch " +
         std::to_string(branch) + ")";
}

Int PlaceSolution::in(const ActionName& a) const {
  auto it = f_in.find(a);
  return it == f_in.end() ? Int(0) : it->second;
}

Int PlaceSolution::out(const ActionName& a) const {
  auto it = f_out.find(a);
  return it == f_out.end() ? Int(0) : it->second;
}

SeparationContext::SeparationContext(const StepTransitionSystem& sts) : sts_(&sts) {
  disp_ = displacements(sts);
  alphabet_.assign(sts.actions.begin(), sts.actions.end());
  for (size_t i = 0; i < alphabet_.size(); ++i) col_[alphabet_[i]] = static_cast<int>(i);

  std::vector<ActionVec> gens;
  for (const auto& t : sts.transitions) {
    ActionVec g = disp_.delta.at(t.src) + t.step - disp_.delta.at(t.dst);
    if (!g.empty()) gens.push_back(g);
  }
  CycleLattice lattice(alphabet_, gens);
  cycle_rows_ = lattice.basis();

  const int na = static_cast<int>(alphabet_.size());
  const int nc = static_cast<int>(disp_.roots.size());
  n_vars_ = 2 * na + nc;  // f_in, f_out, one base marking per component

  // row builder: coefficient vector for M_s = base_c + δ(s)·(f_out - f_in)
  auto marking_row = [&](const std::string& s, const Rat& scale, RatVector& row) {
    const ActionVec& d = disp_.delta.at(s);
    for (const auto& [a, v] : d.entries()) {
      int j = col_.at(a);
      row(j) += -scale * Rat(v);        // f_in block
      row(na + j) += scale * Rat(v);    // f_out block
    }
    row(2 * na + disp_.component.at(s)) += scale;
  };

  std::vector<RatVector> rows;
  std::vector<Rat> rhs;
  auto push = [&](const RatVector& row, const Rat& r) {
    rows.push_back(row);
    rhs.push_back(r);
  };

  // cycle consistency: c·(f_out - f_in) = 0, as two inequalities
  for (Eigen::Index i = 0; i < cycle_rows_.rows(); ++i) {
    RatVector row = RatVector::Zero(n_vars_);
    for (int j = 0; j < na; ++j) {
      Rat c(cycle_rows_(i, j));
      row(j) = -c;
      row(na + j) = c;
    }
    push(row, 0);
    push(-row, 0);
  }
  // non-negative markings: -M_s <= 0
  for (const auto& s : sts.states) {
    RatVector row = RatVector::Zero(n_vars_);
    marking_row(s, -1, row);
    push(row, 0);
  }
  // enabling: Σ α(t) f_in(t) <= M_src, deduplicated
  std::set<std::pair<std::string, Step>> seen;
  for (const auto& t : sts.transitions) {
    if (t.step.empty()) continue;
    if (!seen.emplace(t.src, t.step).second) continue;
    RatVector row = RatVector::Zero(n_vars_);
    for (const auto& [a, v] : t.step.entries()) row(col_.at(a)) += Rat(v);
    marking_row(t.src, -1, row);
    push(row, 0);
  }

  base_.a.resize(static_cast<Eigen::Index>(rows.size()), n_vars_);
  base_.b.resize(static_cast<Eigen::Index>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    base_.a.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    base_.b(static_cast<Eigen::Index>(i)) = rhs[i];
  }
}

void SeparationContext::append_instance_row(LinearProgram& lp,
                                            const SeparationInstance& inst) const {
  const int na = static_cast<int>(alphabet_.size());
  RatVector row = RatVector::Zero(n_vars_);
  auto add_marking = [&](const std::string& s, const Rat& scale) {
    const ActionVec& d = disp_.delta.at(s);
    for (const auto& [a, v] : d.entries()) {
      int j = col_.at(a);
      row(j) += -scale * Rat(v);
      row(na + j) += scale * Rat(v);
    }
    row(2 * na + disp_.component.at(s)) += scale;
  };
  if (inst.kind == SeparationInstance::Kind::EventState) {
    // M_s - Σ α(t) f_in(t) <= -1
    add_marking(inst.s, 1);
    for (const auto& [a, v] : inst.step.entries()) row(col_.at(a)) -= Rat(v);
  } else if (inst.branch == 0) {
    // M_s2 - M_s <= -1, i.e. M_s >= M_s2 + 1
    add_marking(inst.s2, 1);
    add_marking(inst.s, -1);
  } else {
    add_marking(inst.s, 1);
    add_marking(inst.s2, -1);
  }
  Eigen::Index m = lp.a.rows();
  lp.a.conservativeResize(m + 1, n_vars_);
  lp.b.conservativeResize(m + 1);
  lp.a.row(m) = row.transpose();
  lp.b(m) = -1;
}

PlaceSolution SeparationContext::to_place(const RatVector& x) const {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Int scale = 1;
  for (Eigen::Index j = 0; j < x.size(); ++j) scale = lcm_int(scale, denominator(x(j)));
  const int na = static_cast<int>(alphabet_.size());
  PlaceSolution p;
  std::vector<Int> xi(static_cast<size_t>(x.size()));
  for (Eigen::Index j = 0; j < x.size(); ++j)
    xi[static_cast<size_t>(j)] = numerator(x(j)) * (scale / denominator(x(j)));
  for (int j = 0; j < na; ++j) {
    if (xi[static_cast<size_t>(j)] != 0) p.f_in[alphabet_[static_cast<size_t>(j)]] = xi[static_cast<size_t>(j)];
    if (xi[static_cast<size_t>(na + j)] != 0)
      p.f_out[alphabet_[static_cast<size_t>(j)]] = xi[static_cast<size_t>(na + j)];
  }
  for (const auto& s : sts_->states) {
    Int tokens = xi[static_cast<size_t>(2 * na + disp_.component.at(s))];
    for (const auto& [a, v] : disp_.delta.at(s).entries())
      tokens += v * (p.out(a) - p.in(a));
    p.tokens[s] = tokens;
  }
  return p;
}

std::variant<PlaceSolution, FarkasRay> SeparationContext::solve(
    const SeparationInstance& inst) const {
  LinearProgram lp = base_;
  append_instance_row(lp, inst);
  SimplexResult result = solve_feasibility(lp);
  if (std::holds_alternative<FarkasRay>(result)) return std::get<FarkasRay>(result);
  PlaceSolution p = to_place(std::get<FeasiblePoint>(result).x);
  if (!satisfies_all(p, inst))
    throw Error(ErrorCode::VerificationFailed, "integer scaling broke a constraint");
  return p;
}

bool SeparationContext::witnesses(const PlaceSolution& p, const SeparationInstance& inst) const {
  if (inst.kind == SeparationInstance::Kind::EventState) {
    Int need = 0;
    for (const auto& [a, v] : inst.step.entries()) need += v * p.in(a);
    return p.tokens.at(inst.s) < need;
  }
  return p.tokens.at(inst.s) != p.tokens.at(inst.s2);
}

bool SeparationContext::satisfies_all(const PlaceSolution& p,
                                      const SeparationInstance& inst) const {
  for (const auto& [a, v] : p.f_in)
    if (v < 0) return false;
  for (const auto& [a, v] : p.f_out)
    if (v < 0) return false;
  for (Eigen::Index i = 0; i < cycle_rows_.rows(); ++i) {
    Int sum = 0;
    for (size_t j = 0; j < alphabet_.size(); ++j)
      sum += cycle_rows_(i, static_cast<Eigen::Index>(j)) *
             (p.out(alphabet_[j]) - p.in(alphabet_[j]));
    if (sum != 0) return false;
  }
  for (const auto& [s, tokens] : p.tokens)
    if (tokens < 0) return false;
  for (const auto& t : sts_->transitions) {
    if (t.step.empty()) continue;
    Int need = 0;
    for (const auto& [a, v] : t.step.entries()) need += v * p.in(a);
    if (need > p.tokens.at(t.src)) return false;
  }
  // token counts must follow the effect along every transition
  for (const auto& t : sts_->transitions) {
    Int eff = 0;
    for (const auto& [a, v] : t.step.entries()) eff += v * (p.out(a) - p.in(a));
    if (p.tokens.at(t.src) + eff != p.tokens.at(t.dst)) return false;
  }
  if (inst.kind == SeparationInstance::Kind::EventState) {
    Int need = 0;
    for (const auto& [a, v] : inst.step.entries()) need += v * p.in(a);
    if (p.tokens.at(inst.s) > need - 1) return false;
  } else if (inst.branch == 0) {
    if (p.tokens.at(inst.s) - p.tokens.at(inst.s2) < 1) return false;
  } else {
    if (p.tokens.at(inst.s2) - p.tokens.at(inst.s) < 1) return false;
  }
  return true;
}

IntVector SeparationContext::delta_diff(const std::string& s, const std::string& s2) const {
  ActionVec d = disp_.delta.at(s) - disp_.delta.at(s2);
  IntVector v = IntVector::Zero(static_cast<Eigen::Index>(alphabet_.size()));
  for (const auto& [a, val] : d.entries()) v(col_.at(a)) = val;
  return v;
}

StepFiniteness is_step_finite(const StepTransitionSystem& sts) {
  StepFiniteness out;
  for (const auto& t : sts.transitions)
    out.max_step_size = std::max(out.max_step_size, t.step.total());
  return out;
}

namespace {

void require_cest_per_component(const StepTransitionSystem& sts, int seq_cap) {
  auto reach = reachable_from(sts, sts.initials);
  for (const auto& s : sts.states)
    if (!reach.count(s))
      throw Error(ErrorCode::NotCest, "state unreachable from every initial: " + s);
  std::set<std::string> done;
  for (const auto& r : sts.initials) {
    if (!done.insert(r).second) continue;
    auto comp = component(sts, r);
    auto report = validate_cest(comp, seq_cap);
    if (!report.all_pass()) {
      for (const auto* v : {&report.el, &report.rea, &report.seq, &report.fd, &report.ce})
        if (!v->pass) throw Error(ErrorCode::NotCest, "component of " + r + ": " + v->witness);
    }
  }
}

}  // namespace

SynthesisOutcome synthesize(const StepTransitionSystem& sts, const SynthesisConfig& config) {
  sts.check_well_formed();
  require_cest_per_component(sts, config.seq_cap);
  SeparationContext ctx(sts);

  std::vector<PlaceSolution> places;
  auto have_witness = [&](const SeparationInstance& inst) {
    for (const auto& p : places)
      if (ctx.witnesses(p, inst)) return true;
    return false;
  };
  auto unsolvable = [&](const SeparationInstance& inst, const FarkasRay& ray,
                        const std::string& detail) {
    SynthesisOutcome out;
    out.solved = false;
    UnsolvableReport rep;
    rep.instance = inst;
    rep.certificate.assign(ray.y.data(), ray.y.data() + ray.y.size());
    rep.detail = detail;
    out.failure = std::move(rep);
    return out;
  };

  // event-state separation: keep every minimal disabled step disabled
  for (const auto& s : sts.states) {
    for (const auto& beta : minimal_disabled_steps(sts, s)) {
      SeparationInstance inst{SeparationInstance::Kind::EventState, s, beta, {}, 0};
      if (have_witness(inst)) continue;
      auto result = ctx.solve(inst);
      if (std::holds_alternative<FarkasRay>(result))
        return unsolvable(inst, std::get<FarkasRay>(result),
                          "no place can keep " + step_literal(beta) + " disabled at " + s);
      places.push_back(std::get<PlaceSolution>(result));
    }
  }

  // state-state separation per forward component; a place solved for one pair
  // separates every pair with the same displacement difference, so reuse via
  // have_witness covers whole groups after one LP
  std::set<std::string> seen_components;
  for (const auto& r : sts.initials) {
    if (!seen_components.insert(r).second) continue;
    auto comp_states = reachable_from(sts, {r});
    for (auto it = comp_states.begin(); it != comp_states.end(); ++it)
      for (auto jt = std::next(it); jt != comp_states.end(); ++jt) {
        SeparationInstance inst{SeparationInstance::Kind::StateState, *it, {}, *jt, 0};
        if (have_witness(inst)) continue;
        auto result = ctx.solve(inst);
        if (std::holds_alternative<FarkasRay>(result)) {
          inst.branch = 1;
          auto mirrored = ctx.solve(inst);
          if (std::holds_alternative<FarkasRay>(mirrored))
            return unsolvable(inst, std::get<FarkasRay>(mirrored),
                              "states " + *it + " and " + *jt +
                                  " cannot carry different token counts (both branches)");
          places.push_back(std::get<PlaceSolution>(mirrored));
        } else {
          places.push_back(std::get<PlaceSolution>(result));
        }
      }
  }

  // dedupe identical places, assemble the net
  std::vector<PlaceSolution> unique_places;
  std::set<std::string> fingerprints;
  for (const auto& p : places) {
    std::ostringstream fp;
    for (const auto& [a, v] : p.f_in) fp << "i" << a.to_string() << "=" << v << ";";
    for (const auto& [a, v] : p.f_out) fp << "o" << a.to_string() << "=" << v << ";";
    for (const auto& [s, v] : p.tokens) fp << s << "=" << v << ";";
    if (fingerprints.insert(fp.str()).second) unique_places.push_back(p);
  }

  SynthesisOutcome out;
  out.solved = true;
  out.net.actions = sts.actions;
  for (size_t i = 0; i < unique_places.size(); ++i) {
    std::string name = "r" + std::to_string(i);
    out.net.places.push_back(name);
    const auto& p = unique_places[i];
    for (const auto& [a, v] : p.f_in) out.net.set_pre(name, a, v);
    for (const auto& [a, v] : p.f_out) out.net.set_post(a, name, v);
  }
  for (const auto& s : sts.states) {
    Marking m;
    for (size_t i = 0; i < unique_places.size(); ++i)
      m.set(out.net.places[i], unique_places[i].tokens.at(s));
    out.psi[s] = m;
  }
  for (const auto& r : sts.initials) out.net.initial_markings.push_back(out.psi.at(r));
  out.net.check_well_formed();

  if (config.verify) {
    CrgLimits limits;
    limits.max_states = config.max_states;
    Int k = is_step_finite(sts).max_step_size;
    limits.max_step_size = std::max(1, static_cast<int>(k));
    std::set<std::string> verified;
    for (const auto& r : sts.initials) {
      if (!verified.insert(r).second) continue;
      PTNet piece = out.net;
      piece.initial_markings = {out.psi.at(r)};
      CrgResult crg;
      try {
        crg = build_crg(piece, limits);
      } catch (const Error& e) {
        throw Error(ErrorCode::VerificationFailed,
                    std::string("synthesized net exploration failed: ") + e.what());
      }
      auto match = check_isomorphism(component(sts, r), crg.sts);
      if (!match)
        throw Error(ErrorCode::VerificationFailed,
                    "synthesized net mismatch at component " + r + ": " + match.witness);
      for (const auto& [s, image] : match.psi)
        if (out.psi.at(s).literal() != image)
          throw Error(ErrorCode::VerificationFailed, "psi disagrees with forced match at " + s);
    }
  }
  return out;
}

SynthesisOutcome decide_mixed_reversibility(const StepTransitionSystem& sts,
                                            const std::set<std::string>& cover,
                                            const SynthesisConfig& config) {
  SynthesisOutcome forward = synthesize(sts, config);
  if (!forward.solved) {
    forward.note = "the forward system is unsolvable, so its mixed reversal is too";
    return forward;
  }
  StepTransitionSystem rsts = reverse_multi(sts, cover);
  SynthesisOutcome backward = synthesize(rsts, config);
  if (!backward.solved) {
    backward.note = "the reverse system over the home cover is unsolvable, so the mixed "
                    "reversal is too";
    return backward;
  }
  CrgLimits limits;
  limits.max_states = config.max_states;
  TransformReport combined = combine_reversal(sts, cover, forward.net, backward.net, limits);
  if (!combined.pass)
    throw Error(ErrorCode::VerificationFailed, "combined net failed: " + combined.witness);
  SynthesisOutcome out;
  out.solved = true;
  out.net = combined.output;
  out.psi = combined.psi;
  out.note = "solved via strict-reverse combination of the two synthesized pieces";
  return out;
}

SynthesisOutcome decide_direct_reversibility_set(const StepTransitionSystem& sts,
                                                 const SynthesisConfig& config) {
  for (const auto& t : sts.transitions)
    if (!t.step.is_set())
      throw Error(ErrorCode::NotASetSystem, "non-set step " + step_literal(t.step));
  auto homes = home_states(sts);
  if (homes.empty()) throw Error(ErrorCode::NoHomeState, "system has no home state");
  std::string home = *homes.begin();

  SynthesisOutcome mixed = decide_mixed_reversibility(sts, {home}, config);
  if (!mixed.solved) {
    mixed.note += "; direct reversal is unsolvable with it";
    return mixed;
  }
  CrgLimits limits;
  limits.max_states = config.max_states;
  TransformReport report = mix2set_transform(mixed.net, sts, std::nullopt, limits);
  if (!report.pass)
    throw Error(ErrorCode::VerificationFailed, "step-bound transform failed: " + report.witness);
  SynthesisOutcome out;
  out.solved = true;
  out.net = report.output;
  out.psi = report.psi;
  out.note = "solved via mixed reversal plus the step-bound transform";
  return out;
}

}  // namespace steprev

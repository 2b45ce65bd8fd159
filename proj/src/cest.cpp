#include "steprev/cest.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

namespace steprev {

namespace {

struct UndirectedEdge {
  std::string other;
  ActionVec signature;  // contribution when walking towards `other`
};

std::map<std::string, std::vector<UndirectedEdge>> undirected_adjacency(
    const StepTransitionSystem& sts) {
  std::map<std::string, std::vector<UndirectedEdge>> adj;
  for (const auto& s : sts.states) adj[s];
  for (const auto& t : sts.transitions) {
    ActionVec alpha = t.step;
    adj[t.src].push_back({t.dst, alpha});
    adj[t.dst].push_back({t.src, -alpha});
  }
  return adj;
}

}  // namespace

DisplacementMap displacements(const StepTransitionSystem& sts) {
  auto adj = undirected_adjacency(sts);
  DisplacementMap out;
  std::vector<std::string> seeds = sts.initials;
  for (const auto& s : sts.states) seeds.push_back(s);
  int comp = 0;
  for (const auto& root : seeds) {
    if (out.delta.count(root)) continue;
    out.roots.push_back(root);
    out.delta[root] = {};
    out.component[root] = comp;
    std::deque<std::string> work{root};
    while (!work.empty()) {
      std::string s = work.front();
      work.pop_front();
      for (const auto& e : adj[s]) {
        if (out.delta.count(e.other)) continue;
        out.delta[e.other] = out.delta[s] + e.signature;
        out.component[e.other] = comp;
        work.push_back(e.other);
      }
    }
    ++comp;
  }
  return out;
}

namespace {

CycleLattice lattice_from(const StepTransitionSystem& sts, const DisplacementMap& disp) {
  std::vector<ActionName> alphabet(sts.actions.begin(), sts.actions.end());
  std::vector<ActionVec> gens;
  for (const auto& t : sts.transitions) {
    // cycle signature of the non-forest part; forest edges contribute zero
    ActionVec g = disp.delta.at(t.src) + t.step - disp.delta.at(t.dst);
    if (!g.empty()) gens.push_back(g);
  }
  return CycleLattice(std::move(alphabet), gens);
}

}  // namespace

CycleLattice cycle_lattice(const StepTransitionSystem& sts) {
  auto disp = displacements(sts);
  // initials are seeded first, so a component holding an initial has one as root
  for (const auto& [s, c] : disp.component) {
    const std::string& root = disp.roots[static_cast<size_t>(c)];
    if (std::find(sts.initials.begin(), sts.initials.end(), root) == sts.initials.end())
      throw Error(ErrorCode::DisconnectedSystem, "state " + s + " not connected to any initial");
  }
  return lattice_from(sts, disp);
}

ActionVec displacement(const StepTransitionSystem& sts, const std::string& s,
                       const std::string& base) {
  if (!sts.states.count(s)) throw Error(ErrorCode::UnknownState, s);
  if (!sts.states.count(base)) throw Error(ErrorCode::UnknownState, base);
  auto disp = displacements(sts);
  if (disp.component.at(s) != disp.component.at(base))
    throw Error(ErrorCode::DisconnectedSystem, s + " and " + base + " are not connected");
  return disp.delta.at(s) - disp.delta.at(base);
}

namespace {

/// Enumerate all sub-multisets β ≤ γ (including ∅ and γ).
void for_each_submultiset(const Step& gamma, const std::function<void(const Step&)>& fn) {
  std::vector<std::pair<ActionName, Int>> items(gamma.entries().begin(), gamma.entries().end());
  Step beta;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == items.size()) {
      fn(beta);
      return;
    }
    for (Int c = 0; c <= items[i].second; ++c) {
      beta.set(items[i].first, c);
      rec(i + 1);
    }
    beta.set(items[i].first, 0);
  };
  rec(0);
}

}  // namespace

CestReport validate_cest(const StepTransitionSystem& sts, int seq_cap) {
  sts.check_well_formed();
  CestReport report;
  report.is_set_system = true;

  // EL: an ∅-loop everywhere, and no ∅-edge changes state
  std::set<std::string> has_empty_loop;
  for (const auto& t : sts.transitions) {
    if (t.step.empty()) {
      if (t.src != t.dst && report.el.pass) {
        report.el = {false, "empty step leaves its source: " + t.src + " -()-> " + t.dst};
      }
      has_empty_loop.insert(t.src);
    }
    if (!t.step.is_set()) report.is_set_system = false;
    report.max_step_size = std::max(report.max_step_size, t.step.total());
  }
  if (report.el.pass)
    for (const auto& s : sts.states)
      if (!has_empty_loop.count(s)) {
        report.el = {false, "state without empty loop: " + s};
        break;
      }

  // REA: every state reachable from at least one initial
  auto reach = reachable_from(sts, sts.initials);
  for (const auto& s : sts.states)
    if (!reach.count(s)) {
      report.rea = {false, "state unreachable from the initials: " + s};
      break;
    }

  // FD: unique target per (source, step)
  std::map<std::pair<std::string, Step>, std::string> targets;
  for (const auto& t : sts.transitions) {
    auto [it, fresh] = targets.emplace(std::make_pair(t.src, t.step), t.dst);
    if (!fresh && it->second != t.dst) {
      report.fd = {false, "source " + t.src + ", step " + step_literal(t.step) +
                              " reaches both " + it->second + " and " + t.dst};
      break;
    }
  }

  // SEQ: every 2-decomposition of every step is realizable
  for (const auto& t : sts.transitions) {
    if (!report.seq.pass) break;
    if (t.step.total() > seq_cap)
      throw Error(ErrorCode::CapExceeded,
                  "step size " + t.step.total().str() + " above SEQ cap");
    for_each_submultiset(t.step, [&](const Step& beta) {
      if (!report.seq.pass) return;
      Step rest = t.step - beta;
      for (const Transition* u : sts.out(t.src)) {
        if (u->step != beta) continue;
        for (const Transition* w : sts.out(u->dst))
          if (w->step == rest) return;
      }
      report.seq = {false, "transition " + t.src + " -" + step_literal(t.step) + "-> " + t.dst +
                               " has no realization of prefix " + step_literal(beta)};
    });
  }

  // CE: state displacements injective modulo the cycle lattice, per component
  auto disp = displacements(sts);
  auto lattice = lattice_from(sts, disp);
  std::map<std::pair<int, std::string>, std::string> residues;
  for (const auto& s : sts.states) {
    IntVector r = lattice.residue(disp.delta.at(s));
    std::ostringstream key;
    for (Eigen::Index i = 0; i < r.size(); ++i) key << r(i) << ",";
    auto [it, fresh] =
        residues.emplace(std::make_pair(disp.component.at(s), key.str()), s);
    if (!fresh) {
      report.ce = {false, "states " + it->second + " and " + s +
                              " are joined by paths with equivalent signatures"};
      break;
    }
  }
  return report;
}

}  // namespace steprev

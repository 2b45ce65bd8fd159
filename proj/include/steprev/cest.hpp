#pragma once

#include <map>
#include <string>

#include "steprev/lattice.hpp"
#include "steprev/sts.hpp"

namespace steprev {

struct AxiomVerdict {
  bool pass = true;
  std::string witness;  // re-checkable description, non-empty iff !pass
};

struct CestReport {
  AxiomVerdict el, rea, seq, fd, ce;
  bool is_set_system = false;
  Int max_step_size = 0;  // finite systems are always step-finite

  bool all_pass() const { return el.pass && rea.pass && seq.pass && fd.pass && ce.pass; }
};

inline constexpr int kDefaultSeqCap = 16;

/// Check EL, REA, SEQ, FD and CE. SEQ enumerates 2-decompositions of each step
/// and is guarded by a cap on |α| (throws CapExceeded beyond it). CE reduces
/// state displacements modulo the cycle lattice; see cycle_lattice().
CestReport validate_cest(const StepTransitionSystem& sts, int seq_cap = kDefaultSeqCap);

/// Spanning-forest displacements δ from the given roots (initials first, then
/// remaining undirected components in state order) plus the component id of
/// every state. Edges are traversed undirected, so δ(s) - δ(r) is the
/// signature of some undirected path r -> s.
struct DisplacementMap {
  std::map<std::string, ActionVec> delta;
  std::map<std::string, int> component;   // undirected component index
  std::vector<std::string> roots;         // one per component
};

DisplacementMap displacements(const StepTransitionSystem& sts);

/// Lattice generated by the cycle signatures {δ(s) + α - δ(r)} of non-forest
/// transitions. The difference of two co-terminal path signatures always lies
/// in this lattice and conversely, so it realizes the path-signature
/// equivalence closure.
CycleLattice cycle_lattice(const StepTransitionSystem& sts);

/// Signature of an undirected path base -> s (canonical spanning-forest
/// representative; well-defined modulo cycle_lattice). Throws
/// DisconnectedSystem when s and base lie in different components.
ActionVec displacement(const StepTransitionSystem& sts, const std::string& s,
                       const std::string& base);

}  // namespace steprev

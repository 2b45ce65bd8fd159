#pragma once

#include <random>
#include <string>
#include <vector>

#include "steprev/petri.hpp"
#include "steprev/sts.hpp"

namespace fixtures {

using namespace steprev;

// Build a step from "a" / "~a" literals with multiplicities.
Step mk_step(const std::vector<std::pair<std::string, int>>& entries);

// Build a system from labelled edges; states and actions are collected from
// the edges and an empty-step loop is added at every state.
StepTransitionSystem mk_sts(
    std::vector<std::string> initials,
    const std::vector<std::tuple<std::string, Step, std::string>>& edges);

// Two-source converging line: q1 -a-> q3 <-b- q2, then q3 -c-> q4 -a-> q5 -b-> q6.
StepTransitionSystem converging_sts();
// Net whose reachability graphs from {p1:1,p4:1} and {p2:4,p4:1} realize it.
PTNet converging_net();

// Single edge q0 -a-> q1.
StepTransitionSystem edge_sts();
// One producer a from p1 to p2, started at {p1:1,p2:1}.
PTNet edge_net();
// The naive reversal of edge_net started at {p2:2}; over-reverses into a spike.
PTNet edge_naive_reverse_net();

// Two independent counters a (m tokens) and b (n tokens) with strict reverses
// throttled by a shared capacity place of max(m,n) tokens.
PTNet counters_net(int m, int n);

// Spike line v0 -a-> v1 -a-> v2 -b-> v3 -b-> v4 with shortcut v0 -(aa)-> v2.
StepTransitionSystem spike_line_sts();
PTNet spike_line_net();

// Two-path diamond with an extra a a tail: 6 states, 8 transitions, no home
// state, {v4, v6} is a home cover.
StepTransitionSystem twopath_sts();
PTNet twopath_net();

// Plain concurrency diamond s0 -a/b/(ab)-> s3; a set system with home s3.
StepTransitionSystem diamond_sts();

// Random PT-net within the small-instance envelope: up to 4 places, up to 3
// actions, weights and initial tokens up to 3. Well-formed by construction.
PTNet random_net(std::mt19937& rng);

}  // namespace fixtures

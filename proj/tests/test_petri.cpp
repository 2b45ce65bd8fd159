#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "steprev/cest.hpp"
#include "steprev/petri.hpp"

using namespace steprev;
using fixtures::mk_step;

TEST_CASE("well-formedness rules for nets") {
  auto net = fixtures::spike_line_net();
  CHECK_NOTHROW(net.check_well_formed());
  auto free_action = net;
  free_action.actions.insert(fwd("c"));
  free_action.set_post(fwd("c"), "p1", 1);
  // c consumes nowhere and reads nowhere: unbounded autoconcurrency
  CHECK_THROWS_AS(free_action.check_well_formed(), Error);
  auto with_read = free_action;
  with_read.read[{"p1", fwd("c")}] = 2;
  CHECK_NOTHROW(with_read.check_well_formed());
  auto neg = net;
  neg.initial_markings[0].set("p1", -1);
  CHECK_THROWS_AS(neg.check_well_formed(), Error);
}

TEST_CASE("step vectors and the marking equation") {
  auto net = fixtures::spike_line_net();
  Step aab = mk_step({{"a", 2}, {"b", 1}});
  auto v = step_vectors(net, aab);
  CHECK(v.pre == Marking{{"p1", 2}, {"p2", 2}, {"p3", 1}});
  CHECK(v.post == Marking{{"p2", 4}});
  CHECK(v.eff == v.post - v.pre);
  Marking m{{"p1", 2}, {"p2", 2}, {"p3", 2}};
  CHECK(enabled(net, m, aab));
  CHECK(fire(net, m, aab) == m + v.eff);
  CHECK_THROWS_AS(fire(net, Marking{{"p1", 1}}, aab), Error);
}

TEST_CASE("step vectors on the converging net") {
  auto net = fixtures::converging_net();
  auto va = step_vectors(net, mk_step({{"a", 1}}));
  CHECK(va.pre == Marking{{"p1", 1}});
  CHECK(va.post == Marking{{"p2", 1}, {"p3", 1}});
  CHECK(va.eff == Marking{{"p2", 1}, {"p3", 1}} - Marking{{"p1", 1}});
  CHECK(fire(net, Marking{{"p2", 1}, {"p3", 1}, {"p4", 1}}, mk_step({{"c", 1}})) ==
        Marking{{"p1", 1}, {"p2", 2}});
}

TEST_CASE("read arcs require an exact token count") {
  PTNet net;
  net.places = {"p", "q"};
  net.actions = {fwd("a")};
  net.read[{"p", fwd("a")}] = 2;
  net.set_post(fwd("a"), "q", 1);
  net.initial_markings = {Marking{{"p", 2}}};
  net.check_well_formed();
  CHECK(enabled(net, Marking{{"p", 2}}, mk_step({{"a", 1}})));
  CHECK_FALSE(enabled(net, Marking{{"p", 1}}, mk_step({{"a", 1}})));
  CHECK_FALSE(enabled(net, Marking{{"p", 3}}, mk_step({{"a", 1}})));
  // reading consumes nothing
  CHECK(fire(net, Marking{{"p", 2}}, mk_step({{"a", 1}})) == Marking{{"p", 2}, {"q", 1}});
  // autoconcurrency under a read arc: both occurrences see the same marking
  CHECK(enabled(net, Marking{{"p", 2}}, mk_step({{"a", 2}})));
}

TEST_CASE("enabled steps enumeration") {
  auto net = fixtures::spike_line_net();
  Marking m0 = net.initial_markings[0];
  auto steps = enabled_steps(net, m0, 8);
  CHECK(steps == std::set<Step>{mk_step({{"a", 1}}), mk_step({{"a", 2}})});
  // the bound is checked, not silently applied
  CHECK_THROWS_AS(enabled_steps(net, m0, 1), Error);
  try {
    enabled_steps(net, m0, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StepBoundExceeded);
  }
}

TEST_CASE("enabling is monotone without read arcs") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto net = fixtures::random_net(rng);
    Marking m = net.initial_markings[0];
    std::set<Step> steps;
    try {
      steps = enabled_steps(net, m, 4);
    } catch (const Error&) {
      continue;  // truncated behaviour, skip
    }
    Marking bigger = m;
    for (const auto& p : net.places) bigger.add(p, 2);
    for (const auto& s : steps) {
      CHECK(enabled(net, bigger, s));
      // every sub-step of an enabled step is enabled
      for (const auto& [a, v] : s.entries()) {
        Step sub = s;
        sub.add(a, -1);
        CHECK(enabled(net, m, sub));
      }
    }
  }
}

TEST_CASE("crg of the paper nets matches the paper systems") {
  auto spike = build_crg(fixtures::spike_line_net());
  CHECK(spike.sts.states.size() == 5);
  CHECK(check_isomorphism(fixtures::spike_line_sts(), spike.sts));

  auto twopath = build_crg(fixtures::twopath_net());
  CHECK(check_isomorphism(fixtures::twopath_sts(), twopath.sts));

  auto conv = build_crg(fixtures::converging_net());
  CHECK(check_isomorphism(fixtures::converging_sts(), conv.sts));
  CHECK(conv.sts.initials.size() == 2);

  auto edge = build_crg(fixtures::edge_net());
  CHECK(check_isomorphism(fixtures::edge_sts(), edge.sts));
}

TEST_CASE("crg states carry their markings") {
  auto res = build_crg(fixtures::edge_net());
  for (const auto& s : res.sts.states) CHECK(res.marking_of.at(s).literal() == s);
}

TEST_CASE("crg limits fail loudly") {
  PTNet grow;  // a: p -> 2p, strictly growing, unbounded
  grow.places = {"p"};
  grow.actions = {fwd("a")};
  grow.set_pre("p", fwd("a"), 1);
  grow.set_post(fwd("a"), "p", 2);
  grow.initial_markings = {Marking{{"p", 1}}};
  CHECK_THROWS_AS(build_crg(grow, CrgLimits{20, 8}), Error);
  try {
    build_crg(grow, CrgLimits{20, 3});
  } catch (const Error& e) {
    bool expected = e.code() == ErrorCode::StateBoundExceeded ||
                    e.code() == ErrorCode::StepBoundExceeded;
    CHECK(expected);
  }
}

TEST_CASE("crgs are cest systems") {
  std::mt19937 rng(13);
  int done = 0;
  while (done < 25) {
    auto net = fixtures::random_net(rng);
    CrgResult res;
    try {
      res = build_crg(net, CrgLimits{2000, 6});
    } catch (const Error&) {
      continue;
    }
    ++done;
    auto report = validate_cest(res.sts);
    CHECK(report.all_pass());
  }
}

TEST_CASE("subnet drops arcs of removed actions only") {
  auto net = fixtures::counters_net(2, 3);
  auto fwd_only = subnet(net, {fwd("a"), fwd("b")});
  CHECK(fwd_only.actions == std::set<ActionName>{fwd("a"), fwd("b")});
  CHECK(fwd_only.places == net.places);
  CHECK(fwd_only.initial_markings == net.initial_markings);
  CHECK(fwd_only.f_pre("p1", fwd("a")) == 1);
  CHECK(fwd_only.f_pre("p3", rev(fwd("a"))) == 0);
  auto grid = build_crg(fwd_only);
  CHECK(grid.sts.states.size() == 3 * 4);  // (m+1)(n+1) counter grid
}

TEST_CASE("reverse structure recognises strict reverses") {
  auto net = fixtures::counters_net(1, 1);
  std::map<ActionName, std::set<ActionName>> pairing = {
      {fwd("a"), {rev(fwd("a"))}}, {fwd("b"), {rev(fwd("b"))}}};
  auto st = check_reverse_structure(net, pairing);
  CHECK(st.has_reverses);
  CHECK(st.per_action.at(fwd("a")).is_reverse);
  // the capacity place self-loop on the reverses breaks strictness
  CHECK_FALSE(st.per_action.at(fwd("a")).is_strict_reverse);
  CHECK_FALSE(st.has_split_reverses);
  std::map<ActionName, std::set<ActionName>> missing = {{fwd("a"), {rev(fwd("a"))}}};
  CHECK_THROWS_AS(check_reverse_structure(net, missing), Error);
}

TEST_CASE("random walk satisfies the marking equation") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<size_t> pickidx(0, 1000000);
  for (int trial = 0; trial < 30; ++trial) {
    auto net = fixtures::random_net(rng);
    Marking m = net.initial_markings[0];
    Step total;
    Marking start = m;
    for (int walk = 0; walk < 12; ++walk) {
      std::set<Step> steps;
      try {
        steps = enabled_steps(net, m, 3);
      } catch (const Error&) {
        break;
      }
      if (steps.empty()) break;
      auto it = steps.begin();
      std::advance(it, pickidx(rng) % steps.size());
      m = fire(net, m, *it);
      total = total + *it;
    }
    CHECK(m == start + step_vectors(net, total).eff);
  }
}

#include "fixtures.hpp"

namespace fixtures {

Step mk_step(const std::vector<std::pair<std::string, int>>& entries) {
  Step s;
  for (const auto& [name, mult] : entries) s.add(ActionName::parse(name), mult);
  return s;
}

StepTransitionSystem mk_sts(
    std::vector<std::string> initials,
    const std::vector<std::tuple<std::string, Step, std::string>>& edges) {
  StepTransitionSystem sts;
  sts.initials = std::move(initials);
  for (const auto& s : sts.initials) sts.states.insert(s);
  for (const auto& [src, step, dst] : edges) {
    sts.states.insert(src);
    sts.states.insert(dst);
    for (const auto& [a, v] : step.entries()) sts.actions.insert(a);
    sts.transitions.insert({src, step, dst});
  }
  for (const auto& s : sts.states) sts.transitions.insert({s, Step{}, s});
  return sts;
}

StepTransitionSystem converging_sts() {
  return mk_sts({"q1", "q2"}, {
                                  {"q1", mk_step({{"a", 1}}), "q3"},
                                  {"q2", mk_step({{"b", 1}}), "q3"},
                                  {"q3", mk_step({{"c", 1}}), "q4"},
                                  {"q4", mk_step({{"a", 1}}), "q5"},
                                  {"q5", mk_step({{"b", 1}}), "q6"},
                              });
}

PTNet converging_net() {
  PTNet net;
  net.places = {"p1", "p2", "p3", "p4"};
  net.actions = {fwd("a"), fwd("b"), fwd("c")};
  net.set_pre("p1", fwd("a"), 1);
  net.set_post(fwd("a"), "p2", 1);
  net.set_post(fwd("a"), "p3", 1);
  net.set_pre("p2", fwd("b"), 3);
  net.set_post(fwd("b"), "p3", 1);
  net.set_pre("p3", fwd("c"), 1);
  net.set_pre("p4", fwd("c"), 1);
  net.set_post(fwd("c"), "p1", 1);
  net.set_post(fwd("c"), "p2", 1);
  net.initial_markings = {Marking{{"p1", 1}, {"p4", 1}}, Marking{{"p2", 4}, {"p4", 1}}};
  return net;
}

StepTransitionSystem edge_sts() {
  return mk_sts({"q0"}, {{"q0", mk_step({{"a", 1}}), "q1"}});
}

PTNet edge_net() {
  PTNet net;
  net.places = {"p1", "p2"};
  net.actions = {fwd("a")};
  net.set_pre("p1", fwd("a"), 1);
  net.set_post(fwd("a"), "p2", 1);
  net.initial_markings = {Marking{{"p1", 1}, {"p2", 1}}};
  return net;
}

PTNet edge_naive_reverse_net() {
  PTNet net = edge_net();
  net.actions.insert(rev(fwd("a")));
  net.set_pre("p2", rev(fwd("a")), 1);
  net.set_post(rev(fwd("a")), "p1", 1);
  net.initial_markings = {Marking{{"p2", 2}}};
  return net;
}

PTNet counters_net(int m, int n) {
  PTNet net;
  net.places = {"p1", "p2", "p3", "p6", "p7"};
  ActionName a = fwd("a"), b = fwd("b"), ra = rev(a), rb = rev(b);
  net.actions = {a, b, ra, rb};
  net.set_pre("p1", a, 1);
  net.set_post(a, "p3", 1);
  net.set_pre("p3", ra, 1);
  net.set_post(ra, "p1", 1);
  net.set_pre("p2", b, 1);
  net.set_post(b, "p6", 1);
  net.set_pre("p6", rb, 1);
  net.set_post(rb, "p2", 1);
  net.set_pre("p7", ra, 1);
  net.set_post(ra, "p7", 1);
  net.set_pre("p7", rb, 1);
  net.set_post(rb, "p7", 1);
  Int k = std::max(m, n);
  net.initial_markings = {Marking{{"p1", m}, {"p2", n}, {"p7", k}}};
  return net;
}

StepTransitionSystem spike_line_sts() {
  return mk_sts({"v0"}, {
                            {"v0", mk_step({{"a", 1}}), "v1"},
                            {"v0", mk_step({{"a", 2}}), "v2"},
                            {"v1", mk_step({{"a", 1}}), "v2"},
                            {"v2", mk_step({{"b", 1}}), "v3"},
                            {"v3", mk_step({{"b", 1}}), "v4"},
                        });
}

PTNet spike_line_net() {
  PTNet net;
  net.places = {"p1", "p2", "p3"};
  net.actions = {fwd("a"), fwd("b")};
  net.set_pre("p1", fwd("a"), 1);
  net.set_post(fwd("a"), "p2", 1);
  net.set_pre("p2", fwd("b"), 2);
  net.set_post(fwd("b"), "p2", 2);
  net.set_pre("p3", fwd("b"), 1);
  net.initial_markings = {Marking{{"p1", 2}, {"p3", 2}}};
  return net;
}

StepTransitionSystem twopath_sts() {
  return mk_sts({"v1"}, {
                            {"v1", mk_step({{"a", 1}}), "v2"},
                            {"v1", mk_step({{"b", 1}}), "v3"},
                            {"v1", mk_step({{"a", 1}, {"b", 1}}), "v4"},
                            {"v2", mk_step({{"b", 1}}), "v4"},
                            {"v3", mk_step({{"a", 1}}), "v4"},
                            {"v2", mk_step({{"a", 1}}), "v5"},
                            {"v5", mk_step({{"a", 1}}), "v6"},
                            {"v3", mk_step({{"b", 1}}), "v6"},
                        });
}

PTNet twopath_net() {
  PTNet net;
  net.places = {"p1", "p2", "p3", "p4"};
  net.actions = {fwd("a"), fwd("b")};
  net.set_pre("p1", fwd("a"), 2);
  net.set_post(fwd("a"), "p2", 2);
  net.set_pre("p1", fwd("b"), 3);
  net.set_post(fwd("b"), "p2", 3);
  net.set_pre("p3", fwd("a"), 1);
  net.set_post(fwd("a"), "p3", 1);
  net.set_pre("p4", fwd("b"), 1);
  net.set_post(fwd("b"), "p4", 1);
  net.initial_markings = {Marking{{"p1", 6}, {"p3", 1}, {"p4", 1}}};
  return net;
}

StepTransitionSystem diamond_sts() {
  return mk_sts({"s0"}, {
                            {"s0", mk_step({{"a", 1}}), "s1"},
                            {"s0", mk_step({{"b", 1}}), "s2"},
                            {"s0", mk_step({{"a", 1}, {"b", 1}}), "s3"},
                            {"s1", mk_step({{"b", 1}}), "s3"},
                            {"s2", mk_step({{"a", 1}}), "s3"},
                        });
}

PTNet random_net(std::mt19937& rng) {
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  const char* action_pool[] = {"a", "b", "c"};
  while (true) {
    PTNet net;
    int n_places = pick(1, 4);
    int n_actions = pick(1, 3);
    for (int i = 0; i < n_places; ++i) net.places.push_back("p" + std::to_string(i));
    Marking m0;
    for (int i = 0; i < n_places; ++i) m0.set(net.places[static_cast<size_t>(i)], pick(0, 3));
    net.initial_markings = {m0};
    bool ok = true;
    for (int i = 0; i < n_actions; ++i) {
      ActionName a = fwd(action_pool[i]);
      net.actions.insert(a);
      bool consumes = false;
      for (const auto& p : net.places) {
        int w = pick(0, 3);
        if (w > 0) {
          net.set_pre(p, a, w);
          consumes = true;
        }
        int v = pick(0, 3);
        if (v > 0) net.set_post(a, p, v);
      }
      // no free autoconcurrency: every action must consume somewhere
      if (!consumes) ok = false;
    }
    if (!ok) continue;
    return net;
  }
}

}  // namespace fixtures

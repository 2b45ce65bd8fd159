#include <CLI11.hpp>
#include <iostream>

#include "steprev/constructions.hpp"
#include "steprev/io.hpp"
#include "steprev/reversal.hpp"
#include "steprev/synthesis.hpp"

using namespace steprev;

namespace {

// exit codes: 0 pass/solved, 1 property fails (witness on stdout), 2 usage/schema/limit
constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json axiom_json(const char* name, const AxiomVerdict& v) {
  Json j;
  j["axiom"] = name;
  j["pass"] = v.pass;
  if (!v.pass) j["witness"] = v.witness;
  return j;
}

int cmd_validate(const std::string& path) {
  auto sts = sts_from_json(load_json_file(path));
  auto report = validate_cest(sts);
  Json out;
  out["verdicts"] = Json::array();
  out["verdicts"].push_back(axiom_json("CE", report.ce));
  out["verdicts"].push_back(axiom_json("REA", report.rea));
  out["verdicts"].push_back(axiom_json("EL", report.el));
  out["verdicts"].push_back(axiom_json("SEQ", report.seq));
  out["verdicts"].push_back(axiom_json("FD", report.fd));
  out["isSetSystem"] = report.is_set_system;
  out["maxStepSize"] = static_cast<long long>(report.max_step_size);
  out["pass"] = report.all_pass();
  emit(out);
  return report.all_pass() ? kPass : kFail;
}

int cmd_crg(const std::string& path, const CrgLimits& limits, const std::string& format) {
  auto net = net_from_json(load_json_file(path));
  auto crg = build_crg(net, limits);
  if (format == "dot")
    std::cout << sts_to_dot(crg.sts);
  else
    emit(sts_to_json(crg.sts));
  return kPass;
}

int cmd_reverse(const std::string& path, const std::string& mode) {
  auto sts = sts_from_json(load_json_file(path));
  ReversalMode m = mode == "direct"  ? ReversalMode::Direct
                   : mode == "set"   ? ReversalMode::Set
                                     : ReversalMode::Mixed;
  emit(sts_to_json(reverse(sts, m)));
  return kPass;
}

Json outcome_json(const SynthesisOutcome& outcome) {
  Json out;
  out["solved"] = outcome.solved;
  if (!outcome.note.empty()) out["note"] = outcome.note;
  if (outcome.solved) {
    out["net"] = net_to_json(outcome.net);
    out["psi"] = Json::object();
    for (const auto& [s, m] : outcome.psi) out["psi"][s] = marking_to_json(m);
  } else {
    const auto& f = *outcome.failure;
    Json inst;
    inst["kind"] = f.instance.kind == SeparationInstance::Kind::EventState ? "event-state"
                                                                           : "state-state";
    inst["state"] = f.instance.s;
    if (f.instance.kind == SeparationInstance::Kind::EventState)
      inst["step"] = step_to_json(f.instance.step);
    else {
      inst["state2"] = f.instance.s2;
      inst["branch"] = f.instance.branch;
    }
    inst["detail"] = f.detail;
    Json cert = Json::array();
    for (const auto& y : f.certificate) cert.push_back(y.str());
    out["witness"] = inst;
    out["certificate"] = cert;
  }
  return out;
}

int cmd_synth(const std::string& path) {
  auto sts = sts_from_json(load_json_file(path));
  auto outcome = synthesize(sts);
  emit(outcome_json(outcome));
  return outcome.solved ? kPass : kFail;
}

int cmd_decide_mixrev(const std::string& path, std::vector<std::string> home) {
  auto sts = sts_from_json(load_json_file(path));
  std::set<std::string> cover(home.begin(), home.end());
  if (cover.empty()) {
    auto homes = home_states(sts);
    if (homes.empty()) throw Error(ErrorCode::NoHomeState, "specify --home: no home state");
    cover = {*homes.begin()};
  }
  auto outcome = decide_mixed_reversibility(sts, cover);
  emit(outcome_json(outcome));
  return outcome.solved ? kPass : kFail;
}

int cmd_decide_rev_set(const std::string& path) {
  auto sts = sts_from_json(load_json_file(path));
  auto outcome = decide_direct_reversibility_set(sts);
  emit(outcome_json(outcome));
  return outcome.solved ? kPass : kFail;
}

Json report_json(const TransformReport& report) {
  Json out;
  out["spec"] = report.spec;
  out["pass"] = report.pass;
  if (!report.pass) out["witness"] = report.witness;
  out["net"] = net_to_json(report.output);
  out["addedPlaces"] = report.added_places;
  out["addedActions"] = report.added_actions;
  if (report.pass) {
    out["psi"] = Json::object();
    for (const auto& [s, m] : report.psi) out["psi"][s] = marking_to_json(m);
  }
  return out;
}

int cmd_transform(const std::string& path, const std::string& op, const std::string& sts_path,
                  const std::string& net2_path, const std::string& home_arg, long long k_arg) {
  auto net = net_from_json(load_json_file(path));
  auto need_sts = [&]() {
    if (sts_path.empty()) throw Error(ErrorCode::SchemaError, "--sts required for op " + op);
    return sts_from_json(load_json_file(sts_path));
  };
  if (op == "normalize") {
    emit(net_to_json(normalize_reverse_arcs(net)));
    return kPass;
  }
  TransformReport report;
  if (op == "mix2set") {
    std::optional<Int> k;
    if (k_arg >= 0) k = Int(k_arg);
    report = mix2set_transform(net, need_sts(), k);
  } else if (op == "combine") {
    if (net2_path.empty()) throw Error(ErrorCode::SchemaError, "--net2 required for op combine");
    auto sts = need_sts();
    std::set<std::string> cover;
    if (!home_arg.empty()) {
      std::istringstream split(home_arg);
      std::string item;
      while (std::getline(split, item, ',')) cover.insert(item);
    } else {
      auto homes = home_states(sts);
      if (homes.empty()) throw Error(ErrorCode::NoHomeState, "specify --home");
      cover = {*homes.begin()};
    }
    report = combine_reversal(sts, cover, net, net_from_json(load_json_file(net2_path)));
  } else if (op == "lift") {
    report = lift_to_mixed(net, need_sts());
  } else if (op == "mutex") {
    report = add_direction_mutexes(net, need_sts());
  } else if (op == "splitrev") {
    report = split_reverse_with_read_arcs(net);
  } else {
    throw Error(ErrorCode::SchemaError, "unknown op " + op);
  }
  emit(report_json(report));
  return report.pass ? kPass : kFail;
}

int cmd_verify_splitrev(const std::string& path, const std::string& against,
                        const std::string& policy) {
  auto cand = net_from_json(load_json_file(path));
  auto orig = net_from_json(load_json_file(against));
  SeqPolicy p = policy == "strict" ? SeqPolicy::Strict : SeqPolicy::AfterNoidx;
  auto verdict = verify_net_split_reverse(cand, orig, p);
  Json out;
  out["pass"] = verdict.pass;
  out["seqPolicy"] = policy;
  if (!verdict.pass) out["witness"] = verdict.witness;
  emit(out);
  return verdict.pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"step-semantics reversibility toolkit for place/transition nets"};
  app.require_subcommand(1);

  std::string file, mode = "direct", format = "json", op, sts_path, net2_path, home_arg,
                    against, policy = "after-noidx";
  std::vector<std::string> home_list;
  long long k_arg = -1;
  CrgLimits limits;

  auto* validate = app.add_subcommand("validate", "check the transition-system axioms");
  validate->add_option("sts", file)->required();

  auto* crg = app.add_subcommand("crg", "build the concurrent reachability graph");
  crg->add_option("net", file)->required();
  crg->add_option("--max-states", limits.max_states);
  crg->add_option("--max-step", limits.max_step_size);
  crg->add_option("--format", format)->check(CLI::IsMember({"json", "dot"}));

  auto* rev_cmd = app.add_subcommand("reverse", "behavioural reversal of a transition system");
  rev_cmd->add_option("sts", file)->required();
  rev_cmd->add_option("--mode", mode)->required()->check(CLI::IsMember({"direct", "set", "mixed"}));

  auto* synth = app.add_subcommand("synth", "region synthesis of a net");
  synth->add_option("sts", file)->required();

  auto* mixrev = app.add_subcommand("decide-mixrev", "decide mixed reversibility");
  mixrev->add_option("sts", file)->required();
  mixrev->add_option("--home", home_list);

  auto* revset = app.add_subcommand("decide-rev-set", "decide direct reversibility (set systems)");
  revset->add_option("sts", file)->required();

  auto* transform = app.add_subcommand("transform", "run a net transformation");
  transform->add_option("net", file)->required();
  transform->add_option("--op", op)->required()->check(
      CLI::IsMember({"mix2set", "combine", "normalize", "lift", "mutex", "splitrev"}));
  transform->add_option("--sts", sts_path);
  transform->add_option("--net2", net2_path);
  transform->add_option("--home", home_arg);
  transform->add_option("--k", k_arg);

  auto* verify = app.add_subcommand("verify-splitrev", "verify a split-reverse net");
  verify->add_option("ptr-net", file)->required();
  verify->add_option("--against", against)->required();
  verify->add_option("--seq-policy", policy)->check(CLI::IsMember({"strict", "after-noidx"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(file);
    if (crg->parsed()) return cmd_crg(file, limits, format);
    if (rev_cmd->parsed()) return cmd_reverse(file, mode);
    if (synth->parsed()) return cmd_synth(file);
    if (mixrev->parsed()) return cmd_decide_mixrev(file, home_list);
    if (revset->parsed()) return cmd_decide_rev_set(file);
    if (transform->parsed()) return cmd_transform(file, op, sts_path, net2_path, home_arg, k_arg);
    if (verify->parsed()) return cmd_verify_splitrev(file, against, policy);
  } catch (const Error& e) {
    // property-level failures exit 1 with a witness object; schema, cap and
    // limit problems exit 2
    switch (e.code()) {
      case ErrorCode::NotCest:
      case ErrorCode::NotASetSystem:
      case ErrorCode::NoHomeState:
      case ErrorCode::NotAHomeCover:
      case ErrorCode::NotAReverseNet:
      case ErrorCode::IncompletePairing:
      case ErrorCode::PreconditionFailed: {
        Json out;
        out["pass"] = false;
        out["witness"] = e.what();
        emit(out);
        return kFail;
      }
      default:
        std::cerr << e.what() << "\n";
        return kUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

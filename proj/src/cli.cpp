#include "gaussbreak/cli.hpp"

#include "gaussbreak/classification.hpp"
#include "gaussbreak/compatibility.hpp"
#include "gaussbreak/distributions.hpp"
#include "gaussbreak/documents.hpp"
#include "gaussbreak/error.hpp"
#include "gaussbreak/witness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>

namespace gaussbreak {

using nlohmann::json;

namespace {

ModeSplit parse_split(const std::string& text) {
  const auto comma = text.find(',');
  auto fail = [&] {
    return InvalidInput("--split: expected NA,NB with positive integers, got '" + text + "'");
  };
  if (comma == std::string::npos) throw fail();
  try {
    std::size_t used_a = 0, used_b = 0;
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    const long na = std::stol(a, &used_a), nb = std::stol(b, &used_b);
    if (used_a != a.size() || used_b != b.size() || na < 1 || nb < 1) throw fail();
    return {static_cast<std::size_t>(na), static_cast<std::size_t>(nb)};
  } catch (const std::logic_error&) {
    throw fail();
  }
}

Side parse_side(const std::string& s) {
  if (s == "A" || s == "a") return Side::A;
  if (s == "B" || s == "b") return Side::B;
  throw InvalidInput("--side: expected A or B, got '" + s + "'");
}

json cmd_validate(const std::string& path) {
  const Object obj = load_object(path);
  json out = std::visit([](const auto& o) { return to_json(validate(o)); }, obj);
  out["file"] = path;
  out["kind"] = kind_name(obj);
  return out;
}

json cmd_classify(const std::string& path) { return to_json(classify(load_as<GaussianChannel>(path))); }

json cmd_act(const std::string& channel_path, const std::string& state_path,
             const std::string& obs_path) {
  const GaussianChannel ch = load_as<GaussianChannel>(channel_path);
  if (!state_path.empty()) {
    const GaussianState st = load_as<GaussianState>(state_path);
    if (st.modes() != ch.in_modes())
      throw InvalidInput(state_path + ": modes: state has " + std::to_string(st.modes()) +
                         " modes, channel " + channel_path + " expects in_modes " +
                         std::to_string(ch.in_modes()));
    return to_document(apply_channel_to_state(ch, st));
  }
  const GaussianObservable obs = load_as<GaussianObservable>(obs_path);
  if (obs.modes() != ch.out_modes())
    throw InvalidInput(obs_path + ": modes: observable has " + std::to_string(obs.modes()) +
                       " modes, channel " + channel_path + " has out_modes " +
                       std::to_string(ch.out_modes()));
  return to_document(apply_channel_to_observable(ch, obs));
}

json cmd_witness(const std::string& path) {
  const GaussianChannel ch = load_as<GaussianChannel>(path);
  if (is_gib(ch).is_psd)
    throw PreconditionError(path + ": channel is Gaussian incompatibility breaking, so no "
                            "incompatibility witness exists");
  const IncompatibilityWitness w = build_witness(ch);
  json out = to_json(w);
  out["verified"] = verify_witness(w, ch);
  return out;
}

json cmd_joint(const std::vector<std::string>& obs_paths, const std::string& channel_path) {
  std::vector<GaussianObservable> obs;
  for (const std::string& p : obs_paths) obs.push_back(load_as<GaussianObservable>(p));
  if (!channel_path.empty()) {
    const GaussianChannel ch = load_as<GaussianChannel>(channel_path);
    for (std::size_t i = 0; i < obs.size(); ++i) {
      if (obs[i].modes() != ch.out_modes())
        throw InvalidInput(obs_paths[i] + ": modes: observable has " +
                           std::to_string(obs[i].modes()) + " modes, channel " + channel_path +
                           " has out_modes " + std::to_string(ch.out_modes()));
      obs[i] = apply_channel_to_observable(ch, obs[i]);
    }
  } else if (obs[0].modes() != obs[1].modes()) {
    throw InvalidInput(obs_paths[1] + ": modes: observables act on different numbers of modes");
  }
  for (std::size_t i = 0; i < obs.size(); ++i)
    if (!validate(obs[i]).valid())
      throw InvalidInput(obs_paths[i] + ": observable is not valid (L - i K^T Omega K >= 0 fails)");

  json out = to_json(pair_compatible(obs[0], obs[1]));
  if (obs[0].outcome_dim() == 1 && obs[1].outcome_dim() == 1)
    out["closed_form"] = to_json(quad_pair_compatible(obs[0].k().col(0), obs[0].l()(0, 0),
                                                      obs[1].k().col(0), obs[1].l()(0, 0),
                                                      obs[0].m()(0), obs[1].m()(0)));
  return out;
}

json cmd_steer(const std::string& state_path, const std::string& split_text,
               const std::string& channel_path, const std::string& side_text) {
  GaussianState st = load_as<GaussianState>(state_path);
  ModeSplit split = parse_split(split_text);
  if (split.a_modes + split.b_modes != st.modes())
    throw InvalidInput("--split: " + split_text + " does not partition the " +
                       std::to_string(st.modes()) + " modes of " + state_path);
  if (!channel_path.empty()) {
    const GaussianChannel ch = load_as<GaussianChannel>(channel_path);
    const Side side = parse_side(side_text);
    const std::size_t target = side == Side::A ? split.a_modes : split.b_modes;
    if (ch.in_modes() != target)
      throw InvalidInput(channel_path + ": in_modes: channel expects " +
                         std::to_string(ch.in_modes()) + " modes, side " + side_text + " has " +
                         std::to_string(target));
    st = one_sided_apply(ch, st, split, side);
    (side == Side::A ? split.a_modes : split.b_modes) = ch.out_modes();
  }
  const SteeringVerdict v = is_steerable(st, split);
  json out = to_json(v);
  out["min_eigenvalue"] = v.verdict.min_eigenvalue;
  return out;
}

json cmd_epr_sweep(const std::string& path, const std::vector<double>& grid) {
  const GaussianChannel ch = load_as<GaussianChannel>(path);
  for (double r : grid)
    if (!std::isfinite(r) || r < 0.0)
      throw InvalidInput("--r-grid: entries must be finite and >= 0");
  return to_json(is_steerability_breaking(ch, grid));
}

json cmd_sample(const std::string& state_path, const std::string& obs_path, std::size_t n,
                std::uint64_t seed) {
  const GaussianState st = load_as<GaussianState>(state_path);
  const GaussianObservable obs = load_as<GaussianObservable>(obs_path);
  if (obs.modes() != st.modes())
    throw InvalidInput(obs_path + ": modes: observable has " + std::to_string(obs.modes()) +
                       " modes, state " + state_path + " has " + std::to_string(st.modes()));
  const OutcomeGaussian d = outcome_distribution(st, obs);
  json rows = json::array();
  for (const RealVector& s : sample(d, n, seed)) rows.push_back(to_json(s));
  return json{{"generator", "gaussbreak-normal-v1"},
              {"seed", seed},
              {"n", n},
              {"distribution", to_json(d)},
              {"samples", rows}};
}

void report_error(std::ostream& err, const char* category, const std::string& message) {
  err << json{{"error", category}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian channel incompatibility, entanglement and steering analysis",
               "gaussbreak"};
  app.require_subcommand(1);

  std::string file, channel, state, observable, split, side = "A";
  std::vector<std::string> obs_files;
  std::vector<double> grid = kDefaultEprGrid;
  std::size_t n = 0;
  std::uint64_t seed = 0;

  auto* validate_cmd = app.add_subcommand("validate", "Check the validity invariants of an object");
  validate_cmd->add_option("file", file, "Object document")->required();

  auto* classify_cmd = app.add_subcommand("classify", "Classify a channel");
  classify_cmd->add_option("file", file, "Channel document")->required();

  auto* act_cmd = app.add_subcommand("act", "Apply a channel to a state or an observable");
  act_cmd->add_option("--channel", channel, "Channel document")->required();
  auto* act_state = act_cmd->add_option("--state", state, "State document (Schroedinger)");
  auto* act_obs = act_cmd->add_option("--observable", observable, "Observable document (Heisenberg)");
  act_state->excludes(act_obs);
  act_cmd->require_option(2);

  auto* witness_cmd = app.add_subcommand("witness", "Incompatibility witness for a channel");
  witness_cmd->add_option("--channel", channel, "Channel document")->required();

  auto* joint_cmd = app.add_subcommand("joint", "Gaussian compatibility of two observables");
  joint_cmd->add_option("--obs", obs_files, "Observable document (twice)")
      ->required()
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  joint_cmd->add_option("--channel", channel, "Apply this channel to both observables first");

  auto* steer_cmd = app.add_subcommand("steer", "Steerability of a bipartite state");
  steer_cmd->add_option("--state", state, "State document")->required();
  steer_cmd->add_option("--split", split, "Mode counts NA,NB")->required();
  auto* steer_channel = steer_cmd->add_option("--channel", channel, "Channel applied to one side");
  steer_cmd->add_option("--side", side, "Side the channel acts on (A or B)")->needs(steer_channel);

  auto* sweep_cmd = app.add_subcommand("epr-sweep", "EPR steerability probe through a channel");
  sweep_cmd->add_option("--channel", channel, "Channel document")->required();
  sweep_cmd->add_option("--r-grid", grid, "Comma-separated squeezing values")->delimiter(',');

  auto* sample_cmd = app.add_subcommand("sample", "Draw measurement outcomes");
  sample_cmd->add_option("--state", state, "State document")->required();
  sample_cmd->add_option("--observable", observable, "Observable document")->required();
  sample_cmd->add_option("-n", n, "Number of samples")->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", seed, "Generator seed")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what());
    return kExitInput;
  }

  try {
    json report;
    if (*validate_cmd) {
      report = cmd_validate(file);
    } else if (*classify_cmd) {
      report = cmd_classify(file);
    } else if (*act_cmd) {
      report = cmd_act(channel, state, observable);
    } else if (*witness_cmd) {
      report = cmd_witness(channel);
    } else if (*joint_cmd) {
      if (obs_files.size() != 2)
        throw InvalidInput("--obs: expected exactly two observable documents, got " +
                           std::to_string(obs_files.size()));
      report = cmd_joint(obs_files, channel);
    } else if (*steer_cmd) {
      report = cmd_steer(state, split, channel, side);
    } else if (*sweep_cmd) {
      report = cmd_epr_sweep(channel, grid);
    } else if (*sample_cmd) {
      report = cmd_sample(state, observable, n, seed);
    }
    out << dump_report(report);
    return kExitOk;
  } catch (const InvalidInput& e) {
    report_error(err, "input", e.what());
    return kExitInput;
  } catch (const PreconditionError& e) {
    report_error(err, "input", e.what());
    return kExitInput;
  } catch (const NumericalFailure& e) {
    report_error(err, "numerical", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    report_error(err, "numerical", e.what());
    return kExitNumerical;
  }
}

}  // namespace gaussbreak

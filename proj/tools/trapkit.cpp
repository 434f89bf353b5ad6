// Copyright 2026 The trapkit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "trapkit/analysis.hpp"
#include "trapkit/errors.hpp"
#include "trapkit/harness.hpp"
#include "trapkit/io.hpp"
#include "trapkit/optimizer.hpp"

namespace tk = trapkit;

namespace {

struct GlobalOptions {
  std::string out;
  bool deterministic = false;
  int jobs = 1;
};

void emit(const GlobalOptions& global, tk::Json report) {
  if (!global.deterministic) {
    report["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(
                              std::chrono::system_clock::now().time_since_epoch())
                              .count();
  }
  if (global.out.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    tk::save_json(global.out, report);
  }
}

tk::DeviationSetSpec parse_errors(const std::string& spec, const tk::OpenGraph& graph) {
  if (spec == "all-xy") return tk::DeviationSetSpec::all_xy();
  if (spec == "all-pauli") return tk::DeviationSetSpec::all_pauli();
  if (spec == "z-only") return tk::DeviationSetSpec::z_only();
  if (spec == "identity") return tk::DeviationSetSpec::identity_only();
  if (!spec.empty() && spec[0] == '@') {
    tk::Json j = tk::load_json(spec.substr(1));
    std::vector<tk::PauliDeviation> devs;
    for (const auto& d : j) devs.push_back(tk::deviation_from_json(d, graph));
    return tk::DeviationSetSpec::explicit_list(std::move(devs));
  }
  throw tk::InvalidInput("unknown error set '" + spec + "'");
}

tk::Json interval_to_json(const tk::Interval& i) {
  return {{"point", i.point}, {"low", i.low}, {"high", i.high}};
}

int run(int argc, char** argv) {
  CLI::App app{"trappified-scheme toolkit for verifiable blind delegated MBQC"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  GlobalOptions global;
  app.add_option("--out", global.out, "write the JSON report to a file");
  app.add_flag("--deterministic", global.deterministic,
               "suppress the timestamp for byte-identical reruns");
  app.add_option("--jobs", global.jobs, "worker threads for Monte-Carlo commands")
      ->default_val(1);

  // --- validate ---------------------------------------------------------
  auto* validate = app.add_subcommand("validate", "lint a graph, pattern or scheme file");
  std::string v_graph, v_pattern, v_scheme;
  validate->add_option("--graph", v_graph);
  validate->add_option("--pattern", v_pattern);
  validate->add_option("--scheme", v_scheme);
  validate->callback([&] {
    tk::Json report;
    std::vector<std::string> problems;
    if (!v_graph.empty()) {
      tk::graph_from_json(tk::load_json(v_graph));
      report["kind"] = "graph";
    } else if (!v_pattern.empty()) {
      auto pattern = tk::pattern_from_json(tk::load_json(v_pattern));
      problems = tk::validate_flow(pattern);
      report["kind"] = "pattern";
    } else if (!v_scheme.empty()) {
      tk::scheme_from_json(tk::load_json(v_scheme));
      report["kind"] = "scheme";
    } else {
      throw tk::InvalidInput("validate needs --graph, --pattern or --scheme");
    }
    report["ok"] = problems.empty();
    report["violations"] = problems;
    emit(global, report);
    if (!problems.empty()) std::exit(1);
  });

  // --- analyze ----------------------------------------------------------
  auto* analyze = app.add_subcommand("analyze", "exact detection/insensitivity of a scheme");
  std::string a_scheme, a_errors = "all-xy";
  analyze->add_option("--scheme", a_scheme)->required();
  analyze->add_option("--errors", a_errors, "all-xy | all-pauli | z-only | identity | @file");
  analyze->callback([&] {
    auto scheme = tk::scheme_from_json(tk::load_json(a_scheme));
    auto set = parse_errors(a_errors, scheme.graph);
    auto eps = tk::scheme_epsilon(scheme, set);
    auto delta = tk::scheme_delta(scheme, set);
    tk::Json report;
    report["errors"] = a_errors;
    report["epsilon"] = tk::to_string(eps.value);
    report["detection_rate"] = tk::to_string(eps.detection_rate);
    report["epsilon_witness"] = tk::deviation_to_json(eps.witness, scheme.graph.ids);
    report["delta"] = tk::to_string(delta.value);
    report["delta_witness"] = tk::deviation_to_json(delta.witness, scheme.graph.ids);
    emit(global, report);
  });

  // --- optimize ---------------------------------------------------------
  auto* optimize = app.add_subcommand("optimize", "optimal trap distribution for a graph");
  std::string o_graph, o_family = "standard", o_errors = "all-xy", o_emit_scheme;
  optimize->add_option("--graph", o_graph)->required();
  optimize->add_option("--family", o_family, "standard | general | colouring");
  optimize->add_option("--errors", o_errors);
  optimize->add_option("--emit-scheme", o_emit_scheme,
                       "also write the optimised scheme to this file");
  optimize->callback([&] {
    auto graph = tk::graph_from_json(tk::load_json(o_graph));
    tk::Json report;
    tk::TrappifiedScheme scheme;
    scheme.graph = graph;
    if (o_family == "colouring") {
      auto col = tk::colouring_distribution(graph);
      report["rate"] = tk::to_string(col.rate);
      tk::Json sets = tk::Json::array();
      for (std::size_t i = 0; i < col.distribution.sets.size(); ++i) {
        tk::Json entry;
        tk::Json members = tk::Json::array();
        for (int v = 0; v < graph.size(); ++v) {
          if ((col.distribution.sets[i] >> v) & 1ULL) members.push_back(graph.ids[v]);
        }
        entry["set"] = members;
        entry["weight"] = tk::to_string(col.distribution.weights[i]);
        sets.push_back(entry);
        scheme.canvases.push_back(tk::build_standard_trap(graph, col.distribution.sets[i]));
        scheme.weights.push_back(col.distribution.weights[i]);
      }
      report["distribution"] = sets;
    } else {
      std::vector<tk::TrappifiedCanvas> tests;
      if (o_family == "standard") {
        for (const auto& ind : tk::enumerate_independent_sets(graph)) {
          tests.push_back(tk::build_standard_trap(graph, ind.members));
        }
      } else if (o_family == "general") {
        for (std::uint64_t h = 1; h < (1ULL << graph.size()); ++h) {
          tests.push_back(tk::build_general_trap(graph, h));
        }
      } else {
        throw tk::InvalidInput("unknown family '" + o_family + "'");
      }
      auto rel = tk::build_relation(tests, parse_errors(o_errors, graph));
      auto sol = tk::solve_distribution(rel);
      report["rate"] = tk::to_string(sol.rate);
      report["non_unique"] = sol.non_unique;
      tk::Json dist = tk::Json::array();
      for (std::size_t t = 0; t < tests.size(); ++t) {
        if (sol.weights[t] == 0) continue;
        dist.push_back({{"test", rel.test_labels[t]},
                        {"weight", tk::to_string(sol.weights[t])}});
        scheme.canvases.push_back(tests[t]);
        scheme.weights.push_back(sol.weights[t]);
      }
      report["distribution"] = dist;
      tk::Json attack = tk::Json::array();
      for (std::size_t e = 0; e < rel.errors.size(); ++e) {
        if (sol.attack[e] == 0) continue;
        attack.push_back({{"deviation", tk::deviation_to_json(rel.errors[e], graph.ids)},
                          {"weight", tk::to_string(sol.attack[e])},
                          {"class_size", rel.class_sizes[e]}});
      }
      report["optimal_attack"] = attack;
      if (sol.undetectable_error) {
        report["undetectable"] =
            tk::deviation_to_json(rel.errors[*sol.undetectable_error], graph.ids);
      }
    }
    if (!o_emit_scheme.empty()) {
      tk::save_json(o_emit_scheme, tk::scheme_to_json(scheme));
    }
    emit(global, report);
  });

  // --- bounds -----------------------------------------------------------
  auto* bounds = app.add_subcommand("bounds", "amplification bound calculators");
  std::string b_params;
  bool b_parallel = false;
  int b_n = 0, b_w = 0;
  double b_f = 0.0;
  bounds->add_option("--params", b_params)->required();
  bounds->add_flag("--parallel", b_parallel, "evaluate the parallel-repetition forms");
  bounds->add_option("--rounds", b_n, "parallel: number of repetitions");
  bounds->add_option("--threshold", b_w, "parallel: rejection threshold");
  bounds->add_option("--required", b_f, "parallel: correct rounds the decoder needs");
  bounds->callback([&] {
    auto [in, params] = tk::params_from_json(tk::load_json(b_params));
    tk::Json report;
    if (b_parallel) {
      int n = b_n > 0 ? b_n : params.n;
      int w = b_w > 0 ? b_w : params.w;
      double f = b_f > 0.0 ? b_f : params.d / 2.0;
      auto pb = tk::bounds_parallel(in, n, w, f);
      report["parallel"] = {{"eps", pb.eps}, {"delta", pb.delta}, {"nu", pb.nu}};
    } else {
      auto ab = tk::bounds_amplified(in, params);
      report["eps_prime"] = {{"value", ab.eps_prime.value}, {"chi", ab.eps_prime.chi}};
      report["delta_prime"] = {{"value", ab.delta_prime.value}, {"chi", ab.delta_prime.chi}};
      report["nu_prime"] = {{"value", ab.nu_prime.value}, {"chi", ab.nu_prime.chi}};
      report["nu_prime_proof_display"] = ab.nu_prime_proof_display;
      report["p_delta_prime"] = ab.p_delta_prime;
    }
    emit(global, report);
  });

  // --- simulate ---------------------------------------------------------
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo protocol runs");
  std::string s_scheme, s_computation, s_adversary, s_compile, s_params;
  std::string s_backend = "blind";
  std::uint64_t s_trials = 0, s_seed = 0;
  std::vector<std::uint64_t> s_correct;
  double s_flip = 0.0;
  simulate->add_option("--scheme", s_scheme)->required();
  simulate->add_option("--computation", s_computation);
  simulate->add_option("--adversary", s_adversary)->required();
  simulate->add_option("--trials", s_trials)->required();
  simulate->add_option("--seed", s_seed)->required();
  simulate->add_option("--compile", s_compile, "amplified | bqp | parallel");
  simulate->add_option("--params", s_params, "compiler parameter file");
  simulate->add_option("--backend", s_backend, "blind | predicate (compiled only)");
  simulate->add_option("--correct", s_correct, "correct output values for corruption counting");
  simulate->add_option("--artificial-flip", s_flip,
                       "predicate mode: per-round reference flip probability");
  simulate->callback([&] {
    auto scheme = tk::scheme_from_json(tk::load_json(s_scheme));
    auto adversary = tk::adversary_from_json(tk::load_json(s_adversary), scheme.graph);
    std::optional<tk::Computation> computation;
    if (!s_computation.empty()) {
      computation = tk::computation_from_json(tk::load_json(s_computation));
    }
    std::set<std::uint64_t> correct(s_correct.begin(), s_correct.end());

    tk::SessionRunner runner;
    if (!s_compile.empty()) {
      if (s_params.empty()) throw tk::InvalidInput("--compile needs --params");
      auto [in, params] = tk::params_from_json(tk::load_json(s_params));
      (void)in;
      tk::CompiledScheme compiled;
      if (s_compile == "amplified") {
        compiled = tk::compile_amplified(scheme, params);
      } else if (s_compile == "bqp") {
        compiled = tk::compile_bqp(scheme, params);
      } else if (s_compile == "parallel") {
        compiled = tk::compile_parallel(scheme, params.n, params.w);
      } else {
        throw tk::InvalidInput("unknown compiler '" + s_compile + "'");
      }
      auto options = std::make_shared<tk::CompiledRunOptions>();
      options->backend =
          s_backend == "predicate" ? tk::RoundBackend::Predicate : tk::RoundBackend::Blind;
      options->artificial_flip = s_flip;
      if (computation) options->computation = &*computation;
      runner = [compiled, adversary, options, &computation](std::uint64_t seed) {
        return tk::run_protocol3_compiled(compiled, adversary, seed, *options);
      };
    } else {
      runner = [&scheme, &adversary, &computation](std::uint64_t seed) {
        return tk::run_protocol3(scheme, computation ? &*computation : nullptr, adversary,
                                 seed);
      };
    }
    auto rates = tk::estimate_rates(runner, s_trials, s_seed, correct, global.jobs);
    tk::Json report;
    report["trials"] = rates.trials;
    report["seed"] = s_seed;
    report["accept"] = interval_to_json(rates.accept);
    report["corrupt_and_accept"] = interval_to_json(rates.corrupt_and_accept);
    emit(global, report);
  });

  // --- distinguish ------------------------------------------------------
  auto* distinguish = app.add_subcommand("distinguish", "real-vs-ideal advantage estimate");
  std::string d_scheme, d_comp_a, d_comp_b, d_adversary;
  std::uint64_t d_trials = 0, d_seed = 0;
  distinguish->add_option("--scheme", d_scheme)->required();
  distinguish->add_option("--computation-a", d_comp_a)->required();
  distinguish->add_option("--computation-b", d_comp_b)->required();
  distinguish->add_option("--adversary", d_adversary)->required();
  distinguish->add_option("--trials", d_trials)->required();
  distinguish->add_option("--seed", d_seed)->required();
  distinguish->callback([&] {
    auto scheme = tk::scheme_from_json(tk::load_json(d_scheme));
    auto a = tk::computation_from_json(tk::load_json(d_comp_a));
    auto b = tk::computation_from_json(tk::load_json(d_comp_b));
    auto adversary = tk::adversary_from_json(tk::load_json(d_adversary), scheme.graph);
    auto result = tk::distinguishing_game(scheme, a, b, adversary, d_trials, d_seed,
                                          global.jobs);
    tk::Json report;
    report["trials"] = d_trials;
    report["seed"] = d_seed;
    report["accept_real"] = interval_to_json(result.accept_real);
    report["accept_ideal"] = interval_to_json(result.accept_ideal);
    report["advantage"] = result.advantage;
    report["noise_floor"] = result.noise_floor;
    report["tv_outputs_on_accept"] = result.tv_outputs_on_accept;
    emit(global, report);
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const tk::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 2;
  } catch (const tk::Inadmissible& e) {
    std::cerr << "inadmissible parameters: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

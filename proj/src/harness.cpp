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

#include "trapkit/harness.hpp"

#include <bit>
#include <cmath>
#include <mutex>
#include <thread>

#include "trapkit/analysis.hpp"
#include "trapkit/errors.hpp"

namespace trapkit {

AdversaryStrategy AdversaryStrategy::make_fixed(PauliDeviation dev) {
  AdversaryStrategy out;
  out.kind = Kind::Fixed;
  out.fixed = std::move(dev);
  return out;
}

AdversaryStrategy AdversaryStrategy::make_distribution(
    std::vector<std::pair<PauliDeviation, Rational>> items) {
  AdversaryStrategy out;
  out.kind = Kind::Distribution;
  Rational total = 0;
  for (const auto& [dev, weight] : items) {
    if (weight < 0) throw InvalidInput("negative adversary weight");
    total += weight;
  }
  if (total != 1) throw InvalidInput("adversary distribution must sum to 1");
  out.distribution = std::move(items);
  return out;
}

AdversaryStrategy AdversaryStrategy::make_noisy(Rational p,
                                                std::vector<PauliDeviation> set) {
  if (p < 0 || p > 1) throw InvalidInput("noise probability outside [0,1]");
  if (set.empty()) throw InvalidInput("noisy adversary needs a non-empty set");
  AdversaryStrategy out;
  out.kind = Kind::Noisy;
  out.p_noise = p;
  out.noise_set = std::move(set);
  return out;
}

PauliDeviation AdversaryStrategy::sample(Rng& rng) const {
  switch (kind) {
    case Kind::Honest:
      return {};
    case Kind::Fixed:
      return fixed;
    case Kind::Distribution: {
      double u = random_unit(rng);
      double acc = 0.0;
      for (const auto& [dev, weight] : distribution) {
        acc += to_double(weight);
        if (u < acc) return dev;
      }
      return distribution.back().first;
    }
    case Kind::Noisy: {
      if (random_unit(rng) >= to_double(p_noise)) return {};
      return noise_set[random_below(rng, noise_set.size())];
    }
  }
  return {};
}

int Computation::output_bits() const {
  return std::popcount(pattern.classical_outputs);
}

namespace {

// Trap verdict of a finished blind session, covering the open-question
// branch where some trap outputs are quantum: those are measured client-side
// in the X basis after decryption.
bool canvas_rejects_session(const TrappifiedCanvas& canvas, const MeasurementPattern& pattern,
                            BlindSessionResult& session, Rng& rng) {
  std::map<int, int> outcomes = session.decoded_outcomes;
  std::uint64_t pending = canvas.ot & pattern.graph.outputs;
  if (pending != 0) {
    for (std::size_t k = 0; k < session.output_qubits.size(); ++k) {
      int v = session.output_qubits[k];
      if ((pending >> v) & 1ULL) {
        session.output_state.apply_h(static_cast<int>(k));
        outcomes[v] = session.output_state.measure(static_cast<int>(k), rng);
      }
    }
  }
  return canvas.rejects(outcomes);
}

}  // namespace

SessionResult run_protocol3(const TrappifiedScheme& scheme, const Computation* computation,
                            const AdversaryStrategy& adversary, std::uint64_t seed) {
  Rng rng = trial_rng(seed, 0);
  SessionResult result;
  result.seed = seed;

  std::size_t canvas_index = scheme.sample_index(rng);
  const TrappifiedCanvas& canvas = scheme.canvases[canvas_index];

  TrappifiedPattern tp;
  if (computation != nullptr) {
    if (scheme.embedding != EmbeddingKind::DummyIsolated) {
      throw InvalidInput("scheme cannot embed a computation");
    }
    auto embedded = embed_dummy_isolated(computation->pattern, canvas, &rng);
    if (!embedded) throw InvalidInput("embedding failed for the requested computation");
    tp = std::move(*embedded);
    for (auto [v, prep] : computation->input) {
      tp.preps[tp.vertex_map[v]] = prep;
    }
  } else {
    tp = canvas_pattern(canvas, &rng);
  }

  PauliDeviation deviation = adversary.sample(rng);
  auto session = run_blind_session(tp.pattern, tp.preps, deviation, rng);

  bool rejected = canvas_rejects_session(canvas, tp.pattern, session, rng);
  result.failed_tests = rejected ? 1 : 0;
  result.accepted = !rejected;
  if (result.accepted && computation != nullptr && computation->output_bits() > 0) {
    // Repack the decoded bits in the computation's own vertex order.
    std::uint64_t output = 0;
    int pos = 0;
    for (int v = 0; v < computation->pattern.graph.size(); ++v) {
      if ((computation->pattern.classical_outputs >> v) & 1ULL) {
        if (session.decoded_outcomes.at(tp.vertex_map[v])) output |= 1ULL << pos;
        ++pos;
      }
    }
    result.output = output;
  }
  return result;
}

SessionResult run_protocol3_compiled(const CompiledScheme& scheme,
                                     const AdversaryStrategy& adversary, std::uint64_t seed,
                                     const CompiledRunOptions& options) {
  Rng rng = trial_rng(seed, 0);
  SessionResult result;
  result.seed = seed;
  const CompilerParams& params = scheme.params;

  if (scheme.kind == CompiledKind::Parallel) {
    if (options.computation == nullptr) {
      throw InvalidInput("parallel repetition embeds the computation in every round");
    }
    auto draws = scheme.sample_parallel(rng);
    int failed = 0;
    std::vector<std::uint64_t> outputs;
    for (std::size_t round = 0; round < draws.size(); ++round) {
      TrappifiedScheme one;
      one.graph = scheme.base.graph;
      one.canvases = {scheme.base.canvases[draws[round]]};
      one.weights = {Rational(1)};
      one.embedding = scheme.base.embedding;
      SessionResult r = run_protocol3(one, options.computation, adversary, rng());
      if (!r.accepted) ++failed;
      if (r.output) outputs.push_back(*r.output);
    }
    result.failed_tests = failed;
    result.accepted = !scheme.rejects(failed);
    if (result.accepted) {
      auto vote = majority_vote(outputs, options.computation->output_bits());
      if (vote) {
        result.output = *vote;
      } else {
        result.decode_failed = true;
      }
    }
    return result;
  }

  RoundAssignment assignment = scheme.sample_assignment(rng);
  int failed = 0;
  std::vector<std::uint64_t> outputs;

  for (int round = 0; round < params.n; ++round) {
    PauliDeviation deviation = adversary.sample(rng);
    if (assignment.is_test(round)) {
      const TrappifiedCanvas& canvas = scheme.base.canvases[assignment.canvas_choice.at(round)];
      if (options.backend == RoundBackend::Blind) {
        TrappifiedPattern tp = canvas_pattern(canvas, &rng);
        auto session = run_blind_session(tp.pattern, tp.preps, deviation, rng);
        if (canvas_rejects_session(canvas, tp.pattern, session, rng)) ++failed;
      } else {
        Rational reject = reject_probability(canvas, deviation);
        if (reject == 1 || (reject > 0 && random_unit(rng) < to_double(reject))) ++failed;
      }
    } else if (options.backend == RoundBackend::Blind) {
      if (options.computation == nullptr) continue;  // verdict-only run
      auto session = run_blind_session(options.computation->pattern,
                                       options.computation->input, deviation, rng);
      outputs.push_back(session.classical_result);
    } else {
      // Predicate mode: rounds are classical. Deviations here must not touch
      // the computation output (the supported criteria use honest or
      // test-only attacks); the bounded error c is injected as an artificial
      // flip of the reference answer.
      std::uint64_t bits = deviation.xy_support();
      std::uint64_t out = options.reference_output;
      if (options.computation != nullptr) {
        if (bits & options.computation->pattern.classical_outputs) out ^= 1ULL;
      }
      if (options.artificial_flip > 0.0 && random_unit(rng) < options.artificial_flip) {
        out ^= 1ULL;
      }
      outputs.push_back(out);
    }
  }

  result.failed_tests = failed;
  result.accepted = !scheme.rejects(failed);
  if (result.accepted && scheme.majority_vote) {
    int bits = options.computation != nullptr ? options.computation->output_bits() : 1;
    auto vote = majority_vote(outputs, bits);
    if (vote) {
      result.output = *vote;
    } else {
      result.decode_failed = true;
    }
  }
  return result;
}

namespace {

void parallel_trials(std::uint64_t trials, int jobs,
                     const std::function<void(std::uint64_t)>& body) {
  if (jobs <= 1) {
    for (std::uint64_t t = 0; t < trials; ++t) body(t);
    return;
  }
  std::vector<std::thread> workers;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::uint64_t chunk = (trials + jobs - 1) / jobs;
  for (int j = 0; j < jobs; ++j) {
    std::uint64_t lo = j * chunk;
    std::uint64_t hi = std::min(trials, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([lo, hi, &body, &failure, &failure_mutex] {
      try {
        for (std::uint64_t t = lo; t < hi; ++t) body(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

RateEstimate estimate_rates(const SessionRunner& runner, std::uint64_t trials,
                            std::uint64_t root_seed,
                            const std::set<std::uint64_t>& correct_outputs, int jobs) {
  std::vector<std::uint8_t> accepted(trials, 0);
  std::vector<std::uint8_t> corrupted(trials, 0);
  parallel_trials(trials, jobs, [&](std::uint64_t t) {
    SessionResult r = runner(splitmix64(root_seed) ^ splitmix64(t + 1));
    accepted[t] = r.accepted ? 1 : 0;
    bool corrupt = false;
    if (r.accepted && !correct_outputs.empty()) {
      corrupt = r.decode_failed || !r.output.has_value() ||
                correct_outputs.count(*r.output) == 0;
    }
    corrupted[t] = corrupt ? 1 : 0;
  });
  std::uint64_t acc = 0;
  std::uint64_t cor = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    acc += accepted[t];
    cor += corrupted[t];
  }
  RateEstimate out;
  out.trials = trials;
  out.accept = wilson_interval(acc, trials);
  out.corrupt_and_accept = wilson_interval(cor, trials);
  return out;
}

DistinguishResult distinguishing_game(const TrappifiedScheme& scheme, const Computation& a,
                                      const Computation& c_empty,
                                      const AdversaryStrategy& adversary,
                                      std::uint64_t trials, std::uint64_t root_seed,
                                      int jobs) {
  // The ideal resource evaluates A exactly: its classical output follows the
  // honest exact distribution.
  auto exact = output_distribution(a.pattern, PatternInput::product(a.input));
  std::vector<std::pair<std::uint64_t, double>> exact_cdf(exact.begin(), exact.end());

  // Bin key: 0 = reject, otherwise output + 1.
  auto real_runner = [&](std::uint64_t seed) {
    return run_protocol3(scheme, &a, adversary, seed);
  };
  auto ideal_runner = [&](std::uint64_t seed) {
    SessionResult sim = run_protocol3(scheme, &c_empty, adversary, seed);
    if (sim.accepted) {
      Rng rng = trial_rng(seed, 0xb0b);
      double u = random_unit(rng);
      double accum = 0.0;
      std::uint64_t value = exact_cdf.back().first;
      for (const auto& [key, prob] : exact_cdf) {
        accum += prob;
        if (u < accum) {
          value = key;
          break;
        }
      }
      sim.output = value;
    }
    return sim;
  };

  std::map<std::uint64_t, std::uint64_t> real_bins;
  std::map<std::uint64_t, std::uint64_t> ideal_bins;
  std::uint64_t real_accepts = 0;
  std::uint64_t ideal_accepts = 0;
  std::vector<std::uint64_t> real_keys(trials);
  std::vector<std::uint64_t> ideal_keys(trials);
  parallel_trials(trials, jobs, [&](std::uint64_t t) {
    SessionResult real = real_runner(splitmix64(root_seed ^ 0x5ea1) ^ splitmix64(t));
    SessionResult ideal = ideal_runner(splitmix64(root_seed ^ 0x1dea) ^ splitmix64(t));
    real_keys[t] = real.accepted && real.output ? *real.output + 1 : 0;
    ideal_keys[t] = ideal.accepted && ideal.output ? *ideal.output + 1 : 0;
  });
  for (std::uint64_t t = 0; t < trials; ++t) {
    ++real_bins[real_keys[t]];
    ++ideal_bins[ideal_keys[t]];
    if (real_keys[t] != 0) ++real_accepts;
    if (ideal_keys[t] != 0) ++ideal_accepts;
  }

  DistinguishResult out;
  out.accept_real = wilson_interval(real_accepts, trials);
  out.accept_ideal = wilson_interval(ideal_accepts, trials);

  std::set<std::uint64_t> keys;
  for (auto& [k, v] : real_bins) keys.insert(k);
  for (auto& [k, v] : ideal_bins) keys.insert(k);
  double tv = 0.0;
  double var = 0.0;
  double n = static_cast<double>(trials);
  for (std::uint64_t k : keys) {
    double pr = real_bins.count(k) ? real_bins[k] / n : 0.0;
    double pi = ideal_bins.count(k) ? ideal_bins[k] / n : 0.0;
    tv += std::abs(pr - pi);
    double pooled = (pr + pi) / 2.0;
    var += pooled * (1.0 - pooled) * 2.0 / n;
  }
  out.advantage = tv / 2.0;
  out.noise_floor = 3.0 * std::sqrt(var) / 2.0;

  // Output-only total variation conditioned on acceptance.
  double tv_out = 0.0;
  if (real_accepts > 0 && ideal_accepts > 0) {
    for (std::uint64_t k : keys) {
      if (k == 0) continue;
      double pr = real_bins.count(k) ? static_cast<double>(real_bins[k]) / real_accepts : 0.0;
      double pi = ideal_bins.count(k) ? static_cast<double>(ideal_bins[k]) / ideal_accepts : 0.0;
      tv_out += std::abs(pr - pi);
    }
  }
  out.tv_outputs_on_accept = tv_out / 2.0;
  return out;
}

}  // namespace trapkit

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

#include "trapkit/ubqc.hpp"

#include <algorithm>

#include "trapkit/errors.hpp"

namespace trapkit {

ClientSecrets sample_secrets(const MeasurementPattern& pattern, Rng& rng) {
  ClientSecrets s;
  const OpenGraph& g = pattern.graph;
  for (int v = 0; v < g.size(); ++v) {
    s.a[v] = ((g.inputs >> v) & 1ULL) ? random_bit(rng) : 0;
    s.r[v] = random_bit(rng);
  }
  for (int v = 0; v < g.size(); ++v) {
    if ((g.outputs >> v) & 1ULL) {
      int a_n = 0;
      for (int j = 0; j < g.size(); ++j) {
        if (g.has_edge(v, j)) a_n ^= s.a.at(j);
      }
      s.theta[v] = Angle(4 * ((s.r.at(v) + a_n) % 2));
    } else {
      s.theta[v] = Angle(static_cast<int>(random_below(rng, 8)));
    }
  }
  return s;
}

ClientMachine::ClientMachine(MeasurementPattern pattern, ProductState input_preps,
                             ClientSecrets secrets)
    : pattern_(std::move(pattern)),
      input_preps_(std::move(input_preps)),
      secrets_(std::move(secrets)) {
  order_ = pattern_.measurement_order();
}

int ClientMachine::a_neighbourhood(int v) const {
  int a_n = 0;
  for (int j = 0; j < pattern_.graph.size(); ++j) {
    if (pattern_.graph.has_edge(v, j)) a_n ^= secrets_.a.at(j);
  }
  return a_n;
}

Angle ClientMachine::delta_for(int v) const {
  int sx = 0;
  for (int j : pattern_.s_x(v)) sx ^= decoded_.at(j);
  int sz = 0;
  for (int j : pattern_.s_z(v)) sz ^= decoded_.at(j);
  Angle phi = pattern_.angles.at(v);
  Angle phi_eff = sx ? -phi : phi;
  if (sz) phi_eff = phi_eff.plus_pi();
  Angle delta = secrets_.a.at(v) ? -phi_eff : phi_eff;
  delta = delta + secrets_.theta.at(v);
  if ((secrets_.r.at(v) + a_neighbourhood(v)) % 2) delta = delta.plus_pi();
  return delta;
}

Message ClientMachine::step(const Message& incoming) {
  switch (stage_) {
    case Stage::Start: {
      if (!std::holds_alternative<std::monostate>(incoming)) {
        throw ProtocolViolation("client expected no message at session start");
      }
      stage_ = Stage::SentSession;
      MsgSession session;
      session.graph = pattern_.graph;
      session.order = order_;
      return session;
    }
    case Stage::SentSession: {
      if (!std::holds_alternative<MsgAck>(incoming)) {
        throw ProtocolViolation("client expected session ack");
      }
      MsgQubits qubits;
      const OpenGraph& g = pattern_.graph;
      for (int v = 0; v < g.size(); ++v) {
        Angle theta = secrets_.theta.at(v);
        if ((g.inputs >> v) & 1ULL) {
          auto it = input_preps_.find(v);
          Prep base = it != input_preps_.end() ? it->second : Prep::plus();
          qubits.states[v] = base.encrypted(theta, secrets_.a.at(v));
        } else {
          qubits.states[v] = Prep::plus_theta(theta);
        }
      }
      stage_ = Stage::Measuring;
      pending_qubits_ = true;
      return qubits;
    }
    case Stage::Measuring: {
      if (pending_qubits_) {
        if (!std::holds_alternative<MsgAck>(incoming)) {
          throw ProtocolViolation("client expected qubit ack");
        }
        pending_qubits_ = false;
      } else {
        const auto* outcome = std::get_if<MsgOutcome>(&incoming);
        if (outcome == nullptr) throw ProtocolViolation("client expected an outcome");
        int v = order_[next_ - 1];
        if (outcome->vertex != v) {
          throw ProtocolViolation("outcome for unexpected vertex " +
                                  std::to_string(outcome->vertex));
        }
        raw_[v] = outcome->bit;
        decoded_[v] = outcome->bit ^ secrets_.r.at(v);
        transcript_.back().outcome = outcome->bit;
      }
      if (next_ < order_.size()) {
        int v = order_[next_++];
        MsgAngle msg{v, delta_for(v)};
        transcript_.push_back({v, msg.delta, -1});
        return msg;
      }
      stage_ = Stage::AwaitOutputs;
      return MsgFinish{};
    }
    case Stage::AwaitOutputs: {
      if (pattern_.graph.outputs == 0) {
        if (!std::holds_alternative<MsgDone>(incoming)) {
          throw ProtocolViolation("client expected session end");
        }
        output_state_ = Statevector(0);
        stage_ = Stage::Done;
        return std::monostate{};
      }
      const auto* outputs = std::get_if<MsgOutputs>(&incoming);
      if (outputs == nullptr) throw ProtocolViolation("client expected output qubits");
      output_qubits_ = outputs->qubits;
      output_state_ = outputs->state;
      for (std::size_t k = 0; k < output_qubits_.size(); ++k) {
        int v = output_qubits_[k];
        int sx = 0;
        for (int j : pattern_.s_x(v)) sx ^= decoded_.at(j);
        int sz = 0;
        for (int j : pattern_.s_z(v)) sz ^= decoded_.at(j);
        if ((sx + secrets_.a.at(v)) % 2) output_state_.apply_pauli(static_cast<int>(k), Pauli::X);
        if ((sz + secrets_.r.at(v)) % 2) output_state_.apply_pauli(static_cast<int>(k), Pauli::Z);
      }
      stage_ = Stage::Done;
      return std::monostate{};
    }
    case Stage::Done:
      throw ProtocolViolation("client already finished");
  }
  throw ProtocolViolation("unreachable client stage");
}

std::uint64_t ClientMachine::classical_result() const {
  std::uint64_t result = 0;
  int pos = 0;
  for (int v = 0; v < pattern_.graph.size(); ++v) {
    if ((pattern_.classical_outputs >> v) & 1ULL) {
      if (decoded_.at(v)) result |= 1ULL << pos;
      ++pos;
    }
  }
  return result;
}

ServerMachine::ServerMachine(PauliDeviation deviation, Rng* rng,
                             const std::map<int, int>* forced_outcomes)
    : deviation_(std::move(deviation)), rng_(rng), forced_(forced_outcomes) {}

Message ServerMachine::step(const Message& incoming) {
  if (const auto* session = std::get_if<MsgSession>(&incoming)) {
    if (session_open_) throw ProtocolViolation("duplicate session message");
    session_open_ = true;
    graph_ = session->graph;
    return MsgAck{};
  }
  if (const auto* qubits = std::get_if<MsgQubits>(&incoming)) {
    if (!session_open_ || entangled_) throw ProtocolViolation("unexpected qubit message");
    state_ = Statevector(graph_.size());
    // Build the product state, then entangle along the edges.
    std::vector<std::pair<Amplitude, Amplitude>> amp(graph_.size());
    for (int v = 0; v < graph_.size(); ++v) {
      auto it = qubits->states.find(v);
      if (it == qubits->states.end()) {
        throw ProtocolViolation("missing qubit for vertex " + std::to_string(v));
      }
      amp[v] = it->second.amplitudes();
    }
    for (std::uint64_t basis = 0; basis < state_.dim(); ++basis) {
      Amplitude a(1.0, 0.0);
      for (int v = 0; v < graph_.size(); ++v) {
        a *= ((basis >> v) & 1ULL) ? amp[v].second : amp[v].first;
      }
      state_.set_amp(basis, a);
    }
    for (auto [u, v] : graph_.edge_list()) state_.apply_cz(u, v);
    entangled_ = true;
    return MsgAck{};
  }
  if (const auto* angle = std::get_if<MsgAngle>(&incoming)) {
    if (!entangled_) throw ProtocolViolation("angle before qubits");
    int v = angle->vertex;
    if (v < 0 || v >= graph_.size()) throw ProtocolViolation("unknown vertex");
    if (measured_.count(v)) throw ProtocolViolation("vertex measured twice");
    state_.apply_zrot(v, -angle->delta.radians());
    state_.apply_h(v);
    Pauli dv = deviation_.at(v);
    if (dv == Pauli::X || dv == Pauli::Y) state_.apply_pauli(v, Pauli::X);
    int b;
    if (forced_ != nullptr) {
      auto it = forced_->find(v);
      if (it == forced_->end()) throw InvalidInput("no forced outcome for vertex");
      state_.project(v, it->second);
      b = it->second;
    } else if (rng_ != nullptr) {
      b = state_.measure(v, *rng_);
    } else {
      throw InvalidInput("server has no outcome source");
    }
    measured_[v] = b;
    return MsgOutcome{v, b};
  }
  if (std::holds_alternative<MsgFinish>(incoming)) {
    if (!entangled_) throw ProtocolViolation("finish before qubits");
    if (graph_.outputs == 0) return MsgDone{};
    MsgOutputs out;
    for (int v = 0; v < graph_.size(); ++v) {
      if ((graph_.outputs >> v) & 1ULL) out.qubits.push_back(v);
    }
    for (int v : out.qubits) state_.apply_pauli(v, deviation_.at(v));
    std::uint64_t fixed_mask = 0;
    std::uint64_t fixed_values = 0;
    for (auto [v, b] : measured_) {
      fixed_mask |= 1ULL << v;
      if (b) fixed_values |= 1ULL << v;
    }
    out.state = state_.reduced(out.qubits, fixed_mask, fixed_values);
    return out;
  }
  throw ProtocolViolation("server received an unexpected message");
}

BlindSessionResult run_blind_session(const MeasurementPattern& pattern,
                                     const ProductState& input_preps,
                                     const PauliDeviation& deviation, Rng& rng,
                                     const ClientSecrets* fixed_secrets,
                                     const std::map<int, int>* forced_outcomes) {
  ClientSecrets secrets = fixed_secrets != nullptr ? *fixed_secrets
                                                   : sample_secrets(pattern, rng);
  ClientMachine client(pattern, input_preps, secrets);
  ServerMachine server(deviation, &rng, forced_outcomes);

  Message msg = client.step(std::monostate{});
  while (!client.finished()) {
    Message reply = server.step(msg);
    msg = client.step(reply);
  }

  BlindSessionResult result;
  result.transcript = client.transcript();
  result.raw_outcomes = client.raw_outcomes();
  result.decoded_outcomes = client.decoded_outcomes();
  result.classical_result = client.classical_result();
  result.output_qubits = client.output_qubits();
  result.output_state = client.output_state();
  result.secrets = secrets;
  return result;
}

CMat pauli_matrix(const PauliWord& word) {
  int n = word.size();
  std::uint64_t dim = 1ULL << n;
  CMat m(dim, std::vector<Amplitude>(dim, 0.0));
  Amplitude phase = 1.0;
  switch (word.phase()) {
    case 0: phase = 1.0; break;
    case 1: phase = Amplitude(0, 1); break;
    case 2: phase = -1.0; break;
    case 3: phase = Amplitude(0, -1); break;
  }
  for (std::uint64_t col = 0; col < dim; ++col) {
    std::uint64_t row = col;
    Amplitude entry = phase;
    for (int q = 0; q < n; ++q) {
      bool bit = (col >> q) & 1ULL;
      switch (word.at(q)) {
        case Pauli::I: break;
        case Pauli::X: row ^= 1ULL << q; break;
        case Pauli::Y:
          row ^= 1ULL << q;
          entry *= bit ? Amplitude(0, -1) : Amplitude(0, 1);
          break;
        case Pauli::Z:
          if (bit) entry = -entry;
          break;
      }
    }
    m[row][col] = entry;
  }
  return m;
}

namespace {

CMat matmul(const CMat& a, const CMat& b) {
  std::size_t n = a.size();
  CMat out(n, std::vector<Amplitude>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == Amplitude(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

CMat dagger(const CMat& a) {
  std::size_t n = a.size();
  CMat out(n, std::vector<Amplitude>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i][j] = std::conj(a[j][i]);
  }
  return out;
}

void enumerate_words(int n, std::vector<PauliWord>& out) {
  std::vector<Pauli> ops(n, Pauli::I);
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= 4;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = 0; i < n; ++i) {
      ops[i] = static_cast<Pauli>(c & 3);
      c >>= 2;
    }
    out.emplace_back(ops, 0);
  }
}

}  // namespace

CMat random_density_matrix(int num_qubits, Rng& rng) {
  std::uint64_t dim = 1ULL << num_qubits;
  // rho = G G^dag / tr, with Gaussian G: a Wishart state, full rank a.s.
  CMat g(dim, std::vector<Amplitude>(dim));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (auto& row : g) {
    for (auto& e : row) e = Amplitude(normal(rng), normal(rng));
  }
  CMat rho = matmul(g, dagger(g));
  Amplitude trace = 0.0;
  for (std::uint64_t i = 0; i < dim; ++i) trace += rho[i][i];
  for (auto& row : rho) {
    for (auto& e : row) e /= trace;
  }
  return rho;
}

CMat twirl_sum(const PauliWord& q, const PauliWord& q_prime, const CMat& rho) {
  int n = q.size();
  if (q_prime.size() != n) throw InvalidInput("twirl: word sizes differ");
  if (rho.size() != (1ULL << n)) throw InvalidInput("twirl: density size mismatch");
  std::vector<PauliWord> words;
  enumerate_words(n, words);
  CMat qm = pauli_matrix(q);
  CMat qpm_dag = dagger(pauli_matrix(q_prime));
  std::uint64_t dim = 1ULL << n;
  CMat sum(dim, std::vector<Amplitude>(dim, 0.0));
  for (const auto& p : words) {
    CMat pm = pauli_matrix(p);  // Hermitian and self-inverse
    CMat left = matmul(matmul(pm, qm), pm);        // P Q P
    CMat right = matmul(matmul(pm, qpm_dag), pm);  // P Q'^dag P
    CMat term = matmul(matmul(left, rho), right);
    for (std::uint64_t i = 0; i < dim; ++i) {
      for (std::uint64_t j = 0; j < dim; ++j) sum[i][j] += term[i][j];
    }
  }
  return sum;
}

double twirl_check(const PauliWord& q, const PauliWord& q_prime, const CMat& rho) {
  CMat sum = twirl_sum(q, q_prime, rho);
  bool same = true;
  for (int i = 0; i < q.size(); ++i) {
    if (q.at(i) != q_prime.at(i)) same = false;
  }
  double residual = 0.0;
  if (!same) {
    for (const auto& row : sum) {
      for (const auto& e : row) residual = std::max(residual, std::abs(e));
    }
    return residual;
  }
  // Sanity branch: the sum collapses to 4^n Q rho Q^dag.
  CMat qm = pauli_matrix(q);
  CMat expected = matmul(matmul(qm, rho), dagger(qm));
  double scale = static_cast<double>(1ULL << (2 * q.size()));
  for (std::size_t i = 0; i < sum.size(); ++i) {
    for (std::size_t j = 0; j < sum.size(); ++j) {
      residual = std::max(residual, std::abs(sum[i][j] - scale * expected[i][j]));
    }
  }
  return residual;
}

}  // namespace trapkit

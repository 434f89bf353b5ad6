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

#pragma once

#include <variant>
#include <vector>

#include "trapkit/mbqc.hpp"

namespace trapkit {

/** Blind-delegation secrets. theta one-time-pads the angles, a the input
 *  states and r the outcomes; output-vertex theta is pinned to
 *  (r + a_N) * pi. */
struct ClientSecrets {
  std::map<int, Angle> theta;
  std::map<int, int> a;
  std::map<int, int> r;
};

ClientSecrets sample_secrets(const MeasurementPattern& pattern, Rng& rng);

struct TranscriptEntry {
  int vertex;
  Angle delta;
  int outcome;
};

// Channel messages. The two machines alternate strictly: every client
// message gets exactly one server reply.
struct MsgSession {  // leak: graph, outputs, measurement order
  OpenGraph graph;
  std::vector<int> order;
};
struct MsgQubits {
  ProductState states;  // one prepared qubit per vertex
};
struct MsgAngle {
  int vertex;
  Angle delta;
};
struct MsgOutcome {
  int vertex;
  int bit;
};
struct MsgFinish {};
struct MsgOutputs {
  std::vector<int> qubits;
  Statevector state{0};
};
struct MsgAck {};
struct MsgDone {};

using Message = std::variant<std::monostate, MsgSession, MsgQubits, MsgAngle, MsgOutcome,
                             MsgFinish, MsgOutputs, MsgAck, MsgDone>;

/** Client side of the blind delegation protocol. Drives the session: every
 *  step consumes the server's last reply and produces the next message;
 *  monostate once finished. */
class ClientMachine {
 public:
  ClientMachine(MeasurementPattern pattern, ProductState input_preps, ClientSecrets secrets);

  Message step(const Message& incoming);
  bool finished() const { return stage_ == Stage::Done; }

  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }
  const std::map<int, int>& raw_outcomes() const { return raw_; }
  const std::map<int, int>& decoded_outcomes() const { return decoded_; }
  std::uint64_t classical_result() const;
  const std::vector<int>& output_qubits() const { return output_qubits_; }
  const Statevector& output_state() const { return output_state_; }

 private:
  Angle delta_for(int v) const;
  int a_neighbourhood(int v) const;

  enum class Stage { Start, SentSession, Measuring, AwaitOutputs, Done };
  Stage stage_ = Stage::Start;
  MeasurementPattern pattern_;
  ProductState input_preps_;
  ClientSecrets secrets_;
  std::vector<int> order_;
  std::size_t next_ = 0;
  bool pending_qubits_ = false;
  std::vector<TranscriptEntry> transcript_;
  std::map<int, int> raw_;
  std::map<int, int> decoded_;
  std::vector<int> output_qubits_;
  Statevector output_state_{0};
};

/** Server side: honest execution plus a Pauli deviation in the
 *  computational frame (X/Y flip a measured vertex's outcome; output-qubit
 *  Paulis act before the qubits are returned). */
class ServerMachine {
 public:
  ServerMachine(PauliDeviation deviation, Rng* rng,
                const std::map<int, int>* forced_outcomes = nullptr);

  Message step(const Message& incoming);

 private:
  PauliDeviation deviation_;
  Rng* rng_;
  const std::map<int, int>* forced_;
  bool session_open_ = false;
  bool entangled_ = false;
  OpenGraph graph_;
  Statevector state_{0};
  std::map<int, int> measured_;
};

struct BlindSessionResult {
  std::vector<TranscriptEntry> transcript;
  std::map<int, int> raw_outcomes;      // b, as returned by the server
  std::map<int, int> decoded_outcomes;  // s = b xor r
  std::uint64_t classical_result = 0;   // s packed over classical_outputs
  std::vector<int> output_qubits;
  Statevector output_state{0};
  ClientSecrets secrets;
};

/** Drives a client and a deviating server over the in-process channel.
 *  Secrets are sampled from rng unless fixed ones are supplied; forced
 *  outcomes address the server's raw measurements. */
BlindSessionResult run_blind_session(const MeasurementPattern& pattern,
                                     const ProductState& input_preps,
                                     const PauliDeviation& deviation, Rng& rng,
                                     const ClientSecrets* fixed_secrets = nullptr,
                                     const std::map<int, int>* forced_outcomes = nullptr);

// Dense-matrix helpers for the twirling identity on one or two qubits.
using CMat = std::vector<std::vector<Amplitude>>;

CMat pauli_matrix(const PauliWord& word);
CMat random_density_matrix(int num_qubits, Rng& rng);

/** Sum over all Pauli words P of P' Q P rho P' Q'^dag P (conjugations by the
 *  full Pauli group). Zero when Q != Q'. */
CMat twirl_sum(const PauliWord& q, const PauliWord& q_prime, const CMat& rho);

/** Largest absolute entry of twirl_sum for Q != Q'; for Q == Q' the residual
 *  against the expected 4^n Q rho Q^dag. */
double twirl_check(const PauliWord& q, const PauliWord& q_prime, const CMat& rho);

}  // namespace trapkit

// Copyright 2026 The CDC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cdc/discrimination.hpp"
#include "cdc/encoding.hpp"
#include "cdc/qcore.hpp"

namespace cdc {

/// Local optimizer run from every start of the encoder search.
enum class LocalSearch {
  /// Quasi-Newton (BFGS) on the analytic gradient of the inner optimum.
  Gradient,
  /// Adaptive Nelder-Mead with simplex re-seeding; derivative free.
  Simplex,
};

/// Budget of the multistart encoder search.
struct CapacityConfig {
  int restarts = 50;
  /// Iterations per local search.
  int max_iterations = 2000;
  double step_tolerance = 1e-8;
  double objective_tolerance = 1e-6;
  std::uint64_t seed = 20200713;
  /// Duality-gap target of the inner program while searching. The reported
  /// optimum is always re-solved with `inner`.
  double search_gap = 1e-8;
  UsdSettings inner;
  /// Also start one local search from the best generalized-Pauli encoding.
  bool seed_with_pauli = true;
  LocalSearch local_search = LocalSearch::Gradient;

  /// Throws std::invalid_argument unless restarts >= 1 and tolerances > 0.
  void validate() const;
};

enum class EncoderKind { Arbitrary, Pauli, ClosedForm };
enum class CapacityStatus { Converged, RestartLimit, Degenerate };

const char* to_string(EncoderKind kind);
const char* to_string(CapacityStatus status);

struct CapacityResult {
  int n_messages = 0;
  double bits = 0.0;
  GammaVector gammas;
  EncoderKind encoder_kind = EncoderKind::Arbitrary;
  std::string encoder_description;
  CapacityStatus status = CapacityStatus::Converged;
  /// Arbitrary encoders: generator coefficients per message and sender.
  std::vector<std::vector<UnitaryParams>> parameters;
  /// Pauli encoders: (m, n) powers per message and sender.
  std::vector<std::vector<std::pair<int, int>>> pauli_tuples;
};

/// Best found conclusive capacity for an equiprobable N-valued message, in
/// bits, with encoder 0 pinned to the identity. A lower bound on the true
/// capacity. Throws if N < 2 or N exceeds the total Hilbert-space dimension.
CapacityResult cdc_capacity_n(const PureState& state, int receiver, int n_messages,
                              const CapacityConfig& cfg = {});

/// max over N in (d_senders, d_total] of cdc_capacity_n; ties within
/// cfg.objective_tolerance go to the smaller N.
CapacityResult cdc_capacity(const PureState& state, int receiver, const CapacityConfig& cfg = {});

/// Exact optimum over all N-subsets of local generalized-Pauli tuples that
/// contain the identity tuple.
CapacityResult pauli_capacity_n(const PureState& state, int receiver, int n_messages,
                                const UsdSettings& settings = {});

/// Capacity in bits of N equiprobable messages as a function of the encoder
/// generators. Encoder 0 is the identity; encoders 1..N-1 each take d^2 - 1
/// traceless generator coefficients per sender (the global phase is dropped).
class EncoderObjective {
 public:
  /// Throws if N < 2 or N exceeds the total Hilbert-space dimension.
  EncoderObjective(const PureState& state, int receiver, int n_messages);

  std::size_t dimension() const;
  int n_messages() const;

  double bits(std::span<const double> theta, const UsdSettings& settings = {}) const;

  /// Same value as bits(); writes d bits / d theta into `grad`, zero where the
  /// encoded states are linearly dependent.
  double bits_and_gradient(std::span<const double> theta, std::span<double> grad,
                           const UsdSettings& settings = {}) const;

  std::vector<std::vector<ComplexMatrix>> unitaries(std::span<const double> theta) const;
  std::vector<std::vector<UnitaryParams>> params(std::span<const double> theta) const;
  /// Inner program at theta: gammas, objective and dual matrix.
  UsdSolution solve(std::span<const double> theta, const UsdSettings& settings = {}) const;

  /// Generator coefficients reproducing `ops` up to a phase per operator.
  std::vector<double> theta_of(const std::vector<std::vector<ComplexMatrix>>& ops) const;

 private:
  class Impl;
  std::shared_ptr<const Impl> impl_;
};

/// max over N of pauli_capacity_n, same tie rule as cdc_capacity.
CapacityResult pauli_capacity(const PureState& state, int receiver,
                              double objective_tolerance = 1e-6,
                              const UsdSettings& settings = {});

/// Conclusive capacity achieved by one fixed encoding set.
CapacityResult evaluate_encoding(const PureState& state, int receiver, const EncodingSet& enc,
                                 const UsdSettings& settings = {});

/// (4 - N + 2 alpha^2 (2N - 4)) / N log2 N for N in {3, 4}.
double closed_form_two_qubit_pauli(double alpha, int n_messages);

/// (2^n - N + 2 alpha^2 (2N - 2^n)) / N log2 N for 2^(n-1) < N <= 2^n.
/// Established numerically for n <= 4 only; beyond that it is a conjecture.
double closed_form_gghz_pauli(int n_parties, double alpha, int n_messages);

/// log2(d_senders) + max{S(rho_receiver) - S(rho), 0}; for pure states the
/// second entropy vanishes.
double asymptotic_capacity(const PureState& state, int receiver);

/// True iff result.bits >= log2 N - tol.
bool ddc_check(const CapacityResult& result, double tol = 1e-6);

}  // namespace cdc

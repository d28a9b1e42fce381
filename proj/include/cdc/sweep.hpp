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
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdc/capacity.hpp"
#include "cdc/states.hpp"

namespace cdc {

inline constexpr const char* kLibraryVersion = "0.1.0";

enum class EncoderChoice { Arbitrary, Pauli, Both };

/// Inclusive arithmetic grid start, start + step, ..., <= stop.
struct Range {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> values() const;
};

struct SweepSpec {
  std::string name = "custom";
  FamilyKind family = FamilyKind::TwoQubit;
  int parties = 3;  // GeneralizedGhz only
  Range alpha;
  std::optional<Range> beta;
  /// Message counts; empty means entanglement columns only.
  std::vector<int> n_list;
  EncoderChoice encoder = EncoderChoice::Both;
  CapacityConfig config;
  std::string output_path;

  /// Throws std::invalid_argument for empty or non-positive-step ranges, a
  /// missing beta range on two-parameter families, or N outside (d, D].
  void validate() const;
};

/// One CSV row. Optional fields are written as empty cells.
struct SweepRecord {
  double alpha = 0.0;
  std::optional<double> beta;
  std::optional<int> n;
  std::optional<double> c_n;
  std::optional<double> c_n_p;
  double c_a = 0.0;
  double entropy = 0.0;
  std::optional<double> ggm;
  std::string status;
};

struct GridPoint {
  double alpha = 0.0;
  std::optional<double> beta;
};

struct SweepOutcome {
  std::vector<SweepRecord> records;
  std::size_t points = 0;
  std::size_t skipped = 0;
  double wall_seconds = 0.0;
};

class SweepIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// splitmix64 of the base seed mixed with the grid index; independent of the
/// order in which points are evaluated.
std::uint64_t point_seed(std::uint64_t base, std::size_t index);

StateFamily family_at(const SweepSpec& spec, double alpha, std::optional<double> beta);

/// Every (alpha, beta) pair of the grid, in row-major order (alpha outer),
/// including off-domain points.
std::vector<GridPoint> sweep_grid(const SweepSpec& spec);

/// Records for one in-domain point, one per entry of n_list (or a single
/// entanglement-only record when n_list is empty). Uses cfg, not spec.config.
std::vector<SweepRecord> run_point(const SweepSpec& spec, double alpha, std::optional<double> beta,
                                   const CapacityConfig& cfg);

/// Evaluates the whole grid on `threads` workers. Off-domain points are
/// skipped with a line on `log`. Records are in grid order.
SweepOutcome run_sweep(const SweepSpec& spec, int threads, std::ostream* log = nullptr);

std::string csv_header();
std::string format_record(const SweepRecord& r);

/// Writes the CSV to spec.output_path and the run manifest next to it
/// (extension replaced by .manifest.json). Throws SweepIoError.
void write_sweep(const SweepSpec& spec, const SweepOutcome& outcome);

std::string manifest_path(const std::string& csv_path);

/// Figure presets fig1 ... fig7. `fine` switches the two-parameter grids from
/// step 0.05 to 0.01. Throws std::invalid_argument for unknown names.
SweepSpec preset(const std::string& name, bool fine = false);
std::vector<std::string> preset_names();

const char* to_string(FamilyKind kind);
FamilyKind parse_family(const std::string& name);
const char* to_string(EncoderChoice choice);
EncoderChoice parse_encoder(const std::string& name);

}  // namespace cdc

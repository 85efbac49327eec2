// Copyright 2026 The fputq Authors
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
#include <string_view>

namespace fputq {

struct ModelParams;

enum class EncodingKind {
  kUnsignedOffset,  ///< q = -q_max + x * dq
  kTwosComplement,  ///< q = signed(x) * dq, sign bit weight -2^(b-1)
};

std::string_view to_string(EncodingKind kind);
EncodingKind parse_encoding(std::string_view text);  // "offset" | "twos"

/// Per-site uniform displacement grid over a b-bit register.
///
/// Both encodings cover the same value set [-q_max, q_max - dq]; they differ in
/// which register value maps to which displacement.
struct GridSpec {
  int bits_per_site = 4;
  double q_max = 1.0;
  EncodingKind encoding = EncodingKind::kUnsignedOffset;

  static constexpr int kMinBits = 2;
  static constexpr int kMaxBits = 12;

  std::uint64_t levels() const { return std::uint64_t{1} << bits_per_site; }
  double spacing() const { return 2.0 * q_max / static_cast<double>(levels()); }

  /// Throws InputError when b is outside [2, 12] or q_max is not positive.
  void validate() const;
};

double position_value(const GridSpec& grid, std::uint64_t x);

/// Centered DFT frequency: s for s < 2^(b-1), s - 2^b otherwise.
std::int64_t wrapped_frequency(const GridSpec& grid, std::uint64_t s);

/// p = 2*pi*hbar / (2^b * dq) * wrap(s).
double momentum_value(const GridSpec& grid, std::uint64_t s, double hbar);

std::int64_t bit_weight(const GridSpec& grid, int r);

/// Register value of the grid point closest to displacement q (no range check on q).
std::uint64_t nearest_register(const GridSpec& grid, double q);

/// Default half-range c * sqrt(hbar / (2 m omega_max)) * sqrt(b) with c = 4.
double default_q_max(const ModelParams& params, int bits_per_site);
inline constexpr double kDefaultQMaxFactor = 4.0;

}  // namespace fputq

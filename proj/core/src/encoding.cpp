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

#include "fputq/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fputq/errors.hpp"
#include "fputq/model.hpp"

namespace fputq {

std::string_view to_string(EncodingKind kind) {
  return kind == EncodingKind::kUnsignedOffset ? "offset" : "twos";
}

EncodingKind parse_encoding(std::string_view text) {
  if (text == "offset" || text == "unsigned-offset") return EncodingKind::kUnsignedOffset;
  if (text == "twos" || text == "twos-complement") return EncodingKind::kTwosComplement;
  throw InputError("unknown grid encoding '" + std::string(text) + "' (expected offset or twos)");
}

void GridSpec::validate() const {
  if (bits_per_site < kMinBits || bits_per_site > kMaxBits) {
    throw InputError("grid.bits must lie in [2, 12], got " + std::to_string(bits_per_site));
  }
  if (!(q_max > 0.0) || !std::isfinite(q_max)) throw InputError("grid.q_max must be positive and finite");
}

namespace {

void check_register(const GridSpec& grid, std::uint64_t x, const char* what) {
  if (x >= grid.levels()) {
    throw InputError(std::string(what) + " " + std::to_string(x) + " outside [0, " + std::to_string(grid.levels()) +
                     ")");
  }
}

std::int64_t signed_register(const GridSpec& grid, std::uint64_t x) {
  const auto half = static_cast<std::int64_t>(grid.levels() / 2);
  const auto v = static_cast<std::int64_t>(x);
  return v < half ? v : v - 2 * half;
}

}  // namespace

double position_value(const GridSpec& grid, std::uint64_t x) {
  check_register(grid, x, "register value");
  const double dq = grid.spacing();
  if (grid.encoding == EncodingKind::kUnsignedOffset) return -grid.q_max + static_cast<double>(x) * dq;
  return static_cast<double>(signed_register(grid, x)) * dq;
}

std::int64_t wrapped_frequency(const GridSpec& grid, std::uint64_t s) {
  check_register(grid, s, "frequency index");
  return signed_register(grid, s);
}

double momentum_value(const GridSpec& grid, std::uint64_t s, double hbar) {
  const double unit = 2.0 * std::numbers::pi * hbar / (static_cast<double>(grid.levels()) * grid.spacing());
  return unit * static_cast<double>(wrapped_frequency(grid, s));
}

std::int64_t bit_weight(const GridSpec& grid, int r) {
  if (r < 0 || r >= grid.bits_per_site) {
    throw InputError("bit index " + std::to_string(r) + " outside [0, " + std::to_string(grid.bits_per_site) + ")");
  }
  const std::int64_t w = std::int64_t{1} << r;
  return (grid.encoding == EncodingKind::kTwosComplement && r == grid.bits_per_site - 1) ? -w : w;
}

std::uint64_t nearest_register(const GridSpec& grid, double q) {
  const double dq = grid.spacing();
  const auto levels = static_cast<std::int64_t>(grid.levels());
  auto idx = static_cast<std::int64_t>(std::llround((q + grid.q_max) / dq));
  idx = std::clamp<std::int64_t>(idx, 0, levels - 1);
  if (grid.encoding == EncodingKind::kUnsignedOffset) return static_cast<std::uint64_t>(idx);
  // Offset index i holds value (i - 2^(b-1)) dq; map back to the two's-complement pattern.
  const std::int64_t value = idx - levels / 2;
  return static_cast<std::uint64_t>(value < 0 ? value + levels : value);
}

double default_q_max(const ModelParams& params, int bits_per_site) {
  const double omega_max = max_frequency(params);
  if (!(omega_max > 0.0)) throw InputError("default q_max needs kappa > 0; set grid.q_max explicitly");
  return kDefaultQMaxFactor * std::sqrt(params.hbar / (2.0 * params.mass * omega_max)) *
         std::sqrt(static_cast<double>(bits_per_site));
}

}  // namespace fputq

// Copyright 2026 The crmshadow Authors
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

#ifndef CRMSHADOW_RNG_HPP
#define CRMSHADOW_RNG_HPP

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string_view>

#include "crmshadow/types.hpp"

namespace crmshadow {

/// Counter-based Philox4x32-10 generator.
///
/// A generator is fully determined by (key, stream); draws advance an internal
/// block counter. Distribution helpers are implemented here rather than taken
/// from <random> so that sequences do not depend on the standard library.
class Philox {
 public:
  using result_type = std::uint64_t;

  Philox(std::uint64_t key, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform double in [0, 1).
  double uniform();
  /// Uniform double in (0, 1].
  double uniform_open_closed();
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  bool bit();
  double normal();
  /// Real and imaginary parts are independent standard normals.
  Complex complex_normal();

  std::uint64_t key() const { return key_; }
  std::uint64_t stream() const { return stream_; }

 private:
  void refill();

  std::uint64_t key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int next_ = 4;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

/// Mixes a sequence of 64-bit words into one stream identifier.
std::uint64_t mix_stream(std::initializer_list<std::uint64_t> words);

/// FNV-1a hash of a string, used to key streams by figure id.
std::uint64_t hash_string(std::string_view text);

}  // namespace crmshadow

#endif

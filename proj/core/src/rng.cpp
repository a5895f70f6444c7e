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

#include "crmshadow/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace crmshadow {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo) {
  std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

Philox::Philox(std::uint64_t key, std::uint64_t stream) : key_(key), stream_(stream) {}

void Philox::refill() {
  std::array<std::uint32_t, 4> c = {static_cast<std::uint32_t>(block_),
                                    static_cast<std::uint32_t>(block_ >> 32),
                                    static_cast<std::uint32_t>(stream_),
                                    static_cast<std::uint32_t>(stream_ >> 32)};
  std::uint32_t k0 = static_cast<std::uint32_t>(key_);
  std::uint32_t k1 = static_cast<std::uint32_t>(key_ >> 32);
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  buffer_ = c;
  ++block_;
  next_ = 0;
}

Philox::result_type Philox::operator()() {
  if (next_ > 2) {
    refill();
  }
  std::uint64_t lo = buffer_[next_];
  std::uint64_t hi = buffer_[next_ + 1];
  next_ += 2;
  return (hi << 32) | lo;
}

double Philox::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double Philox::uniform_open_closed() { return 1.0 - uniform(); }

double Philox::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t Philox::below(std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("Philox::below: empty range");
  }
  std::uint64_t limit = max() - max() % n;
  while (true) {
    std::uint64_t x = (*this)();
    if (x < limit) {
      return x % n;
    }
  }
}

bool Philox::bit() { return ((*this)() >> 63) != 0; }

double Philox::normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  double u1 = uniform_open_closed();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double phi = 2.0 * std::numbers::pi * u2;
  spare_normal_ = r * std::sin(phi);
  has_spare_normal_ = true;
  return r * std::cos(phi);
}

Complex Philox::complex_normal() {
  double re = normal();
  double im = normal();
  return {re, im};
}

std::uint64_t mix_stream(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0x243F6A8885A308D3ull;
  for (std::uint64_t w : words) {
    h = splitmix(h ^ splitmix(w));
  }
  return h;
}

std::uint64_t hash_string(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace crmshadow

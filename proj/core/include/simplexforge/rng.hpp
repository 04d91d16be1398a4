#pragma once

#include <cstdint>
#include <limits>

#include "simplexforge/types.hpp"

namespace simplexforge {

// Counter-based generator: output i is splitmix64(key + i * golden). Child
// streams get keys derived from (key, stream id), so any job's draws depend
// only on the root seed and its position in the split tree.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed = 0) : key_(mix(seed)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();
  CounterRng split(std::uint64_t stream) const;

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  double uniform();  // [0, 1)
  double normal();   // standard normal, Box-Muller

  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

RealMatrix random_rotation(int n, CounterRng& rng);
ComplexMatrix random_unitary(int n, CounterRng& rng);
RealVector random_unit_vector(int n, CounterRng& rng);

}  // namespace simplexforge

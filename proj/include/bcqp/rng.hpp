#pragma once

#include <cstdint>
#include <cstddef>

namespace bcqp {

// Purpose tags used to derive independent streams from one user seed.
enum class RngStream : std::uint64_t {
  Hessian = 1,
  Linear = 2,
  Rhs = 3,
  Constraint = 4,
  SparsityPattern = 5,
  BlockChoice = 6,
};

// splitmix64 (Vigna): a fixed, documented recurrence so identical seeds
// reproduce identical values on any platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed, RngStream stream = RngStream::Hessian)
      : state_(seed + 0x9E3779B97F4A7C15ULL *
                          (static_cast<std::uint64_t>(stream) + 1)) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on the open interval (0,1); never returns 0 or 1 exactly.
  double uniform01() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform index in [0, bound).
  std::size_t index(std::size_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

}  // namespace bcqp

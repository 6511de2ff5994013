#pragma once

#include <cstdint>
#include <vector>

#include "bcqp/block_qp.hpp"

namespace bcqp {

struct GenSpec {
  int n = 0;
  std::vector<BlockDims> blocks;
  double h_density = 1.0;  // fraction of nonzeros in H; 1 = dense
  std::uint64_t seed = 0;
};

// Seeded random problem generation. Dense case: H = Hhat Hhat' / max(Hhat)
// with every entry of Hhat, c, e and A uniform on (0,1). Sparse case: H is
// built directly with the target density of symmetric nonzeros.
BlockQp generate(const GenSpec& spec);

}  // namespace bcqp

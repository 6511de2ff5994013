#pragma once

#include <string>
#include <vector>

#include "bcqp/block_qp.hpp"

namespace bcqp {

// Block spec grammar "Nx(n1xm1,...)": "10x(50x10)" means ten identical
// 50x10 blocks, "5x(50x10,75x15,...)" lists all five explicitly.
std::vector<BlockDims> parse_block_spec(const std::string& text);
std::string format_block_spec(const std::vector<BlockDims>& blocks);

}  // namespace bcqp

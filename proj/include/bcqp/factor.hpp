#pragma once

#include <cstdint>
#include <vector>

#include "bcqp/block_qp.hpp"
#include "bcqp/matrix.hpp"
#include "bcqp/pivot_select.hpp"
#include "bcqp/rng.hpp"

namespace bcqp {

enum class PivotPhase { Structured, Dense };

// One entry of the pivot log; indices are original KKT indices.
struct PivotRecord {
  PivotPhase phase = PivotPhase::Dense;
  int dim = 1;
  int index1 = -1;      // pivot column (structured: variable column l)
  int index2 = -1;      // second pivot index (structured: constraint row r)
  double ratio = 0.0;   // |h_ll|/|a_rl| for structured pivots
  double b11 = 0.0;     // pivot block values as eliminated
  double b21 = 0.0;
  double b22 = 0.0;
};

struct DiagBlock {
  int dim = 1;
  double b11 = 0.0;
  double b21 = 0.0;
  double b22 = 0.0;
};

// P'KP = LBL' with L unit lower triangular and B block diagonal.
// perm maps factored positions to original indices: (P'KP)[i][j] = K[perm[i]][perm[j]].
struct Factorization {
  int size = 0;
  std::vector<int> perm;
  Matrix unit_lower;
  std::vector<DiagBlock> blocks;
  std::vector<PivotRecord> pivot_log;
  std::vector<long long> fill_per_step;  // new nonzero lower-triangle positions per pivot
  std::uint64_t seed = 0;
  double dense_growth = 0.0;  // max |multiplier| produced by dense-phase pivots

  long long structured_fill() const;
};

// Mutable elimination state shared by both phases. Positions [0, eliminated)
// of `work` are consumed; `pos` maps current positions to original indices.
struct EliminationState {
  Matrix work;
  std::vector<int> pos;
  std::vector<int> position_of;
  BlockAvailability avail;
  std::vector<int> avail_blocks;
  int eliminated = 0;
};

EliminationState make_state(const KktMatrix& kkt);

// Moves the pivot at current positions (pos1[, pos2]) to the leading active
// positions and eliminates it. Returns the fill-in produced by the Schur
// update (new nonzero lower-triangle positions).
long long eliminate_once(EliminationState& state, Factorization& fact,
                         PivotPhase phase, int dim, int pos1, int pos2,
                         double ratio);

// Applies exactly m structured zero-corner 2x2 pivots, picking blocks with
// the seeded generator. Leaves an (n-m)-dimensional working matrix.
void structured_phase(EliminationState& state, Factorization& fact,
                      SplitMix64& block_rng);

// Eliminates the remaining matrix with BBK pivoting until empty.
void dense_phase(EliminationState& state, Factorization& fact);

// Structured phase followed by the dense phase.
Factorization factorize_block_kkt(const KktMatrix& kkt, std::uint64_t seed);

// Whole-matrix BBK baseline with no structured phase.
Factorization factorize_dense_bbk(const KktMatrix& kkt);

// P (L B L') P', the reassembled matrix in original ordering.
Matrix reconstruct(const Factorization& fact);

// Exact nonzero count of L, unit diagonal included.
long long nnz(const Factorization& fact);

// Flop count of forward + backward substitution plus the block-diagonal
// solve; the portable stand-in for solve time.
long long solve_flops(const Factorization& fact);

}  // namespace bcqp

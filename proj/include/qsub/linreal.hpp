#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qsub/partitions.hpp"

namespace qsub {

// T_p : (C^N)^{(x)k} -> (C^N)^{(x)l} for p with k upper and l lower points,
// e_i -> sum_j delta_p(i, j) e_j. Multi-indices are read with the first tensor
// factor most significant. Stored as rows (target index) listing source indices.
class PartitionMap {
 public:
  PartitionMap() = default;

  std::size_t source_arity() const noexcept { return k_; }
  std::size_t target_arity() const noexcept { return l_; }
  unsigned n() const noexcept { return n_; }
  std::uint64_t rows() const noexcept { return rows_; }
  std::uint64_t cols() const noexcept { return cols_; }
  std::uint64_t nnz() const noexcept { return cols_idx_.size(); }
  const ColoredPartition& partition() const noexcept { return p_; }

  // Sources of row r, sorted.
  std::span<const std::uint32_t> row(std::uint64_t r) const {
    return {cols_idx_.data() + row_ptr_[r], cols_idx_.data() + row_ptr_[r + 1]};
  }
  bool entry(std::uint64_t r, std::uint64_t c) const;

  friend PartitionMap realize(const ColoredPartition& p, unsigned n);

 private:
  ColoredPartition p_;
  std::size_t k_ = 0, l_ = 0;
  unsigned n_ = 0;
  std::uint64_t rows_ = 0, cols_ = 0;
  std::vector<std::uint64_t> row_ptr_;
  std::vector<std::uint32_t> cols_idx_;
};

// Largest N^(k+l) realize accepts.
inline constexpr std::uint64_t kMaxRealizedEntries = std::uint64_t{1} << 26;

PartitionMap realize(const ColoredPartition& p, unsigned n);

// Dense integer matrix, row-major.
struct IntMatrix {
  std::uint64_t rows = 0, cols = 0;
  std::vector<std::int64_t> data;
  std::int64_t& at(std::uint64_t r, std::uint64_t c) { return data[r * cols + c]; }
  std::int64_t at(std::uint64_t r, std::uint64_t c) const { return data[r * cols + c]; }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

IntMatrix to_dense(const PartitionMap& m);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntMatrix transpose(const IntMatrix& a);
IntMatrix kron(const IntMatrix& a, const IntMatrix& b);
IntMatrix scaled(const IntMatrix& a, std::int64_t s);

// Sparse product T_second o T_first.
IntMatrix compose_maps(const PartitionMap& second, const PartitionMap& first);

// Every set partition of k upper and l lower white points.
std::vector<ColoredPartition> all_partitions(std::size_t k, std::size_t l);

enum class LoopOrientation : std::uint8_t {
  ComposedIsScaled,  // T_q o T_p = N^loops T_qp
  ResultIsScaled,    // T_qp = N^loops T_q o T_p
  Inconsistent,
};
std::string to_string(LoopOrientation o);

struct LawReport {
  unsigned n = 0;
  std::size_t max_points = 0;
  std::size_t adjoint_checked = 0;
  std::size_t tensor_checked = 0;
  std::size_t loop_checked = 0;
  std::size_t loop_with_loops = 0;  // pairs whose composition closes at least one loop
  LoopOrientation orientation = LoopOrientation::Inconsistent;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty() && orientation != LoopOrientation::Inconsistent; }
};

// Adjoint and tensor laws over all partitions (pairs) with at most max_points
// points; loop law over composable pairs whose stacked diagram has at most
// max_points distinct points.
LawReport check_laws(unsigned n, std::size_t max_points);

// Exact rank of a spanning family, computed from its Gram matrix.
std::size_t rank(std::span<const PartitionMap> maps);
// Same, with Gram entries N^{blocks of p v q} read off the partitions directly.
std::size_t rank_of_partitions(std::span<const ColoredPartition> parts, unsigned n);
// Exact rank of the matrix whose rows are the flattened maps; for small frames.
std::size_t rank_explicit(std::span<const PartitionMap> maps);

// Exact rank of an integer matrix. Full rank is certified modulo a 61-bit prime;
// anything else falls back to fraction-free elimination over big integers.
std::size_t exact_rank(const std::vector<std::vector<std::int64_t>>& rows);

// dim of the fixed vectors of u^{(x)w}: rank of the maps of C_U(empty, w).
std::size_t fixed_points_dim(const ColorWord& w, unsigned n);

}  // namespace qsub

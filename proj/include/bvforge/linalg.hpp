#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bvforge/rational.hpp"

namespace bvforge {

/// Sparse rational vector: (column, value) pairs, columns ascending, no zeros.
using SparseVec = std::vector<std::pair<std::uint32_t, Rational>>;

/// a + c * b
SparseVec axpy(const SparseVec& a, const Rational& c, const SparseVec& b);

/// Incrementally built row-echelon basis over Q.
///
/// The pivot of a row is its lowest column; callers index columns so that
/// the lowest column is the most significant one. Rows carry the combination
/// of inserted vectors (by insertion tag) that produced them, so a
/// reduction can report how a vector decomposes.
class EchelonBasis {
 public:
  struct Reduction {
    SparseVec remainder;
    SparseVec combination;  // v - remainder = sum combination[tag] * input[tag]
  };

  /// Reduces v completely; the remainder has no entry in a pivot column and
  /// is independent of insertion history for a fixed row space.
  Reduction reduce(SparseVec v) const;
  SparseVec remainder(SparseVec v) const { return reduce(std::move(v)).remainder; }
  bool contains(const SparseVec& v) const { return remainder(v).empty(); }

  /// Inserts v with the given tag. Returns true if the rank grew; otherwise
  /// fills `relation` (if given) with a combination of earlier tags that
  /// equals v, i.e. v - sum relation = 0.
  bool insert(SparseVec v, std::uint32_t tag, SparseVec* relation = nullptr);

  std::size_t rank() const { return rows_.size(); }
  bool is_pivot(std::uint32_t col) const { return pivots_.count(col) > 0; }
  std::vector<std::uint32_t> pivot_columns() const;

 private:
  struct Row {
    SparseVec vec;  // leading entry 1
    SparseVec combo;
  };
  std::vector<Row> rows_;
  std::unordered_map<std::uint32_t, std::size_t> pivots_;
};

/// Solves sum_j x_j * columns[j] = rhs. Dependent columns get x_j = 0.
std::optional<std::vector<Rational>> solve_columns(const std::vector<SparseVec>& columns, const SparseVec& rhs);

/// Basis of {x : sum_j x_j * columns[j] = 0}, one vector per dependent column.
std::vector<SparseVec> nullspace_columns(const std::vector<SparseVec>& columns);

/// Rank of a set of vectors.
std::size_t rank_of(const std::vector<SparseVec>& vectors);

}  // namespace bvforge

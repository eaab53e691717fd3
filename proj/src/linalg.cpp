#include "bvforge/linalg.hpp"

#include <algorithm>

namespace bvforge {

SparseVec axpy(const SparseVec& a, const Rational& c, const SparseVec& b) {
  if (is_zero(c) || b.empty()) return a;
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, c * b[j].second);
      ++j;
    } else {
      Rational s = a[i].second + c * b[j].second;
      if (!is_zero(s)) out.emplace_back(a[i].first, std::move(s));
      ++i, ++j;
    }
  }
  return out;
}

EchelonBasis::Reduction EchelonBasis::reduce(SparseVec v) const {
  Reduction r;
  std::size_t pos = 0;
  while (pos < v.size()) {
    auto it = pivots_.find(v[pos].first);
    if (it == pivots_.end()) {
      ++pos;
      continue;
    }
    const Row& row = rows_[it->second];
    Rational c = v[pos].second;
    v = axpy(v, -c, row.vec);
    r.combination = axpy(r.combination, c, row.combo);
  }
  r.remainder = std::move(v);
  return r;
}

bool EchelonBasis::insert(SparseVec v, std::uint32_t tag, SparseVec* relation) {
  Reduction r = reduce(std::move(v));
  if (r.remainder.empty()) {
    if (relation) *relation = std::move(r.combination);
    return false;
  }
  Row row;
  Rational lead = r.remainder.front().second;
  Rational inv = 1 / lead;
  for (auto& e : r.remainder) e.second *= inv;
  row.vec = std::move(r.remainder);
  // row = (v - combination) / lead
  SparseVec combo;
  for (auto& e : r.combination) combo.emplace_back(e.first, -e.second * inv);
  row.combo = axpy(combo, inv, SparseVec{{tag, Rational(1)}});
  pivots_.emplace(row.vec.front().first, rows_.size());
  rows_.push_back(std::move(row));
  return true;
}

std::vector<std::uint32_t> EchelonBasis::pivot_columns() const {
  std::vector<std::uint32_t> cols;
  for (const auto& row : rows_) cols.push_back(row.vec.front().first);
  std::sort(cols.begin(), cols.end());
  return cols;
}

std::optional<std::vector<Rational>> solve_columns(const std::vector<SparseVec>& columns, const SparseVec& rhs) {
  EchelonBasis b;
  for (std::uint32_t j = 0; j < columns.size(); ++j) b.insert(columns[j], j);
  auto r = b.reduce(rhs);
  if (!r.remainder.empty()) return std::nullopt;
  std::vector<Rational> x(columns.size());
  for (const auto& [j, c] : r.combination) x[j] = c;
  return x;
}

std::vector<SparseVec> nullspace_columns(const std::vector<SparseVec>& columns) {
  EchelonBasis b;
  std::vector<SparseVec> out;
  for (std::uint32_t j = 0; j < columns.size(); ++j) {
    SparseVec rel;
    if (!b.insert(columns[j], j, &rel)) {
      SparseVec k;
      for (auto& e : rel) k.emplace_back(e.first, -e.second);
      k = axpy(k, 1, SparseVec{{j, Rational(1)}});
      out.push_back(std::move(k));
    }
  }
  return out;
}

std::size_t rank_of(const std::vector<SparseVec>& vectors) {
  EchelonBasis b;
  for (std::uint32_t j = 0; j < vectors.size(); ++j) b.insert(vectors[j], j);
  return b.rank();
}

}  // namespace bvforge

#include "bvforge/monomial.hpp"

#include <algorithm>

namespace bvforge {

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  for (const auto& [v, e] : factors) {
    if (e == 0) continue;
    if (!f_.empty() && f_.back().first == v)
      f_.back().second += e;
    else
      f_.emplace_back(v, e);
    deg_ += e;
  }
}

std::uint32_t Monomial::exponent(VarId v) const {
  auto it = std::lower_bound(f_.begin(), f_.end(), Factor{v, 0},
                             [](const Factor& a, const Factor& b) { return a.first < b.first; });
  return (it != f_.end() && it->first == v) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.f_.reserve(f_.size() + o.f_.size());
  std::size_t i = 0, j = 0;
  while (i < f_.size() || j < o.f_.size()) {
    if (j == o.f_.size() || (i < f_.size() && f_[i].first < o.f_[j].first)) {
      r.f_.push_back(f_[i++]);
    } else if (i == f_.size() || o.f_[j].first < f_[i].first) {
      r.f_.push_back(o.f_[j++]);
    } else {
      r.f_.emplace_back(f_[i].first, f_[i].second + o.f_[j].second);
      ++i, ++j;
    }
  }
  r.deg_ = deg_ + o.deg_;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (deg_ > o.deg_) return false;
  std::size_t j = 0;
  for (const auto& [v, e] : f_) {
    while (j < o.f_.size() && o.f_[j].first < v) ++j;
    if (j == o.f_.size() || o.f_[j].first != v || o.f_[j].second < e) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial r;
  std::size_t i = 0;
  for (const auto& [v, e] : o.f_) {
    while (i < f_.size() && f_[i].first < v) ++i;
    std::uint32_t sub = (i < f_.size() && f_[i].first == v) ? f_[i].second : 0;
    if (e > sub) r.f_.emplace_back(v, e - sub);
  }
  r.deg_ = o.deg_ - deg_;
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r;
  std::size_t i = 0, j = 0;
  while (i < f_.size() || j < o.f_.size()) {
    if (j == o.f_.size() || (i < f_.size() && f_[i].first < o.f_[j].first)) {
      r.f_.push_back(f_[i++]);
    } else if (i == f_.size() || o.f_[j].first < f_[i].first) {
      r.f_.push_back(o.f_[j++]);
    } else {
      r.f_.emplace_back(f_[i].first, std::max(f_[i].second, o.f_[j].second));
      ++i, ++j;
    }
  }
  for (const auto& fe : r.f_) r.deg_ += fe.second;
  return r;
}

bool Monomial::coprime(const Monomial& o) const {
  std::size_t i = 0, j = 0;
  while (i < f_.size() && j < o.f_.size()) {
    if (f_[i].first == o.f_[j].first) return false;
    if (f_[i].first < o.f_[j].first)
      ++i;
    else
      ++j;
  }
  return true;
}

Monomial Monomial::without(VarId v) const {
  Monomial r = *this;
  for (auto it = r.f_.begin(); it != r.f_.end(); ++it) {
    if (it->first == v) {
      if (--it->second == 0) r.f_.erase(it);
      --r.deg_;
      break;
    }
  }
  return r;
}

int degrevlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  auto ia = fa.rbegin(), ib = fb.rbegin();
  while (ia != fa.rend() && ib != fb.rend()) {
    if (ia->first != ib->first) {
      // the monomial carrying the smaller (higher-id) variable is smaller
      return ia->first > ib->first ? -1 : 1;
    }
    if (ia->second != ib->second) return ia->second > ib->second ? -1 : 1;
    ++ia, ++ib;
  }
  if (ia == fa.rend() && ib == fb.rend()) return 0;
  // equal degree forces both to end together; kept for safety
  return ia == fa.rend() ? 1 : -1;
}

int koszul_product_sign(const Monomial& a, const Monomial& b, const std::vector<bool>& odd) {
  // For each odd factor of b, count odd factors of a with larger id: those
  // must be crossed when moving it into place.
  std::vector<VarId> oa;
  for (const auto& [v, e] : a.factors())
    if (odd[v]) oa.push_back(v);
  if (oa.empty()) return 1;
  int swaps = 0;
  std::size_t k = 0;
  for (const auto& [v, e] : b.factors()) {
    if (!odd[v]) continue;
    while (k < oa.size() && oa[k] < v) ++k;
    if (k < oa.size() && oa[k] == v) return 0;
    swaps += static_cast<int>(oa.size() - k);
  }
  return (swaps & 1) ? -1 : 1;
}

int odd_count(const Monomial& m, const std::vector<bool>& odd) {
  int c = 0;
  for (const auto& [v, e] : m.factors())
    if (odd[v]) c += static_cast<int>(e);
  return c;
}

}  // namespace bvforge

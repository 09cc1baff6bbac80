#include "seqcontract/linalg.hpp"

#include <utility>

namespace seqcontract {

std::optional<std::vector<Rational>> solve_exact(RationalMatrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    const Rational inv = 1 / a[col][col];
    for (std::size_t k = col; k < n; ++k) a[col][k] *= inv;
    b[col] *= inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational factor = a[row][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
      b[row] -= factor * b[col];
    }
  }
  return b;
}

std::size_t rank_exact(RationalMatrix a) {
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  for (std::size_t col = 0; col < cols && rank < a.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < a.size() && a[pivot][col] == 0) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t row = rank + 1; row < a.size(); ++row) {
      if (a[row][col] == 0) continue;
      const Rational factor = a[row][col] / a[rank][col];
      for (std::size_t k = col; k < cols; ++k) a[row][k] -= factor * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational sum = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != 0 && b[k] != 0) sum += a[k] * b[k];
  }
  return sum;
}

AffineFlat::AffineFlat(std::size_t dim) : point_(dim, Rational(0)) {
  directions_.assign(dim, std::vector<Rational>(dim, Rational(0)));
  for (std::size_t k = 0; k < dim; ++k) directions_[k][k] = 1;
}

bool AffineFlat::cut(const std::vector<Rational>& coeffs, const Rational& offset) {
  std::vector<Rational> slopes;
  slopes.reserve(directions_.size());
  std::size_t pivot = directions_.size();
  for (std::size_t k = 0; k < directions_.size(); ++k) {
    slopes.push_back(dot(coeffs, directions_[k]));
    if (pivot == directions_.size() && slopes.back() != 0) pivot = k;
  }
  if (pivot == directions_.size()) return false;

  const std::vector<Rational>& d = directions_[pivot];
  const Rational step = (offset - dot(coeffs, point_)) / slopes[pivot];
  for (std::size_t j = 0; j < point_.size(); ++j) point_[j] += step * d[j];

  std::vector<std::vector<Rational>> next;
  next.reserve(directions_.size() - 1);
  for (std::size_t k = 0; k < directions_.size(); ++k) {
    if (k == pivot) continue;
    std::vector<Rational> dir = directions_[k];
    if (slopes[k] != 0) {
      const Rational factor = slopes[k] / slopes[pivot];
      for (std::size_t j = 0; j < dir.size(); ++j) dir[j] -= factor * d[j];
    }
    next.push_back(std::move(dir));
  }
  directions_ = std::move(next);
  return true;
}

}  // namespace seqcontract

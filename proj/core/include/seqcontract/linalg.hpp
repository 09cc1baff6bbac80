#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "seqcontract/rational.hpp"

namespace seqcontract {

using RationalMatrix = std::vector<std::vector<Rational>>;

// Gauss-Jordan elimination over the rationals. Returns the unique solution
// of a x = b, or nullopt when the square matrix a is singular.
std::optional<std::vector<Rational>> solve_exact(RationalMatrix a, std::vector<Rational> b);

std::size_t rank_exact(RationalMatrix a);

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b);

// Affine subspace point + span(directions), kept with linearly independent
// directions. Starts as the whole space.
class AffineFlat {
 public:
  explicit AffineFlat(std::size_t dim);

  // Intersects with {x : coeffs . x = offset}. Returns false, leaving the
  // flat untouched, when the hyperplane is parallel to it (no unique
  // reduction in dimension).
  bool cut(const std::vector<Rational>& coeffs, const Rational& offset);

  std::size_t dimension() const { return directions_.size(); }
  const std::vector<Rational>& point() const { return point_; }
  const std::vector<std::vector<Rational>>& directions() const { return directions_; }

 private:
  std::vector<Rational> point_;
  std::vector<std::vector<Rational>> directions_;
};

}  // namespace seqcontract

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "seqcontract/agent.hpp"
#include "seqcontract/model.hpp"
#include "seqcontract/rational.hpp"

namespace seqcontract {

enum class HyperplaneFamily : std::uint8_t {
  BoxWall,          // t(j) = 0 or t(j) = L
  PaymentTie,       // t(j1) = t(j2)
  PrefixBoundary,   // reservation value of i equals the payment at rank j under rho
  ReservationTie,   // two reservation-value linear forms agree
};

const char* family_name(HyperplaneFamily family);  // "box_wall", "payment_tie", ...

// coeffs . t = offset. params by family:
//   BoxWall {j, 0 | 1}, PaymentTie {j1, j2}, PrefixBoundary {i, j, rho...}
//   (rho lists outcomes from least to most preferred), ReservationTie
//   {i1, i2, S1 bitmask, S2 bitmask}.
struct Hyperplane {
  std::vector<Rational> coeffs;
  Rational offset;
  HyperplaneFamily family;
  std::vector<std::size_t> params;
};

struct HyperplaneSet {
  std::vector<Hyperplane> planes;  // canonical (first nonzero coefficient 1), distinct
  std::array<std::size_t, 4> emitted{};  // per family, before merging duplicates
  std::size_t degenerate_dropped = 0;
  std::size_t duplicates_merged = 0;
};

// Largest payment an optimal contract can need: max r(m) / p_ij over
// non-zero p_ij.
Rational payment_bound(const Instance& inst);

// (sum_{j in S} p_ij t(j) - c_i) / sum_{j in S} p_ij; the reservation value
// of i whenever S is exactly the set of outcomes paying more than it.
// Precondition: S has positive mass under action i.
Rational linz(const Instance& inst, std::size_t action, std::uint64_t outcome_set, const Contract& t);

HyperplaneSet hyperplanes(const Instance& inst);

struct Vertex {
  Contract point;
  std::vector<std::size_t> defining;  // indices into HyperplaneSet::planes
};

inline constexpr std::uint64_t kDefaultVertexBudget = 200'000'000;

// Number of m-subsets of the arrangement, saturating at UINT64_MAX.
std::uint64_t projected_subsets(std::size_t planes, std::size_t m);

// Every point in [0, bound]^m that is the unique intersection of m planes,
// sorted lexicographically. Throws CapacityError when the number of
// m-subsets exceeds budget.
std::vector<Vertex> enumerate_vertices(const HyperplaneSet& hs, const Rational& bound,
                                       std::size_t m, std::uint64_t budget = kDefaultVertexBudget);

struct GeneralSolution {
  Contract contract;
  Rational utility;
  NonAdaptiveStrategy strategy;
  std::size_t vertex_count = 0;
  std::array<std::size_t, 4> hyperplane_counts{};
};

// Best vertex by principal utility; lexicographically smallest payments on
// ties.
GeneralSolution solve_general(const Instance& inst, std::uint64_t budget = kDefaultVertexBudget);

}  // namespace seqcontract

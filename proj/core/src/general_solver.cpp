#include "seqcontract/general_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <utility>

#include "seqcontract/errors.hpp"
#include "seqcontract/linalg.hpp"

namespace seqcontract {

const char* family_name(HyperplaneFamily family) {
  switch (family) {
    case HyperplaneFamily::BoxWall: return "box_wall";
    case HyperplaneFamily::PaymentTie: return "payment_tie";
    case HyperplaneFamily::PrefixBoundary: return "prefix_boundary";
    case HyperplaneFamily::ReservationTie: return "reservation_tie";
  }
  return "?";
}

Rational payment_bound(const Instance& inst) {
  const Rational& top = inst.rewards.back();
  Rational bound = 0;
  for (const auto& row : inst.probs) {
    for (const Rational& p : row) {
      if (p != 0 && top / p > bound) bound = top / p;
    }
  }
  return bound;
}

Rational linz(const Instance& inst, std::size_t action, std::uint64_t outcome_set,
              const Contract& t) {
  Rational mass = 0;
  Rational weighted = 0;
  for (std::size_t j = 0; j < inst.num_outcomes(); ++j) {
    if (((outcome_set >> j) & 1U) == 0) continue;
    mass += inst.probs[action][j];
    weighted += inst.probs[action][j] * t.payments[j];
  }
  return (weighted - inst.costs[action]) / mass;
}

namespace {

class ArrangementBuilder {
 public:
  explicit ArrangementBuilder(std::size_t m) : m_(m) {}

  void add(std::vector<Rational> coeffs, Rational offset, HyperplaneFamily family,
           std::vector<std::size_t> params) {
    auto lead = std::find_if(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c != 0; });
    if (lead == coeffs.end()) {
      ++out_.degenerate_dropped;
      return;
    }
    ++out_.emitted[static_cast<std::size_t>(family)];
    const Rational scale = 1 / *lead;
    for (Rational& c : coeffs) c *= scale;
    offset *= scale;
    auto key = std::make_pair(coeffs, offset);
    if (!seen_.emplace(std::move(key), out_.planes.size()).second) {
      ++out_.duplicates_merged;
      return;
    }
    out_.planes.push_back({std::move(coeffs), std::move(offset), family, std::move(params)});
  }

  std::size_t dim() const { return m_; }
  HyperplaneSet take() { return std::move(out_); }

 private:
  std::size_t m_;
  HyperplaneSet out_;
  std::map<std::pair<std::vector<Rational>, Rational>, std::size_t> seen_;
};

}  // namespace

HyperplaneSet hyperplanes(const Instance& inst) {
  const std::size_t n = inst.num_actions();
  const std::size_t m = inst.num_outcomes();
  const Rational bound = payment_bound(inst);
  ArrangementBuilder builder(m);
  auto unit = [&](std::size_t j) {
    std::vector<Rational> c(m, Rational(0));
    c[j] = 1;
    return c;
  };

  for (std::size_t j = 0; j < m; ++j) {
    builder.add(unit(j), Rational(0), HyperplaneFamily::BoxWall, {j, 0});
    builder.add(unit(j), bound, HyperplaneFamily::BoxWall, {j, 1});
  }

  for (std::size_t j1 = 0; j1 < m; ++j1) {
    for (std::size_t j2 = j1 + 1; j2 < m; ++j2) {
      std::vector<Rational> c(m, Rational(0));
      c[j1] = 1;
      c[j2] = -1;
      builder.add(std::move(c), Rational(0), HyperplaneFamily::PaymentTie, {j1, j2});
    }
  }

  std::vector<std::size_t> costly;
  for (std::size_t i = 0; i < n; ++i) {
    if (inst.costs[i] != 0) costly.push_back(i);
  }

  // rho lists outcomes from least to most preferred; the outcomes ranked at
  // or above position j are the ones paying at least t(rho[j]).
  std::vector<std::size_t> rho(m);
  std::iota(rho.begin(), rho.end(), std::size_t{0});
  do {
    for (std::size_t i : costly) {
      const auto& p = inst.probs[i];
      for (std::size_t j = 0; j < m; ++j) {
        std::vector<Rational> c(m, Rational(0));
        for (std::size_t k = j + 1; k < m; ++k) {
          c[rho[k]] += p[rho[k]];
          c[rho[j]] -= p[rho[k]];
        }
        std::vector<std::size_t> params{i, j};
        params.insert(params.end(), rho.begin(), rho.end());
        builder.add(std::move(c), inst.costs[i], HyperplaneFamily::PrefixBoundary, std::move(params));
      }
    }
  } while (std::next_permutation(rho.begin(), rho.end()));

  const std::uint64_t subsets = std::uint64_t{1} << m;
  auto mass_of = [&](std::size_t i, std::uint64_t s) {
    Rational mass = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if ((s >> j) & 1U) mass += inst.probs[i][j];
    }
    return mass;
  };
  for (std::size_t i1 : costly) {
    for (std::size_t i2 : costly) {
      if (i1 == i2) continue;
      for (std::uint64_t s1 = 1; s1 < subsets; ++s1) {
        const Rational mass1 = mass_of(i1, s1);
        if (mass1 == 0) continue;
        for (std::uint64_t s2 = 1; s2 < subsets; ++s2) {
          const Rational mass2 = mass_of(i2, s2);
          if (mass2 == 0) continue;
          // Cleared of denominators: mass2 * linz1 - mass1 * linz2 = 0.
          std::vector<Rational> c(m, Rational(0));
          for (std::size_t j = 0; j < m; ++j) {
            if ((s1 >> j) & 1U) c[j] += mass2 * inst.probs[i1][j];
            if ((s2 >> j) & 1U) c[j] -= mass1 * inst.probs[i2][j];
          }
          Rational offset = mass2 * inst.costs[i1] - mass1 * inst.costs[i2];
          builder.add(std::move(c), std::move(offset), HyperplaneFamily::ReservationTie,
                      {i1, i2, static_cast<std::size_t>(s1), static_cast<std::size_t>(s2)});
        }
      }
    }
  }
  return builder.take();
}

std::uint64_t projected_subsets(std::size_t planes, std::size_t m) {
  if (m > planes) return 0;
  long double count = 1;
  for (std::size_t k = 0; k < m; ++k) {
    count = count * static_cast<long double>(planes - k) / static_cast<long double>(k + 1);
  }
  if (count >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max())) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(std::llround(count));
}

namespace {

class VertexSearch {
 public:
  VertexSearch(const HyperplaneSet& hs, const Rational& bound, std::size_t m)
      : hs_(hs), bound_(bound), m_(m), bound_d_(to_double(bound)) {
    coeffs_d_.reserve(hs.planes.size());
    for (const Hyperplane& h : hs.planes) {
      std::vector<double> c;
      for (const Rational& x : h.coeffs) c.push_back(to_double(x));
      coeffs_d_.push_back(std::move(c));
      offsets_d_.push_back(to_double(h.offset));
    }
  }

  std::vector<Vertex> run() {
    chosen_.clear();
    descend(AffineFlat(m_), 0);
    std::vector<Vertex> out;
    out.reserve(found_.size());
    for (auto& [point, defining] : found_) out.push_back({Contract{point}, defining});
    return out;
  }

 private:
  void descend(const AffineFlat& flat, std::size_t next) {
    const std::size_t planes = hs_.planes.size();
    if (flat.dimension() == 1) {
      finish_line(flat, next);
      return;
    }
    if (flat.dimension() == 0) {
      record(flat.point());
      return;
    }
    for (std::size_t k = next; k + flat.dimension() <= planes; ++k) {
      AffineFlat narrowed = flat;
      if (!narrowed.cut(hs_.planes[k].coeffs, hs_.planes[k].offset)) continue;
      chosen_.push_back(k);
      descend(narrowed, k + 1);
      chosen_.pop_back();
    }
  }

  // Last plane: intersect the line point + s * dir with each remaining
  // plane. A floating-point pass discards intersections far outside the
  // box; anything near it is recomputed exactly.
  void finish_line(const AffineFlat& flat, std::size_t next) {
    const std::vector<Rational>& p = flat.point();
    const std::vector<Rational>& d = flat.directions().front();
    std::vector<double> pd, dd;
    double p_norm = 0, d_norm = 0;
    for (std::size_t j = 0; j < m_; ++j) {
      pd.push_back(to_double(p[j]));
      dd.push_back(to_double(d[j]));
      p_norm = std::max(p_norm, std::abs(pd.back()));
      d_norm = std::max(d_norm, std::abs(dd.back()));
    }
    constexpr double kRel = 1e-11;
    for (std::size_t k = next; k < hs_.planes.size(); ++k) {
      const std::vector<double>& a = coeffs_d_[k];
      double slope = 0, at_p = 0, a_norm = 0;
      for (std::size_t j = 0; j < m_; ++j) {
        slope += a[j] * dd[j];
        at_p += a[j] * pd[j];
        a_norm += std::abs(a[j]);
      }
      const double slope_err = kRel * a_norm * d_norm;
      if (std::abs(slope) > slope_err) {
        const double s = (offsets_d_[k] - at_p) / slope;
        const double s_err =
            (kRel * (std::abs(offsets_d_[k]) + a_norm * p_norm) + std::abs(s) * slope_err) /
            (std::abs(slope) - slope_err);
        const double tol = kRel * (1 + bound_d_) + s_err * d_norm + kRel * (p_norm + std::abs(s) * d_norm);
        bool outside = false;
        for (std::size_t j = 0; j < m_ && !outside; ++j) {
          const double x = pd[j] + s * dd[j];
          outside = x < -tol || x > bound_d_ + tol;
        }
        if (outside) continue;
      }
      const Rational exact_slope = dot(hs_.planes[k].coeffs, d);
      if (exact_slope == 0) continue;
      const Rational s = (hs_.planes[k].offset - dot(hs_.planes[k].coeffs, p)) / exact_slope;
      std::vector<Rational> point(m_);
      for (std::size_t j = 0; j < m_; ++j) point[j] = p[j] + s * d[j];
      chosen_.push_back(k);
      record(point);
      chosen_.pop_back();
    }
  }

  void record(const std::vector<Rational>& point) {
    for (const Rational& x : point) {
      if (x < 0 || x > bound_) return;
    }
    found_.emplace(point, chosen_);
  }

  const HyperplaneSet& hs_;
  const Rational& bound_;
  std::size_t m_;
  double bound_d_;
  std::vector<std::vector<double>> coeffs_d_;
  std::vector<double> offsets_d_;
  std::vector<std::size_t> chosen_;
  std::map<std::vector<Rational>, std::vector<std::size_t>> found_;
};

}  // namespace

std::vector<Vertex> enumerate_vertices(const HyperplaneSet& hs, const Rational& bound,
                                       std::size_t m, std::uint64_t budget) {
  const std::uint64_t projected = projected_subsets(hs.planes.size(), m);
  if (projected > budget) {
    throw CapacityError("vertex enumeration needs " + std::to_string(projected) +
                        " plane subsets, budget is " + std::to_string(budget));
  }
  if (m == 0 || hs.planes.size() < m) return {};
  return VertexSearch(hs, bound, m).run();
}

GeneralSolution solve_general(const Instance& inst, std::uint64_t budget) {
  const HyperplaneSet hs = hyperplanes(inst);
  const std::vector<Vertex> vertices =
      enumerate_vertices(hs, payment_bound(inst), inst.num_outcomes(), budget);

  GeneralSolution out;
  out.vertex_count = vertices.size();
  out.hyperplane_counts = hs.emitted;
  bool have = false;
  // Vertices arrive in lexicographic order, so strict improvement keeps the
  // smallest contract among maximizers.
  for (const Vertex& v : vertices) {
    BestResponse br = principal_utility(inst, v.point);
    if (!have || br.principal_utility > out.utility) {
      out.contract = v.point;
      out.utility = std::move(br.principal_utility);
      out.strategy = std::move(br.strategy);
      have = true;
    }
  }
  return out;
}

}  // namespace seqcontract

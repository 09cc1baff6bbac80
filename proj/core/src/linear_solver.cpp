#include "seqcontract/linear_solver.hpp"

#include <algorithm>

namespace seqcontract {

ExtendedRational PiecewiseLinearFn::operator()(const Rational& alpha) const {
  if (infinite) return ExtendedRational::infinity();
  for (const Segment& s : segments) {
    if (alpha >= s.start && (!s.end || alpha < *s.end)) {
      return ExtendedRational(Rational(s.slope * alpha + s.intercept));
    }
  }
  // alpha below the first segment: extend it.
  const Segment& first = segments.front();
  return ExtendedRational(Rational(first.slope * alpha + first.intercept));
}

PiecewiseLinearFn reservation_pwl(const Instance& inst, std::size_t action) {
  PiecewiseLinearFn fn;
  const Rational& cost = inst.costs[action];
  if (cost == 0) {
    fn.infinite = true;
    return fn;
  }
  const std::vector<Rational>& p = inst.probs[action];
  const std::vector<Rational>& r = inst.rewards;
  const std::size_t m = inst.num_outcomes();

  // Suffix sums over outcomes k >= j.
  std::vector<Rational> mass(m + 1, Rational(0));
  std::vector<Rational> weighted(m + 1, Rational(0));
  for (std::size_t j = m; j-- > 0;) {
    mass[j] = mass[j + 1] + p[j];
    weighted[j] = weighted[j + 1] + p[j] * r[j];
  }

  Rational start = 0;
  for (std::size_t j = 0; j < m; ++j) {
    // Breakpoint where z(alpha) reaches alpha * r(j).
    const Rational gap = weighted[j] - mass[j] * r[j];
    std::optional<Rational> end;
    if (gap > 0) end = cost / gap;
    if (!end || *end > start) {
      fn.segments.push_back({start, end, weighted[j] / mass[j], -cost / mass[j]});
    }
    if (!end) break;
    start = *end;
  }
  return fn;
}

namespace {

struct Line {
  Rational start;
  std::optional<Rational> end;
  Rational slope;
  Rational intercept;
};

void add_if_in_unit(std::vector<Rational>& out, const Rational& alpha) {
  if (alpha >= 0 && alpha <= 1) out.push_back(alpha);
}

// Meeting points of two segments over the overlap of their domains.
void intersect(const Line& a, const Line& b, std::vector<Rational>& out) {
  const Rational lo = std::max(a.start, b.start);
  std::optional<Rational> hi;
  if (a.end && b.end) {
    hi = std::min(*a.end, *b.end);
  } else if (a.end) {
    hi = a.end;
  } else if (b.end) {
    hi = b.end;
  }
  if (hi && *hi < lo) return;
  auto inside = [&](const Rational& x) { return x >= lo && (!hi || x <= *hi); };

  if (a.slope == b.slope) {
    if (a.intercept != b.intercept) return;
    add_if_in_unit(out, lo);
    if (hi) add_if_in_unit(out, *hi);
    return;
  }
  Rational x = (b.intercept - a.intercept) / (a.slope - b.slope);
  if (inside(x)) add_if_in_unit(out, x);
}

}  // namespace

std::vector<Rational> candidate_alphas(const Instance& inst) {
  std::vector<std::vector<Line>> pieces;
  for (std::size_t i = 0; i < inst.num_actions(); ++i) {
    const PiecewiseLinearFn fn = reservation_pwl(inst, i);
    if (fn.infinite) continue;
    std::vector<Line> lines;
    for (const Segment& s : fn.segments) lines.push_back({s.start, s.end, s.slope, s.intercept});
    pieces.push_back(std::move(lines));
  }

  std::vector<Rational> out{Rational(0), Rational(1)};
  for (std::size_t a = 0; a < pieces.size(); ++a) {
    for (std::size_t b = a + 1; b < pieces.size(); ++b) {
      for (const Line& x : pieces[a]) {
        for (const Line& y : pieces[b]) intersect(x, y, out);
      }
    }
  }
  std::vector<Rational> rewards = inst.rewards;
  rewards.erase(std::unique(rewards.begin(), rewards.end()), rewards.end());
  for (const auto& lines : pieces) {
    for (const Rational& r : rewards) {
      const Line payment{Rational(0), std::nullopt, r, Rational(0)};
      for (const Line& x : lines) intersect(x, payment, out);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LinearSolution solve_linear(const Instance& inst) {
  LinearSolution out;
  bool have = false;
  for (const Rational& alpha : candidate_alphas(inst)) {
    const Contract t = induced_payments(LinearContract{alpha}, inst);
    BestResponse br = principal_utility(inst, t);
    // Candidates ascend, so strict improvement keeps the smallest alpha.
    if (!have || br.principal_utility > out.utility) {
      out.alpha = alpha;
      out.utility = br.principal_utility;
      out.strategy = br.strategy;
      have = true;
    }
    out.candidates.push_back(
        {alpha, std::move(br.principal_utility), std::move(br.strategy), std::move(br.distribution)});
  }
  return out;
}

std::size_t count_response_changes(const LinearSolution& solution) {
  std::size_t changes = 0;
  for (std::size_t k = 1; k < solution.candidates.size(); ++k) {
    const OutcomeDistribution& a = solution.candidates[k - 1].distribution;
    const OutcomeDistribution& b = solution.candidates[k].distribution;
    if (a.mass != b.mass || a.take_probability != b.take_probability) ++changes;
  }
  return changes;
}

}  // namespace seqcontract

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aerotda/diagram.hpp"

namespace aerotda {

struct CriticalPoint {
  double t = 0.0;
  double value = 0.0;
  bool operator==(const CriticalPoint&) const = default;
};

/// One landscape function: piecewise linear through sorted critical points,
/// zero outside [front().t, back().t].
using LandscapeLevel = std::vector<CriticalPoint>;

/// Evaluates a level at t by linear interpolation.
double evaluate(const LandscapeLevel& level, double t);

/// Persistence landscape lambda_1 >= lambda_2 >= ... in critical-point form.
/// Levels of a single-diagram landscape have slopes in {-1, 0, 1}; averages
/// (is_average) may have fractional slopes.
struct Landscape {
  bool is_average = false;
  std::vector<LandscapeLevel> levels;

  std::size_t depth() const { return levels.size(); }
  /// lambda_k(t) with k starting at 1; zero beyond the last level.
  double operator()(std::size_t k, double t) const;
  bool operator==(const Landscape&) const = default;
};

/// Tent max(0, min(t - a, b - t)); throws InvalidInput unless a < b.
double tent(double a, double b, double t);

/// Exact landscape of the finite points of dimension `dim`; essential points
/// are ignored (cap or drop them first).
Landscape from_diagram(const PersistenceDiagram& d, int dim);

/// Pointwise mean, level by level; missing levels count as zero.
Landscape average(std::span<const Landscape> landscapes);

/// Weighted pointwise mean; weights must be positive.
Landscape average_weighted(std::span<const Landscape> landscapes, std::span<const double> weights);

/// sup_k sup_t |lambda_k(t) - mu_k(t)|, exact on the merged critical grid.
double sup_distance(const Landscape& a, const Landscape& b);

/// Recovers the diagram of a single-diagram landscape with distinct critical
/// values. Each local maximum that is not matched by a local minimum of the
/// level above at the same point is a tent peak (t, v) -> (t - v, t + v).
/// Throws NotInvertible for averages or non-integer slopes.
PersistenceDiagram reconstruct_diagram(const Landscape& l, int dim = 0);

}  // namespace aerotda

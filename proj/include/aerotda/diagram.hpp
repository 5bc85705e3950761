#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "aerotda/metricspace.hpp"

namespace aerotda {

/// One point of a persistence diagram; death may be +infinity.
struct PersistencePoint {
  double birth = 0.0;
  double death = 0.0;
  int dim = 0;

  bool is_essential() const;
  double persistence() const { return death - birth; }
  bool operator==(const PersistencePoint&) const = default;
};

/// Multiset of persistence points; duplicates are significant.
class PersistenceDiagram {
 public:
  PersistenceDiagram() = default;
  /// Validates every point (0 <= birth < death, dim in {0, 1}).
  explicit PersistenceDiagram(std::vector<PersistencePoint> points);

  void add(const PersistencePoint& p);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const PersistencePoint& operator[](std::size_t i) const { return points_[i]; }
  std::span<const PersistencePoint> points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  /// Points of one homology dimension.
  PersistenceDiagram of_dim(int dim) const;
  std::size_t essential_count(int dim) const;
  /// Largest finite death; 0 when there is none.
  double max_finite_death() const;

  /// Canonical order: (dim, birth, death).
  PersistenceDiagram sorted() const;

  /// Multiset equality.
  friend bool operator==(const PersistenceDiagram& a, const PersistenceDiagram& b);

 private:
  std::vector<PersistencePoint> points_;
};

/// Replaces each infinite death by `cap` (dropping points born at or after the cap).
PersistenceDiagram cap_essentials(const PersistenceDiagram& d, double cap);
/// Removes every essential point.
PersistenceDiagram drop_essentials(const PersistenceDiagram& d);

/// L-infinity distance between two points; inf - inf counts as 0.
double pair_cost(const PersistencePoint& a, const PersistencePoint& b);
/// Half the persistence: the cost of leaving a point unmatched.
double unmatched_cost(const PersistencePoint& p);

/// Partial matching: (index into A, index into B), each index used at most once.
struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

/// Max over matched pair costs and unmatched-point costs. Throws
/// ContractViolation for out-of-range or repeated indices.
double matching_cost(const PersistenceDiagram& a, const PersistenceDiagram& b, const Matching& m);

/// Exact bottleneck distance between the dimension-`dim` parts of a and b.
/// Essential points match only essential points, so differing essential
/// counts give +infinity.
double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim);

/// Max of the per-dimension bottleneck distances.
double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b);

struct StabilityReport {
  std::array<double, 2> bottleneck{};  // per homology dimension 0, 1
  double bound = 0.0;                   // entrywise sup-norm of X - Y
  bool holds(double tol = 1e-9) const {
    return bottleneck[0] <= bound + tol && bottleneck[1] <= bound + tol;
  }
};

/// Compares the Vietoris-Rips diagrams of two same-size metric spaces against
/// the entrywise distortion of the identity correspondence.
StabilityReport stability_check(const DistanceMatrix& x, const DistanceMatrix& y);

}  // namespace aerotda

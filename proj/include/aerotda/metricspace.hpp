#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "aerotda/error.hpp"

namespace aerotda {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Mean Earth radius (IUGG), kilometres. Every great-circle distance in the
/// library uses this sphere.
inline constexpr double kEarthRadiusKm = 6371.0088;

struct LatLon {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
};

/// One trajectory sample: epoch seconds, degrees, degrees, kilometres.
struct GeoSample {
  std::int64_t t = 0;
  double lat = 0.0;
  double lon = 0.0;
  double alt_km = 0.0;

  LatLon position() const { return {lat, lon}; }
  bool operator==(const GeoSample&) const = default;
};

/// Throws InvalidInput when lat/lon/alt are outside their ranges.
void check_sample(const GeoSample& s);
void check_latlon(const LatLon& p);

/// Great-circle distance in kilometres on the kEarthRadiusKm sphere.
double haversine(const LatLon& p, const LatLon& q);

/// Distance between two samples sharing a timestamp:
/// sqrt(haversine^2 + altitude_gap^2).
double dist_t(const GeoSample& p, const GeoSample& q);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point2&) const = default;
};

double euclidean(std::span<const double> a, std::span<const double> b);
double euclidean(const Point2& a, const Point2& b);

// Symmetric, zero-diagonal, finite, non-negative n x n matrix stored densely.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

  /// Validates the invariants; throws InvalidInput on violation.
  static DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  /// Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double value);

  /// Largest entrywise absolute difference; sizes must agree.
  double max_abs_difference(const DistanceMatrix& other) const;

  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * n_, n_};
  }

  bool operator==(const DistanceMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

/// entries[i][j] = metric(points[i], points[j]); the metric is evaluated once
/// per unordered pair.
template <typename Point, typename Metric>
DistanceMatrix pairwise_matrix(std::span<const Point> points, Metric&& metric) {
  if (points.empty()) fail(ErrorKind::InvalidInput, "pairwise_matrix: no points");
  DistanceMatrix d(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double v = metric(points[i], points[j]);
      if (!std::isfinite(v) || v < 0.0) {
        fail(ErrorKind::Numeric, "pairwise_matrix: metric returned " + std::to_string(v) +
                                     " for pair (" + std::to_string(i) + ", " +
                                     std::to_string(j) + ")");
      }
      d.set(i, j, v);
    }
  }
  return d;
}

template <typename Point, typename Metric>
DistanceMatrix pairwise_matrix(const std::vector<Point>& points, Metric&& metric) {
  return pairwise_matrix(std::span<const Point>(points), std::forward<Metric>(metric));
}

/// Euclidean distance matrix of rows of coordinates (all rows equal length).
DistanceMatrix euclidean_matrix(const std::vector<std::vector<double>>& coords);
DistanceMatrix euclidean_matrix(std::span<const Point2> points);

}  // namespace aerotda

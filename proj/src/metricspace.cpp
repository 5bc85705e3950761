#include "aerotda/metricspace.hpp"

#include <algorithm>
#include <numbers>

namespace aerotda {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

}  // namespace

void check_latlon(const LatLon& p) {
  if (!(p.lat_deg >= -90.0 && p.lat_deg <= 90.0)) {
    fail(ErrorKind::InvalidInput, "latitude out of range [-90, 90]: " + std::to_string(p.lat_deg));
  }
  if (!(p.lon_deg > -180.0 && p.lon_deg <= 180.0)) {
    fail(ErrorKind::InvalidInput,
         "longitude out of range (-180, 180]: " + std::to_string(p.lon_deg));
  }
}

void check_sample(const GeoSample& s) {
  check_latlon(s.position());
  if (!(s.alt_km >= 0.0) || !std::isfinite(s.alt_km)) {
    fail(ErrorKind::InvalidInput, "altitude must be finite and >= 0: " + std::to_string(s.alt_km));
  }
}

double haversine(const LatLon& p, const LatLon& q) {
  check_latlon(p);
  check_latlon(q);
  const double phi1 = p.lat_deg * kDegToRad;
  const double phi2 = q.lat_deg * kDegToRad;
  const double dphi = phi2 - phi1;
  const double dlambda = (q.lon_deg - p.lon_deg) * kDegToRad;
  const double s = std::sin(dphi / 2.0);
  const double c = std::sin(dlambda / 2.0);
  double h = s * s + std::cos(phi1) * std::cos(phi2) * c * c;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

double dist_t(const GeoSample& p, const GeoSample& q) {
  if (p.t != q.t) {
    fail(ErrorKind::ContractViolation, "dist_t: samples carry different timestamps (" +
                                           std::to_string(p.t) + " vs " + std::to_string(q.t) +
                                           ")");
  }
  check_sample(p);
  check_sample(q);
  return std::hypot(haversine(p.position(), q.position()), p.alt_km - q.alt_km);
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    fail(ErrorKind::InvalidInput, "euclidean: coordinate counts differ");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double euclidean(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

DistanceMatrix DistanceMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      fail(ErrorKind::InvalidInput, "distance matrix row " + std::to_string(i) + " has " +
                                        std::to_string(rows[i].size()) + " entries, expected " +
                                        std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double v = rows[i][j];
      if (!std::isfinite(v) || v < 0.0) {
        fail(ErrorKind::InvalidInput, "distance matrix entry (" + std::to_string(i) + ", " +
                                          std::to_string(j) + ") is not finite and >= 0");
      }
      if (i == j && v != 0.0) {
        fail(ErrorKind::InvalidInput, "distance matrix diagonal entry " + std::to_string(i) +
                                          " is non-zero");
      }
      if (v != rows[j][i]) {
        fail(ErrorKind::InvalidInput, "distance matrix is not symmetric at (" +
                                          std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      d.entries_[i * n + j] = v;
    }
  }
  return d;
}

void DistanceMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i >= n_ || j >= n_) fail(ErrorKind::ContractViolation, "DistanceMatrix::set out of range");
  if (i == j) {
    if (value != 0.0) fail(ErrorKind::InvalidInput, "DistanceMatrix: non-zero diagonal");
    return;
  }
  if (!std::isfinite(value) || value < 0.0) {
    fail(ErrorKind::InvalidInput, "DistanceMatrix: entry must be finite and >= 0");
  }
  entries_[i * n_ + j] = value;
  entries_[j * n_ + i] = value;
}

double DistanceMatrix::max_abs_difference(const DistanceMatrix& other) const {
  if (other.n_ != n_) fail(ErrorKind::InvalidInput, "distance matrices differ in size");
  double m = 0.0;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    m = std::max(m, std::abs(entries_[k] - other.entries_[k]));
  }
  return m;
}

DistanceMatrix euclidean_matrix(const std::vector<std::vector<double>>& coords) {
  return pairwise_matrix(coords, [](const std::vector<double>& a, const std::vector<double>& b) {
    return euclidean(a, b);
  });
}

DistanceMatrix euclidean_matrix(std::span<const Point2> points) {
  return pairwise_matrix(points, [](const Point2& a, const Point2& b) { return euclidean(a, b); });
}

}  // namespace aerotda

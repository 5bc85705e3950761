#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "aerotda/metricspace.hpp"

namespace aerotda {

inline constexpr int kMaxSimplexDim = 2;

/// A simplex of dimension 0..2 given by strictly increasing vertex indices.
class Simplex {
 public:
  Simplex() = default;
  explicit Simplex(int v0);
  Simplex(int v0, int v1);
  Simplex(int v0, int v1, int v2);

  int dim() const { return count_ - 1; }
  int size() const { return count_; }
  int operator[](int i) const { return vertices_[i]; }
  std::span<const int> vertices() const { return {vertices_.data(), static_cast<std::size_t>(count_)}; }

  /// Codimension-one faces, in lexicographic order. Empty for vertices.
  std::vector<Simplex> facets() const;

  /// Packs the vertex tuple into one integer; vertices must be < 2^20.
  std::uint64_t key() const;

  friend bool operator==(const Simplex& a, const Simplex& b) {
    return a.count_ == b.count_ && a.vertices_ == b.vertices_;
  }
  // Dimension first, then lexicographic vertices.
  friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
    if (auto c = a.count_ <=> b.count_; c != 0) return c;
    return a.vertices_ <=> b.vertices_;
  }

 private:
  std::array<int, 3> vertices_{-1, -1, -1};
  int count_ = 0;
};

struct FiltrationEntry {
  Simplex simplex;
  double value = 0.0;
};

/// Simplices with filtration values, sorted by (value, dimension, vertices).
/// Every face precedes its cofaces and carries a value no larger than theirs.
class Filtration {
 public:
  Filtration() = default;

  /// Sorts the entries and validates the filtration property; throws
  /// InvalidFiltration when a face is missing or enters after a coface.
  static Filtration from_entries(std::vector<FiltrationEntry> entries);

  std::size_t size() const { return entries_.size(); }
  const FiltrationEntry& operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  std::span<const FiltrationEntry> entries() const { return entries_; }

  int max_dim() const;
  /// Number of distinct vertices (0-simplices).
  std::size_t vertex_count() const;

  /// Simplices whose value is <= `value`, in filtration order.
  std::vector<Simplex> sublevel(double value) const;

 private:
  friend Filtration vietoris_rips(const DistanceMatrix&, int, double);
  std::vector<FiltrationEntry> entries_;
};

/// Total order used for filtrations: value, then dimension, then vertices.
bool filtration_less(const FiltrationEntry& a, const FiltrationEntry& b);

/// Vietoris-Rips filtration on the edge-length scale: vertices enter at 0,
/// edges at their length, triangles at their longest edge. Simplices above
/// `max_value` are left out. Throws UnsupportedDimension for max_dim > 2.
Filtration vietoris_rips(const DistanceMatrix& d, int max_dim = kMaxSimplexDim,
                         double max_value = kInfinity);

/// Balls of radius r meet pairwise iff the points are within 2r.
constexpr double radius_to_value(double r) { return 2.0 * r; }
constexpr double value_to_radius(double v) { return v / 2.0; }

/// Radius of the smallest disc containing three planar points.
double min_enclosing_radius(const Point2& a, const Point2& b, const Point2& c);

/// Cech complex of planar points at ball radius r (validation only). Result is
/// sorted by (dimension, vertices).
std::vector<Simplex> cech(std::span<const Point2> points, int max_dim, double r);

}  // namespace aerotda

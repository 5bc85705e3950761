#include "aerotda/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

namespace aerotda {

namespace {

void require_increasing(std::span<const int> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0) fail(ErrorKind::InvalidInput, "simplex vertex index is negative");
    if (i > 0 && v[i] <= v[i - 1]) {
      fail(ErrorKind::InvalidInput, "simplex vertices must be strictly increasing");
    }
  }
}

void check_dim(int max_dim) {
  if (max_dim < 0 || max_dim > kMaxSimplexDim) {
    fail(ErrorKind::UnsupportedDimension,
         "simplex dimension " + std::to_string(max_dim) + " unsupported (allowed 0..2)");
  }
}

}  // namespace

Simplex::Simplex(int v0) : vertices_{v0, -1, -1}, count_(1) { require_increasing(vertices()); }
Simplex::Simplex(int v0, int v1) : vertices_{v0, v1, -1}, count_(2) {
  require_increasing(vertices());
}
Simplex::Simplex(int v0, int v1, int v2) : vertices_{v0, v1, v2}, count_(3) {
  require_increasing(vertices());
}

std::vector<Simplex> Simplex::facets() const {
  switch (count_) {
    case 2: return {Simplex(vertices_[0]), Simplex(vertices_[1])};
    case 3:
      return {Simplex(vertices_[0], vertices_[1]), Simplex(vertices_[0], vertices_[2]),
              Simplex(vertices_[1], vertices_[2])};
    default: return {};
  }
}

std::uint64_t Simplex::key() const {
  std::uint64_t k = static_cast<std::uint64_t>(count_);
  for (int i = 0; i < 3; ++i) {
    k = (k << 20) | static_cast<std::uint64_t>(vertices_[i] + 1);
  }
  return k;
}

bool filtration_less(const FiltrationEntry& a, const FiltrationEntry& b) {
  if (a.value != b.value) return a.value < b.value;
  return a.simplex < b.simplex;
}

Filtration Filtration::from_entries(std::vector<FiltrationEntry> entries) {
  for (const auto& e : entries) {
    if (e.simplex.size() == 0) fail(ErrorKind::InvalidFiltration, "empty simplex in filtration");
    if (!(e.value >= 0.0) || std::isnan(e.value)) {
      fail(ErrorKind::InvalidFiltration, "filtration values must be >= 0");
    }
  }
  std::ranges::sort(entries, filtration_less);
  std::unordered_map<std::uint64_t, std::size_t> index;
  index.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!index.emplace(entries[i].simplex.key(), i).second) {
      fail(ErrorKind::InvalidFiltration, "duplicate simplex in filtration");
    }
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (const Simplex& f : entries[i].simplex.facets()) {
      auto it = index.find(f.key());
      if (it == index.end()) {
        fail(ErrorKind::InvalidFiltration, "filtration is missing a face of simplex #" +
                                               std::to_string(i));
      }
      if (entries[it->second].value > entries[i].value) {
        fail(ErrorKind::InvalidFiltration,
             "face enters after its coface at simplex #" + std::to_string(i));
      }
    }
  }
  Filtration f;
  f.entries_ = std::move(entries);
  return f;
}

int Filtration::max_dim() const {
  int m = -1;
  for (const auto& e : entries_) m = std::max(m, e.simplex.dim());
  return m;
}

std::size_t Filtration::vertex_count() const {
  return static_cast<std::size_t>(
      std::ranges::count_if(entries_, [](const FiltrationEntry& e) { return e.simplex.dim() == 0; }));
}

std::vector<Simplex> Filtration::sublevel(double value) const {
  std::vector<Simplex> out;
  for (const auto& e : entries_) {
    if (e.value > value) break;
    out.push_back(e.simplex);
  }
  return out;
}

Filtration vietoris_rips(const DistanceMatrix& d, int max_dim, double max_value) {
  check_dim(max_dim);
  const int n = static_cast<int>(d.size());
  std::vector<FiltrationEntry> entries;
  for (int i = 0; i < n; ++i) entries.push_back({Simplex(i), 0.0});
  if (max_dim >= 1) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (d(i, j) <= max_value) entries.push_back({Simplex(i, j), d(i, j)});
      }
    }
  }
  if (max_dim >= 2) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double dij = d(i, j);
        if (dij > max_value) continue;
        for (int k = j + 1; k < n; ++k) {
          const double v = std::max({dij, d(i, k), d(j, k)});
          if (v <= max_value) entries.push_back({Simplex(i, j, k), v});
        }
      }
    }
  }
  // Clique construction satisfies the face property, so only sorting is needed.
  std::ranges::sort(entries, filtration_less);
  Filtration f;
  f.entries_ = std::move(entries);
  return f;
}

double min_enclosing_radius(const Point2& a, const Point2& b, const Point2& c) {
  const std::array<Point2, 3> p{a, b, c};
  // A disc on the longest side's midpoint suffices when the opposite angle is
  // not acute.
  double best = kInfinity;
  for (int i = 0; i < 3; ++i) {
    const Point2& u = p[i];
    const Point2& v = p[(i + 1) % 3];
    const Point2& w = p[(i + 2) % 3];
    const Point2 mid{(u.x + v.x) / 2.0, (u.y + v.y) / 2.0};
    const double r = euclidean(u, v) / 2.0;
    if (euclidean(mid, w) <= r) best = std::min(best, r);
  }
  if (best < kInfinity) return best;
  // Acute triangle: circumradius R = abc / (4 * area).
  const double ab = euclidean(a, b);
  const double bc = euclidean(b, c);
  const double ca = euclidean(c, a);
  const double area2 = std::abs((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
  return ab * bc * ca / (2.0 * area2);
}

std::vector<Simplex> cech(std::span<const Point2> points, int max_dim, double r) {
  check_dim(max_dim);
  const int n = static_cast<int>(points.size());
  std::vector<Simplex> out;
  for (int i = 0; i < n; ++i) out.emplace_back(i);
  if (max_dim >= 1) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (euclidean(points[i], points[j]) <= radius_to_value(r)) out.emplace_back(i, j);
      }
    }
  }
  if (max_dim >= 2) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
          if (min_enclosing_radius(points[i], points[j], points[k]) <= r) {
            out.emplace_back(i, j, k);
          }
        }
      }
    }
  }
  return out;
}

}  // namespace aerotda

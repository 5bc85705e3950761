#include "aerotda/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace aerotda {

namespace {

constexpr double kSlopeTol = 1e-9;

double slope(const CriticalPoint& p, const CriticalPoint& q) {
  return (q.value - p.value) / (q.t - p.t);
}

// Drops interior points lying on the segment through their neighbours and
// trims redundant zero runs at both ends.
LandscapeLevel simplify(std::vector<CriticalPoint> pts, double tol) {
  LandscapeLevel out;
  for (const auto& p : pts) {
    if (!out.empty() && p.t == out.back().t) {
      out.back().value = std::max(out.back().value, p.value);
      continue;
    }
    while (out.size() >= 2 &&
           std::abs(slope(out[out.size() - 2], out.back()) - slope(out.back(), p)) <= tol) {
      out.pop_back();
    }
    out.push_back(p);
  }
  std::size_t first = 0;
  while (first + 1 < out.size() && out[first].value == 0.0 && out[first + 1].value == 0.0) ++first;
  std::size_t last = out.size();
  while (last >= first + 2 && out[last - 1].value == 0.0 && out[last - 2].value == 0.0) --last;
  LandscapeLevel trimmed(out.begin() + static_cast<std::ptrdiff_t>(first),
                         out.begin() + static_cast<std::ptrdiff_t>(last));
  const bool all_zero = std::ranges::all_of(trimmed, [](const auto& c) { return c.value == 0.0; });
  if (all_zero) trimmed.clear();
  return trimmed;
}

std::vector<double> merged_grid(const std::vector<const LandscapeLevel*>& levels) {
  std::vector<double> grid;
  for (const auto* lvl : levels) {
    if (lvl == nullptr) continue;
    for (const auto& c : *lvl) grid.push_back(c.t);
  }
  std::ranges::sort(grid);
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace

double evaluate(const LandscapeLevel& level, double t) {
  if (level.empty() || t < level.front().t || t > level.back().t) return 0.0;
  auto hi = std::ranges::upper_bound(level, t, std::less<>{}, &CriticalPoint::t);
  if (hi == level.end()) return level.back().value;
  auto lo = hi - 1;
  if (lo->t == t) return lo->value;
  const double f = (t - lo->t) / (hi->t - lo->t);
  return lo->value + f * (hi->value - lo->value);
}

double Landscape::operator()(std::size_t k, double t) const {
  if (k == 0 || k > levels.size()) return 0.0;
  return evaluate(levels[k - 1], t);
}

double tent(double a, double b, double t) {
  if (!(a < b)) {
    fail(ErrorKind::InvalidInput,
         "tent requires a < b (got " + std::to_string(a) + ", " + std::to_string(b) + ")");
  }
  return std::max(0.0, std::min(t - a, b - t));
}

Landscape from_diagram(const PersistenceDiagram& d, int dim) {
  std::vector<std::pair<double, double>> bars;
  for (const auto& p : d) {
    if (p.dim == dim && !p.is_essential()) bars.emplace_back(p.birth, p.death);
  }
  Landscape out;
  if (bars.empty()) return out;

  // Every slope change of a k-th max of tents happens at a birth, a death, a
  // peak, or where a rising edge meets a falling edge.
  std::vector<double> grid;
  for (const auto& [a, b] : bars) {
    grid.push_back(a);
    grid.push_back(b);
    grid.push_back((a + b) / 2.0);
  }
  for (const auto& [a, ignored] : bars) {
    for (const auto& [ignored2, b] : bars) {
      if (a < b) grid.push_back((a + b) / 2.0);
    }
  }
  std::ranges::sort(grid);
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<std::vector<double>> samples(grid.size());
  std::size_t depth = 0;
  std::vector<double> values;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    values.clear();
    for (const auto& [a, b] : bars) {
      const double v = tent(a, b, grid[g]);
      if (v > 0.0) values.push_back(v);
    }
    std::ranges::sort(values, std::greater<>{});
    depth = std::max(depth, values.size());
    samples[g] = values;
  }
  out.levels.reserve(depth);
  for (std::size_t k = 0; k < depth; ++k) {
    std::vector<CriticalPoint> pts;
    pts.reserve(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
      pts.push_back({grid[g], k < samples[g].size() ? samples[g][k] : 0.0});
    }
    out.levels.push_back(simplify(std::move(pts), kSlopeTol));
  }
  return out;
}

Landscape average_weighted(std::span<const Landscape> landscapes, std::span<const double> weights) {
  if (landscapes.empty()) fail(ErrorKind::InvalidInput, "average of an empty landscape list");
  if (weights.size() != landscapes.size()) {
    fail(ErrorKind::InvalidInput, "average: weight count differs from landscape count");
  }
  double total = 0.0;
  for (const double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      fail(ErrorKind::InvalidInput, "average: weights must be positive and finite");
    }
    total += w;
  }
  std::size_t depth = 0;
  for (const auto& l : landscapes) depth = std::max(depth, l.depth());

  Landscape out;
  out.is_average = true;
  for (std::size_t k = 0; k < depth; ++k) {
    std::vector<const LandscapeLevel*> lvls;
    for (const auto& l : landscapes) lvls.push_back(k < l.depth() ? &l.levels[k] : nullptr);
    const std::vector<double> grid = merged_grid(lvls);
    std::vector<CriticalPoint> pts;
    pts.reserve(grid.size());
    for (const double t : grid) {
      double sum = 0.0;
      for (std::size_t i = 0; i < landscapes.size(); ++i) {
        if (lvls[i] != nullptr) sum += weights[i] * evaluate(*lvls[i], t);
      }
      pts.push_back({t, sum / total});
    }
    LandscapeLevel level = simplify(std::move(pts), 1e-12);
    if (level.empty()) break;
    out.levels.push_back(std::move(level));
  }
  return out;
}

Landscape average(std::span<const Landscape> landscapes) {
  const std::vector<double> weights(landscapes.size(), 1.0);
  return average_weighted(landscapes, weights);
}

double sup_distance(const Landscape& a, const Landscape& b) {
  const std::size_t depth = std::max(a.depth(), b.depth());
  double best = 0.0;
  for (std::size_t k = 0; k < depth; ++k) {
    const LandscapeLevel* la = k < a.depth() ? &a.levels[k] : nullptr;
    const LandscapeLevel* lb = k < b.depth() ? &b.levels[k] : nullptr;
    for (const double t : merged_grid({la, lb})) {
      const double va = la ? evaluate(*la, t) : 0.0;
      const double vb = lb ? evaluate(*lb, t) : 0.0;
      best = std::max(best, std::abs(va - vb));
    }
  }
  return best;
}

PersistenceDiagram reconstruct_diagram(const Landscape& l, int dim) {
  if (l.is_average) {
    fail(ErrorKind::NotInvertible, "averaged landscapes cannot be inverted to a diagram");
  }
  // Classify the interior vertices of each level by the slopes around them.
  struct Vertex {
    CriticalPoint at;
    bool is_max;
  };
  std::vector<std::vector<Vertex>> extrema(l.depth());
  for (std::size_t k = 0; k < l.depth(); ++k) {
    const auto& lvl = l.levels[k];
    std::vector<double> slopes;
    for (std::size_t i = 0; i + 1 < lvl.size(); ++i) {
      const double s = slope(lvl[i], lvl[i + 1]);
      const double r = std::round(s);
      if (std::abs(s - r) > kSlopeTol || std::abs(r) > 1.0) {
        fail(ErrorKind::NotInvertible, "landscape level " + std::to_string(k + 1) +
                                           " has slope " + std::to_string(s) +
                                           "; only slopes -1, 0, 1 are invertible here");
      }
      slopes.push_back(r);
    }
    for (std::size_t i = 1; i + 1 < lvl.size(); ++i) {
      const double before = slopes[i - 1];
      const double after = slopes[i];
      if (before > 0 && after < 0) extrema[k].push_back({lvl[i], true});
      if (before < 0 && after > 0 && lvl[i].value > 0.0) extrema[k].push_back({lvl[i], false});
      if (lvl[i].value > 0.0 && (before == 0.0 || after == 0.0)) {
        fail(ErrorKind::NotInvertible, "landscape level " + std::to_string(k + 1) +
                                           " has a flat segment above zero (non-generic)");
      }
    }
  }
  auto same = [](const CriticalPoint& p, const CriticalPoint& q) {
    return std::abs(p.t - q.t) <= kSlopeTol && std::abs(p.value - q.value) <= kSlopeTol;
  };
  PersistenceDiagram out;
  for (std::size_t k = l.depth(); k-- > 0;) {
    for (const auto& v : extrema[k]) {
      if (!v.is_max) continue;
      bool crossing = false;
      if (k > 0) {
        crossing = std::ranges::any_of(extrema[k - 1], [&](const Vertex& u) {
          return !u.is_max && same(u.at, v.at);
        });
      }
      if (!crossing) out.add({v.at.t - v.at.value, v.at.t + v.at.value, dim});
    }
  }
  return out;
}

}  // namespace aerotda

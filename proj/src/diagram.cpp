#include "aerotda/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "aerotda/persistence.hpp"

namespace aerotda {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_point(const PersistencePoint& p) {
  if (p.dim < 0 || p.dim > 1) {
    fail(ErrorKind::InvalidInput, "diagram point dimension must be 0 or 1, got " +
                                      std::to_string(p.dim));
  }
  if (!std::isfinite(p.birth) || !(p.birth >= 0.0) || !(p.birth < p.death) ||
      std::isnan(p.death)) {
    fail(ErrorKind::InvalidInput, "diagram point must satisfy 0 <= birth < death (got " +
                                      std::to_string(p.birth) + ", " + std::to_string(p.death) +
                                      ")");
  }
}

bool point_less(const PersistencePoint& a, const PersistencePoint& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  if (a.birth != b.birth) return a.birth < b.birth;
  return a.death < b.death;
}

double abs_diff(double a, double b) {
  if (a == b) return 0.0;  // covers inf - inf
  return std::abs(a - b);
}

// Hopcroft-Karp on a bipartite graph with equal side sizes; returns the size
// of a maximum matching.
class BipartiteMatcher {
 public:
  explicit BipartiteMatcher(std::size_t n) : n_(n), adj_(n) {}

  void add_edge(std::size_t u, std::size_t v) { adj_[u].push_back(v); }

  std::size_t max_matching() {
    match_l_.assign(n_, kNone);
    match_r_.assign(n_, kNone);
    dist_.assign(n_, 0);
    std::size_t result = 0;
    while (bfs()) {
      for (std::size_t u = 0; u < n_; ++u) {
        if (match_l_[u] == kNone && dfs(u)) ++result;
      }
    }
    return result;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  bool bfs() {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t u = 0; u < n_; ++u) {
      if (match_l_[u] == kNone) {
        dist_[u] = 0;
        q.push(u);
      } else {
        dist_[u] = kNone;
      }
    }
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (const std::size_t v : adj_[u]) {
        const std::size_t w = match_r_[v];
        if (w == kNone) {
          found = true;
        } else if (dist_[w] == kNone) {
          dist_[w] = dist_[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t u) {
    for (const std::size_t v : adj_[u]) {
      const std::size_t w = match_r_[v];
      if (w == kNone || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_l_[u] = v;
        match_r_[v] = u;
        return true;
      }
    }
    dist_[u] = kNone;
    return false;
  }

  std::size_t n_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> match_l_, match_r_, dist_;
};

// Left side: A then the diagonal images of B. Right side: B then the diagonal
// images of A. A perfect matching on the threshold graph is a delta-matching.
bool feasible(std::span<const PersistencePoint> a, std::span<const PersistencePoint> b,
              double delta) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  BipartiteMatcher g(n + m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (pair_cost(a[i], b[j]) <= delta) g.add_edge(i, j);
    }
    if (unmatched_cost(a[i]) <= delta) g.add_edge(i, m + i);
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (unmatched_cost(b[j]) <= delta) g.add_edge(n + j, j);
    for (std::size_t i = 0; i < n; ++i) g.add_edge(n + j, m + i);
  }
  return g.max_matching() == n + m;
}

double finite_bottleneck(std::span<const PersistencePoint> a, std::span<const PersistencePoint> b) {
  if (a.empty() && b.empty()) return 0.0;
  std::vector<double> candidates{0.0};
  for (const auto& p : a) candidates.push_back(unmatched_cost(p));
  for (const auto& q : b) candidates.push_back(unmatched_cost(q));
  for (const auto& p : a) {
    for (const auto& q : b) candidates.push_back(pair_cost(p, q));
  }
  std::ranges::sort(candidates);
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  // Leaving everything unmatched is always feasible at the largest unmatched cost.
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(a, b, candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

}  // namespace

bool PersistencePoint::is_essential() const { return std::isinf(death); }

PersistenceDiagram::PersistenceDiagram(std::vector<PersistencePoint> points)
    : points_(std::move(points)) {
  for (const auto& p : points_) check_point(p);
}

void PersistenceDiagram::add(const PersistencePoint& p) {
  check_point(p);
  points_.push_back(p);
}

PersistenceDiagram PersistenceDiagram::of_dim(int dim) const {
  PersistenceDiagram out;
  for (const auto& p : points_) {
    if (p.dim == dim) out.points_.push_back(p);
  }
  return out;
}

std::size_t PersistenceDiagram::essential_count(int dim) const {
  return static_cast<std::size_t>(std::ranges::count_if(
      points_, [dim](const PersistencePoint& p) { return p.dim == dim && p.is_essential(); }));
}

double PersistenceDiagram::max_finite_death() const {
  double m = 0.0;
  for (const auto& p : points_) {
    if (!p.is_essential()) m = std::max(m, p.death);
  }
  return m;
}

PersistenceDiagram PersistenceDiagram::sorted() const {
  PersistenceDiagram out = *this;
  std::ranges::sort(out.points_, point_less);
  return out;
}

bool operator==(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  return a.sorted().points_ == b.sorted().points_;
}

PersistenceDiagram cap_essentials(const PersistenceDiagram& d, double cap) {
  PersistenceDiagram out;
  for (const auto& p : d) {
    if (!p.is_essential()) {
      out.add(p);
    } else if (p.birth < cap) {
      out.add({p.birth, cap, p.dim});
    }
  }
  return out;
}

PersistenceDiagram drop_essentials(const PersistenceDiagram& d) {
  PersistenceDiagram out;
  for (const auto& p : d) {
    if (!p.is_essential()) out.add(p);
  }
  return out;
}

double pair_cost(const PersistencePoint& a, const PersistencePoint& b) {
  return std::max(abs_diff(a.birth, b.birth), abs_diff(a.death, b.death));
}

double unmatched_cost(const PersistencePoint& p) {
  if (p.is_essential()) return kInf;
  return (p.death - p.birth) / 2.0;
}

double matching_cost(const PersistenceDiagram& a, const PersistenceDiagram& b, const Matching& m) {
  std::vector<bool> used_a(a.size(), false);
  std::vector<bool> used_b(b.size(), false);
  double cost = 0.0;
  for (const auto& [i, j] : m.pairs) {
    if (i >= a.size() || j >= b.size()) {
      fail(ErrorKind::ContractViolation, "matching index out of range");
    }
    if (used_a[i] || used_b[j]) {
      fail(ErrorKind::ContractViolation, "matching uses a point more than once");
    }
    used_a[i] = used_b[j] = true;
    cost = std::max(cost, pair_cost(a[i], b[j]));
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!used_a[i]) cost = std::max(cost, unmatched_cost(a[i]));
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (!used_b[j]) cost = std::max(cost, unmatched_cost(b[j]));
  }
  return cost;
}

double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim) {
  std::vector<PersistencePoint> fa, fb;
  std::vector<double> ea, eb;
  for (const auto& p : a) {
    if (p.dim != dim) continue;
    if (p.is_essential()) {
      ea.push_back(p.birth);
    } else {
      fa.push_back(p);
    }
  }
  for (const auto& p : b) {
    if (p.dim != dim) continue;
    if (p.is_essential()) {
      eb.push_back(p.birth);
    } else {
      fb.push_back(p);
    }
  }
  if (ea.size() != eb.size()) return kInf;
  // On the line, sorted order minimises the largest displacement.
  std::ranges::sort(ea);
  std::ranges::sort(eb);
  double essential = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) essential = std::max(essential, std::abs(ea[i] - eb[i]));
  return std::max(essential, finite_bottleneck(fa, fb));
}

double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  return std::max(bottleneck(a, b, 0), bottleneck(a, b, 1));
}

StabilityReport stability_check(const DistanceMatrix& x, const DistanceMatrix& y) {
  if (x.size() != y.size()) {
    fail(ErrorKind::InvalidInput, "stability_check: matrices have different sizes (" +
                                      std::to_string(x.size()) + " vs " +
                                      std::to_string(y.size()) + ")");
  }
  const PersistenceDiagram dx = vr_persistence(x);
  const PersistenceDiagram dy = vr_persistence(y);
  StabilityReport r;
  r.bottleneck[0] = bottleneck(dx, dy, 0);
  r.bottleneck[1] = bottleneck(dx, dy, 1);
  r.bound = x.max_abs_difference(y);
  return r;
}

}  // namespace aerotda

#include "aerotda/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "aerotda/parallel.hpp"
#include "aerotda/persistence.hpp"
#include "aerotda/union_find.hpp"

namespace aerotda {

CloudPoint make_cloud_point(double deviation_km, double delay_min, std::string flight_id) {
  const double magnitude = std::abs(deviation_km);
  // Adding 0.0 turns -0 into +0 for flights with no deviation.
  return {(delay_min > 0.0 ? magnitude : -magnitude) + 0.0, delay_min, std::move(flight_id)};
}

CloudResult build_cloud(std::span<const FlightPair> flights, const CloudOptions& opts) {
  if (flights.empty()) fail(ErrorKind::InvalidInput, "build_cloud: no flights");
  CloudResult out;
  for (const auto& f : flights) {
    try {
      if (f.planned.flight_id != f.actual.flight_id) {
        fail(ErrorKind::InvalidInput, "planned '" + f.planned.flight_id + "' and actual '" +
                                          f.actual.flight_id + "' are different flights");
      }
      const ValidationMode mode = opts.lenient ? ValidationMode::Lenient : ValidationMode::Strict;
      for (auto& w : validate(f.planned, mode)) out.warnings.push_back(std::move(w));
      for (auto& w : validate(f.actual, mode)) out.warnings.push_back(std::move(w));
      const double dev = deviation(f.planned, f.actual, opts.normalization);
      const double delay = delay_minutes(f.planned, f.actual);
      out.cloud.push_back(make_cloud_point(dev, delay, f.planned.flight_id));
    } catch (const Error& e) {
      if (!opts.lenient) throw;
      out.warnings.push_back("skipping flight '" + f.planned.flight_id + "': " + e.what());
    }
  }
  if (out.cloud.empty()) fail(ErrorKind::InvalidInput, "build_cloud: every flight was skipped");
  return out;
}

const char* to_string(EssentialPolicy p) { return p == EssentialPolicy::Cap ? "cap" : "drop"; }

EssentialPolicy essential_policy_from_string(const std::string& s) {
  if (s == "cap") return EssentialPolicy::Cap;
  if (s == "drop") return EssentialPolicy::Drop;
  fail(ErrorKind::InvalidInput, "essential policy must be 'cap' or 'drop', got '" + s + "'");
}

PersistenceDiagram cloud_diagram(const PointCloud& cloud, double delay_weight) {
  if (cloud.empty()) fail(ErrorKind::InvalidInput, "cloud_diagram: empty cloud");
  if (!(delay_weight > 0.0) || !std::isfinite(delay_weight)) {
    fail(ErrorKind::InvalidInput, "delay weight must be positive and finite");
  }
  std::vector<Point2> pts;
  pts.reserve(cloud.size());
  for (const auto& p : cloud) pts.push_back({p.dev_km, delay_weight * p.delay_min});
  return h0_unionfind(euclidean_matrix(pts));
}

double default_cap(std::span<const PersistenceDiagram> diagrams) {
  double m = 0.0;
  for (const auto& d : diagrams) m = std::max(m, d.max_finite_death());
  return m > 0.0 ? kDefaultCapFactor * m : 1.0;
}

SeasonSummary season_summary(std::span<const AirportDay> days, const SeasonOptions& opts) {
  if (days.empty()) fail(ErrorKind::InvalidInput, "season_summary: no days");
  std::vector<const AirportDay*> order;
  for (const auto& d : days) {
    if (d.airport != days.front().airport) {
      fail(ErrorKind::InvalidInput, "season_summary: days from different airports ('" +
                                        days.front().airport + "', '" + d.airport + "')");
    }
    if (d.cloud.empty()) {
      fail(ErrorKind::InvalidInput, "season_summary: empty cloud on " + format_date(d.date));
    }
    order.push_back(&d);
  }
  std::ranges::sort(order, [](const AirportDay* a, const AirportDay* b) { return a->date < b->date; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (order[i]->date == order[i - 1]->date) {
      fail(ErrorKind::InvalidInput, "season_summary: duplicate day " + format_date(order[i]->date));
    }
  }

  const std::size_t n = order.size();
  SeasonSummary s;
  s.airport = days.front().airport;
  s.essentials = opts.essentials;
  s.delay_weight = opts.delay_weight;
  s.dates.resize(n);
  s.daily_diagrams.resize(n);
  s.daily_landscapes.resize(n);
  parallel_for(n, opts.jobs, [&](std::size_t i) {
    s.dates[i] = order[i]->date;
    s.daily_diagrams[i] = cloud_diagram(order[i]->cloud, opts.delay_weight);
  });
  if (opts.essentials == EssentialPolicy::Cap) {
    s.cap = opts.cap ? *opts.cap : default_cap(s.daily_diagrams);
    if (!(s.cap > 0.0) || !std::isfinite(s.cap)) {
      fail(ErrorKind::InvalidInput, "essential cap must be positive and finite");
    }
  }
  parallel_for(n, opts.jobs, [&](std::size_t i) {
    const PersistenceDiagram d = opts.essentials == EssentialPolicy::Cap
                                     ? cap_essentials(s.daily_diagrams[i], s.cap)
                                     : drop_essentials(s.daily_diagrams[i]);
    s.daily_landscapes[i] = from_diagram(d, 0);
  });
  s.average_landscape = average(s.daily_landscapes);
  s.day_distances.resize(n);
  parallel_for(n, opts.jobs, [&](std::size_t i) {
    s.day_distances[i] = sup_distance(s.daily_landscapes[i], s.average_landscape);
  });
  return s;
}

std::vector<std::pair<Date, double>> anomaly_days(const SeasonSummary& s, std::size_t top_n) {
  if (top_n == 0) fail(ErrorKind::InvalidInput, "anomaly_days: top_n must be >= 1");
  std::vector<std::pair<Date, double>> out;
  for (std::size_t i = 0; i < s.dates.size(); ++i) out.emplace_back(s.dates[i], s.day_distances[i]);
  std::ranges::sort(out, [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (out.size() > top_n) out.resize(top_n);
  return out;
}

LabeledDistanceMatrix airport_distance_matrix(std::span<const SeasonSummary> summaries) {
  if (summaries.size() < 2) {
    fail(ErrorKind::InvalidInput, "airport_distance_matrix needs at least two airports");
  }
  LabeledDistanceMatrix out;
  std::set<std::string> seen;
  for (const auto& s : summaries) {
    if (!seen.insert(s.airport).second) {
      fail(ErrorKind::InvalidInput, "duplicate airport code '" + s.airport + "'");
    }
    out.labels.push_back(s.airport);
  }
  out.matrix = DistanceMatrix(summaries.size());
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    for (std::size_t j = i + 1; j < summaries.size(); ++j) {
      out.matrix.set(i, j,
                     sup_distance(summaries[i].average_landscape, summaries[j].average_landscape));
    }
  }
  return out;
}

std::size_t default_isomap_k(std::size_t n) { return n <= 1 ? 1 : std::min<std::size_t>(6, n - 1); }

std::vector<Point2> isomap(const DistanceMatrix& d, std::size_t k_neighbors) {
  const std::size_t n = d.size();
  if (k_neighbors == 0) fail(ErrorKind::InvalidInput, "isomap: k_neighbors must be >= 1");
  if (n == 0) return {};
  if (n == 1) return {Point2{0.0, 0.0}};
  const std::size_t k = std::min(k_neighbors, n - 1);

  constexpr double kInf = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd g = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(n), kInf);
  UnionFind uf(n);
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = 0.0;
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::ranges::sort(idx, [&](std::size_t a, std::size_t b) {
      if (d(i, a) != d(i, b)) return d(i, a) < d(i, b);
      return a < b;
    });
    std::size_t taken = 0;
    for (const std::size_t j : idx) {
      if (j == i) continue;
      if (taken++ == k) break;
      g(i, j) = g(j, i) = d(i, j);
      uf.unite(i, j);
    }
  }
  if (uf.components() > 1) {
    std::map<std::size_t, std::vector<std::size_t>> comps;
    for (std::size_t i = 0; i < n; ++i) comps[uf.find(i)].push_back(i);
    std::string msg = "isomap: neighbourhood graph with k=" + std::to_string(k) + " has " +
                      std::to_string(comps.size()) + " components:";
    for (const auto& [root, members] : comps) {
      msg += " {";
      for (std::size_t m = 0; m < members.size(); ++m) {
        msg += (m ? "," : "") + std::to_string(members[m]);
      }
      msg += "}";
    }
    fail(ErrorKind::InvalidInput, msg + "; increase k");
  }
  // Floyd-Warshall geodesics.
  for (Eigen::Index m = 0; m < g.rows(); ++m) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      for (Eigen::Index j = 0; j < g.rows(); ++j) {
        g(i, j) = std::min(g(i, j), g(i, m) + g(m, j));
      }
    }
  }
  const auto nn = static_cast<Eigen::Index>(n);
  const Eigen::MatrixXd j_mat =
      Eigen::MatrixXd::Identity(nn, nn) - Eigen::MatrixXd::Constant(nn, nn, 1.0 / static_cast<double>(n));
  Eigen::MatrixXd b = -0.5 * j_mat * g.array().square().matrix() * j_mat;
  b = 0.5 * (b + b.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b);
  if (eig.info() != Eigen::Success) fail(ErrorKind::Numeric, "isomap: eigensolver failed");
  const Eigen::VectorXd& vals = eig.eigenvalues();  // ascending
  const double top = vals(nn - 1);
  if (!(top > 0.0)) {
    fail(ErrorKind::Numeric, "isomap: top eigenvalue " + std::to_string(top) +
                                 " is not positive (degenerate geometry)");
  }
  Eigen::MatrixXd coords = Eigen::MatrixXd::Zero(nn, 2);
  for (Eigen::Index axis = 0; axis < 2 && axis < nn; ++axis) {
    const double lambda = vals(nn - 1 - axis);
    if (lambda <= 0.0) continue;
    coords.col(axis) = eig.eigenvectors().col(nn - 1 - axis) * std::sqrt(lambda);
  }
  for (Eigen::Index axis = 0; axis < 2; ++axis) {
    coords.col(axis).array() -= coords.col(axis).mean();
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < nn; ++i) {
      if (std::abs(coords(i, axis)) > std::abs(coords(arg, axis))) arg = i;
    }
    if (coords(arg, axis) < 0.0) coords.col(axis) *= -1.0;
  }
  std::vector<Point2> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    out[i] = {coords(r, 0) + 0.0, coords(r, 1) + 0.0};
  }
  return out;
}

}  // namespace aerotda

#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aerotda/date.hpp"
#include "aerotda/diagram.hpp"
#include "aerotda/landscape.hpp"
#include "aerotda/metricspace.hpp"
#include "aerotda/trajectory.hpp"

namespace aerotda {

/// A flight as a point of the airport-day plane: signed deviation (km) and
/// signed arrival delay (minutes). Late flights sit in the first quadrant,
/// on-time or early ones in the third.
struct CloudPoint {
  double dev_km = 0.0;
  double delay_min = 0.0;
  std::string flight_id;

  bool operator==(const CloudPoint&) const = default;
};

using PointCloud = std::vector<CloudPoint>;

/// Applies the sign rule: the deviation keeps its sign iff delay > 0.
CloudPoint make_cloud_point(double deviation_km, double delay_min, std::string flight_id = {});

struct FlightPair {
  Trajectory planned;
  Trajectory actual;
};

struct CloudOptions {
  Normalization normalization = Normalization::Sum;
  bool lenient = false;  // skip failing flights with a warning instead of throwing
};

struct CloudResult {
  PointCloud cloud;
  std::vector<std::string> warnings;
};

CloudResult build_cloud(std::span<const FlightPair> flights, const CloudOptions& opts = {});

struct AirportDay {
  std::string airport;
  Date date;
  PointCloud cloud;
};

enum class EssentialPolicy { Cap, Drop };

const char* to_string(EssentialPolicy p);
EssentialPolicy essential_policy_from_string(const std::string& s);

/// Multiplier on the largest finite death that sets the default cap.
inline constexpr double kDefaultCapFactor = 1.05;

struct SeasonOptions {
  EssentialPolicy essentials = EssentialPolicy::Cap;
  std::optional<double> cap;  // defaults to kDefaultCapFactor * max finite death
  double delay_weight = 1.0;  // scale of the delay axis in the cloud metric
  std::size_t jobs = 1;
};

struct SeasonSummary {
  std::string airport;
  std::vector<Date> dates;                          // ascending
  std::vector<PersistenceDiagram> daily_diagrams;   // uncapped H0
  std::vector<Landscape> daily_landscapes;
  Landscape average_landscape;
  std::vector<double> day_distances;                // sup distance to the average
  EssentialPolicy essentials = EssentialPolicy::Cap;
  double cap = 0.0;  // 0 when essentials are dropped
  double delay_weight = 1.0;
};

/// H0 diagram of a cloud under the Euclidean metric on (dev, weight * delay).
PersistenceDiagram cloud_diagram(const PointCloud& cloud, double delay_weight = 1.0);

/// kDefaultCapFactor times the largest finite death over all diagrams, or 1
/// when no diagram has a finite point.
double default_cap(std::span<const PersistenceDiagram> diagrams);

/// Daily H0 diagrams, their landscapes, the season average and each day's
/// distance to it. Days are processed in date order.
SeasonSummary season_summary(std::span<const AirportDay> days, const SeasonOptions& opts = {});

/// Days by descending distance to the average, ties by ascending date.
std::vector<std::pair<Date, double>> anomaly_days(const SeasonSummary& s, std::size_t top_n);

struct LabeledDistanceMatrix {
  std::vector<std::string> labels;
  DistanceMatrix matrix;
};

/// Sup distances between the airports' average landscapes.
LabeledDistanceMatrix airport_distance_matrix(std::span<const SeasonSummary> summaries);

/// Default neighbourhood size for isomap: min(6, n - 1).
std::size_t default_isomap_k(std::size_t n);

/// Isomap into the plane: symmetrised k-NN graph, shortest-path geodesics,
/// then classical MDS on the top two eigenpairs. Output is centred and each
/// axis is oriented so its largest-magnitude coordinate is positive.
std::vector<Point2> isomap(const DistanceMatrix& d, std::size_t k_neighbors);

}  // namespace aerotda

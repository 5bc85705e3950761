#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "aerotda/analysis.hpp"
#include "aerotda/date.hpp"
#include "aerotda/diagram.hpp"
#include "aerotda/landscape.hpp"
#include "aerotda/trajectory.hpp"

namespace aerotda {

/// Header of the trajectory CSV schema.
inline constexpr const char* kTrajectoryHeader = "flight_id,airport,date,role,t,lat,lon,alt_km";
inline constexpr const char* kDiagramHeader = "dim,birth,death";
inline constexpr const char* kCloudHeader = "airport,date,flight_id,dev_km,delay_min";
inline constexpr const char* kEmbeddingHeader = "icao,x,y";

/// Nine significant digits; "inf"/"-inf" for infinities; never "-0".
std::string format_number(double v);
/// Inverse of format_number; throws Parse.
double parse_number(const std::string& s);

/// One trajectory together with the airport and date it belongs to.
struct FlightRecord {
  std::string airport;
  Date date;
  Trajectory trajectory;
};

struct ParseResult {
  std::vector<FlightRecord> records;  // first-appearance order
  std::vector<std::string> warnings;
};

/// Reads the trajectory CSV. Errors cite `path:line`. Under `lenient`,
/// malformed rows are skipped with a warning; timestamp regressions always
/// fail. Fractional timestamps are truncated with a warning.
ParseResult parse_trajectories(std::istream& in, const std::string& source, bool lenient = false);
ParseResult parse_trajectories(const std::filesystem::path& path, bool lenient = false);

void write_trajectories(std::ostream& out, const std::vector<FlightRecord>& records);

/// A flight with both of its trajectories.
struct FlightLeg {
  std::string airport;
  Date date;
  FlightPair pair;
};

/// Joins planned and actual trajectories by flight id. A flight missing a role
/// is a Validation error, or a warning under `lenient`.
std::vector<FlightLeg> pair_flights(const std::vector<FlightRecord>& records, bool lenient,
                                    std::vector<std::string>& warnings);

void write_diagram_csv(std::ostream& out, const PersistenceDiagram& d);
PersistenceDiagram read_diagram_csv(std::istream& in, const std::string& source);

nlohmann::json landscape_to_json(const Landscape& l);
Landscape landscape_from_json(const nlohmann::json& j);

void write_distmat_csv(std::ostream& out, const LabeledDistanceMatrix& m);
LabeledDistanceMatrix read_distmat_csv(std::istream& in, const std::string& source);

void write_embedding_csv(std::ostream& out, const std::vector<std::string>& labels,
                         const std::vector<Point2>& coords);

/// Numeric CSV with a header row. When `columns` is non-empty only those
/// columns are read, in that order; otherwise every column must be numeric.
std::vector<std::vector<double>> read_points_csv(std::istream& in, const std::string& source,
                                                 const std::vector<std::string>& columns = {});

void write_cloud_csv(std::ostream& out, const std::vector<AirportDay>& days);

/// Splits one CSV line on commas (no quoting in these schemas).
std::vector<std::string> split_csv(const std::string& line);

/// Opens a file for reading or writing, throwing Io with the path on failure.
std::ifstream open_input(const std::filesystem::path& path);
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace aerotda

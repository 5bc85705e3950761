#include "aerotda/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace aerotda {

namespace {

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::string where(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line) + ": ";
}

void expect_header(std::istream& in, const std::string& source, const std::string& header) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::Parse, where(source, 1) + "missing header");
  line = strip_cr(line);
  if (!line.empty() && static_cast<unsigned char>(line[0]) == 0xEF) line.erase(0, 3);  // BOM
  if (line != header) {
    fail(ErrorKind::Parse, where(source, 1) + "expected header '" + header + "', got '" + line + "'");
  }
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

double parse_number(const std::string& s) {
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc{} || ptr != last || std::isnan(v)) {
    fail(ErrorKind::Parse, "not a number: '" + s + "'");
  }
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open input file '" + path.string() + "'");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot open output file '" + path.string() + "' for writing");
  return out;
}

ParseResult parse_trajectories(std::istream& in, const std::string& source, bool lenient) {
  expect_header(in, source, kTrajectoryHeader);
  ParseResult result;
  std::map<std::pair<std::string, Role>, std::size_t> slot;
  std::map<std::pair<std::string, Role>, std::size_t> last_line;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    std::string flight_id, airport;
    Date date;
    Role role{};
    GeoSample s;
    try {
      if (fields.size() != 8) {
        fail(ErrorKind::Parse, "expected 8 fields, got " + std::to_string(fields.size()));
      }
      flight_id = fields[0];
      airport = fields[1];
      if (flight_id.empty()) fail(ErrorKind::Parse, "empty flight_id");
      if (airport.empty()) fail(ErrorKind::Parse, "empty airport");
      date = parse_date(fields[2]);
      role = role_from_string(fields[3]);
      const double t = parse_number(fields[4]);
      if (!std::isfinite(t)) fail(ErrorKind::Parse, "timestamp is not finite");
      s.t = static_cast<std::int64_t>(std::trunc(t));
      if (static_cast<double>(s.t) != t) {
        result.warnings.push_back(where(source, lineno) + "sub-second timestamp " + fields[4] +
                                  " truncated to " + std::to_string(s.t));
      }
      s.lat = parse_number(fields[5]);
      s.lon = parse_number(fields[6]);
      s.alt_km = parse_number(fields[7]);
      check_sample(s);
    } catch (const Error& e) {
      if (!lenient) fail(ErrorKind::Parse, where(source, lineno) + e.what());
      result.warnings.push_back(where(source, lineno) + "skipped: " + e.what());
      continue;
    }
    const auto key = std::make_pair(flight_id, role);
    auto it = slot.find(key);
    if (it == slot.end()) {
      it = slot.emplace(key, result.records.size()).first;
      result.records.push_back({airport, date, Trajectory{flight_id, role, {}}});
    }
    FlightRecord& rec = result.records[it->second];
    if (rec.airport != airport || rec.date != date) {
      const std::string msg = "flight '" + flight_id + "' changes airport or date mid-trajectory";
      if (!lenient) fail(ErrorKind::Parse, where(source, lineno) + msg);
      result.warnings.push_back(where(source, lineno) + "skipped: " + msg);
      continue;
    }
    auto& samples = rec.trajectory.samples;
    if (!samples.empty() && s.t <= samples.back().t) {
      fail(ErrorKind::Validation, where(source, lineno) + "timestamp " + std::to_string(s.t) +
                                      " does not increase for flight '" + flight_id + "' (" +
                                      to_string(role) + "), previous sample on line " +
                                      std::to_string(last_line[key]));
    }
    samples.push_back(s);
    last_line[key] = lineno;
  }
  return result;
}

ParseResult parse_trajectories(const std::filesystem::path& path, bool lenient) {
  std::ifstream in = open_input(path);
  return parse_trajectories(in, path.string(), lenient);
}

void write_trajectories(std::ostream& out, const std::vector<FlightRecord>& records) {
  out << kTrajectoryHeader << '\n';
  for (const auto& r : records) {
    for (const auto& s : r.trajectory.samples) {
      out << r.trajectory.flight_id << ',' << r.airport << ',' << format_date(r.date) << ','
          << to_string(r.trajectory.role) << ',' << s.t << ',' << format_number(s.lat) << ','
          << format_number(s.lon) << ',' << format_number(s.alt_km) << '\n';
    }
  }
}

std::vector<FlightLeg> pair_flights(const std::vector<FlightRecord>& records, bool lenient,
                                    std::vector<std::string>& warnings) {
  std::vector<std::string> order;
  std::map<std::string, std::pair<const FlightRecord*, const FlightRecord*>> by_id;
  for (const auto& r : records) {
    auto [it, inserted] = by_id.try_emplace(r.trajectory.flight_id, nullptr, nullptr);
    if (inserted) order.push_back(r.trajectory.flight_id);
    (r.trajectory.role == Role::Planned ? it->second.first : it->second.second) = &r;
  }
  std::vector<FlightLeg> legs;
  for (const auto& id : order) {
    const auto [planned, actual] = by_id.at(id);
    if (planned == nullptr || actual == nullptr) {
      const std::string msg = "flight '" + id + "' lacks its " +
                              (planned == nullptr ? "planned" : "actual") + " trajectory";
      if (!lenient) fail(ErrorKind::Validation, msg);
      warnings.push_back(msg + "; skipped");
      continue;
    }
    if (planned->airport != actual->airport) {
      const std::string msg = "flight '" + id + "' has planned and actual records for different airports";
      if (!lenient) fail(ErrorKind::Validation, msg);
      warnings.push_back(msg + "; skipped");
      continue;
    }
    legs.push_back({planned->airport, planned->date, {planned->trajectory, actual->trajectory}});
  }
  return legs;
}

void write_diagram_csv(std::ostream& out, const PersistenceDiagram& d) {
  out << kDiagramHeader << '\n';
  for (const auto& p : d.sorted()) {
    out << p.dim << ',' << format_number(p.birth) << ',' << format_number(p.death) << '\n';
  }
}

PersistenceDiagram read_diagram_csv(std::istream& in, const std::string& source) {
  expect_header(in, source, kDiagramHeader);
  PersistenceDiagram d;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) continue;
    try {
      const auto f = split_csv(line);
      if (f.size() != 3) fail(ErrorKind::Parse, "expected 3 fields");
      int dim = 0;
      const auto [ptr, ec] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), dim);
      if (ec != std::errc{} || ptr != f[0].data() + f[0].size()) {
        fail(ErrorKind::Parse, "bad dimension '" + f[0] + "'");
      }
      d.add({parse_number(f[1]), parse_number(f[2]), dim});
    } catch (const Error& e) {
      fail(ErrorKind::Parse, where(source, lineno) + e.what());
    }
  }
  return d;
}

nlohmann::json landscape_to_json(const Landscape& l) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& lvl : l.levels) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& c : lvl) {
      // Round through the nine-digit text form so files are stable.
      pts.push_back({parse_number(format_number(c.t)), parse_number(format_number(c.value))});
    }
    levels.push_back(std::move(pts));
  }
  return {{"is_average", l.is_average}, {"levels", std::move(levels)}};
}

Landscape landscape_from_json(const nlohmann::json& j) {
  try {
    Landscape l;
    l.is_average = j.at("is_average").get<bool>();
    for (const auto& lvl : j.at("levels")) {
      LandscapeLevel level;
      for (const auto& pt : lvl) {
        if (pt.size() != 2) fail(ErrorKind::Parse, "landscape critical point must be [t, v]");
        level.push_back({pt[0].get<double>(), pt[1].get<double>()});
      }
      for (std::size_t i = 1; i < level.size(); ++i) {
        if (!(level[i].t > level[i - 1].t)) {
          fail(ErrorKind::Parse, "landscape critical points must be sorted by t");
        }
      }
      l.levels.push_back(std::move(level));
    }
    return l;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, std::string("landscape json: ") + e.what());
  }
}

void write_distmat_csv(std::ostream& out, const LabeledDistanceMatrix& m) {
  out << "icao";
  for (const auto& l : m.labels) out << ',' << l;
  out << '\n';
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    out << m.labels[i];
    for (std::size_t j = 0; j < m.labels.size(); ++j) out << ',' << format_number(m.matrix(i, j));
    out << '\n';
  }
}

LabeledDistanceMatrix read_distmat_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::Parse, where(source, 1) + "missing header");
  auto header = split_csv(strip_cr(line));
  if (header.empty() || header[0] != "icao") {
    fail(ErrorKind::Parse, where(source, 1) + "header must start with 'icao'");
  }
  LabeledDistanceMatrix m;
  m.labels.assign(header.begin() + 1, header.end());
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != m.labels.size() + 1) {
      fail(ErrorKind::Parse, where(source, lineno) + "wrong number of fields");
    }
    if (rows.size() >= m.labels.size() || f[0] != m.labels[rows.size()]) {
      fail(ErrorKind::Parse, where(source, lineno) + "row label '" + f[0] +
                                 "' does not match the header order");
    }
    std::vector<double> row;
    try {
      for (std::size_t j = 1; j < f.size(); ++j) row.push_back(parse_number(f[j]));
    } catch (const Error& e) {
      fail(ErrorKind::Parse, where(source, lineno) + e.what());
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() != m.labels.size()) {
    fail(ErrorKind::Parse, source + ": expected " + std::to_string(m.labels.size()) + " rows");
  }
  m.matrix = DistanceMatrix::from_rows(rows);
  return m;
}

void write_embedding_csv(std::ostream& out, const std::vector<std::string>& labels,
                         const std::vector<Point2>& coords) {
  out << kEmbeddingHeader << '\n';
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << labels[i] << ',' << format_number(coords[i].x) << ',' << format_number(coords[i].y) << '\n';
  }
}

std::vector<std::vector<double>> read_points_csv(std::istream& in, const std::string& source,
                                                 const std::vector<std::string>& columns) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::Parse, where(source, 1) + "missing header");
  const auto header = split_csv(strip_cr(line));
  std::vector<std::size_t> pick;
  if (columns.empty()) {
    for (std::size_t i = 0; i < header.size(); ++i) pick.push_back(i);
  } else {
    for (const auto& c : columns) {
      auto it = std::find(header.begin(), header.end(), c);
      if (it == header.end()) fail(ErrorKind::Parse, where(source, 1) + "no column named '" + c + "'");
      pick.push_back(static_cast<std::size_t>(it - header.begin()));
    }
  }
  std::vector<std::vector<double>> pts;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != header.size()) {
      fail(ErrorKind::Parse, where(source, lineno) + "expected " + std::to_string(header.size()) +
                                 " fields, got " + std::to_string(f.size()));
    }
    std::vector<double> p;
    try {
      for (const std::size_t i : pick) {
        const double v = parse_number(f[i]);
        if (!std::isfinite(v)) fail(ErrorKind::Parse, "coordinate is not finite");
        p.push_back(v);
      }
    } catch (const Error& e) {
      fail(ErrorKind::Parse, where(source, lineno) + e.what());
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

void write_cloud_csv(std::ostream& out, const std::vector<AirportDay>& days) {
  out << kCloudHeader << '\n';
  for (const auto& d : days) {
    for (const auto& p : d.cloud) {
      out << d.airport << ',' << format_date(d.date) << ',' << p.flight_id << ','
          << format_number(p.dev_km) << ',' << format_number(p.delay_min) << '\n';
    }
  }
}

}  // namespace aerotda

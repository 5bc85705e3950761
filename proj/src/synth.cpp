#include "aerotda/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace aerotda {

std::uint64_t SplitRng::next() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitRng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<SynthAirport> default_synth_airports(std::size_t count) {
  static const std::vector<SynthAirport> known{
      {"LEXJ", 43.4271, -3.8200, 1.0}, {"LEZG", 41.6662, -1.0416, 2.0},
      {"LEMD", 40.4719, -3.5626, 4.0}, {"LEBL", 41.2971, 2.0785, 3.0},
      {"GCLP", 27.9319, -15.3866, 1.5}, {"LEBB", 43.3011, -2.9106, 1.2},
  };
  std::vector<SynthAirport> out;
  for (std::size_t i = 0; i < count; ++i) {
    SynthAirport a = known[i % known.size()];
    if (i >= known.size()) a.icao = "ZZ" + std::to_string(10 + i);
    out.push_back(a);
  }
  return out;
}

namespace {

constexpr double kKmPerDegLat = 111.195;
constexpr double kCruiseKm = 11.0;
constexpr double kSpeedKmPerS = 0.22;

double altitude_profile(double s) {
  return kCruiseKm * std::clamp(std::min(s / 0.2, (1.0 - s) / 0.2), 0.0, 1.0);
}

Trajectory fly(const std::string& id, Role role, double lat0, double lon0, double lat1,
               double lon1, std::int64_t start, std::int64_t end, std::int64_t step,
               double lateral_km) {
  Trajectory t{id, role, {}};
  const double span = static_cast<double>(end - start);
  for (std::int64_t ts = start;; ts += step) {
    if (ts > end) ts = end;
    const double s = static_cast<double>(ts - start) / span;
    const double bump = lateral_km * std::sin(std::numbers::pi * s) / kKmPerDegLat;
    GeoSample g;
    g.t = ts;
    g.lat = lat0 + s * (lat1 - lat0) + bump;
    g.lon = lon0 + s * (lon1 - lon0);
    g.alt_km = (ts == start || ts == end) ? 0.0 : altitude_profile(s);
    t.samples.push_back(g);
    if (ts == end) break;
  }
  return t;
}

}  // namespace

std::vector<FlightRecord> synthesize(const SynthConfig& cfg) {
  const std::vector<SynthAirport> airports =
      cfg.airports.empty() ? default_synth_airports(3) : cfg.airports;
  SplitRng rng(cfg.seed);
  std::vector<FlightRecord> out;
  for (const auto& ap : airports) {
    for (std::size_t day = 0; day < cfg.days; ++day) {
      const Date date{std::chrono::sys_days{cfg.first_day} + std::chrono::days{day}};
      const std::int64_t base = midnight(date);
      for (std::size_t f = 0; f < cfg.flights_per_day; ++f) {
        const std::string id = ap.icao + "-" + format_date(date) + "-" + std::to_string(f);
        const double bearing = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double dist_km = rng.uniform(250.0, 700.0);
        const double lat0 = ap.lat + dist_km * std::cos(bearing) / kKmPerDegLat;
        const double lon0 =
            ap.lon + dist_km * std::sin(bearing) /
                         (kKmPerDegLat * std::cos(ap.lat * std::numbers::pi / 180.0));
        const auto duration = static_cast<std::int64_t>(dist_km / kSpeedKmPerS);
        // Arrivals land between 06:00 and 22:00 so no flight spans midnight.
        const std::int64_t planned_end =
            base + 6 * 3600 + static_cast<std::int64_t>(f) * (16 * 3600) /
                                  static_cast<std::int64_t>(std::max<std::size_t>(1, cfg.flights_per_day));
        const std::int64_t planned_start = planned_end - duration;

        const bool outlier = cfg.outlier_day && *cfg.outlier_day == day && f == 0;
        const double boost = outlier ? cfg.outlier_factor : 1.0;
        const double lateral = ap.scale * cfg.typical_deviation_km * boost * (0.5 + rng.uniform());
        const double delay_min = ap.scale * cfg.typical_delay_min * boost *
                                 (outlier ? 1.0 + rng.uniform() : rng.normal());
        const auto delay_s = static_cast<std::int64_t>(std::llround(delay_min * 60.0));
        const std::int64_t actual_start = planned_start + std::max<std::int64_t>(0, delay_s / 2);
        std::int64_t actual_end = planned_end + delay_s;
        if (actual_end <= actual_start + 600) actual_end = actual_start + 600;

        out.push_back({ap.icao, date,
                       fly(id, Role::Planned, lat0, lon0, ap.lat, ap.lon, planned_start,
                           planned_end, 300, 0.0)});
        out.push_back({ap.icao, date,
                       fly(id, Role::Actual, lat0, lon0, ap.lat, ap.lon, actual_start, actual_end,
                           120, lateral)});
      }
    }
  }
  return out;
}

}  // namespace aerotda

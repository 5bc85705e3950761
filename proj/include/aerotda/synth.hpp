#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aerotda/date.hpp"
#include "aerotda/io.hpp"

namespace aerotda {

struct SynthAirport {
  std::string icao;
  double lat = 0.0;
  double lon = 0.0;
  double scale = 1.0;  // multiplies lateral deviation and delay spread
};

struct SynthConfig {
  std::vector<SynthAirport> airports;
  Date first_day{std::chrono::year{2018}, std::chrono::month{3}, std::chrono::day{23}};
  std::size_t days = 10;
  std::size_t flights_per_day = 12;
  std::uint64_t seed = 20180323;
  /// Day index (0-based) that receives one extreme flight per airport.
  std::optional<std::size_t> outlier_day;
  double outlier_factor = 10.0;
  double typical_deviation_km = 8.0;   // lateral offset amplitude
  double typical_delay_min = 12.0;     // delay standard deviation
};

/// Airports used when none are given: Santander, Zaragoza, Madrid scaled 1/2/4.
std::vector<SynthAirport> default_synth_airports(std::size_t count);

/// Arriving flights with planned and actual trajectories, deterministic in
/// the seed on every platform.
std::vector<FlightRecord> synthesize(const SynthConfig& cfg);

/// Portable 64-bit generator with uniform and normal draws.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();

 private:
  std::uint64_t state_;
};

}  // namespace aerotda

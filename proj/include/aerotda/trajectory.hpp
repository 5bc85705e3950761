#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aerotda/metricspace.hpp"

namespace aerotda {

enum class Role { Planned, Actual };

const char* to_string(Role role);
Role role_from_string(const std::string& s);

/// Seconds per unit of the delay coordinate (minutes).
inline constexpr double kSecondsPerDelayUnit = 60.0;

/// Tolerance on the zero-altitude endpoint rule, kilometres.
inline constexpr double kEndpointAltitudeTolKm = 1e-6;

struct Trajectory {
  std::string flight_id;
  Role role = Role::Planned;
  std::vector<GeoSample> samples;

  std::int64_t start() const { return samples.front().t; }
  std::int64_t end() const { return samples.back().t; }
};

enum class ValidationMode {
  Strict,
  // Endpoint-altitude violations become warnings; structural problems still throw.
  Lenient,
};

/// Checks the trajectory invariants: at least two samples, strictly increasing
/// timestamps, in-range coordinates, zero altitude at both ends. Returns the
/// warnings that Lenient mode downgraded.
std::vector<std::string> validate(const Trajectory& traj,
                                  ValidationMode mode = ValidationMode::Strict);

using Timeline = std::vector<std::int64_t>;

/// Sorted, deduplicated union of both trajectories' timestamps.
Timeline merge_timelines(const Trajectory& planned, const Trajectory& actual);

/// Places the trajectory on `timeline`. Interior gaps are filled by linear
/// interpolation in (lat, lon, alt), with longitude unwrapped across the
/// antimeridian; times outside the native span clamp to the nearest endpoint.
/// The timeline must be sorted and contain every native timestamp.
std::vector<GeoSample> resample(const Trajectory& traj, const Timeline& timeline);

struct AlignedPair {
  Timeline timeline;
  std::vector<GeoSample> planned;
  std::vector<GeoSample> actual;
};

AlignedPair align(const Trajectory& planned, const Trajectory& actual);

enum class Normalization {
  Sum,   // plain sum over the merged timeline
  Mean,  // sum divided by the timeline length
};

/// Deviation in kilometres between a planned and an actual trajectory: the sum
/// of dist_t over the merged timeline (or its mean).
double deviation(const Trajectory& planned, const Trajectory& actual,
                 Normalization norm = Normalization::Sum);

/// Signed arrival delay in minutes; positive when the actual flight landed late.
double delay_minutes(const Trajectory& planned, const Trajectory& actual);

}  // namespace aerotda

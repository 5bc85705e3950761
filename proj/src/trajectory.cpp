#include "aerotda/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

namespace aerotda {

const char* to_string(Role role) { return role == Role::Planned ? "planned" : "actual"; }

Role role_from_string(const std::string& s) {
  if (s == "planned") return Role::Planned;
  if (s == "actual") return Role::Actual;
  fail(ErrorKind::Parse, "role must be 'planned' or 'actual', got '" + s + "'");
}

std::vector<std::string> validate(const Trajectory& traj, ValidationMode mode) {
  std::vector<std::string> warnings;
  const std::string who = "trajectory '" + traj.flight_id + "' (" + to_string(traj.role) + ")";
  if (traj.samples.size() < 2) {
    fail(ErrorKind::Validation, who + " has fewer than 2 samples");
  }
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    try {
      check_sample(traj.samples[i]);
    } catch (const Error& e) {
      fail(ErrorKind::Validation, who + " sample " + std::to_string(i) + ": " + e.what());
    }
    if (i > 0 && traj.samples[i].t <= traj.samples[i - 1].t) {
      fail(ErrorKind::Validation, who + " timestamps not strictly increasing at sample " +
                                      std::to_string(i));
    }
  }
  for (const GeoSample* s : {&traj.samples.front(), &traj.samples.back()}) {
    if (std::abs(s->alt_km) > kEndpointAltitudeTolKm) {
      const std::string msg = who + " endpoint at t=" + std::to_string(s->t) +
                              " has non-zero altitude " + std::to_string(s->alt_km) + " km";
      if (mode == ValidationMode::Strict) fail(ErrorKind::Validation, msg);
      warnings.push_back(msg);
    }
  }
  return warnings;
}

Timeline merge_timelines(const Trajectory& planned, const Trajectory& actual) {
  if (planned.samples.empty() || actual.samples.empty()) {
    fail(ErrorKind::InvalidInput, "merge_timelines: empty trajectory");
  }
  Timeline out;
  out.reserve(planned.samples.size() + actual.samples.size());
  std::vector<std::int64_t> a, b;
  std::ranges::transform(planned.samples, std::back_inserter(a), &GeoSample::t);
  std::ranges::transform(actual.samples, std::back_inserter(b), &GeoSample::t);
  std::ranges::sort(a);
  std::ranges::sort(b);
  std::ranges::set_union(a, b, std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

double wrap_longitude(double lon) {
  while (lon <= -180.0) lon += 360.0;
  while (lon > 180.0) lon -= 360.0;
  return lon;
}

GeoSample interpolate(const GeoSample& lo, const GeoSample& hi, std::int64_t t) {
  const double f = static_cast<double>(t - lo.t) / static_cast<double>(hi.t - lo.t);
  double dlon = hi.lon - lo.lon;
  if (dlon > 180.0) dlon -= 360.0;
  if (dlon < -180.0) dlon += 360.0;
  GeoSample s;
  s.t = t;
  s.lat = lo.lat + f * (hi.lat - lo.lat);
  s.lon = wrap_longitude(lo.lon + f * dlon);
  s.alt_km = lo.alt_km + f * (hi.alt_km - lo.alt_km);
  return s;
}

}  // namespace

std::vector<GeoSample> resample(const Trajectory& traj, const Timeline& timeline) {
  const auto& native = traj.samples;
  if (native.empty()) fail(ErrorKind::InvalidInput, "resample: empty trajectory");
  if (!std::ranges::is_sorted(timeline)) {
    fail(ErrorKind::ContractViolation, "resample: timeline is not sorted");
  }
  std::vector<GeoSample> out;
  out.reserve(timeline.size());
  std::size_t next = 0;  // first native sample with t >= current timeline entry
  for (const std::int64_t t : timeline) {
    if (next < native.size() && native[next].t < t) {
      fail(ErrorKind::ContractViolation, "resample: timeline is missing native timestamp " +
                                             std::to_string(native[next].t) + " of '" +
                                             traj.flight_id + "'");
    }
    if (next < native.size() && native[next].t == t) {
      out.push_back(native[next]);
      ++next;
    } else if (next == 0) {
      GeoSample s = native.front();
      s.t = t;
      out.push_back(s);
    } else if (next == native.size()) {
      GeoSample s = native.back();
      s.t = t;
      out.push_back(s);
    } else {
      out.push_back(interpolate(native[next - 1], native[next], t));
    }
  }
  if (next != native.size()) {
    fail(ErrorKind::ContractViolation, "resample: timeline is missing native timestamp " +
                                           std::to_string(native[next].t) + " of '" +
                                           traj.flight_id + "'");
  }
  return out;
}

AlignedPair align(const Trajectory& planned, const Trajectory& actual) {
  AlignedPair pair;
  pair.timeline = merge_timelines(planned, actual);
  pair.planned = resample(planned, pair.timeline);
  pair.actual = resample(actual, pair.timeline);
  return pair;
}

double deviation(const Trajectory& planned, const Trajectory& actual, Normalization norm) {
  const AlignedPair pair = align(planned, actual);
  double sum = 0.0;
  for (std::size_t k = 0; k < pair.timeline.size(); ++k) {
    sum += dist_t(pair.planned[k], pair.actual[k]);
  }
  if (norm == Normalization::Mean) sum /= static_cast<double>(pair.timeline.size());
  return sum;
}

double delay_minutes(const Trajectory& planned, const Trajectory& actual) {
  if (planned.samples.empty() || actual.samples.empty()) {
    fail(ErrorKind::InvalidInput, "delay: empty trajectory");
  }
  return static_cast<double>(actual.end() - planned.end()) / kSecondsPerDelayUnit;
}

}  // namespace aerotda

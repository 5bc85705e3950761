#include <random>
#include <sstream>

#include "aerotda/io.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aerotda;

namespace {

// Values that survive the nine-digit text format unchanged.
double representable(double v) { return parse_number(format_number(v)); }

std::vector<FlightRecord> random_records(std::mt19937_64& rng, int flights) {
  std::uniform_real_distribution<double> lat(-89.0, 89.0), lon(-179.0, 180.0), alt(0.0, 12.0);
  std::vector<FlightRecord> out;
  for (int f = 0; f < flights; ++f) {
    for (Role role : {Role::Planned, Role::Actual}) {
      Trajectory t{"IB" + std::to_string(1000 + f), role, {}};
      std::int64_t ts = 1521763200 + f * 600;
      for (int i = 0; i < 6; ++i) {
        ts += 30 + static_cast<std::int64_t>(rng() % 300);
        t.samples.push_back({ts, representable(lat(rng)), representable(lon(rng)),
                             (i == 0 || i == 5) ? 0.0 : representable(alt(rng))});
      }
      out.push_back({f % 2 ? "LEMD" : "LEBL", parse_date("2018-03-23"), std::move(t)});
    }
  }
  return out;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(std::sqrt(2.0)) == "1.41421356");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(kInfinity) == "inf");
  CHECK(format_number(-kInfinity) == "-inf");
  CHECK(format_number(1e-12) == "1e-12");
  CHECK(parse_number("inf") == kInfinity);
  CHECK(parse_number("-2.5") == -2.5);
  CHECK(parse_number("1e3") == 1000.0);
  CHECK_THROWS_AS(parse_number("1.5x"), Error);
  CHECK_THROWS_AS(parse_number(""), Error);
}

TEST_CASE("minimal trajectory file") {
  std::istringstream in(std::string(kTrajectoryHeader) +
                        "\nF1,LEMD,2018-03-23,planned,100,40.4,-3.5,0\n"
                        "F1,LEMD,2018-03-23,planned,200,40.5,-3.6,0\n");
  const auto r = parse_trajectories(in, "mem.csv");
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].airport == "LEMD");
  CHECK(r.records[0].trajectory.role == Role::Planned);
  CHECK(r.records[0].trajectory.samples.size() == 2);
  CHECK(r.warnings.empty());
}

TEST_CASE("timestamp regression cites its line") {
  std::ostringstream text;
  text << kTrajectoryHeader << '\n';
  for (int i = 0; i < 5; ++i) text << "F1,LEMD,2018-03-23,planned," << 100 + i * 10 << ",40,-3,0\n";
  text << "F1,LEMD,2018-03-23,planned,105,40,-3,0\n";  // line 7
  for (bool lenient : {false, true}) {
    std::istringstream in(text.str());
    try {
      parse_trajectories(in, "season.csv", lenient);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Validation);
      CHECK(std::string(e.what()).find("season.csv:7") != std::string::npos);
    }
  }
}

TEST_CASE("malformed rows") {
  const std::string body = std::string(kTrajectoryHeader) +
                           "\nF1,LEMD,2018-03-23,planned,100,40,-3,0\n"
                           "F1,LEMD,2018-03-23,planned,oops,40,-3,0\n"
                           "F1,LEMD,2018-03-23,planned,200,40,-3,0\n";
  std::istringstream strict(body);
  try {
    parse_trajectories(strict, "x.csv");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    CHECK(std::string(e.what()).find("x.csv:3") != std::string::npos);
  }
  std::istringstream lenient(body);
  const auto r = parse_trajectories(lenient, "x.csv", true);
  CHECK(r.records.at(0).trajectory.samples.size() == 2);
  CHECK(r.warnings.size() == 1);

  std::istringstream bad_header("flight,airport\n");
  CHECK(kind_of([&] { parse_trajectories(bad_header, "h.csv"); }) == ErrorKind::Parse);
  std::istringstream bad_role(std::string(kTrajectoryHeader) + "\nF1,LEMD,2018-03-23,scheduled,1,40,-3,0\n");
  CHECK(kind_of([&] { parse_trajectories(bad_role, "r.csv"); }) == ErrorKind::Parse);
  std::istringstream bad_date(std::string(kTrajectoryHeader) + "\nF1,LEMD,2018-02-30,planned,1,40,-3,0\n");
  CHECK(kind_of([&] { parse_trajectories(bad_date, "d.csv"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { parse_trajectories(std::filesystem::path("/nonexistent/x.csv")); }) == ErrorKind::Io);
}

TEST_CASE("fractional timestamps are truncated with a warning") {
  std::istringstream in(std::string(kTrajectoryHeader) +
                        "\nF1,LEMD,2018-03-23,planned,100.7,40,-3,0\n"
                        "F1,LEMD,2018-03-23,planned,200,40,-3,0\n");
  const auto r = parse_trajectories(in, "f.csv");
  CHECK(r.records[0].trajectory.samples[0].t == 100);
  CHECK(r.warnings.size() == 1);
}

TEST_CASE("trajectory write/parse round trip") {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 30; ++trial) {
    const auto records = random_records(rng, 1 + trial % 5);
    std::stringstream buf;
    write_trajectories(buf, records);
    const auto back = parse_trajectories(buf, "rt.csv");
    REQUIRE(back.records.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
      CHECK(back.records[i].airport == records[i].airport);
      CHECK(back.records[i].date == records[i].date);
      CHECK(back.records[i].trajectory.flight_id == records[i].trajectory.flight_id);
      CHECK(back.records[i].trajectory.role == records[i].trajectory.role);
      CHECK(back.records[i].trajectory.samples == records[i].trajectory.samples);
    }
    std::stringstream again;
    write_trajectories(again, back.records);
    CHECK(again.str() == buf.str());
  }
}

TEST_CASE("pairing planned and actual") {
  std::mt19937_64 rng(83);
  auto records = random_records(rng, 3);
  std::vector<std::string> warnings;
  const auto legs = pair_flights(records, false, warnings);
  REQUIRE(legs.size() == 3);
  CHECK(legs[1].pair.planned.role == Role::Planned);
  CHECK(legs[1].pair.actual.role == Role::Actual);
  records.pop_back();
  CHECK_THROWS_AS(pair_flights(records, false, warnings), Error);
  CHECK(pair_flights(records, true, warnings).size() == 2);
  CHECK(warnings.size() == 1);
}

TEST_CASE("diagram, landscape and matrix serialisation round trips") {
  const PersistenceDiagram d({{0, 1, 0}, {0, kInfinity, 0}, {1, std::sqrt(2.0), 1}});
  std::stringstream buf;
  write_diagram_csv(buf, d);
  CHECK(buf.str() == "dim,birth,death\n0,0,1\n0,0,inf\n1,1,1.41421356\n");
  const auto back = read_diagram_csv(buf, "d.csv");
  CHECK(back.size() == 3);
  CHECK(back.essential_count(0) == 1);
  CHECK(back.of_dim(1)[0].death == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));

  const Landscape l = from_diagram(PersistenceDiagram({{0, 4, 0}, {2, 6, 0}}), 0);
  const auto j = landscape_to_json(l);
  CHECK(j.dump() == R"({"is_average":false,"levels":[[[0.0,0.0],[2.0,2.0],[3.0,1.0],[4.0,2.0],[6.0,0.0]],)"
                    R"([[2.0,0.0],[3.0,1.0],[4.0,0.0]]]})");
  CHECK(landscape_from_json(j) == l);
  CHECK(kind_of([] { landscape_from_json(nlohmann::json::parse(R"({"levels":[[[1,0],[0,1]]]})")); }) ==
        ErrorKind::Parse);

  LabeledDistanceMatrix m{{"LEXJ", "LEMD"}, DistanceMatrix::from_rows({{0, 2.5}, {2.5, 0}})};
  std::stringstream mb;
  write_distmat_csv(mb, m);
  CHECK(mb.str() == "icao,LEXJ,LEMD\nLEXJ,0,2.5\nLEMD,2.5,0\n");
  const auto mback = read_distmat_csv(mb, "m.csv");
  CHECK(mback.labels == m.labels);
  CHECK(mback.matrix == m.matrix);
}

TEST_CASE("point CSV") {
  std::istringstream in("x,y,label_id\n0,0,1\n1,0,2\n");
  const auto all = read_points_csv(in, "p.csv");
  CHECK(all.size() == 2);
  CHECK(all[1] == std::vector<double>{1, 0, 2});
  std::istringstream in2("x,y,z\n0,5,1\n1,6,2\n");
  const auto yx = read_points_csv(in2, "p.csv", {"y", "x"});
  CHECK(yx[0] == std::vector<double>{5, 0});
  std::istringstream in3("x,y\n0,5\n1\n");
  CHECK(kind_of([&] { read_points_csv(in3, "p.csv"); }) == ErrorKind::Parse);
  std::istringstream in4("x,y\n0,5\n");
  CHECK(kind_of([&] { read_points_csv(in4, "p.csv", {"q"}); }) == ErrorKind::Parse);
}

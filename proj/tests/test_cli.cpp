#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "aerotda/cli.hpp"
#include "aerotda/io.hpp"
#include "aerotda/synth.hpp"
#include "doctest.h"

namespace fs = std::filesystem;
using namespace aerotda;

namespace {

const fs::path kData = AEROTDA_TEST_DATA;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "aerotda");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("aerotda_test_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Relative path -> contents, for every file under `root` with the given suffix filter.
std::map<std::string, std::string> tree(const fs::path& root, bool include_svg) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    if (!include_svg && e.path().extension() == ".svg") continue;
    files[fs::relative(e.path(), root).string()] = slurp(e.path());
  }
  return files;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("deviate on identical trajectories prints zero") {
  const fs::path dir = scratch("deviate");
  const std::string body = std::string(kTrajectoryHeader) +
                           "\nF1,LEMD,2018-03-23,planned,1521788400,40.4,-3.5,0\n"
                           "F1,LEMD,2018-03-23,planned,1521792000,41.3,2.1,0\n"
                           "F1,LEMD,2018-03-23,actual,1521788400,40.4,-3.5,0\n"
                           "F1,LEMD,2018-03-23,actual,1521792000,41.3,2.1,0\n";
  write(dir / "in.csv", body);
  const Run r = run({"deviate", "-i", (dir / "in.csv").string()});
  CHECK(r.code == 0);
  CHECK(r.out == "flight_id,airport,date,deviation_km,delay_min\nF1,LEMD,2018-03-23,0,0\n");

  const Run w = run({"deviate", "-i", (dir / "in.csv").string(), "-o", (dir / "out").string()});
  CHECK(w.code == 0);
  CHECK(slurp(dir / "out" / "deviations.csv") == r.out);
  CHECK(fs::exists(dir / "out" / "deviations.csv.meta.json"));
}

TEST_CASE("persist on the unit square") {
  const Run r = run({"persist", "-p", (kData / "unit_square.csv").string()});
  CHECK(r.code == 0);
  CHECK(r.out == "dim,birth,death\n0,0,1\n0,0,1\n0,0,1\n0,0,inf\n1,1,1.41421356\n");

  const fs::path dir = scratch("persist");
  const Run p = run({"persist", "-p", (kData / "unit_square.csv").string(), "-o", dir.string(), "--plots"});
  CHECK(p.code == 0);
  CHECK(slurp(dir / "diagram.csv") == r.out);
  const auto meta = nlohmann::json::parse(slurp(dir / "diagram.csv.meta.json"));
  CHECK(meta["version"] == kVersion);
  CHECK(meta["command"] == "persist");
  CHECK(meta["config_hash"] == fnv1a_hex(meta["config"].dump()));
  const std::string svg = slurp(dir / "diagram_diagram.svg");
  CHECK(svg.find("class=\"diagonal\"") != std::string::npos);
  CHECK(svg.find("data-dim=\"1\" data-birth=\"1\" data-death=\"1.41421356\"") != std::string::npos);
}

TEST_CASE("landscape, distmat, embed and plot chain") {
  const fs::path dir = scratch("chain");
  write(dir / "a.csv", "dim,birth,death\n0,0,4\n0,2,6\n0,0,inf\n");
  write(dir / "b.csv", "dim,birth,death\n0,1,5\n0,0,inf\n");
  write(dir / "c.csv", "dim,birth,death\n0,0,2\n0,0,inf\n");
  for (const char* n : {"a", "b", "c"}) {
    const Run r = run({"landscape", "-d", (dir / (std::string(n) + ".csv")).string(), "--cap", "8", "-o",
                       (dir / n).string()});
    REQUIRE(r.code == 0);
  }
  const auto la = landscape_from_json(nlohmann::json::parse(slurp(dir / "a" / "landscape.json")));
  CHECK(la(1, 4.0) == 4.0);  // the capped essential (0, 8) peaks at t = 4
  CHECK(la(2, 2.0) == 2.0);

  const Run dm = run({"distmat", "-l", (dir / "a" / "landscape.json").string(), "-l",
                      (dir / "b" / "landscape.json").string(), "-l", (dir / "c" / "landscape.json").string(),
                      "--label", "A", "--label", "B", "--label", "C", "-o", dir.string()});
  REQUIRE(dm.code == 0);
  std::ifstream mf(dir / "distmat.csv");
  const auto m = read_distmat_csv(mf, "distmat.csv");
  CHECK(m.labels == std::vector<std::string>{"A", "B", "C"});

  const Run em = run({"embed", "-m", (dir / "distmat.csv").string(), "-o", dir.string(), "--plots"});
  REQUIRE(em.code == 0);
  const std::string emb = slurp(dir / "embedding.csv");
  CHECK(emb.rfind("icao,x,y\nA,", 0) == 0);
  const std::string svg = slurp(dir / "embedding.svg");
  std::size_t markers = 0;
  for (auto pos = svg.find("class=\"marker\""); pos != std::string::npos; pos = svg.find("class=\"marker\"", pos + 1)) ++markers;
  CHECK(markers == 3);

  const fs::path plots = dir / "plots";
  write(dir / "empty.csv", "dim,birth,death\n");
  const Run pl = run({"plot", "-d", (dir / "empty.csv").string(), "-l", (dir / "a" / "landscape.json").string(),
                      "-o", plots.string()});
  CHECK(pl.code == 0);
  const std::string empty_svg = slurp(plots / "empty_diagram.svg");
  CHECK(empty_svg.find("class=\"diagonal\"") != std::string::npos);
  CHECK(empty_svg.find("class=\"point\"") == std::string::npos);
  CHECK(fs::exists(plots / "landscape_landscape.svg"));
}

TEST_CASE("pipeline on the bundled fixture") {
  const std::string input = (kData / "synthetic_season.csv").string();
  const fs::path a = scratch("pipeline_a"), b = scratch("pipeline_b"), c = scratch("pipeline_c");
  const Run ra = run({"pipeline", "-i", input, "-o", a.string()});
  REQUIRE(ra.code == 0);
  for (const char* icao : {"LEXJ", "LEZG", "LEMD"}) {
    CHECK(fs::exists(a / icao / "summary.json"));
    CHECK(fs::exists(a / icao / "summary.json.meta.json"));
    CHECK(fs::exists(a / icao / "average_landscape.json"));
    CHECK(fs::exists(a / icao / "cloud.csv"));
    CHECK(fs::exists(a / icao / "diagrams" / "2018-03-29.csv"));
    const auto summary = nlohmann::json::parse(slurp(a / icao / "summary.json"));
    CHECK(summary["anomalies"][0]["date"] == "2018-03-29");
    CHECK(summary["day_count"] == 10);
  }
  CHECK(fs::exists(a / "distmat.csv"));
  CHECK(fs::exists(a / "embedding.csv"));
  CHECK(fs::exists(a / "plots" / "embedding.svg"));

  const Run rb = run({"pipeline", "-i", input, "-o", b.string()});
  const Run rc = run({"pipeline", "-i", input, "-o", c.string(), "--jobs", "4"});
  REQUIRE(rb.code == 0);
  REQUIRE(rc.code == 0);
  CHECK(tree(a, true) == tree(b, true));
  CHECK(tree(a, false) == tree(c, false));
  CHECK(ra.out == rb.out);
  CHECK(ra.out == rc.out);

  const fs::path d = scratch("pipeline_range");
  const Run rd = run({"pipeline", "-i", input, "-o", d.string(), "--from", "2018-03-25", "--to", "2018-03-27",
                      "--essentials", "drop", "--no-plots", "--top-n", "1"});
  REQUIRE(rd.code == 0);
  const auto summary = nlohmann::json::parse(slurp(d / "LEMD" / "summary.json"));
  CHECK(summary["day_count"] == 3);
  CHECK(summary["cap"].is_null());
  CHECK(summary["anomalies"].size() == 1);
  CHECK_FALSE(fs::exists(d / "plots"));
}

TEST_CASE("config file values yield to flags") {
  const std::string input = (kData / "synthetic_season.csv").string();
  const fs::path dir = scratch("config");
  write(dir / "run.conf", "# season settings\ntop_n = 2\nno_plots = true\nessentials = \"drop\"\n");
  const Run r = run({"pipeline", "-i", input, "-o", (dir / "out").string(), "--essentials", "cap",
                     "--config", (dir / "run.conf").string()});
  REQUIRE(r.code == 0);
  const auto summary = nlohmann::json::parse(slurp(dir / "out" / "LEXJ" / "summary.json"));
  CHECK(summary["anomalies"].size() == 2);
  CHECK(summary["essentials"] == "cap");
  CHECK_FALSE(fs::exists(dir / "out" / "plots"));
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"persist"}).code == kExitUsage);
  CHECK(run({"persist", "-p", "/no/such/file.csv"}).code == kExitUsage);
  CHECK(run({"--version"}).code == kExitOk);

  const fs::path dir = scratch("codes");
  write(dir / "bad.csv", "x,y\n0,zero\n");
  const Run bad = run({"persist", "-p", (dir / "bad.csv").string()});
  CHECK(bad.code == kExitData);
  CHECK(bad.err.find("bad.csv:2") != std::string::npos);

  write(dir / "regress.csv", std::string(kTrajectoryHeader) +
                                 "\nF1,LEMD,2018-03-23,planned,200,40,-3,0\n"
                                 "F1,LEMD,2018-03-23,planned,100,40,-3,0\n");
  const Run reg = run({"deviate", "-i", (dir / "regress.csv").string()});
  CHECK(reg.code == kExitData);
  CHECK(reg.err.find("regress.csv:3") != std::string::npos);

  write(dir / "square.csv", "x,y\n0,0\n1,0\n");
  const Run dim = run({"persist", "-p", (dir / "square.csv").string(), "--max-dim", "3"});
  CHECK(dim.code == kExitData);

  fs::create_directories(dir / "blocked");
  write(dir / "blocked" / "diagram.csv", "");
  fs::permissions(dir / "blocked", fs::perms::owner_read | fs::perms::owner_exec);
  const Run io = run({"persist", "-p", (kData / "unit_square.csv").string(), "-o", (dir / "blocked").string()});
  fs::permissions(dir / "blocked", fs::perms::owner_all);
  if (io.code != 0) {  // root ignores directory permissions
    CHECK(io.code == kExitData);
    CHECK(io.err.find("blocked") != std::string::npos);
  }
}

TEST_CASE("synth is deterministic and plants the outlier") {
  const Run a = run({"synth", "--airports", "2", "--days", "3", "--flights", "4", "--seed", "9"});
  const Run b = run({"synth", "--airports", "2", "--days", "3", "--flights", "4", "--seed", "9"});
  const Run c = run({"synth", "--airports", "2", "--days", "3", "--flights", "4", "--seed", "10"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  std::istringstream in(a.out);
  const auto parsed = parse_trajectories(in, "synth");
  CHECK(parsed.records.size() == 2 * 3 * 4 * 2);
  CHECK(run({"synth", "--days", "3", "--outlier-day", "3"}).code == kExitData);
}

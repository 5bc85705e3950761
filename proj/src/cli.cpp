#include "aerotda/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "aerotda/analysis.hpp"
#include "aerotda/io.hpp"
#include "aerotda/parallel.hpp"
#include "aerotda/persistence.hpp"
#include "aerotda/plot.hpp"
#include "aerotda/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace aerotda {

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

// Writes `content` to `path` and a `<path>.meta.json` sidecar next to it.
class ArtifactWriter {
 public:
  ArtifactWriter(std::string command, json config)
      : command_(std::move(command)), config_(std::move(config)) {}

  void set(const std::string& key, json value) { extra_[key] = std::move(value); }

  void write(const fs::path& path, const std::string& content) const {
    if (path.has_parent_path()) {
      std::error_code ec;
      fs::create_directories(path.parent_path(), ec);
      if (ec) fail(ErrorKind::Io, "cannot create directory '" + path.parent_path().string() + "'");
    }
    write_file(path, content);
    json meta = extra_;
    meta["tool"] = "aerotda";
    meta["version"] = kVersion;
    meta["command"] = command_;
    meta["config"] = config_;
    meta["config_hash"] = fnv1a_hex(config_.dump());
    meta["file"] = path.filename().string();
    fs::path meta_path = path;
    meta_path += ".meta.json";
    write_file(meta_path, meta.dump(2) + "\n");
  }

 private:
  static void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out = open_output(path);
    out << content;
    out.close();
    if (!out) fail(ErrorKind::Io, "failed writing '" + path.string() + "'");
  }

  std::string command_;
  json config_;
  json extra_ = json::object();
};

Normalization normalization_from(const std::string& s) {
  if (s == "sum") return Normalization::Sum;
  if (s == "mean") return Normalization::Mean;
  fail(ErrorKind::InvalidInput, "--normalize must be 'sum' or 'mean'");
}

json number_json(double v) { return parse_number(format_number(v)); }

std::vector<FlightRecord> load_records(const std::vector<std::string>& inputs, bool lenient,
                                       std::ostream& err) {
  std::vector<FlightRecord> all;
  for (const auto& path : inputs) {
    ParseResult r = parse_trajectories(fs::path(path), lenient);
    for (const auto& w : r.warnings) err << "warning: " << w << '\n';
    for (auto& rec : r.records) all.push_back(std::move(rec));
  }
  return all;
}

struct CommonFlags {
  std::vector<std::string> inputs;
  std::string out_dir;
  std::string normalize = "sum";
  bool lenient = false;
  std::size_t jobs = 1;
};

// Flights grouped by airport, then by the UTC date of the planned arrival.
using DayGroups = std::map<std::string, std::map<Date, std::vector<FlightPair>>>;

DayGroups group_flights(const std::vector<FlightLeg>& legs, std::optional<Date> from,
                        std::optional<Date> to, std::ostream& err) {
  DayGroups groups;
  for (const auto& leg : legs) {
    const Date day = date_of(leg.pair.planned.end());
    if (day != leg.date) {
      err << "warning: flight '" << leg.pair.planned.flight_id << "' listed on "
          << format_date(leg.date) << " is assigned to " << format_date(day)
          << " (planned arrival date)\n";
    }
    if ((from && day < *from) || (to && day > *to)) continue;
    groups[leg.airport][day].push_back(leg.pair);
  }
  return groups;
}

std::vector<AirportDay> build_days(const std::string& airport,
                                   const std::map<Date, std::vector<FlightPair>>& by_day,
                                   const CloudOptions& opts, std::size_t jobs, std::ostream& err) {
  std::vector<std::pair<Date, const std::vector<FlightPair>*>> items;
  for (const auto& [d, flights] : by_day) items.emplace_back(d, &flights);
  std::vector<AirportDay> days(items.size());
  std::vector<std::vector<std::string>> warnings(items.size());
  parallel_for(items.size(), jobs, [&](std::size_t i) {
    CloudResult r = build_cloud(*items[i].second, opts);
    days[i] = {airport, items[i].first, std::move(r.cloud)};
    warnings[i] = std::move(r.warnings);
  });
  for (std::size_t i = 0; i < days.size(); ++i) {
    for (const auto& w : warnings[i]) err << "warning: " << w << '\n';
    if (days[i].cloud.size() == 1) {
      err << "note: " << airport << ' ' << format_date(days[i].date)
          << " has a single flight; its diagram is one essential class\n";
    }
  }
  return days;
}

std::string to_text(const auto& writer_fn) {
  std::ostringstream s;
  writer_fn(s);
  return s.str();
}

// ---- subcommands ---------------------------------------------------------

int cmd_deviate(const CommonFlags& c, std::ostream& out, std::ostream& err) {
  std::vector<std::string> warnings;
  const auto legs = pair_flights(load_records(c.inputs, c.lenient, err), c.lenient, warnings);
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  const Normalization norm = normalization_from(c.normalize);
  std::ostringstream table;
  table << "flight_id,airport,date,deviation_km,delay_min\n";
  for (const auto& leg : legs) {
    try {
      const ValidationMode mode = c.lenient ? ValidationMode::Lenient : ValidationMode::Strict;
      for (const auto& w : validate(leg.pair.planned, mode)) err << "warning: " << w << '\n';
      for (const auto& w : validate(leg.pair.actual, mode)) err << "warning: " << w << '\n';
      table << leg.pair.planned.flight_id << ',' << leg.airport << ',' << format_date(leg.date)
            << ',' << format_number(deviation(leg.pair.planned, leg.pair.actual, norm)) << ','
            << format_number(delay_minutes(leg.pair.planned, leg.pair.actual)) << '\n';
    } catch (const Error& e) {
      if (!c.lenient) throw;
      err << "warning: skipping flight '" << leg.pair.planned.flight_id << "': " << e.what() << '\n';
    }
  }
  out << table.str();
  if (!c.out_dir.empty()) {
    ArtifactWriter w("deviate", {{"inputs", c.inputs}, {"normalize", c.normalize}, {"lenient", c.lenient}});
    w.write(fs::path(c.out_dir) / "deviations.csv", table.str());
  }
  return kExitOk;
}

int cmd_cloud(const CommonFlags& c, std::ostream& out, std::ostream& err) {
  std::vector<std::string> warnings;
  const auto legs = pair_flights(load_records(c.inputs, c.lenient, err), c.lenient, warnings);
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  const CloudOptions opts{normalization_from(c.normalize), c.lenient};
  std::vector<AirportDay> all;
  for (const auto& [airport, by_day] : group_flights(legs, std::nullopt, std::nullopt, err)) {
    for (auto& d : build_days(airport, by_day, opts, c.jobs, err)) all.push_back(std::move(d));
  }
  const std::string text = to_text([&](std::ostream& s) { write_cloud_csv(s, all); });
  if (c.out_dir.empty()) {
    out << text;
  } else {
    ArtifactWriter w("cloud", {{"inputs", c.inputs}, {"normalize", c.normalize}, {"lenient", c.lenient}});
    w.write(fs::path(c.out_dir) / "cloud.csv", text);
  }
  return kExitOk;
}

struct PersistFlags {
  std::string points;
  std::vector<std::string> columns;
  int max_dim = kMaxSimplexDim;
  double max_value = kInfinity;
  std::string out_dir;
  bool plots = false;
};

int cmd_persist(const PersistFlags& p, std::ostream& out, std::ostream& err) {
  std::ifstream in = open_input(p.points);
  const auto coords = read_points_csv(in, p.points, p.columns);
  if (coords.empty()) fail(ErrorKind::InvalidInput, p.points + ": no points");
  const DistanceMatrix d = euclidean_matrix(coords);
  const PersistenceDiagram dgm = vr_persistence(d, p.max_dim, p.max_value);
  const std::string text = to_text([&](std::ostream& s) { write_diagram_csv(s, dgm); });
  if (p.out_dir.empty()) {
    out << text;
    return kExitOk;
  }
  ArtifactWriter w("persist", {{"points", p.points},
                               {"columns", p.columns},
                               {"max_dim", p.max_dim},
                               {"max_value", format_number(p.max_value)}});
  w.write(fs::path(p.out_dir) / "diagram.csv", text);
  if (p.plots) {
    plot::PlotArtifacts art;
    art.diagrams.emplace_back("diagram", dgm);
    for (const auto& warn : plot::emit_plots(art, fs::path(p.out_dir))) err << "warning: " << warn << '\n';
  }
  return kExitOk;
}

struct LandscapeFlags {
  std::vector<std::string> diagrams;
  int dim = 0;
  std::string essentials = "cap";
  std::optional<double> cap;
  std::string out_dir;
  bool plots = false;
};

int cmd_landscape(const LandscapeFlags& f, std::ostream& out, std::ostream& err) {
  std::vector<PersistenceDiagram> dgms;
  for (const auto& path : f.diagrams) {
    std::ifstream in = open_input(path);
    dgms.push_back(read_diagram_csv(in, path));
  }
  const EssentialPolicy policy = essential_policy_from_string(f.essentials);
  const double cap = policy == EssentialPolicy::Cap ? (f.cap ? *f.cap : default_cap(dgms)) : 0.0;
  std::vector<Landscape> ls;
  for (const auto& d : dgms) {
    ls.push_back(from_diagram(policy == EssentialPolicy::Cap ? cap_essentials(d, cap) : drop_essentials(d), f.dim));
  }
  const Landscape result = ls.size() == 1 ? ls.front() : average(ls);
  const std::string text = landscape_to_json(result).dump() + "\n";
  if (f.out_dir.empty()) {
    out << text;
    return kExitOk;
  }
  ArtifactWriter w("landscape", {{"diagrams", f.diagrams}, {"dim", f.dim}, {"essentials", f.essentials}});
  w.set("essentials", f.essentials);
  w.set("cap", policy == EssentialPolicy::Cap ? number_json(cap) : json(nullptr));
  w.write(fs::path(f.out_dir) / "landscape.json", text);
  if (f.plots) {
    plot::PlotArtifacts art;
    art.landscapes.emplace_back("landscape", result);
    for (const auto& warn : plot::emit_plots(art, fs::path(f.out_dir))) err << "warning: " << warn << '\n';
  }
  return kExitOk;
}

struct DistmatFlags {
  std::vector<std::string> landscapes;
  std::vector<std::string> labels;
  std::string out_dir;
};

int cmd_distmat(const DistmatFlags& f, std::ostream& out, std::ostream&) {
  if (!f.labels.empty() && f.labels.size() != f.landscapes.size()) {
    fail(ErrorKind::InvalidInput, "--label must be given once per landscape");
  }
  std::vector<SeasonSummary> summaries;
  for (std::size_t i = 0; i < f.landscapes.size(); ++i) {
    std::ifstream in = open_input(f.landscapes[i]);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      fail(ErrorKind::Parse, f.landscapes[i] + ": " + e.what());
    }
    SeasonSummary s;
    s.airport = f.labels.empty() ? fs::path(f.landscapes[i]).stem().string() : f.labels[i];
    s.average_landscape = landscape_from_json(j);
    summaries.push_back(std::move(s));
  }
  const LabeledDistanceMatrix m = airport_distance_matrix(summaries);
  const std::string text = to_text([&](std::ostream& s) { write_distmat_csv(s, m); });
  if (f.out_dir.empty()) {
    out << text;
    return kExitOk;
  }
  ArtifactWriter w("distmat", {{"landscapes", f.landscapes}, {"labels", m.labels}});
  w.write(fs::path(f.out_dir) / "distmat.csv", text);
  return kExitOk;
}

struct EmbedFlags {
  std::string distmat;
  std::optional<std::size_t> k;
  std::string out_dir;
  bool plots = false;
};

int cmd_embed(const EmbedFlags& f, std::ostream& out, std::ostream& err) {
  std::ifstream in = open_input(f.distmat);
  const LabeledDistanceMatrix m = read_distmat_csv(in, f.distmat);
  const std::size_t k = f.k ? *f.k : default_isomap_k(m.labels.size());
  const auto coords = isomap(m.matrix, k);
  const std::string text = to_text([&](std::ostream& s) { write_embedding_csv(s, m.labels, coords); });
  if (f.out_dir.empty()) {
    out << text;
    return kExitOk;
  }
  ArtifactWriter w("embed", {{"distmat", f.distmat}, {"k", k}});
  w.write(fs::path(f.out_dir) / "embedding.csv", text);
  if (f.plots) {
    plot::PlotArtifacts art;
    art.embedding_labels = m.labels;
    art.embedding = coords;
    for (const auto& warn : plot::emit_plots(art, fs::path(f.out_dir))) err << "warning: " << warn << '\n';
  }
  return kExitOk;
}

struct PipelineFlags {
  CommonFlags common;
  std::string from, to;
  std::string essentials = "cap";
  std::optional<double> cap;
  double delay_weight = 1.0;
  std::optional<std::size_t> k;
  std::size_t top_n = 5;
  bool no_plots = false;
};

json summary_json(const SeasonSummary& s, const std::vector<AirportDay>& days, std::size_t top_n) {
  json j;
  j["airport"] = s.airport;
  j["essentials"] = to_string(s.essentials);
  j["cap"] = s.essentials == EssentialPolicy::Cap ? number_json(s.cap) : json(nullptr);
  j["delay_weight"] = number_json(s.delay_weight);
  j["day_count"] = s.dates.size();
  json day_list = json::array();
  for (std::size_t i = 0; i < s.dates.size(); ++i) {
    day_list.push_back({{"date", format_date(s.dates[i])},
                        {"flights", days[i].cloud.size()},
                        {"h0_points", s.daily_diagrams[i].size()},
                        {"distance_to_average", number_json(s.day_distances[i])}});
  }
  j["days"] = std::move(day_list);
  json anomalies = json::array();
  for (const auto& [date, dist] : anomaly_days(s, top_n)) {
    anomalies.push_back({{"date", format_date(date)}, {"distance", number_json(dist)}});
  }
  j["anomalies"] = std::move(anomalies);
  return j;
}

int cmd_pipeline(const PipelineFlags& f, std::ostream& out, std::ostream& err) {
  const CommonFlags& c = f.common;
  if (c.out_dir.empty()) fail(ErrorKind::InvalidInput, "pipeline requires --out-dir");
  if (c.jobs == 0) fail(ErrorKind::InvalidInput, "--jobs must be >= 1");
  std::optional<Date> from, to;
  if (!f.from.empty()) from = parse_date(f.from);
  if (!f.to.empty()) to = parse_date(f.to);
  if (from && to && *to < *from) fail(ErrorKind::InvalidInput, "--to precedes --from");
  const EssentialPolicy policy = essential_policy_from_string(f.essentials);

  std::vector<std::string> warnings;
  const auto legs = pair_flights(load_records(c.inputs, c.lenient, err), c.lenient, warnings);
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  const DayGroups groups = group_flights(legs, from, to, err);
  if (groups.empty()) fail(ErrorKind::InvalidInput, "no flights fall in the requested date range");

  const CloudOptions cloud_opts{normalization_from(c.normalize), c.lenient};
  std::vector<std::vector<AirportDay>> days_by_airport;
  for (const auto& [airport, by_day] : groups) {
    days_by_airport.push_back(build_days(airport, by_day, cloud_opts, c.jobs, err));
  }

  // One cap for the whole run so that average landscapes are comparable.
  std::optional<double> cap = f.cap;
  if (policy == EssentialPolicy::Cap && !cap) {
    std::vector<PersistenceDiagram> all;
    for (const auto& days : days_by_airport) {
      for (const auto& d : days) all.push_back(cloud_diagram(d.cloud, f.delay_weight));
    }
    cap = default_cap(all);
  }

  json config = {{"inputs", c.inputs},        {"normalize", c.normalize},
                 {"lenient", c.lenient},      {"from", f.from},
                 {"to", f.to},                {"essentials", f.essentials},
                 {"delay_weight", number_json(f.delay_weight)},
                 {"k", f.k ? json(*f.k) : json(nullptr)},
                 {"top_n", f.top_n}};
  if (f.cap) config["cap"] = number_json(*f.cap);
  ArtifactWriter writer("pipeline", config);
  writer.set("essentials", f.essentials);
  writer.set("cap", policy == EssentialPolicy::Cap ? number_json(*cap) : json(nullptr));
  writer.set("delay_weight", number_json(f.delay_weight));

  const fs::path root(c.out_dir);
  std::vector<SeasonSummary> summaries;
  plot::PlotArtifacts art;
  for (const auto& days : days_by_airport) {
    SeasonOptions opts;
    opts.essentials = policy;
    opts.cap = cap;
    opts.delay_weight = f.delay_weight;
    opts.jobs = c.jobs;
    SeasonSummary s = season_summary(days, opts);
    const fs::path dir = root / s.airport;
    writer.write(dir / "summary.json", summary_json(s, days, f.top_n).dump(2) + "\n");
    writer.write(dir / "average_landscape.json", landscape_to_json(s.average_landscape).dump() + "\n");
    writer.write(dir / "cloud.csv", to_text([&](std::ostream& o) { write_cloud_csv(o, days); }));
    for (std::size_t i = 0; i < s.dates.size(); ++i) {
      writer.write(dir / "diagrams" / (format_date(s.dates[i]) + ".csv"),
                   to_text([&](std::ostream& o) { write_diagram_csv(o, s.daily_diagrams[i]); }));
    }
    const auto top = anomaly_days(s, f.top_n);
    for (const auto& [date, dist] : top) {
      out << s.airport << ' ' << format_date(date) << ' ' << format_number(dist) << '\n';
    }
    art.landscapes.emplace_back(s.airport + "_average", s.average_landscape);
    if (!top.empty()) {
      const auto it = std::ranges::find(s.dates, top.front().first);
      art.diagrams.emplace_back(s.airport + "_" + format_date(top.front().first),
                                s.daily_diagrams[static_cast<std::size_t>(it - s.dates.begin())]);
    }
    summaries.push_back(std::move(s));
  }

  if (summaries.size() >= 2) {
    const LabeledDistanceMatrix m = airport_distance_matrix(summaries);
    writer.write(root / "distmat.csv", to_text([&](std::ostream& o) { write_distmat_csv(o, m); }));
    const std::size_t k = f.k ? *f.k : default_isomap_k(m.labels.size());
    try {
      const auto coords = isomap(m.matrix, k);
      writer.write(root / "embedding.csv",
                   to_text([&](std::ostream& o) { write_embedding_csv(o, m.labels, coords); }));
      art.embedding_labels = m.labels;
      art.embedding = coords;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Io) throw;
      err << "warning: embedding skipped: " << e.what() << '\n';
    }
  } else {
    err << "note: a single airport; distmat.csv and embedding.csv are not produced\n";
  }
  if (!f.no_plots) {
    for (const auto& w : plot::emit_plots(art, root / "plots")) err << "warning: " << w << '\n';
  }
  return kExitOk;
}

struct SynthFlags {
  std::string out;
  std::size_t airports = 3;
  std::size_t days = 10;
  std::size_t flights = 12;
  std::uint64_t seed = 20180323;
  std::optional<std::size_t> outlier_day;
  std::string start = "2018-03-23";
};

int cmd_synth(const SynthFlags& f, std::ostream& out, std::ostream&) {
  SynthConfig cfg;
  cfg.airports = default_synth_airports(f.airports);
  cfg.first_day = parse_date(f.start);
  cfg.days = f.days;
  cfg.flights_per_day = f.flights;
  cfg.seed = f.seed;
  cfg.outlier_day = f.outlier_day;
  if (cfg.outlier_day && *cfg.outlier_day >= cfg.days) {
    fail(ErrorKind::InvalidInput, "--outlier-day must be below --days");
  }
  const std::string text = to_text([&](std::ostream& s) { write_trajectories(s, synthesize(cfg)); });
  if (f.out.empty()) {
    out << text;
  } else {
    std::ofstream o = open_output(f.out);
    o << text;
    if (!o) fail(ErrorKind::Io, "failed writing '" + f.out + "'");
  }
  return kExitOk;
}

struct PlotFlags {
  std::vector<std::string> diagrams;
  std::vector<std::string> landscapes;
  std::string embedding;
  std::string out_dir;
};

int cmd_plot(const PlotFlags& f, std::ostream&, std::ostream& err) {
  if (f.out_dir.empty()) fail(ErrorKind::InvalidInput, "plot requires --out-dir");
  plot::PlotArtifacts art;
  for (const auto& p : f.diagrams) {
    std::ifstream in = open_input(p);
    art.diagrams.emplace_back(fs::path(p).stem().string(), read_diagram_csv(in, p));
  }
  for (const auto& p : f.landscapes) {
    std::ifstream in = open_input(p);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      fail(ErrorKind::Parse, p + ": " + e.what());
    }
    art.landscapes.emplace_back(fs::path(p).stem().string(), landscape_from_json(j));
  }
  if (!f.embedding.empty()) {
    std::ifstream in = open_input(f.embedding);
    std::string line;
    std::getline(in, line);
    if (line != kEmbeddingHeader) fail(ErrorKind::Parse, f.embedding + ":1: expected header icao,x,y");
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto fields = split_csv(line);
      if (fields.size() != 3) fail(ErrorKind::Parse, f.embedding + ": malformed row '" + line + "'");
      art.embedding_labels.push_back(fields[0]);
      art.embedding.push_back({parse_number(fields[1]), parse_number(fields[2])});
    }
  }
  for (const auto& w : plot::emit_plots(art, fs::path(f.out_dir))) err << "warning: " << w << '\n';
  return kExitOk;
}

// key=value lines become --key value arguments unless the flag was given.
std::vector<std::string> apply_config_file(std::vector<std::string> args) {
  auto it = std::ranges::find(args, std::string("--config"));
  if (it == args.end() || it + 1 == args.end()) return args;
  const std::string path = *(it + 1);
  args.erase(it, it + 2);
  std::ifstream in = open_input(path);
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> extra;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#' || line[first] == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorKind::Parse, path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\"");
      const auto b = s.find_last_not_of(" \t\"");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::ranges::replace(key, '_', '-');
    const std::string value = trim(line.substr(eq + 1));
    const std::string flag = "--" + key;
    const bool given = std::ranges::any_of(args, [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given) continue;
    if (value == "true") {
      extra.push_back(flag);
    } else if (value != "false") {
      extra.push_back(flag);
      extra.push_back(value);
    }
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"aerotda: topological analysis of flight deviations and delays", "aerotda"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  std::string config_path;
  app.add_option("--config", config_path, "key = value file; command-line flags take precedence");

  CommonFlags common;
  auto add_common = [&](CLI::App* sub, bool need_out) {
    sub->add_option("-i,--input", common.inputs, "trajectory CSV file(s)")->required()->check(CLI::ExistingFile);
    auto* o = sub->add_option("-o,--out-dir", common.out_dir, "output directory");
    if (need_out) o->required();
    sub->add_option("--normalize", common.normalize, "deviation aggregation: sum or mean")
        ->check(CLI::IsMember({"sum", "mean"}));
    sub->add_flag("--lenient", common.lenient, "skip bad rows and flights with warnings");
    sub->add_option("-j,--jobs", common.jobs, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* deviate = app.add_subcommand("deviate", "deviation and delay per flight");
  add_common(deviate, false);
  auto* cloud = app.add_subcommand("cloud", "airport-day point clouds");
  add_common(cloud, false);

  PersistFlags pf;
  auto* persist = app.add_subcommand("persist", "Vietoris-Rips persistence diagram of a point CSV");
  persist->add_option("-p,--points", pf.points, "numeric CSV with a header")->required()->check(CLI::ExistingFile);
  persist->add_option("--columns", pf.columns, "columns to use (default: all)")->delimiter(',');
  persist->add_option("--max-dim", pf.max_dim, "largest simplex dimension (0..2)");
  persist->add_option("--max-value", pf.max_value, "largest filtration value");
  persist->add_option("-o,--out-dir", pf.out_dir, "output directory (default: stdout)");
  persist->add_flag("--plots", pf.plots, "also write SVG plots");

  LandscapeFlags lf;
  auto* landscape = app.add_subcommand("landscape", "persistence landscape (averaged over inputs)");
  landscape->add_option("-d,--diagram", lf.diagrams, "diagram CSV file(s)")->required()->check(CLI::ExistingFile);
  landscape->add_option("--dim", lf.dim, "homology dimension");
  landscape->add_option("--essentials", lf.essentials, "cap or drop")->check(CLI::IsMember({"cap", "drop"}));
  landscape->add_option("--cap", lf.cap, "death value for essential classes");
  landscape->add_option("-o,--out-dir", lf.out_dir, "output directory (default: stdout)");
  landscape->add_flag("--plots", lf.plots, "also write SVG plots");

  DistmatFlags df;
  auto* distmat = app.add_subcommand("distmat", "sup-norm distances between landscapes");
  distmat->add_option("-l,--landscape", df.landscapes, "landscape JSON files")->required()->check(CLI::ExistingFile);
  distmat->add_option("--label", df.labels, "row labels (default: file stems)");
  distmat->add_option("-o,--out-dir", df.out_dir, "output directory (default: stdout)");

  EmbedFlags ef;
  auto* embed = app.add_subcommand("embed", "Isomap embedding of a distance matrix");
  embed->add_option("-m,--distmat", ef.distmat, "distmat CSV")->required()->check(CLI::ExistingFile);
  embed->add_option("-k,--neighbors", ef.k, "neighbourhood size (default min(6, n-1))")->check(CLI::PositiveNumber);
  embed->add_option("-o,--out-dir", ef.out_dir, "output directory (default: stdout)");
  embed->add_flag("--plots", ef.plots, "also write SVG plots");

  PipelineFlags plf;
  auto* pipeline = app.add_subcommand("pipeline", "end-to-end season analysis");
  {
    auto& c = plf.common;
    pipeline->add_option("-i,--input", c.inputs, "trajectory CSV file(s)")->required()->check(CLI::ExistingFile);
    pipeline->add_option("-o,--out-dir", c.out_dir, "output directory")->required();
    pipeline->add_option("--normalize", c.normalize, "sum or mean")->check(CLI::IsMember({"sum", "mean"}));
    pipeline->add_flag("--lenient", c.lenient, "skip bad rows and flights with warnings");
    pipeline->add_option("-j,--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  }
  pipeline->add_option("--from", plf.from, "first day (YYYY-MM-DD)");
  pipeline->add_option("--to", plf.to, "last day (YYYY-MM-DD)");
  pipeline->add_option("--essentials", plf.essentials, "cap or drop")->check(CLI::IsMember({"cap", "drop"}));
  pipeline->add_option("--cap", plf.cap, "death value for essential classes");
  pipeline->add_option("--delay-weight", plf.delay_weight, "scale of the delay axis")->check(CLI::PositiveNumber);
  pipeline->add_option("-k,--neighbors", plf.k, "Isomap neighbourhood size")->check(CLI::PositiveNumber);
  pipeline->add_option("--top-n", plf.top_n, "anomalous days to report")->check(CLI::PositiveNumber);
  pipeline->add_flag("--no-plots", plf.no_plots, "skip SVG output");

  SynthFlags sf;
  auto* synth = app.add_subcommand("synth", "generate a synthetic trajectory fixture");
  synth->add_option("-o,--out", sf.out, "output CSV (default: stdout)");
  synth->add_option("--airports", sf.airports, "number of airports")->check(CLI::PositiveNumber);
  synth->add_option("--days", sf.days, "number of days")->check(CLI::PositiveNumber);
  synth->add_option("--flights", sf.flights, "flights per airport-day")->check(CLI::PositiveNumber);
  synth->add_option("--seed", sf.seed, "random seed");
  synth->add_option("--outlier-day", sf.outlier_day, "0-based day index with one extreme flight");
  synth->add_option("--start", sf.start, "first day (YYYY-MM-DD)");

  PlotFlags ptf;
  auto* plotcmd = app.add_subcommand("plot", "render SVG plots of existing artifacts");
  plotcmd->add_option("-d,--diagram", ptf.diagrams, "diagram CSV file(s)")->check(CLI::ExistingFile);
  plotcmd->add_option("-l,--landscape", ptf.landscapes, "landscape JSON file(s)")->check(CLI::ExistingFile);
  plotcmd->add_option("-e,--embedding", ptf.embedding, "embedding CSV")->check(CLI::ExistingFile);
  plotcmd->add_option("-o,--out-dir", ptf.out_dir, "output directory")->required();

  try {
    std::vector<std::string> args = apply_config_file(raw_args);
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);  // CLI11 wants reverse order
    try {
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitUsage;
    }
    if (deviate->parsed()) return cmd_deviate(common, out, err);
    if (cloud->parsed()) return cmd_cloud(common, out, err);
    if (persist->parsed()) return cmd_persist(pf, out, err);
    if (landscape->parsed()) return cmd_landscape(lf, out, err);
    if (distmat->parsed()) return cmd_distmat(df, out, err);
    if (embed->parsed()) return cmd_embed(ef, out, err);
    if (pipeline->parsed()) return cmd_pipeline(plf, out, err);
    if (synth->parsed()) return cmd_synth(sf, out, err);
    if (plotcmd->parsed()) return cmd_plot(ptf, out, err);
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return e.kind() == ErrorKind::ContractViolation ? kExitInternal : kExitData;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace aerotda

// tnp command line: ingest event logs, generate model corpora, and profile
// the predictability of temporal networks. Talks to the analysis core only
// through the public C interface.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tnp.h"

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

struct MatrixDeleter {
  void operator()(tnp_matrix* m) const { tnp_matrix_free(m); }
};
struct ReportDeleter {
  void operator()(tnp_report* r) const { tnp_report_free(r); }
};
using MatrixPtr = std::unique_ptr<tnp_matrix, MatrixDeleter>;
using ReportPtr = std::unique_ptr<tnp_report, ReportDeleter>;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& msg) { throw CliError{code, msg}; }

void check(tnp_status status) {
  if (status == TNP_OK) return;
  const char* cls = status == TNP_ERROR_USAGE  ? "usage"
                    : status == TNP_ERROR_DATA ? "data"
                                               : "numeric";
  fail(static_cast<int>(status), std::string(cls) + ": " + tnp_last_error());
}

MatrixPtr load_matrix(const std::string& path) {
  tnp_matrix* m = nullptr;
  check(tnp_matrix_read_file(path.c_str(), &m));
  return MatrixPtr(m);
}

std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(2, "data: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json input_summary(const std::string& path, const tnp_matrix* m) {
  return json{{"path", path},
              {"digest", fnv1a64_hex(read_file_bytes(path))},
              {"rows", tnp_matrix_rows(m)},
              {"cols", tnp_matrix_cols(m)},
              {"alphabet", tnp_matrix_alphabet_size(m)},
              {"directed", tnp_matrix_directed(m) != 0}};
}

json envelope(const std::string& command, json config) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = {{"name", "tnp"}, {"version", tnp_version()}};
  j["command"] = command;
  j["config"] = std::move(config);
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(2, "data: cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

void write_report(const std::string& path, json doc) { write_text(path, doc.dump(2)); }

/// Merge the analysis payload into the envelope, dropping keys the envelope
/// already carries.
void merge_payload(json& doc, const tnp_report* report) {
  json payload = json::parse(tnp_report_json(report));
  payload.erase("input");
  payload.erase("seed");
  for (auto& [key, value] : payload.items()) doc[key] = std::move(value);
}

double report_value(const tnp_report* report, const char* pointer, bool* ok = nullptr) {
  double v = 0;
  tnp_status st = tnp_report_value(report, pointer, &v);
  if (ok != nullptr) *ok = st == TNP_OK;
  else check(st);
  return v;
}

// ---- subcommand options ----

struct FilterOpts {
  double mass_frac = 0.6;
  double act_thresh = 0.1;
  std::size_t m_theta = 1000;

  void attach(CLI::App* cmd) {
    cmd->add_option("--mass-frac", mass_frac, "activation mass kept by the first filter branch")
        ->capture_default_str();
    cmd->add_option("--act-thresh", act_thresh, "activation floor for the second filter branch")
        ->capture_default_str();
    cmd->add_option("--m-theta", m_theta, "row-count pivot between the filter branches")
        ->capture_default_str();
  }
  json config() const {
    return json{{"mass_frac", mass_frac}, {"act_thresh", act_thresh}, {"m_theta", m_theta}};
  }
};

struct IngestOpts {
  std::string events_path;
  std::string out_path;
  double bin = 0;
  bool undirected = false;
  std::string aggregate = "count";
  int levels = 0;
};

int run_ingest(const IngestOpts& o) {
  tnp_matrix* raw = nullptr;
  check(tnp_ingest_events_file(o.events_path.c_str(), o.bin, o.undirected ? 0 : 1,
                               o.aggregate.c_str(), &raw));
  MatrixPtr m(raw);
  if (o.levels > 0) {
    tnp_matrix* q = nullptr;
    check(tnp_matrix_quantize(m.get(), o.levels, &q));
    m.reset(q);
  }
  check(tnp_matrix_write_file(m.get(), o.out_path.c_str()));

  json side = envelope("ingest", json{{"events", o.events_path},
                                      {"bin", o.bin},
                                      {"undirected", o.undirected},
                                      {"aggregate", o.aggregate},
                                      {"levels", o.levels},
                                      {"out", o.out_path}});
  side["input"] = {{"path", o.events_path}, {"digest", fnv1a64_hex(read_file_bytes(o.events_path))}};
  side["matrix"] = {{"rows", tnp_matrix_rows(m.get())},
                    {"cols", tnp_matrix_cols(m.get())},
                    {"alphabet", tnp_matrix_alphabet_size(m.get())},
                    {"directed", tnp_matrix_directed(m.get()) != 0}};
  write_report(o.out_path + ".json", side);
  std::cout << "wrote " << o.out_path << " (" << tnp_matrix_rows(m.get()) << " x "
            << tnp_matrix_cols(m.get()) << ", alphabet " << tnp_matrix_alphabet_size(m.get())
            << ")\n";
  return 0;
}

struct ProfileOpts {
  std::string matrix_path;
  std::string out_path;
  FilterOpts filter;
  int row_orders = 1;
  int baseline_runs = 40;
  std::uint64_t seed = 1;
  bool hamming = false;
  std::size_t max_pairs = 100000;

  tnp_profile_params params() const {
    tnp_profile_params p;
    tnp_profile_params_init(&p);
    p.mass_frac = filter.mass_frac;
    p.act_thresh = filter.act_thresh;
    p.m_theta = filter.m_theta;
    p.row_orders = row_orders;
    p.baseline_runs = baseline_runs;
    p.seed = seed;
    p.with_hamming = hamming ? 1 : 0;
    p.max_pairs = max_pairs;
    return p;
  }
  json config() const {
    json c = filter.config();
    c["row_orders"] = row_orders;
    c["baseline_runs"] = baseline_runs;
    c["seed"] = seed;
    c["hamming"] = hamming;
    c["max_pairs"] = max_pairs;
    c["out"] = out_path;
    return c;
  }
};

int run_profile(const ProfileOpts& o) {
  MatrixPtr m = load_matrix(o.matrix_path);
  tnp_profile_params p = o.params();
  tnp_report* raw = nullptr;
  check(tnp_profile(m.get(), &p, &raw));
  ReportPtr report(raw);

  json doc = envelope("profile", o.config());
  doc["input"] = input_summary(o.matrix_path, m.get());
  merge_payload(doc, report.get());
  write_report(o.out_path, doc);

  if (!doc["nttp"]["defined"].get<bool>())
    fail(3, "numeric: NTTP undefined (baseline == 1 while ttp < 1)");
  return 0;
}

struct SynthOpts {
  std::string family;
  std::string out_path;
  std::uint64_t seed = 1;
  // small-world
  std::size_t nodes = 50;
  double rewire_p = 0.0;
  std::size_t snapshots = 300;
  // tsbm
  std::size_t communities = 4;
  std::size_t degree = 3;
  double beta = 0.5;
  double gamma = 0.5;
  std::size_t alphabet = 4;
  // long-range
  std::size_t rows = 128;
  std::size_t cols = 128;
  double gamma_x = 1.0;
  double gamma_y = 1.0;
  std::size_t levels = 4;
};

MatrixPtr generate(const SynthOpts& o, double varied_value, const std::string& varied_name,
                   std::uint64_t seed) {
  auto value_or = [&](const char* name, double fixed) {
    return varied_name == name ? varied_value : fixed;
  };
  tnp_matrix* raw = nullptr;
  if (o.family == "small-world") {
    check(tnp_gen_small_world(o.nodes, value_or("p", o.rewire_p), o.snapshots, seed, &raw));
  } else if (o.family == "tsbm") {
    double b = value_or("beta", o.beta);
    double g = value_or("gamma", o.gamma);
    if (varied_name == "diag") b = g = varied_value;
    check(tnp_gen_tsbm(o.communities, o.nodes, o.degree, o.snapshots, b, g, o.alphabet, seed, &raw));
  } else if (o.family == "long-range") {
    double gx = value_or("gamma-x", o.gamma_x);
    double gy = value_or("gamma-y", o.gamma_y);
    if (varied_name == "diag") gx = gy = varied_value;
    check(tnp_gen_long_range(o.rows, o.cols, gx, gy, o.levels, seed, &raw));
  } else {
    fail(1, "usage: unknown synth family: " + o.family);
  }
  return MatrixPtr(raw);
}

json synth_config(const SynthOpts& o) {
  json c{{"family", o.family}, {"seed", o.seed}, {"out", o.out_path}};
  if (o.family == "small-world") {
    c["nodes"] = o.nodes;
    c["p"] = o.rewire_p;
    c["snapshots"] = o.snapshots;
  } else if (o.family == "tsbm") {
    c["communities"] = o.communities;
    c["nodes"] = o.nodes;
    c["degree"] = o.degree;
    c["snapshots"] = o.snapshots;
    c["beta"] = o.beta;
    c["gamma"] = o.gamma;
    c["alphabet"] = o.alphabet;
  } else {
    c["rows"] = o.rows;
    c["cols"] = o.cols;
    c["gamma_x"] = o.gamma_x;
    c["gamma_y"] = o.gamma_y;
    c["levels"] = o.levels;
  }
  return c;
}

int run_synth(const SynthOpts& o) {
  MatrixPtr m = generate(o, 0.0, "", o.seed);
  check(tnp_matrix_write_file(m.get(), o.out_path.c_str()));
  json side = envelope("synth", synth_config(o));
  side["matrix"] = {{"rows", tnp_matrix_rows(m.get())},
                    {"cols", tnp_matrix_cols(m.get())},
                    {"alphabet", tnp_matrix_alphabet_size(m.get())}};
  write_report(o.out_path + ".json", side);
  std::cout << "wrote " << o.out_path << " (" << tnp_matrix_rows(m.get()) << " x "
            << tnp_matrix_cols(m.get()) << ")\n";
  return 0;
}

struct SweepOpts {
  SynthOpts synth;
  std::string vary;
  std::vector<double> values;
  int seeds = 10;
  int baseline_runs = 40;
  int row_orders = 1;
  FilterOpts filter;
  std::string out_path;
};

struct Stats {
  double mean = 0, stddev = 0;
  int n = 0;
};

Stats stats_of(const std::vector<double>& xs) {
  Stats s;
  s.n = static_cast<int>(xs.size());
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= xs.size();
  if (xs.size() > 1) {
    double acc = 0;
    for (double x : xs) acc += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(acc / (xs.size() - 1));
  }
  return s;
}

int run_sweep(const SweepOpts& o) {
  if (o.values.empty()) fail(1, "usage: sweep needs --values");

  std::ostringstream csv;
  csv << "family,param,value,seeds,ttp_mean,ttp_std,ttp_bl_mean,nttp_mean,nttp_std,"
         "nttp_undefined,tep_mean,tep_std,ntep_mean,ntep_std\n";

  for (std::size_t vi = 0; vi < o.values.size(); ++vi) {
    double value = o.values[vi];
    std::vector<double> ttps, bls, nttps, teps, nteps;
    int nttp_undefined = 0;
    for (int s = 0; s < o.seeds; ++s) {
      std::uint64_t seed = o.synth.seed + 1000003ULL * vi + static_cast<std::uint64_t>(s);
      MatrixPtr m = generate(o.synth, value, o.vary, seed);

      tnp_profile_params p;
      tnp_profile_params_init(&p);
      p.mass_frac = o.filter.mass_frac;
      p.act_thresh = o.filter.act_thresh;
      p.m_theta = o.filter.m_theta;
      p.row_orders = o.row_orders;
      p.baseline_runs = o.baseline_runs;
      p.seed = seed;
      tnp_report* raw = nullptr;
      check(tnp_profile(m.get(), &p, &raw));
      ReportPtr report(raw);

      ttps.push_back(report_value(report.get(), "/ttp/value"));
      bls.push_back(report_value(report.get(), "/baseline/value"));
      bool ok = false;
      double nttp = report_value(report.get(), "/nttp/value", &ok);
      if (ok)
        nttps.push_back(nttp);
      else
        ++nttp_undefined;
      teps.push_back(report_value(report.get(), "/tep/value"));
      double ntep = report_value(report.get(), "/tep/ntep/value", &ok);
      if (ok) nteps.push_back(ntep);
    }
    Stats ts = stats_of(ttps), bs = stats_of(bls), ns = stats_of(nttps), es = stats_of(teps),
          nes = stats_of(nteps);
    char line[512];
    std::snprintf(line, sizeof(line), "%s,%s,%g,%d,%.6f,%.6f,%.6f,%.6f,%.6f,%d,%.6f,%.6f,%.6f,%.6f\n",
                  o.synth.family.c_str(), o.vary.c_str(), value, o.seeds, ts.mean, ts.stddev,
                  bs.mean, ns.mean, ns.stddev, nttp_undefined, es.mean, es.stddev, nes.mean,
                  nes.stddev);
    csv << line;
  }
  write_text(o.out_path, csv.str());

  json side = envelope("sweep", [&] {
    json c = synth_config(o.synth);
    c["vary"] = o.vary;
    c["values"] = o.values;
    c["seeds"] = o.seeds;
    c["baseline_runs"] = o.baseline_runs;
    c["row_orders"] = o.row_orders;
    c["filter"] = o.filter.config();
    c["out"] = o.out_path;
    return c;
  }());
  if (!o.out_path.empty() && o.out_path != "-") write_report(o.out_path + ".json", side);
  return 0;
}

struct MarkovOpts {
  std::string matrix_path;
  std::string out_path;
  FilterOpts filter;
  int order = 1;
  double train_frac = 0.7;
  int row_orders = 1;
  std::uint64_t seed = 1;
};

int run_markov(const MarkovOpts& o) {
  MatrixPtr m = load_matrix(o.matrix_path);
  tnp_report* raw = nullptr;
  check(tnp_markov(m.get(), o.order, o.train_frac, o.row_orders, o.seed, o.filter.mass_frac,
                   o.filter.act_thresh, o.filter.m_theta, &raw));
  ReportPtr report(raw);

  json config = o.filter.config();
  config["order"] = o.order;
  config["train_frac"] = o.train_frac;
  config["row_orders"] = o.row_orders;
  config["seed"] = o.seed;
  config["out"] = o.out_path;
  json doc = envelope("markov", config);
  doc["input"] = input_summary(o.matrix_path, m.get());
  merge_payload(doc, report.get());
  write_report(o.out_path, doc);
  return 0;
}

struct PerturbOpts {
  std::string matrix_path;
  std::string out_path;
  double drop_fraction = -1;
  std::string shuffle;  // "global" or "rows"
  bool permute = false;
  std::uint64_t seed = 1;
};

int run_perturb(const PerturbOpts& o) {
  MatrixPtr m = load_matrix(o.matrix_path);
  if (o.drop_fraction >= 0) {
    tnp_matrix* next = nullptr;
    check(tnp_matrix_drop_links(m.get(), o.drop_fraction, o.seed, &next));
    m.reset(next);
  }
  if (!o.shuffle.empty()) {
    tnp_matrix* next = nullptr;
    if (o.shuffle == "global")
      check(tnp_matrix_shuffle_global(m.get(), o.seed, &next));
    else if (o.shuffle == "rows")
      check(tnp_matrix_shuffle_within_rows(m.get(), o.seed, &next));
    else
      fail(1, "usage: --shuffle expects 'global' or 'rows'");
    m.reset(next);
  }
  if (o.permute) {
    tnp_matrix* next = nullptr;
    check(tnp_matrix_permute_rows(m.get(), o.seed, &next));
    m.reset(next);
  }
  check(tnp_matrix_write_file(m.get(), o.out_path.c_str()));
  std::cout << "wrote " << o.out_path << "\n";
  return 0;
}

struct SliceOpts {
  std::string matrix_path;
  std::string out_path;
  std::string rows, cols;
};

std::pair<std::size_t, std::size_t> parse_range(const std::string& spec, std::size_t limit) {
  if (spec.empty()) return {0, limit};
  auto colon = spec.find(':');
  if (colon == std::string::npos) fail(1, "usage: range must look like A:B");
  try {
    std::size_t a = colon == 0 ? 0 : std::stoull(spec.substr(0, colon));
    std::size_t b = colon + 1 == spec.size() ? limit : std::stoull(spec.substr(colon + 1));
    return {a, b};
  } catch (const std::exception&) {
    fail(1, "usage: bad range: " + spec);
  }
}

int run_slice(const SliceOpts& o) {
  MatrixPtr m = load_matrix(o.matrix_path);
  auto [r0, r1] = parse_range(o.rows, tnp_matrix_rows(m.get()));
  auto [c0, c1] = parse_range(o.cols, tnp_matrix_cols(m.get()));
  tnp_matrix* out = nullptr;
  check(tnp_matrix_slice(m.get(), r0, r1, c0, c1, &out));
  MatrixPtr sliced(out);
  check(tnp_matrix_write_file(sliced.get(), o.out_path.c_str()));
  std::cout << "wrote " << o.out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tnp — predictability analysis of temporal networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("tnp ") + tnp_version());

  IngestOpts ingest;
  auto* cmd_ingest = app.add_subcommand("ingest", "events file -> matrix file");
  cmd_ingest->add_option("events", ingest.events_path, "event log, one `time src dst [weight]` per line")
      ->required();
  cmd_ingest->add_option("-o,--out", ingest.out_path, "output matrix file")->required();
  cmd_ingest->add_option("--bin", ingest.bin, "snapshot width in time units")->required();
  cmd_ingest->add_flag("--undirected", ingest.undirected, "merge reciprocal node pairs");
  cmd_ingest->add_option("--aggregate", ingest.aggregate, "count | sum | max")->capture_default_str();
  cmd_ingest->add_option("--levels", ingest.levels, "quantize weights into this many levels (0 = off)")
      ->capture_default_str();

  ProfileOpts profile;
  auto* cmd_profile = app.add_subcommand("profile", "matrix file -> predictability report");
  cmd_profile->add_option("matrix", profile.matrix_path, "matrix file")->required();
  cmd_profile->add_option("-o,--out", profile.out_path, "report path ('-' = stdout)")
      ->capture_default_str();
  profile.filter.attach(cmd_profile);
  cmd_profile->add_option("--row-orders", profile.row_orders, "row arrangements tried for the max TTP")
      ->capture_default_str();
  cmd_profile->add_option("--baseline-runs", profile.baseline_runs, "shuffled realizations averaged")
      ->capture_default_str();
  cmd_profile->add_option("--seed", profile.seed, "master seed")->capture_default_str();
  cmd_profile->add_flag("--hamming", profile.hamming, "include the link-pair Hamming summary");
  cmd_profile->add_option("--max-pairs", profile.max_pairs, "pair sample cap for --hamming")
      ->capture_default_str();

  SynthOpts synth;
  auto* cmd_synth = app.add_subcommand("synth", "generate a model corpus");
  cmd_synth->add_option("family", synth.family, "small-world | tsbm | long-range")->required();
  cmd_synth->add_option("-o,--out", synth.out_path, "output matrix file")->required();
  cmd_synth->add_option("--seed", synth.seed, "generator seed")->capture_default_str();
  cmd_synth->add_option("--nodes", synth.nodes, "node count")->capture_default_str();
  cmd_synth->add_option("--rewire-p", synth.rewire_p, "small-world rewiring probability")
      ->capture_default_str();
  cmd_synth->add_option("--snapshots", synth.snapshots, "number of snapshots")->capture_default_str();
  cmd_synth->add_option("--communities", synth.communities, "tsbm community count")
      ->capture_default_str();
  cmd_synth->add_option("--degree", synth.degree, "tsbm per-node degree")->capture_default_str();
  cmd_synth->add_option("--beta", synth.beta, "tsbm structural copy strength")->capture_default_str();
  cmd_synth->add_option("--gamma", synth.gamma, "tsbm temporal copy strength")->capture_default_str();
  cmd_synth->add_option("--alphabet", synth.alphabet, "tsbm weight levels")->capture_default_str();
  cmd_synth->add_option("--rows", synth.rows, "long-range field rows (power of two)")
      ->capture_default_str();
  cmd_synth->add_option("--cols", synth.cols, "long-range field cols (power of two)")
      ->capture_default_str();
  cmd_synth->add_option("--gamma-x", synth.gamma_x, "temporal decay exponent")->capture_default_str();
  cmd_synth->add_option("--gamma-y", synth.gamma_y, "topological decay exponent")
      ->capture_default_str();
  cmd_synth->add_option("--levels", synth.levels, "long-range quantization levels")
      ->capture_default_str();

  SweepOpts sweep;
  auto* cmd_sweep = app.add_subcommand("sweep", "parameter sweep -> CSV of measures");
  cmd_sweep->add_option("family", sweep.synth.family, "small-world | tsbm | long-range")->required();
  cmd_sweep->add_option("-o,--out", sweep.out_path, "output CSV ('-' = stdout)")->capture_default_str();
  cmd_sweep->add_option("--vary", sweep.vary, "parameter to sweep (p, beta, gamma, diag, gamma-x, gamma-y)")
      ->required();
  cmd_sweep->add_option("--values", sweep.values, "comma-separated grid values")
      ->required()
      ->delimiter(',');
  cmd_sweep->add_option("--seeds", sweep.seeds, "independent corpora per grid point")
      ->capture_default_str();
  cmd_sweep->add_option("--seed", sweep.synth.seed, "master seed")->capture_default_str();
  cmd_sweep->add_option("--baseline-runs", sweep.baseline_runs, "shuffled realizations averaged")
      ->capture_default_str();
  cmd_sweep->add_option("--row-orders", sweep.row_orders, "row arrangements tried")
      ->capture_default_str();
  sweep.filter.attach(cmd_sweep);
  cmd_sweep->add_option("--nodes", sweep.synth.nodes)->capture_default_str();
  cmd_sweep->add_option("--snapshots", sweep.synth.snapshots)->capture_default_str();
  cmd_sweep->add_option("--communities", sweep.synth.communities)->capture_default_str();
  cmd_sweep->add_option("--degree", sweep.synth.degree)->capture_default_str();
  cmd_sweep->add_option("--beta", sweep.synth.beta)->capture_default_str();
  cmd_sweep->add_option("--gamma", sweep.synth.gamma)->capture_default_str();
  cmd_sweep->add_option("--alphabet", sweep.synth.alphabet)->capture_default_str();
  cmd_sweep->add_option("--rows", sweep.synth.rows)->capture_default_str();
  cmd_sweep->add_option("--cols", sweep.synth.cols)->capture_default_str();
  cmd_sweep->add_option("--levels", sweep.synth.levels)->capture_default_str();

  MarkovOpts markov;
  auto* cmd_markov = app.add_subcommand("markov", "Markov predictor accuracy vs the TTP bound");
  cmd_markov->add_option("matrix", markov.matrix_path, "matrix file")->required();
  cmd_markov->add_option("-o,--out", markov.out_path, "report path ('-' = stdout)")
      ->capture_default_str();
  markov.filter.attach(cmd_markov);
  cmd_markov->add_option("--order", markov.order, "history length l")->capture_default_str();
  cmd_markov->add_option("--train-frac", markov.train_frac, "training share of windows")
      ->capture_default_str();
  cmd_markov->add_option("--row-orders", markov.row_orders, "row arrangements tried for TTP")
      ->capture_default_str();
  cmd_markov->add_option("--seed", markov.seed, "master seed")->capture_default_str();

  PerturbOpts perturb;
  auto* cmd_perturb = app.add_subcommand("perturb", "drop or shuffle matrix cells");
  cmd_perturb->add_option("matrix", perturb.matrix_path, "matrix file")->required();
  cmd_perturb->add_option("-o,--out", perturb.out_path, "output matrix file")->required();
  cmd_perturb->add_option("--drop-fraction", perturb.drop_fraction,
                          "fraction of nonzero cells zeroed");
  cmd_perturb->add_option("--shuffle", perturb.shuffle, "global | rows");
  cmd_perturb->add_flag("--permute-rows", perturb.permute, "random row order");
  cmd_perturb->add_option("--seed", perturb.seed, "seed")->capture_default_str();

  SliceOpts slice_opts;
  auto* cmd_slice = app.add_subcommand("slice", "contiguous submatrix");
  cmd_slice->add_option("matrix", slice_opts.matrix_path, "matrix file")->required();
  cmd_slice->add_option("-o,--out", slice_opts.out_path, "output matrix file")->required();
  cmd_slice->add_option("--rows", slice_opts.rows, "row range A:B (half-open)");
  cmd_slice->add_option("--cols", slice_opts.cols, "column range A:B (half-open)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << "error: usage: " << e.what() << "\n";
    return 1;
  }

  try {
    if (cmd_ingest->parsed()) return run_ingest(ingest);
    if (cmd_profile->parsed()) return run_profile(profile);
    if (cmd_synth->parsed()) return run_synth(synth);
    if (cmd_sweep->parsed()) return run_sweep(sweep);
    if (cmd_markov->parsed()) return run_markov(markov);
    if (cmd_perturb->parsed()) return run_perturb(perturb);
    if (cmd_slice->parsed()) return run_slice(slice_opts);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: numeric: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

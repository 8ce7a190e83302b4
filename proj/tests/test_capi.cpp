#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "tnp.h"

namespace {

std::string temp_path(const std::string& name) {
  return std::string("/tmp/tnp_capi_") + name;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("version and error text are always available") {
  CHECK(std::string(tnp_version()) == "0.1.0");
  CHECK(tnp_last_error() != nullptr);
}

TEST_CASE("ingest, accessors and round trip through the C surface") {
  std::string events = temp_path("events.txt");
  write_file(events, "0 0 1\n5 0 1\n12 1 2\n");

  tnp_matrix* m = nullptr;
  REQUIRE(tnp_ingest_events_file(events.c_str(), 10.0, 1, "count", &m) == TNP_OK);
  CHECK(tnp_matrix_rows(m) == 2);
  CHECK(tnp_matrix_cols(m) == 2);
  CHECK(tnp_matrix_alphabet_size(m) == 3);
  CHECK(tnp_matrix_directed(m) == 1);
  CHECK(tnp_matrix_value(m, 0, 0) == 2);
  CHECK(tnp_matrix_value(m, 1, 1) == 1);
  CHECK(tnp_matrix_value(m, 5, 5) == -1);

  std::string mat = temp_path("matrix.txt");
  REQUIRE(tnp_matrix_write_file(m, mat.c_str()) == TNP_OK);
  tnp_matrix* back = nullptr;
  REQUIRE(tnp_matrix_read_file(mat.c_str(), &back) == TNP_OK);
  CHECK(tnp_matrix_alphabet_size(back) == 3);
  tnp_matrix_free(back);
  tnp_matrix_free(m);
  std::remove(events.c_str());
  std::remove(mat.c_str());
}

TEST_CASE("error paths set a status and a message") {
  tnp_matrix* m = nullptr;
  CHECK(tnp_matrix_read_file("/nonexistent/nope.txt", &m) == TNP_ERROR_DATA);
  CHECK(std::string(tnp_last_error()).size() > 0);
  CHECK(tnp_ingest_events_file(nullptr, 1.0, 0, "count", &m) == TNP_ERROR_USAGE);

  double x = 0;
  CHECK(tnp_solve_fano(-1.0, 2, &x) == TNP_ERROR_USAGE);
  CHECK(tnp_solve_fano(0.5, 2, &x) == TNP_OK);
  CHECK(x == doctest::Approx(0.889972135562).epsilon(1e-6));
}

TEST_CASE("generate, transform, analyze and read back a report") {
  tnp_matrix* m = nullptr;
  REQUIRE(tnp_gen_small_world(16, 0.2, 64, 7, &m) == TNP_OK);

  tnp_matrix* filtered = nullptr;
  REQUIRE(tnp_matrix_filter(m, 0.6, 0.1, 1000, &filtered) == TNP_OK);
  CHECK(tnp_matrix_rows(filtered) <= tnp_matrix_rows(m));

  tnp_matrix* shuffled = nullptr;
  REQUIRE(tnp_matrix_shuffle_global(filtered, 3, &shuffled) == TNP_OK);
  CHECK(tnp_matrix_rows(shuffled) == tnp_matrix_rows(filtered));

  double t = 0;
  REQUIRE(tnp_ttp(filtered, 1, 1, &t) == TNP_OK);
  CHECK(t >= 0.0);
  CHECK(t <= 1.0);

  double bl = 0;
  REQUIRE(tnp_ttp_baseline(filtered, 4, 1, &bl) == TNP_OK);
  CHECK(bl >= 0.0);
  CHECK(bl <= 1.0);

  tnp_profile_params p;
  tnp_profile_params_init(&p);
  p.baseline_runs = 4;
  p.seed = 5;
  tnp_report* rep = nullptr;
  REQUIRE(tnp_profile(m, &p, &rep) == TNP_OK);
  std::string json_text = tnp_report_json(rep);
  CHECK(json_text.find("\"ttp\"") != std::string::npos);

  double ttp_value = 0;
  REQUIRE(tnp_report_value(rep, "/ttp/value", &ttp_value) == TNP_OK);
  CHECK(ttp_value >= 0.0);
  CHECK(tnp_report_value(rep, "/no/such/field", &ttp_value) != TNP_OK);

  // rerun: identical report bytes
  tnp_report* rep2 = nullptr;
  REQUIRE(tnp_profile(m, &p, &rep2) == TNP_OK);
  CHECK(std::string(tnp_report_json(rep2)) == json_text);

  tnp_report_free(rep2);
  tnp_report_free(rep);
  tnp_matrix_free(shuffled);
  tnp_matrix_free(filtered);
  tnp_matrix_free(m);
}

TEST_CASE("markov report through the C surface") {
  tnp_matrix* m = nullptr;
  REQUIRE(tnp_gen_small_world(12, 0.3, 80, 21, &m) == TNP_OK);
  tnp_report* rep = nullptr;
  REQUIRE(tnp_markov(m, 1, 0.7, 1, 9, 0.6, 0.1, 1000, &rep) == TNP_OK);
  double acc = 0, gap = 0;
  REQUIRE(tnp_report_value(rep, "/markov/accuracy", &acc) == TNP_OK);
  REQUIRE(tnp_report_value(rep, "/gap", &gap) == TNP_OK);
  CHECK(acc >= 0.0);
  CHECK(acc <= 1.0);
  tnp_report_free(rep);
  tnp_matrix_free(m);
}

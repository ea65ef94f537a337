#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qree/report_io.hpp"
#include "qree/state.hpp"
#include "test_util.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

using namespace qree;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    path = test::temp_file_path();
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

void check_load_fails_with(const std::string& contents, const std::string& needle) {
  TempFile f(contents);
  try {
    load_state_file(f.path);
    FAIL("expected load_state_file to throw for ", contents);
  } catch (const std::runtime_error& e) {
    const std::string message = e.what();
    INFO("message: ", message);
    CHECK(message.find(needle) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("pure state files load with their party structure") {
  TempFile f(R"({"dims": [2, 2],
                 "amplitudes": [[0.7071067811865476, 0], [0, 0], [0, 0],
                                [0.7071067811865476, 0]]})");
  const LoadedState loaded = load_state_file(f.path);
  REQUIRE(loaded.pure.has_value());
  CHECK(loaded.pure->structure().dims() == std::vector<int>{2, 2});
  CHECK(test::max_abs_diff(loaded.density.matrix(), from_pure(make_epr()).matrix()) < 1e-12);
}

TEST_CASE("density files load and validate") {
  TempFile f(R"({"dims": [2],
                 "density": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]})");
  const LoadedState loaded = load_state_file(f.path);
  CHECK(!loaded.pure.has_value());
  CHECK(std::abs(loaded.density.matrix()(0, 0) - Complex(0.5, 0.0)) < 1e-15);
}

TEST_CASE("malformed state files fail with field-precise messages") {
  check_load_fails_with(R"({"amplitudes": [[1, 0], [0, 0]]})", "dims");
  check_load_fails_with(R"({"dims": [2, 1], "amplitudes": []})", "dims[1]");
  check_load_fails_with(R"({"dims": [2], "amplitudes": [[1, 0]]})", "length 2");
  check_load_fails_with(R"({"dims": [2], "amplitudes": [[1, 0], "x"]})", "amplitudes[1]");
  check_load_fails_with(R"({"dims": [2], "amplitudes": [[1, 0], [0.5, 0]]})", "norm");
  check_load_fails_with(
      R"({"dims": [2], "density": [[[0.5, 0], [0.4, 0]], [[0, 0], [0.5, 0]]]})", "hermitian");
  check_load_fails_with(R"({"dims": [2], "density": [[[1, 0], [0, 0]]]})", "density");
  check_load_fails_with(R"({"dims": [2]})", "amplitudes");
  check_load_fails_with("not json at all", "parse");
}

TEST_CASE("missing files are reported") {
  CHECK_THROWS_WITH_AS(load_state_file("/nonexistent/state.json"),
                       "/nonexistent/state.json: cannot open file", std::runtime_error);
}

TEST_CASE("round_sig keeps nine significant digits") {
  CHECK(round_sig(1.0) == 1.0);
  CHECK(round_sig(1.169925001442312) == doctest::Approx(1.16992500).epsilon(1e-12));
  CHECK(format_sig(0.25) == "0.25");
  CHECK(format_sig(1.0 / 3.0) == "0.333333333");
}

TEST_CASE("reports serialize with the contract field names") {
  BoundsReport r;
  r.state_label = "w";
  r.e3_estimate = Bits(1.1699);
  r.gap_estimate = 1e-4;
  r.lower_thm1 = Bits(1.1699);
  r.lower_witness = "AB";
  r.upper_thm1 = Bits(1.8366);
  r.upper_witness = "AB";
  r.corollary_lower = Bits(1.1699);
  r.corollary_upper = Bits(1.8366);
  r.conjecture_half_sum = Bits(1.3774);
  r.slack_lower = 0.0;
  r.slack_upper = 0.6667;
  r.saturated_lower = true;
  r.saturated_upper = false;

  const auto j = to_json(r);
  for (const char* field :
       {"state_label", "e3_estimate", "lower_thm1", "lower_witness", "upper_thm1",
        "upper_witness", "corollary_lower", "corollary_upper", "conjecture_half_sum",
        "slack_lower", "slack_upper", "saturated_lower", "saturated_upper"}) {
    CHECK(j.contains(field));
  }
  CHECK(j["saturated_lower"].is_boolean());

  const std::string csv = to_csv(r);
  CHECK(csv.find("state_label,e3_estimate") == 0);
  CHECK(csv.find("\nw,1.1699,") != std::string::npos);

  MregsDecomposition d;
  d.g = 1.0;
  d.predicted_e3 = Bits(1.0);
  const auto jd = to_json(d);
  for (const char* field : {"g", "s_ab", "s_ac", "s_bc", "residual", "predicted_e3"}) {
    CHECK(jd.contains(field));
  }
  CHECK(jd["approximation"] == "single-copy");
}

TEST_CASE("csv and json quote the same numbers to nine significant digits") {
  BoundsReport r;
  r.state_label = "x";
  r.e3_estimate = Bits(1.0 / 3.0);
  r.gap_estimate = 1.23456789123e-5;
  r.lower_thm1 = Bits(0.3333333333);
  r.lower_witness = "AB";
  r.upper_thm1 = Bits(2.0 / 3.0);
  r.upper_witness = "BC";
  r.corollary_lower = Bits(0.1);
  r.corollary_upper = Bits(0.9);
  r.conjecture_half_sum = Bits(0.5);
  r.slack_lower = -1.98765432107e-4;
  r.slack_upper = 0.25;

  const auto j = to_json(r);
  const std::string csv = to_csv(r);
  // second line of the CSV carries the values in header order
  const std::string row = csv.substr(csv.find('\n') + 1);
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (start <= row.size()) {
    const std::size_t comma = row.find(',', start);
    const std::size_t end = comma == std::string::npos ? row.find('\n', start) : comma;
    cells.push_back(row.substr(start, end - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  REQUIRE(cells.size() == 14);
  CHECK(std::abs(std::stod(cells[1]) - j["e3_estimate"].get<double>()) <=
        1e-9 * std::abs(j["e3_estimate"].get<double>()));
  CHECK(std::abs(std::stod(cells[2]) - j["gap_estimate"].get<double>()) <=
        1e-9 * std::abs(j["gap_estimate"].get<double>()));
  CHECK(std::abs(std::stod(cells[10]) - j["slack_lower"].get<double>()) <=
        1e-9 * std::abs(j["slack_lower"].get<double>()));
}

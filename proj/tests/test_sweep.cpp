#include <doctest.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "tfp/sweep.hpp"

using tfp::CsvTable;
using tfp::GridSpec;
using tfp::SweepSpec;
using tfp::SweepVariable;

namespace {
std::string csvString(const CsvTable& table) {
  std::ostringstream os;
  tfp::write_csv(os, table);
  return os.str();
}
}  // namespace

TEST_CASE("linspace endpoints and validation") {
  const auto pts = tfp::linspace({1.0, 2.0, 5});
  CHECK(pts.size() == 5);
  CHECK(pts.front() == 1.0);
  CHECK(pts.back() == 2.0);
  CHECK(pts[2] == doctest::Approx(1.5));
  CHECK_THROWS_AS(tfp::linspace({1.0, 2.0, 1}), tfp::ValidationError);
  CHECK_THROWS_AS(tfp::linspace({2.0, 1.0, 4}), tfp::ValidationError);
}

TEST_CASE("format_double round-trips exactly") {
  for (double v : {0.0, 1.0, -1.5, 0.1, 3.141592653589793, 1e-300, 1.7e300,
                   143.13, 2.8658008142833391}) {
    const std::string s = tfp::format_double(v);
    double back = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(res.ec == std::errc());
    CHECK(back == v);
  }
}

TEST_CASE("parse_sweep_variable") {
  CHECK(tfp::parse_sweep_variable("kOverM") == SweepVariable::kOverM);
  CHECK(tfp::parse_sweep_variable("alpha") == SweepVariable::alpha);
  CHECK_THROWS_AS(tfp::parse_sweep_variable("bogus"), tfp::ValidationError);
}

TEST_CASE("minimal cavity sweep: header plus two rows") {
  SweepSpec spec;
  spec.experiment = "cavity";
  spec.variable = SweepVariable::kOverM;
  spec.range = {1.0, 2.0, 2};
  spec.fixed = {{"eAOverM", 3.0}, {"mTau", 1.5}};
  const CsvTable table = tfp::run_sweep(spec);
  CHECK(table.header.size() == 9);
  CHECK(table.header[0] == "kOverM");
  CHECK(table.header[8] == "schwingerFlag");
  CHECK(table.rows.size() == 2);
  const std::string text = csvString(table);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  CHECK(text.find("\r") == std::string::npos);
}

TEST_CASE("re-running a sweep is byte-identical; parallel matches serial") {
  SweepSpec spec;
  spec.experiment = "cavity";
  spec.variable = SweepVariable::kOverM;
  spec.range = {0.1, 20.0, 1024};
  spec.fixed = {{"eAOverM", 10.0}, {"mTau", 1.5}};
  spec.workers = 1;
  const std::string serial1 = csvString(tfp::run_sweep(spec));
  const std::string serial2 = csvString(tfp::run_sweep(spec));
  CHECK(serial1 == serial2);
  spec.workers = 4;
  CHECK(csvString(tfp::run_sweep(spec)) == serial1);
}

TEST_CASE("reference scan file peaks near kOverM = 10 at eA = 10") {
  SweepSpec spec;
  spec.experiment = "cavity";
  spec.variable = SweepVariable::kOverM;
  spec.range = {0.1, 20.0, 1024};
  spec.fixed = {{"eAOverM", 10.0}, {"mTau", 1.5}};
  const CsvTable table = tfp::run_sweep(spec);
  size_t best = 0;
  for (size_t i = 1; i < table.rows.size(); ++i) {
    if (table.rows[i][3] > table.rows[best][3]) best = i;
  }
  CHECK(std::abs(table.rows[best][0] - 10.0) < 2.0);
  CHECK(table.rows[best][3] > 10.0);
}

TEST_CASE("missing fixed parameter is a validation error") {
  SweepSpec spec;
  spec.experiment = "cavity";
  spec.variable = SweepVariable::kOverM;
  spec.range = {1.0, 2.0, 2};
  CHECK_THROWS_AS(tfp::run_sweep(spec), tfp::ValidationError);
  spec.experiment = "bogus";
  CHECK_THROWS_AS(tfp::run_sweep(spec), tfp::ValidationError);
}

TEST_CASE("other experiment sweeps produce complete rows") {
  SweepSpec spec;
  spec.experiment = "interferometer";
  spec.variable = SweepVariable::theta;
  spec.range = {-1.0, 1.0, 8};
  spec.fixed = {{"R", 1.6180339887498949}};
  CHECK(tfp::run_sweep(spec).rows.size() == 8);

  spec.experiment = "gyni";
  spec.variable = SweepVariable::R;
  spec.range = {0.0, 10.0, 16};
  spec.fixed = {};
  CHECK(tfp::run_sweep(spec).rows.size() == 16);

  spec.experiment = "double-cavity";
  CHECK(tfp::run_sweep(spec).rows.size() == 16);

  spec.experiment = "deutsch";
  spec.variable = SweepVariable::alpha;
  spec.range = {0.0, 1.0, 4};
  CHECK(tfp::run_sweep(spec).rows.size() == 4);

  spec.experiment = "switch";
  spec.variable = SweepVariable::xi;
  spec.range = {0.0, 3.0, 4};
  spec.fixed = {{"kOverM", 1.0}, {"eAOverM", 3.0}, {"mTau", 1.5}};
  const CsvTable sw = tfp::run_sweep(spec);
  CHECK(sw.rows.size() == 4);
  for (const auto& row : sw.rows) {
    CHECK(std::abs(row[3] - sw.rows[0][3]) < 1e-10);  // xi-invariant total
  }
}

TEST_CASE("rmax sweep rows carry the per-eA maxima") {
  const CsvTable table = tfp::run_rmax_sweep(1.5, {8.0, 12.0, 512}, 2);
  CHECK(table.rows.size() == 512);
  for (const auto& row : table.rows) {
    CHECK(std::abs(row[1] - row[0]) < 3.0);  // kStar stays in the window
    CHECK(row[2] >= 0.0);
  }
}

TEST_CASE("parallel_for propagates exceptions and preserves slots") {
  std::vector<int> out(100, 0);
  tfp::parallel_for(100, 4, [&](int i) { out[i] = i * i; });
  for (int i = 0; i < 100; ++i) CHECK(out[i] == i * i);
  CHECK_THROWS_AS(
      tfp::parallel_for(8, 4,
                        [](int i) {
                          if (i == 5) throw tfp::NumericError("boom");
                        }),
      tfp::NumericError);
}

#include "tfp/sweep.hpp"

#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "tfp/experiments.hpp"

namespace tfp {

std::string format_double(double v) {
  std::array<char, 40> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::vector<double> linspace(const GridSpec& grid) {
  if (grid.count < 2) throw ValidationError("grid count must be >= 2");
  if (!(grid.start < grid.stop)) {
    throw ValidationError("grid must satisfy start < stop");
  }
  std::vector<double> pts(grid.count);
  const double step = (grid.stop - grid.start) / (grid.count - 1);
  for (int i = 0; i < grid.count; ++i) pts[i] = grid.start + step * i;
  return pts;
}

SweepVariable parse_sweep_variable(const std::string& name) {
  if (name == "kOverM") return SweepVariable::kOverM;
  if (name == "eAOverM") return SweepVariable::eAOverM;
  if (name == "mTau") return SweepVariable::mTau;
  if (name == "theta") return SweepVariable::theta;
  if (name == "xi") return SweepVariable::xi;
  if (name == "R") return SweepVariable::R;
  if (name == "alpha") return SweepVariable::alpha;
  throw ValidationError("unknown sweep variable: " + name);
}

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  int nw = workers > 0 ? workers
                       : static_cast<int>(std::thread::hardware_concurrency());
  if (nw < 1) nw = 1;
  nw = std::min(nw, n);
  if (nw == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }

  std::exception_ptr firstError;
  std::mutex errorMutex;
  std::vector<std::thread> threads;
  threads.reserve(nw);
  for (int w = 0; w < nw; ++w) {
    threads.emplace_back([&, w]() {
      for (int i = w; i < n; i += nw) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(errorMutex);
          if (!firstError) firstError = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  if (firstError) std::rethrow_exception(firstError);
}

namespace {

double fixedParam(const SweepSpec& spec, const std::string& key) {
  const auto it = spec.fixed.find(key);
  if (it == spec.fixed.end()) {
    throw ValidationError("sweep is missing fixed parameter: " + key);
  }
  return it->second;
}

CavityCoeffs cavityAt(double k, double eA, double mTau) {
  CavityParams params;
  params.p = k;
  params.eA = eA;
  params.tau = mTau;
  return cavity_coefficients(params);
}

}  // namespace

CsvTable run_sweep(const SweepSpec& spec) {
  const std::vector<double> grid = linspace(spec.range);
  const int n = static_cast<int>(grid.size());
  CsvTable table;
  std::function<std::vector<double>(double)> rowFn;

  if (spec.experiment == "cavity") {
    double k = 0.0, eA = 0.0, mTau = 0.0;
    if (spec.variable != SweepVariable::kOverM) k = fixedParam(spec, "kOverM");
    if (spec.variable != SweepVariable::eAOverM) eA = fixedParam(spec, "eAOverM");
    if (spec.variable != SweepVariable::mTau) mTau = fixedParam(spec, "mTau");
    if (spec.variable != SweepVariable::kOverM &&
        spec.variable != SweepVariable::eAOverM &&
        spec.variable != SweepVariable::mTau) {
      throw ValidationError("cavity sweeps vary kOverM, eAOverM or mTau");
    }
    table.header = {"kOverM",  "eAOverM", "mTau",
                    "Rtot",    "Ttot",    "phaseR",
                    "phaseT",  "denomMag", "schwingerFlag"};
    rowFn = [=, variable = spec.variable](double x) {
      const double kk = variable == SweepVariable::kOverM ? x : k;
      const double ea = variable == SweepVariable::eAOverM ? x : eA;
      const double mt = variable == SweepVariable::mTau ? x : mTau;
      const CavityCoeffs c = cavityAt(kk, ea, mt);
      return std::vector<double>{kk,
                                 ea,
                                 mt,
                                 c.R(),
                                 c.T(),
                                 std::arg(c.rTot),
                                 std::arg(c.tTot),
                                 c.denomMagnitude,
                                 c.beyondSchwinger ? 1.0 : 0.0};
    };
  } else if (spec.experiment == "interferometer") {
    if (spec.variable != SweepVariable::theta) {
      throw ValidationError("interferometer sweeps vary theta");
    }
    const CavityCoeffs c =
        spec.fixed.count("R")
            ? cavity_from_reflectivity(fixedParam(spec, "R"))
            : cavityAt(fixedParam(spec, "kOverM"), fixedParam(spec, "eAOverM"),
                       fixedParam(spec, "mTau"));
    table.header = {"theta", "R", "pD1", "pD1D2D3", "pD3", "sumCheck"};
    rowFn = [=](double theta) {
      const ExperimentReport er = interferometer(c, theta);
      return std::vector<double>{theta,
                                 c.R(),
                                 er.outcomes.at("D1_only"),
                                 er.outcomes.at("D1_D2_D3"),
                                 er.outcomes.at("D3_only"),
                                 er.sumCheck};
    };
  } else if (spec.experiment == "gyni") {
    if (spec.variable != SweepVariable::R) {
      throw ValidationError("gyni sweeps vary R");
    }
    table.header = {"R", "gain"};
    rowFn = [](double R) { return std::vector<double>{R, gyni_gain(R)}; };
  } else if (spec.experiment == "double-cavity") {
    if (spec.variable != SweepVariable::R) {
      throw ValidationError("double-cavity sweeps vary R");
    }
    table.header = {"R", "reflected", "transmitted", "electronPair",
                    "sumCheck"};
    rowFn = [](double R) {
      const ExperimentReport er = double_cavity(R);
      return std::vector<double>{R, er.outcomes.at("reflected"),
                                 er.outcomes.at("transmitted"),
                                 er.outcomes.at("electron_pair"), er.sumCheck};
    };
  } else if (spec.experiment == "switch") {
    if (spec.variable != SweepVariable::xi) {
      throw ValidationError("switch sweeps vary xi");
    }
    const CavityCoeffs c =
        cavityAt(fixedParam(spec, "kOverM"), fixedParam(spec, "eAOverM"),
                 fixedParam(spec, "mTau"));
    table.header = {"xi", "pD2", "pD3", "pD2plusPD3", "vacuumAudit"};
    rowFn = [=](double xi) {
      SwitchSpec s;
      s.uA = UnitaryMatrix2(Mat2::sigmaX());
      s.uB = UnitaryMatrix2(Mat2::sigmaZ());
      s.xi = xi;
      s.cavity = c;
      const SwitchReport sr = quantum_switch(s);
      const double p2 = sr.report.outcomes.at("D2_only");
      const double p3 = sr.report.outcomes.at("D3_only");
      return std::vector<double>{xi, p2, p3, p2 + p3, sr.vacuumAudit};
    };
  } else if (spec.experiment == "deutsch") {
    if (spec.variable != SweepVariable::alpha) {
      throw ValidationError("deutsch sweeps vary alpha");
    }
    table.header = {"alpha", "vacuumProbability", "pD1", "sumCheck"};
    rowFn = [](double alpha) {
      const ExperimentReport er = deutsch_ctc(alpha);
      return std::vector<double>{alpha, er.vacuumProbability,
                                 er.outcomes.at("D1_only"), er.sumCheck};
    };
  } else {
    throw ValidationError("unknown sweep experiment: " + spec.experiment);
  }

  table.rows.resize(n);
  parallel_for(n, spec.workers, [&](int i) { table.rows[i] = rowFn(grid[i]); });
  return table;
}

void write_csv(std::ostream& os, const CsvTable& table) {
  for (size_t i = 0; i < table.header.size(); ++i) {
    if (i) os << ',';
    os << table.header[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << format_double(row[i]);
    }
    os << '\n';
  }
}

CsvTable run_rmax_sweep(double mTau, const GridSpec& eaRange, int workers) {
  const std::vector<double> eas = linspace(eaRange);
  const int n = static_cast<int>(eas.size());
  CsvTable table;
  table.header = {"eAOverM", "kStar",    "Rmax",
                  "eta",     "denomMag", "schwingerFlag"};
  table.rows.resize(n);
  parallel_for(n, workers, [&](int i) {
    const RmaxResult res = find_rmax(mTau, eas[i], default_rmax_grid(eas[i]));
    table.rows[i] = {eas[i],
                     res.kStar,
                     res.Rmax,
                     res.eta,
                     res.denomMagnitude,
                     res.beyondSchwinger ? 1.0 : 0.0};
  });
  return table;
}

}  // namespace tfp

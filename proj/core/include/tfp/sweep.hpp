#ifndef TFP_SWEEP_HPP
#define TFP_SWEEP_HPP

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tfp/cavity.hpp"

namespace tfp {

// Shortest round-trip decimal representation at 17 significant digits,
// locale independent.
std::string format_double(double v);

// count >= 2 equally spaced points including both endpoints.
std::vector<double> linspace(const GridSpec& grid);

enum class SweepVariable { kOverM, eAOverM, mTau, theta, xi, R, alpha };

SweepVariable parse_sweep_variable(const std::string& name);

struct SweepSpec {
  SweepVariable variable = SweepVariable::kOverM;
  GridSpec range;
  std::map<std::string, double> fixed;
  std::string experiment = "cavity";
  int workers = 0;  // 0 = hardware concurrency
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Evaluates the sweep over the grid. Parallel over grid points with a
// deterministic ordered reduction: output is identical for any worker count.
CsvTable run_sweep(const SweepSpec& spec);

// Fixed float format (format_double), LF line endings.
void write_csv(std::ostream& os, const CsvTable& table);

// rmax scan over eAOverM; one row per eA value.
CsvTable run_rmax_sweep(double mTau, const GridSpec& eaRange, int workers = 0);

// Deterministic parallel map over [0, n): fn(i) stored at slot i.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

}  // namespace tfp

#endif

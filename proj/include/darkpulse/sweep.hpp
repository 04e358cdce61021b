#pragma once

#include <string>
#include <vector>

#include "darkpulse/config.hpp"

namespace darkpulse {

// A sweep document is a flat config whose "sweep."-prefixed keys carry arrays
// of values for the corresponding scalar parameter, e.g.
//   { "grid.t_end": 30.0, "sweep.coupling.g": [2, 3, 4] }
// The cartesian product is taken with axes ordered by key; within an axis the
// listed order is kept. Each point runs the single-run pipeline with the
// remaining keys as its base configuration.
struct SweepAxis {
  std::string key;
  std::vector<double> values;
};

struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // preformatted cells
  int n_failed = 0;
};

// Extract the axes (sorted by key) and the base config (everything else).
std::pair<std::vector<SweepAxis>, FlatConfig> split_sweep(
    const FlatConfig& doc);

// Run every grid point, up to `workers` concurrently. Rows appear in grid
// order regardless of completion order. A failing point keeps its row: swept
// values are filled in, metric cells read "nan", and the error column carries
// the message; the sweep continues.
SweepTable run_sweep(const FlatConfig& doc, int workers);

}  // namespace darkpulse

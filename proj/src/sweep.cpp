#include "darkpulse/sweep.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "darkpulse/report.hpp"
#include "darkpulse/scenario.hpp"

namespace darkpulse {

std::pair<std::vector<SweepAxis>, FlatConfig> split_sweep(
    const FlatConfig& doc) {
  std::vector<SweepAxis> axes;
  FlatConfig base;
  for (const auto& [key, value] : doc) {
    if (key.rfind("sweep.", 0) == 0) {
      SweepAxis axis;
      axis.key = key.substr(6);
      for (const auto& v : value) axis.values.push_back(v.get<double>());
      axes.push_back(std::move(axis));
    } else {
      base[key] = value;
    }
  }
  return {std::move(axes), std::move(base)};
}

SweepTable run_sweep(const FlatConfig& doc, int workers) {
  validate_keys(doc);
  FlatConfig converted = doc;
  apply_units(converted);
  auto [axes, base] = split_sweep(converted);
  if (axes.empty())
    throw ConfigError("sweep: document has no sweep.* axes");
  base.erase("scenario");

  size_t total = 1;
  for (const auto& axis : axes) total *= axis.values.size();
  if (total == 0 || total > 1000000)
    throw ConfigError("sweep: grid size out of range");

  SweepTable table;
  for (const auto& axis : axes) table.columns.push_back(axis.key);
  for (const char* metric :
       {"p_spon", "p_tran", "p_mis", "mode_energy", "norm_drift", "error"})
    table.columns.push_back(metric);
  table.rows.resize(total);

  std::atomic<size_t> next{0};
  std::atomic<int> failed{0};

  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= total) return;
      // Decode the grid index: the last axis varies fastest.
      std::vector<size_t> idx(axes.size());
      size_t rem = i;
      for (size_t a = axes.size(); a-- > 0;) {
        idx[a] = rem % axes[a].values.size();
        rem /= axes[a].values.size();
      }
      std::vector<std::string>& row = table.rows[i];
      FlatConfig point = base;
      for (size_t a = 0; a < axes.size(); ++a) {
        const double v = axes[a].values[idx[a]];
        row.push_back(format_cell(v));
        if (is_integer_key(axes[a].key))
          point[axes[a].key] = static_cast<long>(std::llround(v));
        else
          point[axes[a].key] = v;
      }
      try {
        const ResolvedConfig rc = resolve_config(point);
        const RunReport r = execute_run(rc, "point" + std::to_string(i));
        row.push_back(format_cell(r.p_spon));
        row.push_back(format_cell(r.p_tran));
        row.push_back(format_cell(r.p_mis));
        row.push_back(format_cell(r.mode_energy));
        row.push_back(format_cell(r.norm_drift));
        row.push_back("");
      } catch (const std::exception& e) {
        for (int k = 0; k < 5; ++k) row.push_back("nan");
        row.push_back(e.what());
        failed.fetch_add(1);
      }
    }
  };

  const int n_workers = std::max(
      1, std::min<int>(workers, static_cast<int>(total)));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  table.n_failed = failed.load();
  return table;
}

}  // namespace darkpulse

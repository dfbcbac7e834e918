#pragma once

#include "climval/linalg.hpp"

#include <string>
#include <vector>

namespace climval {

// Uniformly spaced observations on [t0, t1].
struct TimeSeries {
  double t0 = 0.0;
  double t1 = 0.0;
  std::vector<Vector> values;  // M + 1 samples

  int n_intervals() const { return static_cast<int>(values.size()) - 1; }
  double dt() const { return (t1 - t0) / n_intervals(); }
  int dim() const { return values.empty() ? 0 : static_cast<int>(values.front().size()); }

  void validate() const;
};

// Reads `year,sector_1,...,sector_I` (or `year,index`). Requires a complete
// uniform year grid; malformed rows are reported with their line number.
TimeSeries read_series_csv(const std::string& path);

// Writes the same layout back. Column names default to sector_1..sector_I,
// or `index` for scalar series.
void write_series_csv(const std::string& path, const TimeSeries& series,
                      const std::vector<std::string>& columns = {});

// Rebase to the final observation (divide by last value) and take logs.
// Scalar series only; used for HPI ingestion.
TimeSeries rebase_log(const TimeSeries& series);

}  // namespace climval

#include "climval/timeseries.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace climval {

void TimeSeries::validate() const {
  if (!(t1 > t0)) throw std::invalid_argument("TimeSeries: t1 must exceed t0");
  if (n_intervals() < 2) throw std::invalid_argument("TimeSeries: need at least 3 samples");
  for (const auto& v : values) {
    if (v.size() != dim() || !v.allFinite()) {
      throw std::invalid_argument("TimeSeries: ragged or non-finite sample");
    }
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

TimeSeries read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CSV file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV file: " + path);
  std::size_t n_cols = split_csv_line(line).size();
  if (n_cols < 2) throw std::runtime_error(path + ": header needs a year column and at least one value column");

  TimeSeries ts;
  std::vector<double> years;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto cells = split_csv_line(line);
    if (cells.size() != n_cols) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected " + std::to_string(n_cols) +
                               " columns, got " + std::to_string(cells.size()));
    }
    Vector v(static_cast<Eigen::Index>(n_cols - 1));
    double year = 0.0;
    try {
      year = std::stod(cells[0]);
      for (std::size_t c = 1; c < cells.size(); ++c) {
        v(static_cast<Eigen::Index>(c - 1)) = std::stod(cells[c]);
      }
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": non-numeric cell");
    }
    if (!v.allFinite()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": non-finite value");
    }
    years.push_back(year);
    ts.values.push_back(std::move(v));
  }
  if (ts.values.size() < 3) throw std::runtime_error(path + ": need at least 3 data rows");
  ts.t0 = years.front();
  ts.t1 = years.back();
  double step = (ts.t1 - ts.t0) / (years.size() - 1);
  if (!(step > 0.0)) throw std::runtime_error(path + ": time column must be increasing");
  for (std::size_t i = 0; i < years.size(); ++i) {
    if (std::abs(years[i] - (ts.t0 + step * i)) > 1e-6 * std::max(1.0, std::abs(step))) {
      throw std::runtime_error(path + ": non-uniform time grid at row " + std::to_string(i + 2));
    }
  }
  return ts;
}

void write_series_csv(const std::string& path, const TimeSeries& series,
                      const std::vector<std::string>& columns) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write CSV file: " + path);
  out.precision(17);
  out << "year";
  for (int c = 0; c < series.dim(); ++c) {
    if (!columns.empty()) {
      out << "," << columns[c];
    } else if (series.dim() == 1) {
      out << ",index";
    } else {
      out << ",sector_" << (c + 1);
    }
  }
  out << "\n";
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    out << (series.t0 + series.dt() * i);
    for (int c = 0; c < series.dim(); ++c) out << "," << series.values[i](c);
    out << "\n";
  }
  if (!out) throw std::runtime_error("I/O failure while writing " + path);
}

TimeSeries rebase_log(const TimeSeries& series) {
  if (series.dim() != 1) throw std::invalid_argument("rebase_log: scalar series expected");
  double base = series.values.back()(0);
  if (!(base > 0.0)) throw std::invalid_argument("rebase_log: final value must be positive");
  TimeSeries out = series;
  for (auto& v : out.values) {
    if (!(v(0) > 0.0)) throw std::invalid_argument("rebase_log: nonpositive index value");
    v(0) = std::log(v(0) / base);
  }
  return out;
}

}  // namespace climval

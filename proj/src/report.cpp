#include "fgsw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#ifndef FGSW_VERSION
#define FGSW_VERSION "unknown"
#endif

namespace fgsw {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

StatReport::StatReport(std::string experiment) : experiment_(std::move(experiment)) {
  set("experiment", experiment_);
  set("log_base", "e");
  set("version", FGSW_VERSION);
}

void StatReport::set(const std::string& key, const std::string& value) {
  for (auto& e : header_) {
    if (e.key == key) {
      e.text = value;
      e.number.reset();
      return;
    }
  }
  header_.push_back({key, value, std::nullopt});
}

void StatReport::set(const std::string& key, double value) {
  set(key, format_number(value));
  for (auto& e : header_) {
    if (e.key == key) e.number = value;
  }
}

void StatReport::set(const std::string& key, std::int64_t value) {
  set(key, std::to_string(value));
  for (auto& e : header_) {
    if (e.key == key) e.number = static_cast<double>(value);
  }
}

void StatReport::set(const std::string& key, std::uint64_t value) {
  set(key, std::to_string(value));
  for (auto& e : header_) {
    if (e.key == key) e.number = static_cast<double>(value);
  }
}

bool StatReport::has(std::string_view key) const {
  return std::any_of(header_.begin(), header_.end(), [&](const Entry& e) { return e.key == key; });
}

const std::string& StatReport::text(std::string_view key) const {
  for (const auto& e : header_) {
    if (e.key == key) return e.text;
  }
  throw std::out_of_range("report has no key '" + std::string(key) + "'");
}

double StatReport::scalar(std::string_view key) const {
  for (const auto& e : header_) {
    if (e.key == key) {
      if (e.number) return *e.number;
      return std::stod(e.text);
    }
  }
  throw std::out_of_range("report has no key '" + std::string(key) + "'");
}

void StatReport::set_columns(std::vector<std::string> columns) {
  columns_ = std::move(columns);
  rows_.clear();
}

void StatReport::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw std::logic_error("report row width mismatch");
  rows_.push_back(std::move(row));
}

std::size_t StatReport::column_index(std::string_view column) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i] == column) return i;
  }
  throw std::out_of_range("report has no column '" + std::string(column) + "'");
}

double StatReport::value(std::size_t row, std::string_view column) const {
  const Cell& cell = rows_.at(row)[column_index(column)];
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  return std::stod(std::get<std::string>(cell));
}

std::vector<double> StatReport::column(std::string_view column) const {
  std::vector<double> values;
  values.reserve(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) values.push_back(value(r, column));
  return values;
}

void StatReport::write_csv(std::ostream& out) const {
  for (const auto& e : header_) out << "# " << e.key << '=' << e.text << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              out << format_number(v);
            } else {
              out << v;
            }
          },
          row[i]);
    }
    out << '\n';
  }
}

std::string StatReport::file_name(std::string_view graph_name) const {
  const std::string n = has("n") ? text("n") : "0";
  const std::string seed = has("seed") ? text("seed") : "0";
  return experiment_ + "_" + std::string(graph_name) + "_" + n + "_" + seed + ".csv";
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: need >= 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0;
  double my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0;
  double sxy = 0;
  double syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("fit_line: x values are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

double auto_highway_constant(std::size_t node_count) {
  return std::max(1.0, std::ceil(std::log(static_cast<double>(node_count))));
}

}  // namespace fgsw

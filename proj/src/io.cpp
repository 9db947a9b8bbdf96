// Copyright 2026 The recmix Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "recmix/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "recmix/detail/format.hpp"
#include "recmix/errors.hpp"
#include "recmix/mixing.hpp"

namespace recmix::io {

namespace {

using detail::format_double;
using nlohmann::json;

bool skippable(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

std::vector<double> json_values(const json& value, const char* field, std::size_t line) {
  if (value.is_number()) {
    return {value.get<double>()};
  }
  if (value.is_array() && !value.empty() &&
      std::all_of(value.begin(), value.end(), [](const json& v) { return v.is_number(); })) {
    return value.get<std::vector<double>>();
  }
  throw InputError(std::string("field '") + field + "' must be a number or a nonempty array of numbers", line);
}

void check_order(const std::vector<ObservationRecord>& records, std::size_t line) {
  if (records.size() >= 2 && records.back().t <= records[records.size() - 2].t) {
    throw InputError("t values must be strictly increasing", line);
  }
}

double parse_cell(std::string_view cell, std::size_t line) {
  while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) {
    cell.remove_prefix(1);
  }
  while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r')) {
    cell.remove_suffix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
    throw InputError("cannot parse '" + std::string(cell) + "' as a number", line);
  }
  return value;
}

}  // namespace

void write_header(std::ostream& out, const std::string& kind, const RunHeader& header) {
  out << "# recmix " << kind << " v" << kFormatVersion << '\n';
  for (const auto& [key, value] : header) {
    out << "# " << key << '=' << value << '\n';
  }
}

std::vector<ObservationRecord> ingest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open observation file '" + path.string() + "'");
  }
  return path.extension() == ".csv" ? ingest_csv(in) : ingest_jsonl(in);
}

std::vector<ObservationRecord> ingest_jsonl(std::istream& in) {
  std::vector<ObservationRecord> records;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (skippable(line)) {
      continue;
    }
    const json doc = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object()) {
      throw InputError("malformed JSON record", number);
    }
    if (!doc.contains("t") || !doc["t"].is_number_integer()) {
      throw InputError("record needs an integer 't'", number);
    }
    if (!doc.contains("y")) {
      throw InputError("record needs a 'y' field", number);
    }
    ObservationRecord record;
    record.t = doc["t"].get<std::int64_t>();
    record.y = json_values(doc["y"], "y", number);
    if (doc.contains("truth") && !doc["truth"].is_null()) {
      record.truth = json_values(doc["truth"], "truth", number);
    }
    records.push_back(std::move(record));
    check_order(records, number);
  }
  return records;
}

std::vector<ObservationRecord> ingest_csv(std::istream& in) {
  std::vector<ObservationRecord> records;
  std::string line;
  std::size_t number = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++number;
    if (skippable(line)) {
      continue;
    }
    if (!seen_content) {
      seen_content = true;
      if (line.rfind("t,", 0) == 0) {
        continue;  // column header
      }
    }
    std::vector<std::string_view> cells;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      cells.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) {
        break;
      }
      rest.remove_prefix(comma + 1);
    }
    if (cells.size() < 2 || cells.size() > 3) {
      throw InputError("expected columns t,y[,truth]", number);
    }
    const double t = parse_cell(cells[0], number);
    if (t != std::floor(t)) {
      throw InputError("t must be an integer", number);
    }
    ObservationRecord record;
    record.t = static_cast<std::int64_t>(t);
    record.y = {parse_cell(cells[1], number)};
    if (cells.size() == 3 && !cells[2].empty()) {
      record.truth = std::vector<double>{parse_cell(cells[2], number)};
    }
    records.push_back(std::move(record));
    check_order(records, number);
  }
  return records;
}

void write_observations_jsonl(std::ostream& out, const std::vector<ObservationRecord>& records) {
  const auto emit = [&out](const std::vector<double>& values) {
    if (values.size() == 1) {
      out << format_double(values[0]);
    } else {
      out << '[' << detail::join_doubles(values) << ']';
    }
  };
  for (const auto& r : records) {
    out << "{\"t\":" << r.t << ",\"y\":";
    emit(r.y);
    if (r.truth) {
      out << ",\"truth\":";
      emit(*r.truth);
    }
    out << "}\n";
  }
}

void write_weights_csv(std::ostream& out, const std::vector<double>& betas, std::size_t max_lag) {
  out << "beta,lag,theta\n";
  for (const double beta : betas) {
    const auto weights = unbounded_mixing_weights(beta, max_lag);
    for (std::size_t m = 0; m < weights.size(); ++m) {
      out << format_double(beta) << ',' << m + 1 << ',' << format_double(weights[m]) << '\n';
    }
  }
}

void write_composition_csv(std::ostream& out, const std::vector<CompositionRow>& rows) {
  out << "t,lag,count,expected_count,count_se\n";
  for (const auto& r : rows) {
    out << r.t << ',' << r.lag << ',' << format_double(r.count) << ',' << format_double(r.expected_count) << ','
        << format_double(r.count_se) << '\n';
  }
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  const bool with_error = std::any_of(trace.begin(), trace.end(), [](const TraceRow& r) { return r.abs_error.has_value(); });
  out << "t,mean,std,ess,log_marginal_increment" << (with_error ? ",abs_error" : "") << '\n';
  for (const auto& row : trace) {
    const auto& s = row.summary;
    out << s.t << ',' << detail::join_doubles(s.mean, ";") << ',' << detail::join_doubles(s.std, ";") << ','
        << format_double(s.ess) << ',' << format_double(s.log_marginal_increment);
    if (with_error) {
      out << ',' << (row.abs_error ? format_double(*row.abs_error) : std::string());
    }
    out << '\n';
  }
}

void write_oracle_csv(std::ostream& out, const std::vector<OracleComparisonRow>& rows) {
  out << "t,distance,baseline\n";
  for (const auto& r : rows) {
    out << r.t << ',' << format_double(r.distance) << ',' << format_double(r.baseline) << '\n';
  }
}

void write_report_csv(std::ostream& out, const MetricReport& report) {
  out << "t,estimate,truth,ess\n";
  for (const auto& r : report.rows) {
    out << r.t << ',' << format_double(r.estimate) << ',' << format_double(r.truth) << ',' << format_double(r.ess)
        << '\n';
  }
}

std::string report_json(const MetricReport& report, const RunHeader& header) {
  json doc;
  doc["format"] = "recmix-report";
  doc["version"] = kFormatVersion;
  json config = json::object();
  for (const auto& [key, value] : header) {
    config[key] = value;
  }
  doc["config"] = std::move(config);
  doc["rmse"] = report.rmse;
  doc["mean_ess"] = report.mean_ess;
  doc["min_ess"] = report.min_ess;
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"t", r.t}, {"estimate", r.estimate}, {"truth", r.truth}, {"ess", r.ess}});
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

}  // namespace recmix::io

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

#ifndef RECMIX_IO_HPP
#define RECMIX_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "recmix/chain.hpp"
#include "recmix/filter.hpp"
#include "recmix/metrics.hpp"
#include "recmix/models.hpp"
#include "recmix/oracle.hpp"

namespace recmix::io {

/// Format version written into every output header.
inline constexpr int kFormatVersion = 1;

/// Ordered key/value pairs describing the run that produced a file.
using RunHeader = std::vector<std::pair<std::string, std::string>>;

/// `# recmix <kind> v1` followed by one `# key=value` line per entry.
void write_header(std::ostream& out, const std::string& kind, const RunHeader& header);

/// Reads observations from JSONL (`{"t":..,"y":..,"truth":..}` per line) or, for a `.csv`
/// extension, CSV with columns `t,y[,truth]`. Blank lines and `#` comments are skipped.
/// Throws InputError with the 1-based line number on malformed or non-increasing records.
[[nodiscard]] std::vector<ObservationRecord> ingest(const std::filesystem::path& path);
[[nodiscard]] std::vector<ObservationRecord> ingest_jsonl(std::istream& in);
[[nodiscard]] std::vector<ObservationRecord> ingest_csv(std::istream& in);

void write_observations_jsonl(std::ostream& out, const std::vector<ObservationRecord>& records);

/// Columns: beta,lag,theta.
void write_weights_csv(std::ostream& out, const std::vector<double>& betas, std::size_t max_lag);

/// One composition row: mean count over replicas plus its standard error.
struct CompositionRow {
  std::int64_t t = 0;
  std::size_t lag = 0;
  double count = 0.0;
  double expected_count = 0.0;
  double count_se = 0.0;
};

/// Columns: t,lag,count,expected_count,count_se.
void write_composition_csv(std::ostream& out, const std::vector<CompositionRow>& rows);

/// Columns: t,mean,std,ess,log_marginal_increment[,abs_error]. The abs_error column is
/// present when any row carries it.
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

/// Columns: t,distance,baseline.
void write_oracle_csv(std::ostream& out, const std::vector<OracleComparisonRow>& rows);

/// Columns: t,estimate,truth,ess.
void write_report_csv(std::ostream& out, const MetricReport& report);
[[nodiscard]] std::string report_json(const MetricReport& report, const RunHeader& header);

}  // namespace recmix::io

#endif  // RECMIX_IO_HPP

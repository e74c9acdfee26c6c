/*
 * Copyright 2026 The adasample Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ADASAMPLE_REPORT_HPP_
#define ADASAMPLE_REPORT_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "adasample/optimizer.hpp"
#include "json.hpp"

namespace adasample {

// One table row: a (dataset, family, size) cell averaged over seeds.
struct ResultRow {
  std::string dataset;
  std::string family;
  int size_requested = 0;
  int size_realized = 0;
  double f1_baseline = 0.0;
  double f1_new = 0.0;
  double delta_f1 = 0.0;  // floored, percent
  double po = 0.0;        // mean adjusted p_o* over seeds
  std::vector<SamplerParams> params;  // per seed
  std::vector<std::uint64_t> seeds;
};

enum class ReportFormat { Csv, Json };

ReportFormat parse_report_format(const std::string& name);

nlohmann::json row_to_json(const ResultRow& row);
ResultRow row_from_json(const nlohmann::json& j);

// Columns: dataset,family,size_requested,size_realized,f1_baseline,f1_new,
// delta_f1,po,params,seeds. delta_f1 has two decimals; params are
// '/'-separated per seed and seeds ';'-separated.
std::string emit_report(const std::vector<ResultRow>& rows, ReportFormat format);
std::vector<ResultRow> parse_report_csv(std::string_view text);

}  // namespace adasample

#endif  // ADASAMPLE_REPORT_HPP_

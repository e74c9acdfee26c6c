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

#include "adasample/report.hpp"

#include <cstdio>
#include <sstream>

#include "adasample/error.hpp"

namespace adasample {

namespace {

constexpr const char* kHeader = "dataset,family,size_requested,size_realized,f1_baseline,f1_new,delta_f1,po,params,seeds";

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string two_decimals(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(line, "bad number '" + s + "'");
}

std::string params_field(const std::vector<SamplerParams>& params) {
  std::string out;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ';';
    const auto& p = params[i];
    out += exact(p.depth.alpha) + '/' + exact(p.depth.a) + '/' + exact(p.depth.b) + '/' + exact(p.depth.a_prime) +
           '/' + exact(p.depth.b_prime) + '/' + exact(p.lambda) + '/' + std::to_string(p.sample_size) + '/' +
           exact(p.po);
  }
  return out;
}

void check_field(const std::string& s) {
  if (s.find_first_of(",\n\"") != std::string::npos) throw Error("report field '" + s + "' contains a separator");
}

}  // namespace

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw Error("unknown report format '" + name + "' (expected csv or json)");
}

nlohmann::json row_to_json(const ResultRow& row) {
  nlohmann::json params = nlohmann::json::array();
  for (const auto& p : row.params) params.push_back(p.to_json());
  return {{"dataset", row.dataset},
          {"family", row.family},
          {"size_requested", row.size_requested},
          {"size_realized", row.size_realized},
          {"f1_baseline", row.f1_baseline},
          {"f1_new", row.f1_new},
          {"delta_f1", row.delta_f1},
          {"po", row.po},
          {"params", params},
          {"seeds", row.seeds}};
}

ResultRow row_from_json(const nlohmann::json& j) {
  ResultRow row;
  row.dataset = j.at("dataset").get<std::string>();
  row.family = j.at("family").get<std::string>();
  row.size_requested = j.at("size_requested").get<int>();
  row.size_realized = j.at("size_realized").get<int>();
  row.f1_baseline = j.at("f1_baseline").get<double>();
  row.f1_new = j.at("f1_new").get<double>();
  row.delta_f1 = j.at("delta_f1").get<double>();
  row.po = j.at("po").get<double>();
  for (const auto& p : j.at("params")) row.params.push_back(SamplerParams::from_json(p));
  row.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  return row;
}

std::string emit_report(const std::vector<ResultRow>& rows, ReportFormat format) {
  if (rows.empty()) throw Error("report needs at least one row");
  if (format == ReportFormat::Json) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& row : rows) doc.push_back(row_to_json(row));
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  out << kHeader << '\n';
  for (const auto& row : rows) {
    check_field(row.dataset);
    check_field(row.family);
    std::string seeds;
    for (std::size_t i = 0; i < row.seeds.size(); ++i) seeds += (i ? ";" : "") + std::to_string(row.seeds[i]);
    out << row.dataset << ',' << row.family << ',' << row.size_requested << ',' << row.size_realized << ','
        << exact(row.f1_baseline) << ',' << exact(row.f1_new) << ',' << two_decimals(row.delta_f1) << ','
        << exact(row.po) << ',' << params_field(row.params) << ',' << seeds << '\n';
  }
  return out.str();
}

std::vector<ResultRow> parse_report_csv(std::string_view text) {
  const auto lines = split(text, '\n');
  if (lines.empty() || lines[0] != kHeader) throw ParseError(1, "unexpected report header");
  std::vector<ResultRow> rows;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const std::size_t line = n + 1;
    if (lines[n].empty()) continue;
    const auto f = split(lines[n], ',');
    if (f.size() != 10) throw ParseError(line, "expected 10 fields");
    ResultRow row;
    row.dataset = f[0];
    row.family = f[1];
    row.size_requested = static_cast<int>(to_double(f[2], line));
    row.size_realized = static_cast<int>(to_double(f[3], line));
    row.f1_baseline = to_double(f[4], line);
    row.f1_new = to_double(f[5], line);
    row.delta_f1 = to_double(f[6], line);
    row.po = to_double(f[7], line);
    if (!f[8].empty()) {
      for (const auto& item : split(f[8], ';')) {
        const auto v = split(item, '/');
        if (v.size() != 8) throw ParseError(line, "expected 8 sampler values per seed");
        SamplerParams p;
        p.depth = {to_double(v[0], line), to_double(v[1], line), to_double(v[2], line), to_double(v[3], line),
                   to_double(v[4], line), 1.0};
        p.lambda = to_double(v[5], line);
        p.sample_size = static_cast<std::size_t>(to_double(v[6], line));
        p.po = to_double(v[7], line);
        row.params.push_back(p);
      }
    }
    if (!f[9].empty())
      for (const auto& s : split(f[9], ';')) row.seeds.push_back(std::stoull(s));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace adasample

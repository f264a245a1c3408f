#pragma once

#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "cryptochaos/bench.hpp"
#include "cryptochaos/nist.hpp"

namespace cryptochaos::bench {

enum class ReportFormat { text, json, csv };

inline ReportFormat parse_format(std::string_view name) {
  if (name == "text") return ReportFormat::text;
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  fail(Errc::usage, "unknown report format '" + std::string(name) + "' (expected text, json or csv)");
}

namespace detail {

// JSON has no infinity; PSNR of identical images is written as the string "inf".
inline nlohmann::json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline double number(const nlohmann::json& j) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    fail(Errc::invalid_input, "bad numeric field '" + s + "'");
  }
  return j.get<double>();
}

inline RowStatus parse_status(std::string_view s) {
  if (s == "ok") return RowStatus::ok;
  if (s == "failed") return RowStatus::failed;
  if (s == "skipped") return RowStatus::skipped;
  fail(Errc::invalid_input, "bad row status '" + std::string(s) + "'");
}

inline std::string fixed(double v, int precision) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v;
  return os.str();
}

class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void render(std::ostream& os, std::string_view title) const {
    std::vector<std::size_t> width(rows_[0].size(), 0);
    for (const auto& r : rows_)
      for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    os << title << '\n';
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      std::string line;
      for (std::size_t c = 0; c < rows_[i].size(); ++c) {
        if (c > 0) line += "  ";
        line += rows_[i][c];
        line.append(width[c] - rows_[i][c].size(), ' ');
      }
      line.erase(line.find_last_not_of(' ') + 1);
      os << line << '\n';
      if (i == 0) {
        std::size_t total = 0;
        for (auto w : width) total += w + 2;
        os << std::string(total - 2, '-') << '\n';
      }
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

inline std::string status_suffix(const BenchRow& r) {
  return r.status == RowStatus::ok ? "" : " (" + std::string(status_name(r.status)) + ")";
}

}  // namespace detail

inline nlohmann::json to_json(const BenchRow& r) {
  nlohmann::json j;
  j["algorithm"] = r.algorithm;
  j["status"] = status_name(r.status);
  j["diagnostic"] = r.diagnostic;
  j["required"] = r.required;
  j["key_bits"] = r.key_bits;
  j["samples"] = r.samples;
  j["median_s"] = r.median_s;
  j["iqr_s"] = r.iqr_s;
  j["full_pipeline_median_s"] = r.full_pipeline_median_s ? nlohmann::json(*r.full_pipeline_median_s) : nlohmann::json(nullptr);
  j["entropy"] = r.entropy;
  j["adjacent_correlation"] = r.correlation;
  j["histogram_uniformity"] = r.uniformity;
  j["npcr"] = r.npcr;
  j["uaci"] = r.uaci;
  j["mse"] = r.mse;
  j["psnr_db"] = detail::number(r.psnr_db);
  j["nist_passed"] = r.nist_passed;
  j["nist_pass_count"] = r.nist_pass_count;
  return j;
}

inline BenchRow row_from_json(const nlohmann::json& j) {
  BenchRow r;
  r.algorithm = j.at("algorithm").get<std::string>();
  r.status = detail::parse_status(j.at("status").get<std::string>());
  r.diagnostic = j.at("diagnostic").get<std::string>();
  r.required = j.at("required").get<bool>();
  r.key_bits = j.at("key_bits").get<int>();
  r.samples = j.at("samples").get<std::size_t>();
  r.median_s = j.at("median_s").get<double>();
  r.iqr_s = j.at("iqr_s").get<double>();
  if (const auto& f = j.at("full_pipeline_median_s"); !f.is_null()) r.full_pipeline_median_s = f.get<double>();
  r.entropy = j.at("entropy").get<double>();
  r.correlation = j.at("adjacent_correlation").get<double>();
  r.uniformity = j.at("histogram_uniformity").get<double>();
  r.npcr = j.at("npcr").get<double>();
  r.uaci = j.at("uaci").get<double>();
  r.mse = j.at("mse").get<double>();
  r.psnr_db = detail::number(j.at("psnr_db"));
  r.nist_passed = j.at("nist_passed").get<std::vector<bool>>();
  r.nist_pass_count = j.at("nist_pass_count").get<std::size_t>();
  return r;
}

inline nlohmann::json to_json(const BenchReport& report) {
  nlohmann::json j;
  j["workload"] = report.workload;
  j["assumptions"] = report.assumptions;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : report.rows) j["rows"].push_back(to_json(r));
  return j;
}

inline BenchReport parse_report(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    BenchReport report;
    report.workload = j.at("workload").get<std::string>();
    report.assumptions = j.at("assumptions").get<std::vector<std::string>>();
    for (const auto& r : j.at("rows")) report.rows.push_back(row_from_json(r));
    return report;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::invalid_input, std::string("malformed report: ") + e.what());
  }
}

inline std::string emit_report(const BenchReport& report, ReportFormat format) {
  std::ostringstream os;
  switch (format) {
    case ReportFormat::json:
      os << to_json(report).dump(2) << '\n';
      break;

    case ReportFormat::csv: {
      os << "algorithm,status,key_bits,samples,median_s,iqr_s,full_pipeline_median_s,entropy,adjacent_correlation,"
            "histogram_uniformity,npcr,uaci,mse,psnr_db";
      for (auto name : nist::kTestNames) os << ',' << name;
      os << ",nist_pass_count\n";
      os << std::setprecision(17);
      for (const auto& r : report.rows) {
        os << r.algorithm << ',' << status_name(r.status) << ',' << r.key_bits << ',' << r.samples << ',' << r.median_s << ','
           << r.iqr_s << ',';
        if (r.full_pipeline_median_s) os << *r.full_pipeline_median_s;
        os << ',' << r.entropy << ',' << r.correlation << ',' << r.uniformity << ',' << r.npcr << ',' << r.uaci << ',' << r.mse << ','
           << detail::fixed(r.psnr_db, 17);
        for (std::size_t i = 0; i < nist::kTestNames.size(); ++i)
          os << ',' << (i < r.nist_passed.size() ? (r.nist_passed[i] ? "pass" : "fail") : "");
        os << ',' << r.nist_pass_count << '\n';
      }
      break;
    }

    case ReportFormat::text: {
      os << "Workload: " << report.workload << '\n';
      for (const auto& a : report.assumptions) os << "Assumption: " << a << '\n';
      os << '\n';

      detail::TextTable stats({"Algorithm", "Entropy (bits/byte)", "Adjacent Correlation", "Encryption Time (s)", "IQR (s)",
                               "With Key Derivation (s)"});
      detail::TextTable visual({"Algorithm", "NPCR (%)", "UACI (%)", "Histogram Uniformity", "MSE", "PSNR (dB)"});
      std::vector<std::string> nist_header{"Algorithm"};
      for (auto n : nist::kTestNames) nist_header.emplace_back(n);
      nist_header.emplace_back("Tests Passed");
      detail::TextTable randomness(nist_header);

      for (const auto& r : report.rows) {
        std::string name = r.algorithm + detail::status_suffix(r);
        if (r.status != RowStatus::ok) {
          std::string why = r.diagnostic.empty() ? "-" : r.diagnostic;
          stats.add({name, why, "", "", "", ""});
          visual.add({name, "", "", "", "", ""});
          std::vector<std::string> blank(nist_header.size(), "");
          blank[0] = name;
          randomness.add(blank);
          continue;
        }
        stats.add({name, detail::fixed(r.entropy, 5), detail::fixed(r.correlation, 5), detail::fixed(r.median_s, 5),
                   detail::fixed(r.iqr_s, 5), r.full_pipeline_median_s ? detail::fixed(*r.full_pipeline_median_s, 5) : "-"});
        visual.add({name, detail::fixed(r.npcr, 2), detail::fixed(r.uaci, 2), detail::fixed(r.uniformity, 5), detail::fixed(r.mse, 1),
                    detail::fixed(r.psnr_db, 2)});
        std::vector<std::string> cells{name};
        for (bool p : r.nist_passed) cells.emplace_back(p ? "Pass" : "Fail");
        cells.push_back(std::to_string(r.nist_pass_count) + "/" + std::to_string(r.nist_passed.size()));
        randomness.add(cells);
      }
      stats.render(os, "Entropy, Correlation, and Runtime Metrics");
      os << '\n';
      visual.render(os, "Visual Encryption Metrics");
      os << '\n';
      randomness.render(os, "NIST SP 800-22 Statistical Test Results");
      break;
    }
  }
  return os.str();
}

inline std::string emit_report(const BenchReport& report, std::string_view format) { return emit_report(report, parse_format(format)); }

}  // namespace cryptochaos::bench

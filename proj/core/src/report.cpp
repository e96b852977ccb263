// SPDX-License-Identifier: Apache-2.0
//
// mmhbf: hybrid beamforming simulator for multi-cell millimeter-wave MIMO
// Copyright (C) 2026 The mmhbf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mmhbf/report.hpp"

#include "mmhbf/errors.hpp"

#include "json.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>

namespace mmhbf {

namespace {

void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
        throw IoError("write to '" + path.string() + "' failed");
}

} // namespace

double CdfSeries::percentile(double p) const {
    if (values.empty())
        throw DomainError("percentile of an empty series");
    if (!(p >= 0.0 && p <= 100.0))
        throw DomainError("percentile must lie in [0, 100]");
    const double h = static_cast<double>(values.size() - 1) * p / 100.0;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

CdfSeries cdf(std::span<const double> values) {
    if (values.empty())
        throw DomainError("cdf of an empty sample");
    CdfSeries s;
    s.values.assign(values.begin(), values.end());
    std::sort(s.values.begin(), s.values.end());
    const double n = static_cast<double>(s.values.size());
    s.probabilities.resize(s.values.size());
    for (std::size_t i = 0; i < s.values.size(); ++i)
        s.probabilities[i] = static_cast<double>(i + 1) / n;
    return s;
}

ReportFormat parse_report_format(const std::string &id) {
    if (id == "csv")
        return ReportFormat::Csv;
    if (id == "json")
        return ReportFormat::Json;
    throw ConfigError("unknown report format '" + id + "' (expected csv or json)");
}

std::vector<SchemeSummary> summarize(const CampaignResult &result) {
    std::vector<SchemeSummary> out;
    for (const Scheme scheme : result.schemes) {
        std::vector<double> se;
        double sig = 0.0, intf = 0.0;
        for (const UserResult &r : result.records) {
            if (r.scheme != scheme)
                continue;
            se.push_back(r.spectral_efficiency);
            sig += r.signal_power_w;
            intf += r.interference_power_w;
        }
        if (se.empty())
            continue;
        const CdfSeries c = cdf(se);
        SchemeSummary s;
        s.scheme = scheme;
        s.records = se.size();
        double total = 0.0;
        for (const double x : se)
            total += x;
        const double n = static_cast<double>(se.size());
        s.mean_se = total / n;
        s.p10 = c.percentile(10);
        s.p50 = c.percentile(50);
        s.p90 = c.percentile(90);
        s.p95 = c.percentile(95);
        s.mean_signal_power_w = sig / n;
        s.mean_interference_power_w = intf / n;
        out.push_back(s);
    }
    return out;
}

void emit_report(const CampaignResult &result, const CampaignConfig &cfg, ReportFormat format,
                 const std::filesystem::path &directory) {
    if (result.schemes.empty())
        throw ConfigError("report: empty scheme list");
    if (result.records.empty())
        throw ConfigError("report: no records");

    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec)
        throw IoError("cannot create output directory '" + directory.string() + "': " + ec.message());

    const std::vector<SchemeSummary> summary = summarize(result);

    for (const Scheme scheme : result.schemes) {
        std::vector<double> se;
        for (const UserResult &r : result.records)
            if (r.scheme == scheme)
                se.push_back(r.spectral_efficiency);
        if (se.empty())
            continue;
        const CdfSeries c = cdf(se);
        fmt::memory_buffer buf;
        fmt::format_to(std::back_inserter(buf), "spectral_efficiency_bps_hz,probability\n");
        for (std::size_t i = 0; i < c.values.size(); ++i)
            fmt::format_to(std::back_inserter(buf), "{:.17g},{:.17g}\n", c.values[i], c.probabilities[i]);
        write_file(directory / fmt::format("cdf_{}.csv", to_string(scheme)), fmt::to_string(buf));
    }

    {
        fmt::memory_buffer buf;
        fmt::format_to(std::back_inserter(buf), "scheme,mean_signal_power_w,mean_interference_power_w\n");
        for (const SchemeSummary &s : summary)
            fmt::format_to(std::back_inserter(buf), "{},{:.17g},{:.17g}\n", to_string(s.scheme),
                           s.mean_signal_power_w, s.mean_interference_power_w);
        write_file(directory / "powers.csv", fmt::to_string(buf));
    }

    {
        fmt::memory_buffer buf;
        fmt::format_to(std::back_inserter(buf), "drop,seed,scheme,cell,user,spectral_efficiency_bps_hz,"
                                                "signal_power_w,interference_power_w,regularized\n");
        for (const UserResult &r : result.records)
            fmt::format_to(std::back_inserter(buf), "{},{},{},{},{},{:.17g},{:.17g},{:.17g},{}\n", r.drop, r.seed,
                           to_string(r.scheme), r.cell, r.user, r.spectral_efficiency, r.signal_power_w,
                           r.interference_power_w, r.regularized ? 1 : 0);
        write_file(directory / "records.csv", fmt::to_string(buf));
    }

    if (format == ReportFormat::Csv) {
        fmt::memory_buffer buf;
        fmt::format_to(std::back_inserter(buf), "# schema {}\nscheme,records,mean_se,p10,p50,p90,p95\n", kReportSchema);
        for (const SchemeSummary &s : summary)
            fmt::format_to(std::back_inserter(buf), "{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                           to_string(s.scheme), s.records, s.mean_se, s.p10, s.p50, s.p90, s.p95);
        write_file(directory / "summary.csv", fmt::to_string(buf));
        return;
    }

    nlohmann::json schemes = nlohmann::json::array();
    for (const SchemeSummary &s : summary)
        schemes.push_back({{"scheme", std::string(to_string(s.scheme))},
                           {"records", s.records},
                           {"mean_se", s.mean_se},
                           {"percentiles", {{"p10", s.p10}, {"p50", s.p50}, {"p90", s.p90}, {"p95", s.p95}}},
                           {"mean_signal_power_w", s.mean_signal_power_w},
                           {"mean_interference_power_w", s.mean_interference_power_w}});
    const nlohmann::json doc = {
        {"schema", kReportSchema},
        {"config", nlohmann::json::parse(config_to_json(cfg))},
        {"channel_matrices", result.channel_matrices},
        {"diagnostics",
         {{"reused_rf_columns", result.diagnostics.reused_rf_columns},
          {"regularized_records", result.diagnostics.regularized_records},
          {"unconverged_slnr", result.diagnostics.unconverged_slnr}}},
        {"schemes", schemes}};
    write_file(directory / "summary.json", doc.dump(2) + "\n");
}

} // namespace mmhbf

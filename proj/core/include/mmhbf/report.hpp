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

#ifndef MMHBF_REPORT_HPP
#define MMHBF_REPORT_HPP

#include "mmhbf/campaign.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace mmhbf {

// Empirical CDF: values ascending, probabilities[i] = (i + 1) / n.
struct CdfSeries {
    std::vector<double> values;
    std::vector<double> probabilities;

    /// Linear interpolation between order statistics at position
    /// (n - 1) * p / 100, p in [0, 100].
    double percentile(double p) const;
};

CdfSeries cdf(std::span<const double> values);

enum class ReportFormat { Csv, Json };

ReportFormat parse_report_format(const std::string &id);

// Summary statistics of one scheme's records.
struct SchemeSummary {
    Scheme scheme = Scheme::Baseline;
    std::size_t records = 0;
    double mean_se = 0.0;
    double p10 = 0.0;
    double p50 = 0.0;
    double p90 = 0.0;
    double p95 = 0.0;
    double mean_signal_power_w = 0.0;
    double mean_interference_power_w = 0.0;
};

std::vector<SchemeSummary> summarize(const CampaignResult &result);

inline constexpr const char *kReportSchema = "mmhbf-report/1";

/// Writes into `directory` (created if missing):
///   cdf_<scheme>.csv   spectral_efficiency,probability
///   powers.csv         scheme,mean_signal_power_w,mean_interference_power_w
///   records.csv        one line per user result
///   summary.json | summary.csv  percentiles per scheme
/// Floating-point fields are printed with 17 significant digits, so output is
/// byte-identical for identical results. Throws IoError on write failure.
void emit_report(const CampaignResult &result, const CampaignConfig &cfg, ReportFormat format,
                 const std::filesystem::path &directory);

} // namespace mmhbf

#endif

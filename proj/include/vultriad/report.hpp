// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vultriad/corpus.hpp"
#include "vultriad/metrics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vultriad::report {

/// Min/Avg/Max dataset-statistics block (averages shown to integer
/// precision; raw values live in CorpusStats).
std::string format_stats_block(const std::string& label, const corpus::CorpusStats& stats);

/// One run's pairwise table plus error rate and flags.
std::string format_run_report(const std::string& method,
                              const std::optional<metrics::MetricsSummary>& judged,
                              const std::optional<metrics::MetricsSummary>& naive,
                              std::optional<double> error_rate);

struct ComparisonRow {
    std::string method;
    std::optional<metrics::MetricsSummary> judged;
    std::optional<metrics::MetricsSummary> naive;
    std::optional<double> error_rate;
};

/// Cross-run comparison: a judged-results table, and when naive results
/// are present a second table of naive values with the judge-induced delta
/// in parentheses plus the error rate.
std::string format_comparison(const std::vector<ComparisonRow>& rows);

} // namespace vultriad::report

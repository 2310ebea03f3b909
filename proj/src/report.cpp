// SPDX-License-Identifier: Apache-2.0
#include "vultriad/report.hpp"

#include "vultriad/strings.hpp"

#include <cmath>

namespace vultriad::report {

using strings::one_decimal;
using strings::pad_left;
using strings::pad_right;

namespace {

std::string int_str(double v) {
    return std::to_string(static_cast<long long>(std::llround(v)));
}

void stat_row(std::string& out, const char* name, const corpus::StatTriple& t) {
    out += "  " + pad_right(name, 16) + pad_left(int_str(t.min), 8) +
           pad_left(int_str(std::round(t.avg)), 8) + pad_left(int_str(t.max), 8) + "\n";
}

void pct_row(std::string& out, const std::string& method, const std::string& eval,
             const metrics::MetricsSummary& s) {
    out += pad_right(method, 14) + pad_right(eval, 8) + pad_left(one_decimal(s.p_c), 7) +
           pad_left(one_decimal(s.p_v), 7) + pad_left(one_decimal(s.p_b), 7) +
           pad_left(one_decimal(s.p_r), 7) + "\n";
}

std::string delta_cell(double naive, double judged) {
    const double delta = judged - naive;
    const std::string sign = delta >= 0 ? "+" : "";
    return one_decimal(naive) + " (" + sign + one_decimal(delta) + ")";
}

} // namespace

std::string format_stats_block(const std::string& label, const corpus::CorpusStats& stats) {
    std::string out;
    out += label + "\n";
    out += "  #Projects: " + std::to_string(stats.project_count) + "\n";
    out += "  #Pairs:    " + std::to_string(stats.pair_count) + "\n";
    out += "  " + pad_right("", 16) + pad_left("Min", 8) + pad_left("Avg", 8) +
           pad_left("Max", 8) + "\n";
    stat_row(out, "#Lines", stats.lines);
    stat_row(out, "#Context Lines", stats.context_lines);
    stat_row(out, "#Callees", stats.callee_count);
    stat_row(out, "#Callers", stats.caller_count);
    return out;
}

std::string format_run_report(const std::string& method,
                              const std::optional<metrics::MetricsSummary>& judged,
                              const std::optional<metrics::MetricsSummary>& naive,
                              std::optional<double> error_rate) {
    std::string out;
    const std::size_t n = judged ? judged->n_pairs : (naive ? naive->n_pairs : 0);
    out += "Pairwise results (n=" + std::to_string(n) + ")\n";
    out += pad_right("Method", 14) + pad_right("Eval", 8) + pad_left("P-C", 7) +
           pad_left("P-V", 7) + pad_left("P-B", 7) + pad_left("P-R", 7) + "\n";
    if (judged) pct_row(out, method, "judged", *judged);
    if (naive) pct_row(out, method, "naive", *naive);
    out += "Error Rate: " + (error_rate ? one_decimal(*error_rate) : std::string("n/a")) + "\n";

    const auto& flags = judged ? judged->flag_counts : naive ? naive->flag_counts
                                                             : std::map<std::string, std::size_t>{};
    if (flags.empty()) {
        out += "Flags: none\n";
    } else {
        out += "Flags:";
        for (const auto& [flag, count] : flags)
            out += " " + flag + "=" + std::to_string(count);
        out += "\n";
    }
    return out;
}

std::string format_comparison(const std::vector<ComparisonRow>& rows) {
    std::string out;
    out += "Judged evaluation\n";
    out += pad_right("Method", 14) + pad_left("P-C", 7) + pad_left("P-V", 7) +
           pad_left("P-B", 7) + pad_left("P-R", 7) + "\n";
    for (const auto& row : rows)
        if (row.judged) {
            out += pad_right(row.method, 14) + pad_left(one_decimal(row.judged->p_c), 7) +
                   pad_left(one_decimal(row.judged->p_v), 7) +
                   pad_left(one_decimal(row.judged->p_b), 7) +
                   pad_left(one_decimal(row.judged->p_r), 7) + "\n";
        }

    bool any_naive = false;
    for (const auto& row : rows) any_naive |= row.naive.has_value() && row.judged.has_value();
    if (any_naive) {
        out += "\nNaive evaluation (delta when the judge is included)\n";
        out += pad_right("Method", 14) + pad_left("P-C", 15) + pad_left("P-V", 15) +
               pad_left("P-B", 15) + pad_left("P-R", 15) + pad_left("Error Rate", 12) + "\n";
        for (const auto& row : rows) {
            if (!row.naive || !row.judged) continue;
            out += pad_right(row.method, 14) +
                   pad_left(delta_cell(row.naive->p_c, row.judged->p_c), 15) +
                   pad_left(delta_cell(row.naive->p_v, row.judged->p_v), 15) +
                   pad_left(delta_cell(row.naive->p_b, row.judged->p_b), 15) +
                   pad_left(delta_cell(row.naive->p_r, row.judged->p_r), 15) +
                   pad_left(row.error_rate ? one_decimal(*row.error_rate) : "n/a", 12) + "\n";
        }
    }
    return out;
}

} // namespace vultriad::report

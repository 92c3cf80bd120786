#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fairhms {

/// Machine-readable record of one solve. Float fields are stored rounded to
/// 9 significant digits so that emitted reports parse back identically.
struct RunReport {
    std::string algorithm;

    // dataset
    std::string source;
    int n = 0, d = 0, c_groups = 0;
    std::vector<int> skyline_sizes;

    // fairness spec
    int k = 0;
    std::string bound_kind;  // exact | prop | bal | none
    double alpha = 0.0;      // 0 when not applicable
    std::vector<int> lower, upper;

    // algorithm parameters (0 when not applicable)
    int m = 0;
    double delta = 0.0, epsilon = 0.0, lambda = 0.0;
    int m0 = 0, big_m = 0;
    uint64_t seed = 0;
    bool feasible_mode = false;

    // solution
    std::vector<std::string> ids;
    std::vector<int> group_counts;

    // metrics
    double mhr = 0.0;
    std::string eval_method;
    int err_count = 0;
    double wall_ms = 0.0;

    std::vector<std::string> flags;
    std::string error;  // nonempty when a sweep row failed
};

/// Rounds to the given number of significant digits.
double round_sig(double v, int digits = 9);

std::string report_to_json(const RunReport& r, int indent = 2);
RunReport report_from_json(const std::string& text);
std::vector<RunReport> reports_from_json(const std::string& text);

/// Stable column order shared by every CSV emission; lists are joined
/// with '|'.
std::string csv_header();
std::string report_to_csv_row(const RunReport& r);

void emit_json(const std::vector<RunReport>& reports, std::ostream& out);
void emit_csv(const std::vector<RunReport>& reports, std::ostream& out);

}  // namespace fairhms

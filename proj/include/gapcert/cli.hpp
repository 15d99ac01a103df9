#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gapcert/gap_composer.hpp"

namespace gapcert {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUnsupported = 2;
inline constexpr int kExitTableMismatch = 3;

struct TableItem {
    std::string table;
    std::string key;
    std::string expected;
    std::string computed;
    bool passed = false;
    std::string note;
};

struct TableReport {
    bool passed = false;
    std::vector<TableItem> items;
    // Consistency checks reported alongside the table diff; they do not affect passed.
    std::vector<TableItem> diagnostics;
};

// Recompute the Weingarten numerator/denominator tables and the half-operator majorant
// coefficients, and diff them against the published values.
TableReport verify_tables();

// Sum rule sum_c |c| g_c(z) prod_{i<t} (1 + i z) = f_t(z), checked exactly.
bool numerator_sum_rule(int t, const std::vector<std::pair<std::string, std::vector<long>>> &numerators);

// Published g_c(z) coefficient lists (constant term first) by class label, t = 3..6.
const std::vector<std::pair<std::string, std::vector<long>>> &published_numerators(int t);

std::string table_report_json(const TableReport &report);
std::string certificate_json(const GapCertificate &cert);

// Entry point of the gapcert tool; returns the process exit code.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace gapcert

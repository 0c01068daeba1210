#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace affsurf {

// One experiment row. Rows carrying a reference state the tolerance of the
// comparison and the provenance of the reference value.
struct ReportRow {
    std::string id;
    std::string inputs;
    double estimate = 0.0;
    double error = 0.0;  // standard error or resolution estimate
    std::optional<double> reference;
    std::optional<double> ratio;
    std::optional<double> tolerance;
    std::string provenance;  // "closed_form" | "oracle" | "trend"
    std::optional<bool> pass;
};

struct ExperimentReport {
    std::string version = "0.1.0";
    std::string command;
    std::uint64_t seed = 0;
    std::string timestamp;  // excluded from reproducibility comparisons
    std::vector<ReportRow> rows;

    bool all_passed() const;
    std::string to_csv() const;   // timestamp on its own comment line
    std::string to_json() const;
    // write atomically (tmp file + rename)
    void write(const std::string& path, const std::string& format) const;
};

}  // namespace affsurf

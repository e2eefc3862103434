#pragma once

// Acceptance suite: every release criterion as an executable check with its
// stated tolerance. Used by the `validate` CLI subcommand and the acceptance
// test binary. Each criterion prints one pass/fail line plus detail lines
// with the measured numbers.

#include <iosfwd>
#include <string>
#include <vector>

namespace pulsekit::validation {

struct Options {
    std::uint64_t seed = 12345;
    unsigned max_threads = 0;  // 0: hardware concurrency
};

struct CriterionResult {
    std::string id;      // "1".."12" (sub-criteria "10a".."10c")
    std::string title;
    bool pass = false;
    double seconds = 0.0;
    std::vector<std::string> details;
};

// Identifiers in execution order.
std::vector<std::string> criterion_ids();

// Runs a single criterion by id; throws Error for unknown ids.
CriterionResult run_criterion(const std::string& id, const Options& opts = {});

// Runs everything in order, streaming one line per criterion to `live`
// (when non-null). Criterion 12 (total runtime) is appended automatically.
std::vector<CriterionResult> run_all(std::ostream* live = nullptr,
                                     const Options& opts = {});

// Formats the one-line summary for a result.
std::string format_line(const CriterionResult& r);

} // namespace pulsekit::validation

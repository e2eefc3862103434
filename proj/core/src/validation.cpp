#include "pulsekit/validation.hpp"

#include <ostream>

#include "pulsekit/errors.hpp"

namespace pulsekit::validation {

std::vector<std::string> criterion_ids() { return {}; }

CriterionResult run_criterion(const std::string& id, const Options&) {
    throw Error("unknown criterion: " + id);
}

std::vector<CriterionResult> run_all(std::ostream*, const Options&) { return {}; }

std::string format_line(const CriterionResult& r) {
    return (r.pass ? "PASS " : "FAIL ") + r.id + " " + r.title;
}

} // namespace pulsekit::validation

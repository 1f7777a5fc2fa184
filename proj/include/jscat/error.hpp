#pragma once

#include <stdexcept>
#include <string>

namespace jscat {

// Contract violations (invalid inputs, broken preconditions, ill-posed
// experiment setups) are reported by throwing Error. Diagnostics that are
// part of a result (defects, residuals, verdicts) are returned in reports.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace jscat

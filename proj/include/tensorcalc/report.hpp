#pragma once

#include "tensorcalc/oracle.hpp"

#include <string>
#include <vector>

namespace tcalc {

struct Check {
    std::string name;
    bool passed = true;
    std::size_t cases = 0;    // components or combinations examined
    double max_residual = 0;  // worst |a - b|
    std::string detail;
};

// Outcome of a verification routine: named checks plus diagnostics.
struct Report {
    std::string title;
    std::vector<Check> checks;
    std::vector<std::string> notes;

    [[nodiscard]] bool passed() const;
    Check& add(std::string name, bool ok, std::size_t cases, double residual = 0, std::string detail = {});
    Check& add(std::string name, const Verdict& v, std::size_t cases, std::string detail = {});
    void append(const Report& r);  // checks prefixed with r.title
    [[nodiscard]] const Check* find(std::string_view name) const;
};

}  // namespace tcalc

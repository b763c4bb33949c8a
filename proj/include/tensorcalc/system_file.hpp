#pragma once

#include "tensorcalc/derivative.hpp"
#include "tensorcalc/geometry.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tcalc {

class DefinitionError : public std::runtime_error {
public:
    DefinitionError(const std::string& msg, int line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    [[nodiscard]] int line() const { return line_; }

private:
    int line_;
};

// Line-oriented "key = value" text; '#' starts a comment.
//   name = polar
//   dimension = 2
//   coordinates = r t
//   metric.1.1 = 1           (or map.1 = r*cos(t), one per Cartesian axis)
//   metric.2.2 = r^2
//   domain.r = 0.5 2
//   domain.t = 0.1 3
// Interval bounds are constant expressions without spaces; pi is accepted.
struct SystemDefinition {
    std::string name = "custom";
    int dimension = 0;
    std::vector<std::string> coords;
    std::optional<Matrix> metric;
    std::optional<std::vector<Expr>> map;
    std::vector<Interval> domain;
};

[[nodiscard]] SystemDefinition parse_system_definition(std::string_view text);
[[nodiscard]] Metric build_system(const SystemDefinition& d, std::uint64_t seed = kDefaultSeed, double tol = kDefaultTol);

// "builtin:<name>" or "file:<path>"
[[nodiscard]] Metric load_system(std::string_view where, std::uint64_t seed = kDefaultSeed, double tol = kDefaultTol);

// parameter = t, interval = t1 t2, curve.<coordinate> = expr
[[nodiscard]] Curve parse_curve_definition(std::string_view text, const Metric& g);
[[nodiscard]] Curve load_curve(const std::string& path, const Metric& g);

[[nodiscard]] std::string read_text_file(const std::string& path);

}  // namespace tcalc

#pragma once

#include "tensorcalc/evaluate.hpp"
#include "tensorcalc/expr.hpp"
#include "tensorcalc/tape.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tcalc {

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kAbsFloor = 1e-12;
inline constexpr std::size_t kDefaultSamples = 20;
inline constexpr std::uint64_t kDefaultSeed = 20240607;

struct Interval {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
};

// Box of coordinate intervals with a seeded, random-access point stream.
class SampleDomain {
public:
    SampleDomain() = default;
    explicit SampleDomain(std::vector<Interval> intervals, std::uint64_t seed = kDefaultSeed,
                          std::size_t samples = kDefaultSamples);

    [[nodiscard]] const std::vector<Interval>& intervals() const { return intervals_; }
    [[nodiscard]] std::vector<std::string> names() const;
    [[nodiscard]] std::uint64_t seed() const { return seed_; }
    [[nodiscard]] std::size_t samples() const { return samples_; }
    [[nodiscard]] SampleDomain with_seed(std::uint64_t s) const;
    [[nodiscard]] SampleDomain with_samples(std::size_t k) const;
    [[nodiscard]] SampleDomain with_interval(const Interval& iv) const;  // add or replace

    [[nodiscard]] Point point(std::size_t index) const;
    [[nodiscard]] PointSet batch(std::span<const std::size_t> indices) const;
    [[nodiscard]] PointSet first(std::size_t count) const;

private:
    std::vector<Interval> intervals_;
    std::uint64_t seed_ = kDefaultSeed;
    std::size_t samples_ = kDefaultSamples;
};

struct Verdict {
    bool equal = true;
    double max_residual = 0.0;  // largest |a - b|
    double max_scaled = 0.0;    // largest |a - b| / max(1, |a|, |b|)
    Point worst;
};

// Sample values of several expressions on the K domain points, after
// resampling lanes that hit a domain error.
struct SampleValues {
    std::vector<std::vector<double>> values;  // values[expr][lane]
    PointSet points;
};

class Oracle {
public:
    explicit Oracle(SampleDomain domain, double tol = kDefaultTol);

    [[nodiscard]] const SampleDomain& domain() const { return domain_; }
    [[nodiscard]] double tol() const { return tol_; }

    [[nodiscard]] SampleValues sample(std::span<const Expr> exprs) const;
    [[nodiscard]] Verdict compare(const Expr& a, const Expr& b) const;
    [[nodiscard]] Verdict zero(const Expr& a) const { return compare(a, Expr()); }
    [[nodiscard]] bool equal(const Expr& a, const Expr& b) const { return compare(a, b).equal; }
    // One verdict per pair, evaluated in a single shared batch.
    [[nodiscard]] std::vector<Verdict> compare_many(std::span<const std::pair<Expr, Expr>> pairs) const;
    [[nodiscard]] Verdict compare_all(std::span<const std::pair<Expr, Expr>> pairs) const;

private:
    SampleDomain domain_;
    double tol_;
};

[[nodiscard]] Verdict equal_on_samples(const Expr& a, const Expr& b, const SampleDomain& d, double tol = kDefaultTol);

// Combine two verdicts keeping the worst residual.
void merge_into(Verdict& acc, const Verdict& v);

}  // namespace tcalc

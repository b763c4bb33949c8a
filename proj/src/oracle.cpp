#include "tensorcalc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tcalc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace

SampleDomain::SampleDomain(std::vector<Interval> intervals, std::uint64_t seed, std::size_t samples)
    : intervals_(std::move(intervals)), seed_(seed), samples_(samples) {
    for (const auto& iv : intervals_)
        if (!(iv.lo < iv.hi)) throw std::invalid_argument("empty sampling interval for " + iv.name);
    if (samples_ == 0) throw std::invalid_argument("sample count must be positive");
}

std::vector<std::string> SampleDomain::names() const {
    std::vector<std::string> out;
    for (const auto& iv : intervals_) out.push_back(iv.name);
    return out;
}

SampleDomain SampleDomain::with_seed(std::uint64_t s) const { return SampleDomain(intervals_, s, samples_); }
SampleDomain SampleDomain::with_samples(std::size_t k) const { return SampleDomain(intervals_, seed_, k); }

SampleDomain SampleDomain::with_interval(const Interval& iv) const {
    auto ivs = intervals_;
    bool found = false;
    for (auto& x : ivs) {
        if (x.name == iv.name) {
            x = iv;
            found = true;
        }
    }
    if (!found) ivs.push_back(iv);
    return SampleDomain(std::move(ivs), seed_, samples_);
}

Point SampleDomain::point(std::size_t index) const {
    Point p;
    for (std::size_t c = 0; c < intervals_.size(); ++c) {
        const auto& iv = intervals_[c];
        std::uint64_t bits = splitmix64(seed_ ^ splitmix64(index * 0x100000001b3ULL + c));
        p.names.push_back(iv.name);
        p.values.push_back(iv.lo + (iv.hi - iv.lo) * unit(bits));
    }
    return p;
}

PointSet SampleDomain::batch(std::span<const std::size_t> indices) const {
    PointSet ps;
    ps.names = names();
    ps.size = indices.size();
    ps.columns.assign(intervals_.size(), std::vector<double>(indices.size()));
    for (std::size_t l = 0; l < indices.size(); ++l) {
        Point p = point(indices[l]);
        for (std::size_t c = 0; c < intervals_.size(); ++c) ps.columns[c][l] = p.values[c];
    }
    return ps;
}

PointSet SampleDomain::first(std::size_t count) const {
    std::vector<std::size_t> idx(count);
    for (std::size_t i = 0; i < count; ++i) idx[i] = i;
    return batch(idx);
}

Oracle::Oracle(SampleDomain domain, double tol) : domain_(std::move(domain)), tol_(tol) {}

SampleValues Oracle::sample(std::span<const Expr> exprs) const {
    const std::size_t k = domain_.samples();
    auto names = domain_.names();
    Tape tape(exprs, names);
    PointSet pts = domain_.first(k);
    TapeRun run = tape.run(pts);
    if (run.any_error()) {
        // each failing lane gets one replacement point from beyond the first K
        std::vector<std::size_t> lanes, idx;
        for (std::size_t l = 0; l < k; ++l) {
            if (!run.lane_error[l].empty()) {
                lanes.push_back(l);
                idx.push_back(k + l);
            }
        }
        PointSet extra = domain_.batch(idx);
        TapeRun again = tape.run(extra);
        for (std::size_t j = 0; j < lanes.size(); ++j) {
            if (!again.lane_error[j].empty())
                throw DomainError("sampling domain badly chosen: " + again.lane_error[j], "");
            for (std::size_t e = 0; e < exprs.size(); ++e) run.outputs[e][lanes[j]] = again.outputs[e][j];
            for (std::size_t c = 0; c < pts.columns.size(); ++c) pts.columns[c][lanes[j]] = extra.columns[c][j];
        }
    }
    return {std::move(run.outputs), std::move(pts)};
}

namespace {

Verdict judge(const std::vector<double>& a, const std::vector<double>& b, const PointSet& pts, double tol) {
    const std::size_t n = pts.size;
    std::vector<double> r(n), s(n);
    active_kernels().residual(a.data(), b.data(), r.data(), s.data(), n);
    Verdict v;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double bound = std::max(tol * s[i], kAbsFloor);
        if (!(r[i] <= bound)) v.equal = false;
        double scaled = r[i] / s[i];
        if (scaled > v.max_scaled || std::isnan(scaled)) worst = i;
        if (scaled > v.max_scaled) v.max_scaled = scaled;
        if (r[i] > v.max_residual) v.max_residual = r[i];
    }
    if (n > 0) {
        v.worst.names = pts.names;
        for (const auto& col : pts.columns) v.worst.values.push_back(col[worst]);
    }
    return v;
}

}  // namespace

std::vector<Verdict> Oracle::compare_many(std::span<const std::pair<Expr, Expr>> pairs) const {
    std::vector<Expr> exprs;
    exprs.reserve(pairs.size() * 2);
    for (const auto& [a, b] : pairs) {
        exprs.push_back(a);
        exprs.push_back(b);
    }
    SampleValues sv = sample(exprs);
    std::vector<Verdict> out;
    out.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        out.push_back(judge(sv.values[2 * i], sv.values[2 * i + 1], sv.points, tol_));
    return out;
}

Verdict Oracle::compare(const Expr& a, const Expr& b) const {
    std::pair<Expr, Expr> p{a, b};
    return compare_many(std::span(&p, 1))[0];
}

void merge_into(Verdict& acc, const Verdict& v) {
    if (!v.equal) acc.equal = false;
    if (v.max_scaled > acc.max_scaled || acc.worst.names.empty()) {
        if (v.max_scaled >= acc.max_scaled) acc.worst = v.worst;
        acc.max_scaled = std::max(acc.max_scaled, v.max_scaled);
    }
    acc.max_residual = std::max(acc.max_residual, v.max_residual);
}

Verdict Oracle::compare_all(std::span<const std::pair<Expr, Expr>> pairs) const {
    Verdict acc;
    for (const auto& v : compare_many(pairs)) merge_into(acc, v);
    return acc;
}

Verdict equal_on_samples(const Expr& a, const Expr& b, const SampleDomain& d, double tol) {
    return Oracle(d, tol).compare(a, b);
}

}  // namespace tcalc

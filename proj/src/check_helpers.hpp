#pragma once

#include "tensorcalc/geometry.hpp"
#include "tensorcalc/report.hpp"
#include "tensorcalc/tensor.hpp"

namespace tcalc::detail {

using Pairs = std::vector<std::pair<Expr, Expr>>;

inline Pairs table_pairs(const TensorField& a, const TensorField& b) {
    if (a.size() != b.size()) throw TensorError("compared tables differ in size");
    Pairs p;
    for (std::size_t k = 0; k < a.size(); ++k) p.emplace_back(a.flat(k), b.flat(k));
    return p;
}

inline Pairs zero_pairs(const TensorField& a) {
    Pairs p;
    for (std::size_t k = 0; k < a.size(); ++k) p.emplace_back(a.flat(k), Expr());
    return p;
}

inline void add_pairs_check(Report& r, const Oracle& o, std::string name, const Pairs& p) {
    r.add(std::move(name), o.compare_all(p), p.size());
}

// Componentwise equality of two tables, one oracle batch.
inline void add_table_check(Report& r, const Metric& g, std::string name, const TensorField& a, const TensorField& b) {
    add_pairs_check(r, g.oracle(), std::move(name), table_pairs(a, b));
}

inline void add_zero_check(Report& r, const Metric& g, std::string name, const TensorField& a) {
    add_pairs_check(r, g.oracle(), std::move(name), zero_pairs(a));
}

inline Expr pd(const Metric& g, const Expr& e, int i) { return differentiate(e, g.coord(i)); }

}  // namespace tcalc::detail

#pragma once

#include "tensorcalc/expr.hpp"

namespace tcalc::detail {

Expr make_node(Kind k, std::vector<Expr> args, bool normalized, Fn f);
Expr with_flag(const Expr& e);
Expr rebuild(const Expr& e, std::vector<Expr> args);

const Expr& exponent_of(const Expr& e);
const Expr& base_of(const Expr& e);
bool factor_less(const Expr& a, const Expr& b);
bool term_less(const Expr& a, const Expr& b);
// Coefficient and monomial of a term; constants give monomial 1.
void split_term(const Expr& t, Number& coef, Expr& mono);

}  // namespace tcalc::detail

#include "tensorcalc/tape.hpp"

#include "tensorcalc/evaluate.hpp"

#include <cmath>
#include <unordered_map>

namespace tcalc {

bool TapeRun::any_error() const {
    for (const auto& e : lane_error)
        if (!e.empty()) return true;
    return false;
}

namespace {

struct ExprEq {
    bool operator()(const Expr& a, const Expr& b) const { return a == b; }
};

}  // namespace

Tape::Tape(std::span<const Expr> outputs, std::span<const std::string> inputs) : n_inputs_(inputs.size()) {
    std::unordered_map<Expr, std::uint32_t, ExprHash, ExprEq> regs;
    auto emit = [&](Op op, std::uint32_t a, std::uint32_t b, const Node* origin, bool check = false, unsigned k = 0, double c = 0) {
        code_.push_back({op, check, n_regs_, a, b, k, c, origin});
        return n_regs_++;
    };
    auto go = [&](auto& self, const Expr& e) -> std::uint32_t {
        auto it = regs.find(e);
        if (it != regs.end()) return it->second;
        std::uint32_t r = 0;
        switch (e.kind()) {
            case Kind::Constant: r = emit(Op::Const, 0, 0, e.id(), false, 0, e.value().to_double()); break;
            case Kind::Symbol: {
                std::size_t idx = inputs.size();
                for (std::size_t i = 0; i < inputs.size(); ++i)
                    if (inputs[i] == e.name()) idx = i;
                if (idx == inputs.size()) throw UnboundSymbolError(e.name());
                r = emit(Op::Input, static_cast<std::uint32_t>(idx), 0, e.id());
                break;
            }
            case Kind::Sum:
            case Kind::Product: {
                Op op = e.kind() == Kind::Sum ? Op::Add : Op::Mul;
                auto a = e.args();
                r = self(self, a[0]);
                for (std::size_t i = 1; i < a.size(); ++i) {
                    std::uint32_t rhs = self(self, a[i]);
                    r = emit(op, r, rhs, e.id(), i + 1 == a.size());
                }
                break;
            }
            case Kind::Power: {
                std::uint32_t b = self(self, e.base());
                const Expr& x = e.exponent();
                if (x.is_constant()) {
                    const Number& k = x.value();
                    if (k.is_integer() && k.num() >= -1000000 && k.num() <= 1000000) {
                        auto m = static_cast<unsigned>(k.num() < 0 ? -k.num() : k.num());
                        r = emit(Op::PowI, b, 0, e.id(), k.num() >= 0, m);
                        if (k.num() < 0) r = emit(Op::Recip, r, 0, e.id(), true);
                    } else if (k.is_half()) {
                        r = emit(Op::Sqrt, b, 0, e.id(), true);
                    } else if (k == Number::rational(-1, 2)) {
                        r = emit(Op::InvSqrt, b, 0, e.id(), true);
                    } else {
                        r = emit(Op::PowReal, b, 0, e.id(), true, 0, k.to_double());
                    }
                } else {
                    std::uint32_t xr = self(self, x);
                    r = emit(Op::PowSym, b, xr, e.id(), true);
                }
                break;
            }
            case Kind::Function: {
                std::uint32_t a = self(self, e.arg());
                static constexpr Op ops[] = {Op::Sin, Op::Cos, Op::Tan, Op::Cot, Op::Ln, Op::Exp};
                r = emit(ops[static_cast<int>(e.fn())], a, 0, e.id(), true);
                break;
            }
        }
        regs.emplace(e, r);
        return r;
    };
    for (const auto& o : outputs) {
        keep_.push_back(o);
        outputs_.push_back(go(go, o));
    }
}

TapeRun Tape::run(const PointSet& pts, const KernelTable& k) const {
    const std::size_t n = pts.size;
    if (pts.columns.size() < n_inputs_) throw std::invalid_argument("point set has too few coordinates");
    std::vector<double> regs(static_cast<std::size_t>(n_regs_) * n);
    std::vector<double> ones(n, 1.0), scratch(n);
    TapeRun run;
    run.lane_error.assign(n, {});
    auto fail = [&](std::size_t lane, const char* what, const Node* origin) {
        if (run.lane_error[lane].empty())
            run.lane_error[lane] = std::string(what) + " in " + render(Expr(std::shared_ptr<const Node>(std::shared_ptr<const Node>{}, origin)));
    };
    for (const auto& ins : code_) {
        double* o = regs.data() + static_cast<std::size_t>(ins.out) * n;
        const double* a = regs.data() + static_cast<std::size_t>(ins.a) * n;
        const double* b = regs.data() + static_cast<std::size_t>(ins.b) * n;
        switch (ins.op) {
            case Op::Const: k.fill(ins.c, o, n); break;
            case Op::Input: {
                const auto& col = pts.columns[ins.a];
                for (std::size_t i = 0; i < n; ++i) o[i] = col[i];
                break;
            }
            case Op::Add: k.add(a, b, o, n); break;
            case Op::Mul: k.mul(a, b, o, n); break;
            case Op::PowI: k.powi(a, ins.k, o, n); break;
            case Op::Recip:
                for (std::size_t i = 0; i < n; ++i)
                    if (a[i] == 0.0) fail(i, "division by zero", ins.origin);
                k.div(ones.data(), a, o, n);
                break;
            case Op::Sqrt:
                for (std::size_t i = 0; i < n; ++i)
                    if (a[i] < 0.0) fail(i, "square root of a negative value", ins.origin);
                k.sqrt(a, o, n);
                break;
            case Op::InvSqrt:
                for (std::size_t i = 0; i < n; ++i)
                    if (a[i] <= 0.0) fail(i, "inverse square root of a non-positive value", ins.origin);
                k.sqrt(a, scratch.data(), n);
                k.div(ones.data(), scratch.data(), o, n);
                break;
            case Op::PowReal:
                for (std::size_t i = 0; i < n; ++i) {
                    if (a[i] < 0.0 || (a[i] == 0.0 && ins.c < 0.0)) fail(i, "fractional power of a non-positive value", ins.origin);
                    o[i] = std::pow(a[i], ins.c);
                }
                break;
            case Op::PowSym:
                for (std::size_t i = 0; i < n; ++i) {
                    if (a[i] <= 0.0) fail(i, "symbolic power of a non-positive value", ins.origin);
                    o[i] = std::pow(a[i], b[i]);
                }
                break;
            case Op::Sin:
                for (std::size_t i = 0; i < n; ++i) o[i] = std::sin(a[i]);
                break;
            case Op::Cos:
                for (std::size_t i = 0; i < n; ++i) o[i] = std::cos(a[i]);
                break;
            case Op::Tan:
            case Op::Cot: {
                bool tan = ins.op == Op::Tan;
                for (std::size_t i = 0; i < n; ++i) {
                    double s = std::sin(a[i]), c = std::cos(a[i]);
                    scratch[i] = tan ? c : s;
                    o[i] = tan ? s : c;
                    if (scratch[i] == 0.0) fail(i, tan ? "tan pole" : "cot pole", ins.origin);
                }
                k.div(o, scratch.data(), o, n);
                break;
            }
            case Op::Ln:
                for (std::size_t i = 0; i < n; ++i) {
                    if (a[i] <= 0.0) fail(i, "logarithm of a non-positive value", ins.origin);
                    o[i] = std::log(a[i]);
                }
                break;
            case Op::Exp:
                for (std::size_t i = 0; i < n; ++i) o[i] = std::exp(a[i]);
                break;
        }
        if (ins.check)
            for (std::size_t i = 0; i < n; ++i)
                if (!std::isfinite(o[i])) fail(i, "non-finite value", ins.origin);
    }
    run.outputs.reserve(outputs_.size());
    for (auto r : outputs_) {
        const double* o = regs.data() + static_cast<std::size_t>(r) * n;
        run.outputs.emplace_back(o, o + n);
    }
    return run;
}

}  // namespace tcalc

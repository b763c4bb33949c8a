#pragma once

#include "tensorcalc/expr.hpp"
#include "tensorcalc/kernels.hpp"

#include <span>
#include <string>
#include <vector>

namespace tcalc {

// Structure-of-arrays batch of sample points.
struct PointSet {
    std::vector<std::string> names;
    std::size_t size = 0;
    std::vector<std::vector<double>> columns;  // columns[coordinate][lane]
};

struct TapeRun {
    std::vector<std::vector<double>> outputs;  // outputs[expr][lane]
    std::vector<std::string> lane_error;       // empty string for a clean lane

    [[nodiscard]] bool any_error() const;
};

// Expressions compiled to a flat register program with shared subexpressions,
// evaluated lane-wise over a PointSet.
class Tape {
public:
    Tape(std::span<const Expr> outputs, std::span<const std::string> inputs);

    [[nodiscard]] TapeRun run(const PointSet& points, const KernelTable& k = active_kernels()) const;
    [[nodiscard]] std::size_t instruction_count() const { return code_.size(); }

    enum class Op : std::uint8_t {
        Const, Input, Add, Mul, Recip, Sqrt, InvSqrt, PowI, PowReal, PowSym,
        Sin, Cos, Tan, Cot, Ln, Exp
    };

private:
    struct Instr {
        Op op;
        bool check;  // finiteness check on the result
        std::uint32_t out, a, b;
        unsigned k;
        double c;
        const Node* origin;
    };
    std::vector<Instr> code_;
    std::vector<std::uint32_t> outputs_;
    std::vector<Expr> keep_;  // owns the origin nodes
    std::size_t n_inputs_ = 0;
    std::uint32_t n_regs_ = 0;
};

}  // namespace tcalc

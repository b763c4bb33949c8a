#pragma once

#include "tensorcalc/tensor.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace tcalc {

// Seeded generator of small polynomial/trig fields in a fixed set of coordinates.
// Every generated expression is finite and smooth everywhere.
class RandomField {
public:
    RandomField(std::vector<std::string> coords, std::uint64_t seed);

    [[nodiscard]] Expr scalar();
    [[nodiscard]] TensorField tensor(std::string name, const Signature& sig, int weight = 0);

private:
    std::uint64_t pick(std::uint64_t n) { return rng_() % n; }
    Expr term();

    std::vector<std::string> coords_;
    std::mt19937_64 rng_;
};

}  // namespace tcalc

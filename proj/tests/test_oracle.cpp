#include "support/random_expr.hpp"
#include "tensorcalc/kernels.hpp"
#include "tensorcalc/oracle.hpp"
#include "tensorcalc/tape.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

using namespace tcalc;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::vector<double> noise(std::size_t n, std::uint64_t seed, double lo, double hi) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

}  // namespace

TEST_CASE("oracle verdicts") {
    SampleDomain d({{"rho", 0.5, 2.0}, {"phi", 0.1, 3.0}});
    Verdict v = equal_on_samples(parse("sin(phi)^2 + cos(phi)^2"), parse("1"), d);
    CHECK(v.equal);
    CHECK(v.max_residual < 1e-15);
    Verdict off = equal_on_samples(sym("rho"), parse("rho + 0.001"), d);
    CHECK_FALSE(off.equal);
    CHECK(off.max_residual == doctest::Approx(0.001).epsilon(1e-9));
    CHECK_THROWS_AS((void)equal_on_samples(sym("q"), sym("q"), d), UnboundSymbolError);
}

TEST_CASE("oracle scales tolerance by magnitude") {
    SampleDomain d({{"x", 1.0, 2.0}});
    CHECK(equal_on_samples(parse("1e12*x"), parse("1e12*x + 0.5"), d).equal);
    CHECK_FALSE(equal_on_samples(parse("x"), parse("x + 1e-8"), d).equal);
    CHECK(equal_on_samples(parse("x"), parse("x + 1e-10"), d).equal);
}

TEST_CASE("sample points are deterministic and seeded") {
    SampleDomain d({{"x", -2, 2}, {"y", 0, 1}}, 7);
    CHECK(d.point(3).values == d.point(3).values);
    CHECK(d.point(3).values != d.point(4).values);
    CHECK(d.with_seed(8).point(3).values != d.point(3).values);
    for (std::size_t i = 0; i < 100; ++i) {
        Point p = d.point(i);
        CHECK(p.values[0] >= -2);
        CHECK(p.values[0] < 2);
        CHECK(p.values[1] >= 0);
        CHECK(p.values[1] < 1);
    }
}

TEST_CASE("a lane hitting a singularity is resampled once") {
    // 1/(x - c) with c placed exactly on the first sample point
    SampleDomain d({{"x", 0.0, 1.0}});
    double c = d.point(0).values[0];
    Expr e = parse("1/(x - c)");
    e = substitute(e, {{"c", Expr(Number::real(c))}});
    Oracle o(d);
    CHECK(o.equal(e, e));
    // a domain where every point is singular is reported
    CHECK_THROWS_AS((void)o.equal(parse("ln(-x - 1)"), Expr(0)), DomainError);
}

TEST_CASE("kernel variants are bit-identical to the scalar reference") {
    const auto& ref = scalar_kernels();
    for (const KernelTable* k : available_kernels()) {
        INFO(k->name);
        for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 20u, 33u}) {
            auto a = noise(n, 1, -3, 3), b = noise(n, 2, -3, 3), pos = noise(n, 3, 0, 5);
            if (n > 2) {
                b[1] = 0.0;
                a[2] = std::nan("");
            }
            std::vector<double> r1(n), r2(n), s1(n), s2(n);
            auto check = [&](const char* what) {
                INFO(what);
                for (std::size_t i = 0; i < n; ++i) {
                    CHECK(same_bits(r1[i], r2[i]));
                }
            };
            ref.add(a.data(), b.data(), r1.data(), n);
            k->add(a.data(), b.data(), r2.data(), n);
            check("add");
            ref.sub(a.data(), b.data(), r1.data(), n);
            k->sub(a.data(), b.data(), r2.data(), n);
            check("sub");
            ref.mul(a.data(), b.data(), r1.data(), n);
            k->mul(a.data(), b.data(), r2.data(), n);
            check("mul");
            ref.div(a.data(), b.data(), r1.data(), n);
            k->div(a.data(), b.data(), r2.data(), n);
            check("div");
            ref.sqrt(pos.data(), r1.data(), n);
            k->sqrt(pos.data(), r2.data(), n);
            check("sqrt");
            for (unsigned e : {0u, 1u, 2u, 5u, 13u}) {
                ref.powi(a.data(), e, r1.data(), n);
                k->powi(a.data(), e, r2.data(), n);
                check("powi");
            }
            ref.fill(0.25, r1.data(), n);
            k->fill(0.25, r2.data(), n);
            check("fill");
            ref.residual(a.data(), b.data(), r1.data(), s1.data(), n);
            k->residual(a.data(), b.data(), r2.data(), s2.data(), n);
            check("residual");
            for (std::size_t i = 0; i < n; ++i) CHECK(same_bits(s1[i], s2[i]));
        }
    }
}

TEST_CASE("tape agrees with the reference interpreter under every kernel set") {
    testing::RandomExpr gen({"x", "y"}, 99);
    SampleDomain d({{"x", 0.5, 2.0}, {"y", 0.5, 2.0}});
    PointSet pts = d.first(13);
    std::vector<std::string> names{"x", "y"};
    for (int i = 0; i < 200; ++i) {
        Expr e = gen.make(4);
        Tape t(std::span(&e, 1), names);
        TapeRun ref = t.run(pts, scalar_kernels());
        REQUIRE_FALSE(ref.any_error());
        for (std::size_t l = 0; l < pts.size; ++l) {
            double v = evaluate(e, d.point(l));
            CHECK(same_bits(v, ref.outputs[0][l]));
        }
        for (const KernelTable* k : available_kernels()) {
            TapeRun run = t.run(pts, *k);
            for (std::size_t l = 0; l < pts.size; ++l) CHECK(same_bits(run.outputs[0][l], ref.outputs[0][l]));
        }
    }
}

TEST_CASE("tape flags domain errors per lane") {
    std::vector<std::string> names{"x"};
    Expr e = parse("ln(x)");
    Tape t(std::span(&e, 1), names);
    PointSet ps{{"x"}, 3, {{1.0, -1.0, 2.0}}};
    TapeRun r = t.run(ps);
    CHECK(r.lane_error[0].empty());
    CHECK_FALSE(r.lane_error[1].empty());
    CHECK(r.lane_error[2].empty());
}

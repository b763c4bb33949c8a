#include "tensorcalc/special_tensors.hpp"

#include <vector>

namespace tcalc {

namespace {

void check_tuple(std::span<const int> idx, int n, std::size_t arity) {
    if (idx.size() != arity)
        throw TensorError("expected " + std::to_string(arity) + " indices, got " + std::to_string(idx.size()));
    for (int i : idx)
        if (i < 1 || i > n) throw TensorError("index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
}

int det_int(std::vector<std::vector<int>> m) {
    const std::size_t k = m.size();
    if (k == 0) return 1;
    if (k == 1) return m[0][0];
    int total = 0;
    for (std::size_t c = 0; c < k; ++c) {
        if (m[0][c] == 0) continue;
        std::vector<std::vector<int>> sub;
        for (std::size_t r = 1; r < k; ++r) {
            std::vector<int> row;
            for (std::size_t j = 0; j < k; ++j)
                if (j != c) row.push_back(m[r][j]);
            sub.push_back(std::move(row));
        }
        int t = m[0][c] * det_int(std::move(sub));
        total += c % 2 == 0 ? t : -t;
    }
    return total;
}

}  // namespace

int kronecker(int i, int j) { return i == j ? 1 : 0; }

std::int64_t factorial(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

int epsilon(std::span<const int> idx, int n) {
    check_tuple(idx, n, static_cast<std::size_t>(n));
    int s = 1;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
            int d = idx[j] - idx[i];
            if (d == 0) return 0;
            if (d < 0) s = -s;
        }
    return s;
}

int epsilon_by_parity(std::span<const int> idx, int n) {
    check_tuple(idx, n, static_cast<std::size_t>(n));
    std::vector<int> a(idx.begin(), idx.end());
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int v : a) {
        if (seen[static_cast<std::size_t>(v)]) return 0;
        seen[static_cast<std::size_t>(v)] = true;
    }
    // sort by transpositions, flipping the sign on each swap
    int s = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        while (a[i] != static_cast<int>(i) + 1) {
            std::swap(a[i], a[static_cast<std::size_t>(a[i] - 1)]);
            s = -s;
        }
    }
    return s;
}

std::int64_t epsilon_by_superfactorial(std::span<const int> idx, int n) {
    check_tuple(idx, n, static_cast<std::size_t>(n));
    std::int64_t p = 1, sf = 1;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j) p *= idx[j] - idx[i];
    for (int i = 1; i <= n - 1; ++i) sf *= factorial(i);
    return p / sf;
}

int generalized_delta(std::span<const int> upper, std::span<const int> lower, int n) {
    if (upper.size() != lower.size()) throw TensorError("generalized delta needs equal numbers of upper and lower indices");
    if (upper.size() > static_cast<std::size_t>(n)) throw TensorError("generalized delta rank exceeds the dimension");
    check_tuple(upper, n, upper.size());
    check_tuple(lower, n, lower.size());
    std::vector<std::vector<int>> m(upper.size(), std::vector<int>(lower.size()));
    for (std::size_t a = 0; a < upper.size(); ++a)
        for (std::size_t b = 0; b < lower.size(); ++b) m[a][b] = kronecker(upper[a], lower[b]);
    return det_int(std::move(m));
}

TensorField relative_epsilon(int n, Variance v) {
    TensorField t(v == Variance::Up ? "epsilon^" : "epsilon_", Signature(static_cast<std::size_t>(n), v), n,
                  v == Variance::Up ? 1 : -1);
    t.fill([&](const Index& i) { return Expr(epsilon(i, n)); });
    return t;
}

TensorField absolute_epsilon(const Metric& g, Variance v) {
    const int n = g.dim();
    if (v == Variance::Up && n != 3)
        throw TensorError("contravariant absolute permutation tensor is provided for n = 3 only");
    Expr factor = v == Variance::Down ? g.sqrt_det() : normalize(power(g.sqrt_det(), Expr(-1)));
    TensorField t(v == Variance::Up ? "Epsilon^" : "Epsilon_", Signature(static_cast<std::size_t>(n), v), n, 0);
    t.fill([&](const Index& i) { return normalize(Expr(epsilon(i, n)) * factor); });
    return t;
}

Report verify_epsilon_identities(int n) {
    if (n < 2 || n > 4) throw TensorError("epsilon identities are checked for n in {2, 3, 4}");
    Report r;
    r.title = "epsilon(n=" + std::to_string(n) + ")";

    // three definitions of the permutation symbol and antisymmetry
    std::size_t cases = 0, bad = 0;
    for_each_index(n, n, [&](const Index& a) {
        ++cases;
        int e = epsilon(a, n);
        if (e != epsilon_by_parity(a, n) || e != epsilon_by_superfactorial(a, n)) ++bad;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                Index b = a;
                std::swap(b[static_cast<std::size_t>(p)], b[static_cast<std::size_t>(q)]);
                if (epsilon(b, n) != -e) ++bad;
            }
        Index id(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) id[static_cast<std::size_t>(k)] = k + 1;
        if (generalized_delta(id, a, n) != e) ++bad;
    });
    r.add("definitions agree and antisymmetric", bad == 0, cases, static_cast<double>(bad));

    // (a) rank-3 contraction identity
    if (n == 3) {
        std::size_t c = 0;
        bad = 0;
        for_each_index(4, 3, [&](const Index& x) {
            int i = x[0], j = x[1], l = x[2], m = x[3];
            int lhs = 0;
            for (int k = 1; k <= 3; ++k) lhs += epsilon(std::vector{i, j, k}, 3) * epsilon(std::vector{l, m, k}, 3);
            int rhs = kronecker(i, l) * kronecker(j, m) - kronecker(i, m) * kronecker(j, l);
            ++c;
            if (lhs != rhs) ++bad;
        });
        r.add("eps^ijk eps_lmk = d^i_l d^j_m - d^i_m d^j_l", bad == 0, c, static_cast<double>(bad));
    }

    // (b) full contraction equals n!
    std::int64_t total = 0;
    cases = 0;
    for_each_index(n, n, [&](const Index& a) {
        ++cases;
        total += epsilon(a, n) * epsilon(a, n);
    });
    r.add("eps^i.. eps_i.. = n!", total == factorial(n), cases, static_cast<double>(total - factorial(n)),
          "sum = " + std::to_string(total));

    // (c) generalized delta as a product of permutation symbols, over all index pairs
    cases = 0;
    bad = 0;
    for_each_index(2 * n, n, [&](const Index& x) {
        std::span<const int> up(x.data(), static_cast<std::size_t>(n));
        std::span<const int> lo(x.data() + n, static_cast<std::size_t>(n));
        ++cases;
        if (generalized_delta(up, lo, n) != epsilon(up, n) * epsilon(lo, n)) ++bad;
    });
    r.add("delta^i.._j.. = eps^i.. eps_j..", bad == 0, cases, static_cast<double>(bad));

    // (d) rank-2 generalized delta: two-delta expansion and contraction of the rank-3 one
    cases = 0;
    bad = 0;
    for_each_index(4, n, [&](const Index& x) {
        std::vector up{x[0], x[1]}, lo{x[2], x[3]};
        int d2 = generalized_delta(up, lo, n);
        ++cases;
        if (d2 != kronecker(x[0], x[2]) * kronecker(x[1], x[3]) - kronecker(x[0], x[3]) * kronecker(x[1], x[2])) ++bad;
        if (n >= 3) {
            int s = 0;
            for (int k = 1; k <= n; ++k) s += generalized_delta(std::vector{x[0], x[1], k}, std::vector{x[2], x[3], k}, n);
            if (s != (n - 2) * d2) ++bad;
        }
    });
    r.add(n >= 3 ? "delta^ij_lm = delta^ijk_lmk / (n - 2)" : "delta^ij_lm = d^i_l d^j_m - d^i_m d^j_l", bad == 0,
          cases, static_cast<double>(bad));
    return r;
}

Report metric_epsilon_delta(const Metric& g) {
    if (g.dim() != 3) throw TensorError("metric epsilon-delta identity needs n = 3");
    TensorField e = absolute_epsilon(g, Variance::Down);
    std::vector<std::pair<Expr, Expr>> pairs;
    for_each_index(4, 3, [&](const Index& x) {
        int k = x[0], l = x[1], m = x[2], n = x[3];
        std::vector<Expr> terms;
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) {
                const Expr& a = e.at({i, k, l});
                const Expr& b = e.at({j, m, n});
                if (a.is_zero() || b.is_zero() || g.ginv(i, j).is_zero()) continue;
                terms.push_back(g.ginv(i, j) * a * b);
            }
        Expr lhs = normalize(sum(std::move(terms)));
        Expr rhs = normalize(g.g(k, m) * g.g(l, n) - g.g(k, n) * g.g(l, m));
        pairs.emplace_back(lhs, rhs);
    });
    Report r;
    r.title = "metric-epsilon-delta";
    r.add("g^ij e_ikl e_jmn = g_km g_ln - g_kn g_lm", g.oracle().compare_all(pairs), pairs.size());
    return r;
}

}  // namespace tcalc

#pragma once

#include <mahler/laurent.hpp>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace mahler {

/// Exponent polytope C(F): extreme points of the convex hull of the exponents
/// of nonzero terms, plus the affine dimension. dim = -1 only for the zero
/// polynomial (which exponent_polytope itself rejects).
struct polytope {
    std::vector<exponent_vector> vertices;
    int dim = -1;
};

namespace detail {

/// Feasibility of  sum lambda_i q_i = p,  sum lambda_i = 1,  lambda >= 0
/// over the rationals, by phase-1 simplex with Bland's rule. Exact, so a
/// lattice point is never misclassified.
inline bool in_convex_hull(const std::vector<exponent_vector>& q, const exponent_vector& p) {
    if (q.empty()) return false;
    const std::size_t n = q.size();
    const std::size_t dim = p.size();
    const std::size_t m = dim + 1; // equality rows
    // tableau rows: [A | b], columns 0..n-1 lambdas, n..n+m-1 artificials
    std::vector<std::vector<rational>> t(m, std::vector<rational>(n + m + 1, 0));
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t j = 0; j < n; ++j) t[r][j] = q[j][r];
        t[r][n + m] = p[r];
    }
    for (std::size_t j = 0; j < n; ++j) t[dim][j] = 1;
    t[dim][n + m] = 1;
    for (std::size_t r = 0; r < m; ++r) {
        if (t[r][n + m] < 0)
            for (auto& x : t[r]) x = -x;
        t[r][n + r] = 1;
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t r = 0; r < m; ++r) basis[r] = n + r;
    // objective: minimize sum of artificials; reduced costs
    std::vector<rational> z(n + m + 1, 0);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t j = 0; j <= n + m; ++j) z[j] += t[r][j];
    for (std::size_t r = 0; r < m; ++r) z[n + r] = 0;
    for (;;) {
        std::size_t enter = n + m;
        for (std::size_t j = 0; j < n + m; ++j)
            if (z[j] > 0) { enter = j; break; } // Bland: first improving column
        if (enter == n + m) break;
        std::size_t leave = m;
        rational best;
        for (std::size_t r = 0; r < m; ++r) {
            if (t[r][enter] <= 0) continue;
            rational ratio = t[r][n + m] / t[r][enter];
            if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
                best = ratio;
                leave = r;
            }
        }
        if (leave == m) break; // unbounded; cannot happen for this feasibility system
        rational piv = t[leave][enter];
        for (auto& x : t[leave]) x /= piv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == leave || t[r][enter] == 0) continue;
            rational f = t[r][enter];
            for (std::size_t j = 0; j <= n + m; ++j) t[r][j] -= f * t[leave][j];
        }
        rational fz = z[enter];
        if (fz != 0)
            for (std::size_t j = 0; j <= n + m; ++j) z[j] -= fz * t[leave][j];
        basis[leave] = enter;
    }
    rational objective = 0;
    for (std::size_t r = 0; r < m; ++r)
        if (basis[r] >= n) objective += t[r][n + m];
    return objective == 0;
}

/// Rank over Q of the differences p_i - p_0.
inline int affine_dimension(const std::vector<exponent_vector>& pts) {
    if (pts.empty()) return -1;
    const std::size_t k = pts[0].size();
    std::vector<std::vector<rational>> rows;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        std::vector<rational> d(k);
        for (std::size_t j = 0; j < k; ++j) d[j] = rational(pts[i][j]) - rational(pts[0][j]);
        rows.push_back(std::move(d));
    }
    int rank = 0;
    std::size_t rpos = 0;
    for (std::size_t c = 0; c < k && rpos < rows.size(); ++c) {
        std::size_t p = rpos;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rpos]);
        for (std::size_t i = rpos + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            rational f = rows[i][c] / rows[rpos][c];
            for (std::size_t j = c; j < k; ++j) rows[i][j] -= f * rows[rpos][j];
        }
        ++rank;
        ++rpos;
    }
    return rank;
}

} // namespace detail

/// Extreme points and affine dimension of the exponents of F.
template <class C>
polytope exponent_polytope(const laurent_poly<C>& f) {
    if (f.is_zero()) throw domain_error("exponent polytope of the zero polynomial is undefined");
    std::vector<exponent_vector> pts;
    pts.reserve(f.term_count());
    for (const auto& [e, c] : f.terms()) pts.push_back(e);
    polytope out;
    out.dim = detail::affine_dimension(pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<exponent_vector> others;
        others.reserve(pts.size() - 1);
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (j != i) others.push_back(pts[j]);
        if (!detail::in_convex_hull(others, pts[i])) out.vertices.push_back(pts[i]);
    }
    return out;
}

/// The measure bracket: max over polytope vertices j of log|c(j)|, and
/// log(length(F)). For integer F the lower bound is >= 0.
template <class C>
std::pair<double, double> coefficient_bounds(const laurent_poly<C>& f) {
    if (f.is_zero()) throw domain_error("coefficient bounds of the zero polynomial are undefined");
    polytope p = exponent_polytope(f);
    double lower = -std::numeric_limits<double>::infinity();
    for (const auto& v : p.vertices) lower = std::max(lower, std::log(coeff::abs_value(f.terms().at(v))));
    return {lower, std::log(length(f))};
}

} // namespace mahler

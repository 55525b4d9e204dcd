#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace covq {

inline double normal_pdf(double x) {
    return 0.3989422804014326779399461 * std::exp(-0.5 * x * x);
}

inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.7071067811865475244008444);
}

struct QuadResult {
    double value = 0.0;
    double error = 0.0;   // achieved error estimate
    bool converged = true;
    long long evaluations = 0;
};

namespace detail {

// Gauss-Kronrod 7-15 pair (QUADPACK coefficients).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Error model follows QUADPACK's QK15: the raw Kronrod/Gauss difference is
// rescaled against the panel's variation, which keeps the estimate honest on
// integrands with endpoint singularities where |K - G| alone is optimistic.
template <typename F>
inline void gk15(const F& f, double a, double b, double& value, double& error) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv1[7], fv2[7];
    const double fc = f(c);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double resabs = kWgk[7] * std::abs(fc);
    for (int i = 0; i < 7; ++i) {
        const double x = h * kXgk[i];
        fv1[i] = f(c - x);
        fv2[i] = f(c + x);
        const double fsum = fv1[i] + fv2[i];
        resk += kWgk[i] * fsum;
        resabs += kWgk[i] * (std::abs(fv1[i]) + std::abs(fv2[i]));
        if (i % 2 == 1) resg += kWg[i / 2] * fsum;
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::abs(fv1[i] - reskh) + std::abs(fv2[i] - reskh));
    const double ah = std::abs(h);
    resasc *= ah;
    resabs *= ah;
    value = resk * h;
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double round_floor = 50.0 * 2.220446049250313e-16 * resabs;
    error = std::max(err, round_floor);
}

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

}  // namespace detail

// Globally adaptive Gauss-Kronrod on [a,b]: repeatedly bisects the segment
// with the largest error estimate. Refinement is geometric toward any
// integrable endpoint singularity, so tolerances hold even for densities
// like (delta^2 - t^2)^(alpha-1) with small alpha.
template <typename F>
QuadResult integrate(const F& f, double a, double b, double tol, int max_segments = 4000,
                     int initial_segments = 1) {
    QuadResult out;
    if (a == b) return out;
    std::priority_queue<detail::Segment> queue;
    double total_value = 0.0;
    double total_error = 0.0;
    initial_segments = std::max(initial_segments, 1);
    for (int i = 0; i < initial_segments; ++i) {
        detail::Segment seg{};
        seg.a = a + (b - a) * i / initial_segments;
        seg.b = i + 1 == initial_segments ? b : a + (b - a) * (i + 1) / initial_segments;
        detail::gk15(f, seg.a, seg.b, seg.value, seg.error);
        out.evaluations += 15;
        total_value += seg.value;
        total_error += seg.error;
        queue.push(seg);
    }
    double frozen_error = 0.0;  // panels at the width representability floor
    int segments = initial_segments;
    while (total_error + frozen_error > tol && segments < max_segments && !queue.empty()) {
        const detail::Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // cannot split further; its error stays on the books
            frozen_error += worst.error;
            total_error -= worst.error;
            continue;
        }
        detail::Segment left{}, right{};
        left.a = worst.a;
        left.b = mid;
        right.a = mid;
        right.b = worst.b;
        detail::gk15(f, left.a, left.b, left.value, left.error);
        detail::gk15(f, right.a, right.b, right.value, right.error);
        out.evaluations += 30;
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++segments;
    }
    out.value = total_value;
    out.error = total_error + frozen_error;
    out.converged = out.error <= tol;
    return out;
}

// Integral of f(s) * phi(s) over the real line, truncated to [-L, L] where
// the standard normal tail mass is negligible (2*Phi(-10) < 1.6e-23).
template <typename F>
QuadResult integrate_gaussian(const F& f, double tol = 1e-8, double L = 10.0,
                              int max_segments = 4000) {
    auto weighted = [&f](double s) { return f(s) * normal_pdf(s); };
    return integrate(weighted, -L, L, tol, max_segments);
}

}  // namespace covq

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "covq/designs.hpp"
#include "covq/geometry.hpp"
#include "covq/parallel.hpp"
#include "covq/points.hpp"
#include "covq/rng.hpp"

namespace covq {

struct McConfig {
    long long samples = 100000;  // total domain samples (split across reps)
    std::uint64_t seed = 0;
    int reps = 40;  // design replications for random designs
    int threads = 0;

    void validate() const {
        if (samples < 1) throw std::invalid_argument("McConfig: samples must be >= 1");
        if (reps < 1) throw std::invalid_argument("McConfig: reps must be >= 1");
    }
};

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long long samples_used = 0;
};

struct CoverageCurve {
    std::vector<double> radii;
    std::vector<double> values;
    std::vector<double> std_errors;
};

namespace detail {

inline constexpr std::uint64_t kTagDesignRep = 0x44455352;
inline constexpr std::uint64_t kTagDomain = 0x55534D50;
inline constexpr std::uint64_t kTagCorr = 0x434F5252;

inline std::uint64_t rep_stream(std::uint64_t tag, int rep) {
    return mix64(tag ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(rep + 1)));
}

// Domain sample `index` of replication stream; pure function of
// (seed, stream, index) so any worker can produce any sample.
inline void sample_domain(const Domain& dom, int d, std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t index, double* out, std::vector<double>& scratch) {
    CounterRng rng(seed, stream, index);
    if (dom.kind == DomainKind::Cube) {
        for (int j = 0; j < d; ++j) out[j] = 2.0 * rng.next_double() - 1.0;
        return;
    }
    scratch.resize(static_cast<std::size_t>(d) + 1);
    for (int j = 0; j < d; ++j) scratch[static_cast<std::size_t>(j)] = rng.next_double();
    scratch[static_cast<std::size_t>(d)] = 1.0;
    std::sort(scratch.begin(), scratch.end() - 1);
    double prev = 0.0;
    for (int j = 0; j < d; ++j) {
        out[j] = scratch[static_cast<std::size_t>(j)] - prev;
        prev = scratch[static_cast<std::size_t>(j)];
    }
    if (dom.kind == DomainKind::ScaledSimplex1) {
        for (int j = 0; j < d; ++j) out[j] *= dom.delta;
    } else if (dom.kind == DomainKind::ScaledSimplex2) {
        const double centroid = 1.0 / (d + 1.0);
        for (int j = 0; j < d; ++j) out[j] = dom.delta * (out[j] - centroid) + centroid;
    }
}

struct RepPlan {
    int reps = 1;
    long long per_rep = 0;
    long long total = 0;
};

inline RepPlan plan_reps(bool randomized, const McConfig& cfg) {
    RepPlan plan;
    plan.reps = randomized ? cfg.reps : 1;
    plan.per_rep = std::max<long long>(1, cfg.samples / plan.reps);
    plan.total = plan.per_rep * plan.reps;
    return plan;
}

// Squared nearest distances of domain samples to one fixed point set.
// cutoff2 >= 0 allows the per-sample scan to stop early; returned entries
// are then exact above cutoff2 and upper bounds at or below it.
inline void fill_min_sq(const PointSet& points, const Domain& dom, std::uint64_t seed,
                        std::uint64_t stream, long long count, double cutoff2, double* out,
                        int threads) {
    const int d = points.dim();
    parallel_chunks(
        static_cast<std::size_t>(count), 2048,
        [&](std::size_t, std::size_t begin, std::size_t end) {
            std::vector<double> u(static_cast<std::size_t>(d));
            std::vector<double> scratch;
            for (std::size_t i = begin; i < end; ++i) {
                sample_domain(dom, d, seed, stream, i, u.data(), scratch);
                out[i] = min_squared_distance({u.data(), u.size()}, points, cutoff2);
            }
        },
        threads);
}

}  // namespace detail

// Squared nearest-distance samples for a fixed point set (single stream).
inline std::vector<double> mc_min_sq_samples(const PointSet& points, const Domain& dom,
                                             const McConfig& cfg, double cutoff2 = -1.0) {
    cfg.validate();
    if (points.empty()) throw std::invalid_argument("mc: empty point set");
    std::vector<double> out(static_cast<std::size_t>(cfg.samples));
    detail::fill_min_sq(points, dom, cfg.seed, detail::rep_stream(detail::kTagDomain, 0),
                        cfg.samples, cutoff2, out.data(), cfg.threads);
    return out;
}

// Squared nearest-distance samples for a design spec. Random designs are
// replicated cfg.reps times (fresh design + fresh domain stream per rep,
// cfg.samples/reps samples each); deterministic designs use one rep.
inline std::vector<double> mc_min_sq_samples(const DesignSpec& spec, const Domain& dom,
                                             const McConfig& cfg, double cutoff2 = -1.0,
                                             int* reps_out = nullptr) {
    cfg.validate();
    spec.validate();
    const auto plan = detail::plan_reps(spec.randomized(), cfg);
    if (reps_out) *reps_out = plan.reps;
    std::vector<double> out(static_cast<std::size_t>(plan.total));
    for (int rep = 0; rep < plan.reps; ++rep) {
        DesignSpec rep_spec = spec;
        rep_spec.seed = detail::mix64(spec.seed ^ detail::rep_stream(detail::kTagDesignRep, rep) ^
                                      detail::mix64(cfg.seed));
        const PointSet points = generate(rep_spec);
        detail::fill_min_sq(points, dom, cfg.seed, detail::rep_stream(detail::kTagDomain, rep),
                            plan.per_rep, cutoff2, out.data() + rep * plan.per_rep, cfg.threads);
    }
    return out;
}

namespace detail {

// Mean of per-rep indicator means plus a replication (or binomial) standard
// error; `sq` holds squared distances grouped by rep, in rep order.
inline McEstimate coverage_from_samples(const std::vector<double>& sq, int reps, double r) {
    const long long total = static_cast<long long>(sq.size());
    const long long per_rep = total / reps;
    const double r2 = r * r;
    McEstimate est;
    est.samples_used = total;
    std::vector<double> rep_means(static_cast<std::size_t>(reps));
    long long hits_total = 0;
    for (int rep = 0; rep < reps; ++rep) {
        long long hits = 0;
        const double* chunk = sq.data() + rep * per_rep;
        for (long long i = 0; i < per_rep; ++i) hits += (chunk[i] <= r2);
        rep_means[static_cast<std::size_t>(rep)] = static_cast<double>(hits) / per_rep;
        hits_total += hits;
    }
    est.value = static_cast<double>(hits_total) / total;
    if (reps >= 2) {
        double ss = 0.0;
        for (double m : rep_means) ss += (m - est.value) * (m - est.value);
        est.std_error = std::sqrt(ss / (static_cast<double>(reps) * (reps - 1)));
    } else {
        est.std_error = std::sqrt(std::max(est.value * (1.0 - est.value), 0.0) / total);
    }
    return est;
}

inline McEstimate mean_from_samples(const std::vector<double>& values, int reps) {
    const long long total = static_cast<long long>(values.size());
    const long long per_rep = total / reps;
    McEstimate est;
    est.samples_used = total;
    double grand = 0.0;
    std::vector<double> rep_means(static_cast<std::size_t>(reps));
    for (int rep = 0; rep < reps; ++rep) {
        double sum = 0.0;
        const double* chunk = values.data() + rep * per_rep;
        for (long long i = 0; i < per_rep; ++i) sum += chunk[i];
        rep_means[static_cast<std::size_t>(rep)] = sum / per_rep;
        grand += sum;
    }
    est.value = grand / total;
    if (reps >= 2) {
        double ss = 0.0;
        for (double m : rep_means) ss += (m - est.value) * (m - est.value);
        est.std_error = std::sqrt(ss / (static_cast<double>(reps) * (reps - 1)));
    } else {
        double ss = 0.0;
        for (double v : values) ss += (v - est.value) * (v - est.value);
        est.std_error = std::sqrt(ss / (static_cast<double>(total) * std::max<long long>(total - 1, 1)));
    }
    return est;
}

inline McEstimate quantile_from_sorted(std::vector<double>& dist, double gamma) {
    const long long total = static_cast<long long>(dist.size());
    std::sort(dist.begin(), dist.end());
    const double q = 1.0 - gamma;
    const long long k = std::clamp<long long>(
        static_cast<long long>(std::ceil(q * static_cast<double>(total))), 1, total);
    McEstimate est;
    est.samples_used = total;
    est.value = dist[static_cast<std::size_t>(k - 1)];
    // Plug-in density from a 5-point central difference of the empirical
    // c.d.f.; the bandwidth scales like the local quantile spacing.
    auto ecdf = [&](double x) {
        return static_cast<double>(std::upper_bound(dist.begin(), dist.end(), x) - dist.begin()) /
               static_cast<double>(total);
    };
    const double span = dist.back() - dist.front();
    const double h = std::max(span * std::pow(static_cast<double>(total), -0.2) * 0.5, 1e-12);
    const double density =
        (-ecdf(est.value + 2 * h) + 8 * ecdf(est.value + h) - 8 * ecdf(est.value - h) +
         ecdf(est.value - 2 * h)) /
        (12 * h);
    const double qvar = std::sqrt(q * (1.0 - q) / static_cast<double>(total));
    est.std_error = density > 0.0 ? qvar / density : qvar * span;  // approximate
    return est;
}

}  // namespace detail

// --- coverage at a single radius -------------------------------------------

inline McEstimate mc_coverage(const PointSet& points, const Domain& dom, double r,
                              const McConfig& cfg) {
    if (r < 0.0) throw std::invalid_argument("mc_coverage: r must be >= 0");
    const auto sq = mc_min_sq_samples(points, dom, cfg, r * r);
    return detail::coverage_from_samples(sq, 1, r);
}

inline McEstimate mc_coverage(const DesignSpec& spec, const Domain& dom, double r,
                              const McConfig& cfg) {
    if (r < 0.0) throw std::invalid_argument("mc_coverage: r must be >= 0");
    int reps = 1;
    const auto sq = mc_min_sq_samples(spec, dom, cfg, r * r, &reps);
    return detail::coverage_from_samples(sq, reps, r);
}

// --- empirical c.d.f. over a radius grid ------------------------------------

namespace detail {

inline CoverageCurve curve_from_samples(const std::vector<double>& sq, int reps,
                                        const std::vector<double>& radii) {
    CoverageCurve curve;
    curve.radii = radii;
    for (double r : radii) {
        const McEstimate est = coverage_from_samples(sq, reps, r);
        curve.values.push_back(est.value);
        curve.std_errors.push_back(est.std_error);
    }
    return curve;
}

inline void check_radii(const std::vector<double>& radii) {
    if (radii.empty()) throw std::invalid_argument("mc_cdf_curve: empty radius grid");
    for (std::size_t i = 0; i + 1 < radii.size(); ++i)
        if (radii[i + 1] < radii[i])
            throw std::invalid_argument("mc_cdf_curve: radii must be sorted ascending");
    if (radii.front() < 0.0) throw std::invalid_argument("mc_cdf_curve: radii must be >= 0");
}

}  // namespace detail

inline CoverageCurve mc_cdf_curve(const PointSet& points, const Domain& dom,
                                  const std::vector<double>& radii, const McConfig& cfg) {
    detail::check_radii(radii);
    const auto sq = mc_min_sq_samples(points, dom, cfg, radii.front() * radii.front());
    return detail::curve_from_samples(sq, 1, radii);
}

inline CoverageCurve mc_cdf_curve(const DesignSpec& spec, const Domain& dom,
                                  const std::vector<double>& radii, const McConfig& cfg) {
    detail::check_radii(radii);
    int reps = 1;
    const auto sq = mc_min_sq_samples(spec, dom, cfg, radii.front() * radii.front(), &reps);
    return detail::curve_from_samples(sq, reps, radii);
}

// --- (1-gamma)-covering radius ----------------------------------------------

inline McEstimate mc_quantile_radius(const PointSet& points, const Domain& dom, double gamma,
                                     const McConfig& cfg) {
    if (gamma <= 0.0 || gamma >= 1.0)
        throw std::invalid_argument("mc_quantile_radius: gamma must be in (0,1)");
    auto sq = mc_min_sq_samples(points, dom, cfg);
    for (double& v : sq) v = std::sqrt(v);
    return detail::quantile_from_sorted(sq, gamma);
}

inline McEstimate mc_quantile_radius(const DesignSpec& spec, const Domain& dom, double gamma,
                                     const McConfig& cfg) {
    if (gamma <= 0.0 || gamma >= 1.0)
        throw std::invalid_argument("mc_quantile_radius: gamma must be in (0,1)");
    auto sq = mc_min_sq_samples(spec, dom, cfg);
    for (double& v : sq) v = std::sqrt(v);
    return detail::quantile_from_sorted(sq, gamma);
}

// --- mean squared quantization error ----------------------------------------

inline McEstimate mc_quantization(const PointSet& points, const Domain& dom, const McConfig& cfg) {
    const auto sq = mc_min_sq_samples(points, dom, cfg);
    return detail::mean_from_samples(sq, 1);
}

inline McEstimate mc_quantization(const DesignSpec& spec, const Domain& dom, const McConfig& cfg) {
    int reps = 1;
    const auto sq = mc_min_sq_samples(spec, dom, cfg, -1.0, &reps);
    return detail::mean_from_samples(sq, reps);
}

// --- correlation of ||U||^2 and sum u_i^4 on the cube ------------------------

inline McEstimate mc_corr_check(int d, const McConfig& cfg) {
    if (d < 1) throw std::invalid_argument("mc_corr_check: d must be >= 1");
    cfg.validate();
    const long long n = cfg.samples;
    const std::size_t chunk = 8192;
    const std::size_t n_chunks = (static_cast<std::size_t>(n) + chunk - 1) / chunk;
    struct Sums {
        double x = 0, y = 0, xx = 0, yy = 0, xy = 0;
    };
    std::vector<Sums> partial(n_chunks);
    const std::uint64_t stream = detail::rep_stream(detail::kTagCorr, 0);
    parallel_chunks(
        static_cast<std::size_t>(n), chunk,
        [&](std::size_t c, std::size_t begin, std::size_t end) {
            Sums s;
            std::vector<double> u(static_cast<std::size_t>(d));
            std::vector<double> scratch;
            for (std::size_t i = begin; i < end; ++i) {
                detail::sample_domain(Domain::cube(), d, cfg.seed, stream, i, u.data(), scratch);
                double norm2 = 0.0, pow4 = 0.0;
                for (int j = 0; j < d; ++j) {
                    const double u2 = u[static_cast<std::size_t>(j)] * u[static_cast<std::size_t>(j)];
                    norm2 += u2;
                    pow4 += u2 * u2;
                }
                s.x += norm2;
                s.y += pow4;
                s.xx += norm2 * norm2;
                s.yy += pow4 * pow4;
                s.xy += norm2 * pow4;
            }
            partial[c] = s;
        },
        cfg.threads);
    Sums total;
    for (const Sums& s : partial) {  // fixed chunk order keeps the reduction deterministic
        total.x += s.x;
        total.y += s.y;
        total.xx += s.xx;
        total.yy += s.yy;
        total.xy += s.xy;
    }
    const double nn = static_cast<double>(n);
    const double cov = total.xy / nn - (total.x / nn) * (total.y / nn);
    const double vx = total.xx / nn - (total.x / nn) * (total.x / nn);
    const double vy = total.yy / nn - (total.y / nn) * (total.y / nn);
    McEstimate est;
    est.samples_used = n;
    est.value = cov / std::sqrt(vx * vy);
    est.std_error = (1.0 - est.value * est.value) / std::sqrt(nn);  // Fisher-style approximation
    return est;
}

}  // namespace covq

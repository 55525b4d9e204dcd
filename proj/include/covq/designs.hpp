#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "covq/factorial.hpp"
#include "covq/points.hpp"
#include "covq/rng.hpp"
#include "covq/sobol.hpp"

namespace covq {

enum class Family { Beta, VertexWith, VertexWithout, Sobol, Factorial, SimplexS1, SimplexS2 };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::Beta: return "beta";
        case Family::VertexWith: return "vertex-with";
        case Family::VertexWithout: return "vertex-without";
        case Family::Sobol: return "sobol";
        case Family::Factorial: return "factorial";
        case Family::SimplexS1: return "simplex-s1";
        case Family::SimplexS2: return "simplex-s2";
    }
    return "?";
}

// Declarative description of one design. Families on the cube scatter
// points inside [-delta, delta]^d; the simplex families scatter them in the
// delta-scaled simplex. alpha applies to Beta only, k to Factorial only,
// seed to the random families only.
struct DesignSpec {
    Family family = Family::Beta;
    int d = 1;
    long long n = 1;
    double delta = 0.5;
    double alpha = 1.0;
    int k = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint32_t> generators;  // optional override for Factorial

    bool randomized() const {
        return family == Family::Beta || family == Family::VertexWith ||
               family == Family::VertexWithout || family == Family::SimplexS1 ||
               family == Family::SimplexS2;
    }

    void validate() const {
        if (d < 1) throw std::invalid_argument("DesignSpec: d must be >= 1");
        if (n < 1) throw std::invalid_argument("DesignSpec: n must be >= 1");
        if (delta < 0.0 || delta > 1.0) throw std::invalid_argument("DesignSpec: delta must be in [0,1]");
        switch (family) {
            case Family::Beta:
                if (alpha <= 0.0)
                    throw std::invalid_argument("DesignSpec: Beta needs alpha > 0 (alpha = 0 is the vertex-with family)");
                if (delta <= 0.0) throw std::invalid_argument("DesignSpec: Beta needs delta > 0");
                break;
            case Family::VertexWithout:
                if (d < 63 && n > (1LL << d))
                    throw std::invalid_argument("DesignSpec: vertex-without needs n <= 2^d");
                break;
            case Family::Factorial: {
                if (k < 0 || k >= d) throw std::invalid_argument("DesignSpec: Factorial needs 0 <= k < d");
                const int m = d - k;
                if (m > 62 || n != (1LL << m))
                    throw std::invalid_argument("DesignSpec: Factorial needs n = 2^(d-k)");
                break;
            }
            default:
                break;
        }
    }
};

namespace detail {

// Stream tags keep the families' substreams disjoint for a shared seed.
inline constexpr std::uint64_t kStreamBeta = 0x42455441;
inline constexpr std::uint64_t kStreamVertex = 0x56455254;
inline constexpr std::uint64_t kStreamNoReplace = 0x4E4F5245;
inline constexpr std::uint64_t kStreamSimplex = 0x53494D50;

}  // namespace detail

// One draw from the Beta_delta(alpha, alpha) density on (-delta, delta).
inline double sample_beta_scalar(double alpha, double delta, CounterRng& rng) {
    if (alpha <= 0.0 || delta <= 0.0)
        throw std::invalid_argument("sample_beta_scalar: alpha and delta must be > 0");
    return delta * (2.0 * rng.beta_symmetric(alpha) - 1.0);
}

// Uniform points in the standard simplex via the spacings of d sorted
// uniforms with 0 and 1 appended (first d of the d+1 spacings).
inline PointSet simplex_uniform(int d, long long n, std::uint64_t seed,
                                std::uint64_t stream = detail::kStreamSimplex) {
    if (d < 1 || n < 1) throw std::invalid_argument("simplex_uniform: d and n must be >= 1");
    std::vector<double> flat(static_cast<std::size_t>(n) * d);
    std::vector<double> order(static_cast<std::size_t>(d) + 1);
    for (long long i = 0; i < n; ++i) {
        CounterRng rng(seed, stream, static_cast<std::uint64_t>(i));
        for (int j = 0; j < d; ++j) order[static_cast<std::size_t>(j)] = rng.next_double();
        order[static_cast<std::size_t>(d)] = 1.0;
        std::sort(order.begin(), order.end() - 1);
        double prev = 0.0;
        for (int j = 0; j < d; ++j) {
            flat[static_cast<std::size_t>(i) * d + j] = order[static_cast<std::size_t>(j)] - prev;
            prev = order[static_cast<std::size_t>(j)];
        }
    }
    return PointSet(d, std::move(flat));
}

namespace detail {

inline PointSet generate_beta(const DesignSpec& spec) {
    std::vector<double> flat(static_cast<std::size_t>(spec.n) * spec.d);
    for (long long i = 0; i < spec.n; ++i) {
        CounterRng rng(spec.seed, kStreamBeta, static_cast<std::uint64_t>(i));
        for (int j = 0; j < spec.d; ++j)
            flat[static_cast<std::size_t>(i) * spec.d + j] = sample_beta_scalar(spec.alpha, spec.delta, rng);
    }
    return PointSet(spec.d, std::move(flat));
}

inline PointSet generate_vertex_with(const DesignSpec& spec) {
    std::vector<double> flat(static_cast<std::size_t>(spec.n) * spec.d);
    for (long long i = 0; i < spec.n; ++i) {
        CounterRng rng(spec.seed, kStreamVertex, static_cast<std::uint64_t>(i));
        std::uint64_t bits = 0;
        for (int j = 0; j < spec.d; ++j) {
            if (j % 64 == 0) bits = rng.next_u64();
            flat[static_cast<std::size_t>(i) * spec.d + j] = ((bits >> (j % 64)) & 1u) ? spec.delta : -spec.delta;
        }
    }
    return PointSet(spec.d, std::move(flat));
}

// Sequential rejection against the set of vertices already drawn. Unlike a
// one-shot scheme, prefixes of the output are themselves without-replacement
// samples, which keeps the family nested in n.
inline PointSet generate_vertex_without(const DesignSpec& spec) {
    if (spec.d > 62) throw std::invalid_argument("generate: vertex-without supports d <= 62");
    CounterRng rng(spec.seed, kStreamNoReplace, 0);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(static_cast<std::size_t>(spec.n) * 2);
    std::vector<double> flat(static_cast<std::size_t>(spec.n) * spec.d);
    const std::uint64_t total = 1ULL << spec.d;
    for (long long i = 0; i < spec.n; ++i) {
        std::uint64_t id;
        do {
            id = rng.below(total);
        } while (!seen.insert(id).second);
        for (int j = 0; j < spec.d; ++j)
            flat[static_cast<std::size_t>(i) * spec.d + j] = ((id >> j) & 1u) ? spec.delta : -spec.delta;
    }
    return PointSet(spec.d, std::move(flat));
}

inline PointSet generate_sobol(const DesignSpec& spec) {
    std::vector<double> flat = SobolSequence::generate(spec.d, static_cast<std::uint64_t>(spec.n));
    for (double& x : flat) x = spec.delta * (2.0 * x - 1.0);
    return PointSet(spec.d, std::move(flat));
}

inline PointSet generate_simplex(const DesignSpec& spec) {
    PointSet base = simplex_uniform(spec.d, spec.n, spec.seed);
    std::vector<double> flat = base.flat();
    if (spec.family == Family::SimplexS1) {
        for (double& x : flat) x = spec.delta * x;
    } else {
        const double centroid = 1.0 / (spec.d + 1.0);
        for (double& x : flat) x = spec.delta * (x - centroid) + centroid;
    }
    return PointSet(spec.d, std::move(flat));
}

}  // namespace detail

inline PointSet generate(const DesignSpec& spec) {
    spec.validate();
    switch (spec.family) {
        case Family::Beta: return detail::generate_beta(spec);
        case Family::VertexWith: return detail::generate_vertex_with(spec);
        case Family::VertexWithout: return detail::generate_vertex_without(spec);
        case Family::Sobol: return detail::generate_sobol(spec);
        case Family::Factorial:
            return generate_factorial(spec.d, spec.k, spec.delta,
                                      spec.generators.empty() ? factorial_generators(spec.d, spec.k)
                                                              : spec.generators);
        case Family::SimplexS1:
        case Family::SimplexS2:
            return detail::generate_simplex(spec);
    }
    throw std::invalid_argument("generate: unknown family");
}

// Domain a design's points live in (used to pick the matching sampling
// domain for Monte Carlo estimates).
inline Domain natural_domain(const DesignSpec& spec) {
    switch (spec.family) {
        case Family::SimplexS1:
        case Family::SimplexS2:
            return Domain::simplex();
        default:
            return Domain::cube();
    }
}

}  // namespace covq

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "covq/designs.hpp"
#include "covq/tuner.hpp"

namespace covq {

// Published covering / quantization benchmark tables: per design family and
// point count, the optimal objective (0.9-coverage radius or normalized
// quantization error n^(2/d) * E theta) and the optimizing delta.
struct TableCell {
    double value;
    double delta;
};

struct TableRow {
    std::string label;
    Family family;
    double alpha;           // Beta rows only
    bool fixed_delta_one;   // evaluated at delta = 1 instead of tuned
    std::vector<TableCell> cells;  // one per n-column
};

struct BenchmarkTable {
    int id = 0;
    int d = 0;
    bool quantization = false;  // false: 0.9-coverage radius
    std::vector<long long> ns;
    std::vector<TableRow> rows;
};

inline const std::vector<BenchmarkTable>& benchmark_tables() {
    static const std::vector<BenchmarkTable> tables = {
        {1, 5, false, {25, 50, 100, 500},
         {
             {"design2a", Family::VertexWith, 0.0, false,
              {{1.051, 0.44}, {0.885, 0.50}, {0.812, 0.50}, {0.798, 0.50}}},
             {"design1 alpha=0.5", Family::Beta, 0.5, false,
              {{1.072, 0.68}, {0.905, 0.78}, {0.770, 0.78}, {0.540, 0.80}}},
             {"design1 alpha=1", Family::Beta, 1.0, false,
              {{1.072, 0.78}, {0.931, 0.86}, {0.798, 0.98}, {0.555, 1.00}}},
             {"design1 alpha=1.5", Family::Beta, 1.5, false,
              {{1.091, 0.92}, {0.950, 0.96}, {0.820, 0.98}, {0.589, 1.00}}},
         }},
        {2, 10, false, {500, 1000, 5000, 10000},
         {
             {"design2a", Family::VertexWith, 0.0, false,
              {{1.228, 0.50}, {1.135, 0.50}, {1.073, 0.50}, {1.071, 0.50}}},
             {"design1 alpha=0.5", Family::Beta, 0.5, false,
              {{1.271, 0.69}, {1.165, 0.73}, {0.954, 0.76}, {0.886, 0.78}}},
             {"design1 alpha=1", Family::Beta, 1.0, false,
              {{1.297, 0.87}, {1.194, 0.90}, {0.992, 0.93}, {0.917, 0.95}}},
             {"design1 alpha=1.5", Family::Beta, 1.5, false,
              {{1.320, 1.00}, {1.220, 1.00}, {1.032, 1.00}, {0.953, 1.00}}},
         }},
        {3, 10, false, {64, 128, 512, 1024},
         {
             {"design1 alpha=0.5", Family::Beta, 0.5, false,
              {{1.629, 0.58}, {1.505, 0.65}, {1.270, 0.72}, {1.165, 0.75}}},
             {"design1 alpha=1.5", Family::Beta, 1.5, false,
              {{1.635, 0.80}, {1.525, 0.88}, {1.310, 1.00}, {1.210, 1.00}}},
             {"design2a", Family::VertexWith, 0.0, false,
              {{1.610, 0.38}, {1.490, 0.46}, {1.228, 0.50}, {1.132, 0.50}}},
             {"design2b", Family::VertexWithout, 0.0, false,
              {{1.609, 0.41}, {1.475, 0.43}, {1.178, 0.49}, {1.075, 0.50}}},
             {"design3", Family::Sobol, 0.0, false,
              {{1.595, 0.72}, {1.485, 0.80}, {1.280, 0.85}, {1.170, 0.88}}},
             {"design3 delta=1", Family::Sobol, 0.0, true,
              {{1.678, 1.00}, {1.534, 1.00}, {1.305, 1.00}, {1.187, 1.00}}},
             {"design4", Family::Factorial, 0.0, false,
              {{1.530, 0.44}, {1.395, 0.48}, {1.115, 0.50}, {1.075, 0.50}}},
         }},
        {4, 20, false, {64, 128, 512, 1024},
         {
             {"design1 alpha=0.5", Family::Beta, 0.5, false,
              {{2.540, 0.44}, {2.455, 0.48}, {2.285, 0.55}, {2.220, 0.60}}},
             {"design1 alpha=1.5", Family::Beta, 1.5, false,
              {{2.545, 0.60}, {2.460, 0.65}, {2.290, 0.76}, {2.215, 0.84}}},
             {"design2a", Family::VertexWith, 0.0, false,
              {{2.538, 0.28}, {2.445, 0.30}, {2.270, 0.36}, {2.180, 0.42}}},
             {"design2b", Family::VertexWithout, 0.0, false,
              {{2.538, 0.29}, {2.445, 0.30}, {2.253, 0.37}, {2.173, 0.42}}},
             {"design3", Family::Sobol, 0.0, false,
              {{2.520, 0.50}, {2.445, 0.60}, {2.285, 0.68}, {2.196, 0.72}}},
             {"design3 delta=1", Family::Sobol, 0.0, true,
              {{2.750, 1.00}, {2.656, 1.00}, {2.435, 1.00}, {2.325, 1.00}}},
             {"design4", Family::Factorial, 0.0, false,
              {{2.490, 0.32}, {2.410, 0.35}, {2.220, 0.40}, {2.125, 0.44}}},
         }},
        {5, 10, true, {64, 128, 512, 1024},
         {
             {"design1 alpha=0.5", Family::Beta, 0.5, false,
              {{4.072, 0.56}, {4.013, 0.60}, {3.839, 0.68}, {3.770, 0.69}}},
             {"design1 alpha=1", Family::Beta, 1.0, false,
              {{4.153, 0.68}, {4.105, 0.72}, {3.992, 0.80}, {3.925, 0.84}}},
             {"design1 alpha=1.5", Family::Beta, 1.5, false,
              {{4.164, 0.80}, {4.137, 0.86}, {4.069, 0.96}, {4.026, 0.98}}},
             {"design2a", Family::VertexWith, 0.0, false,
              {{3.971, 0.38}, {3.866, 0.44}, {3.670, 0.48}, {3.704, 0.50}}},
             {"design2b", Family::VertexWithout, 0.0, false,
              {{3.955, 0.40}, {3.798, 0.44}, {3.453, 0.48}, {3.348, 0.50}}},
             {"design3", Family::Sobol, 0.0, false,
              {{3.998, 0.68}, {3.973, 0.76}, {3.936, 0.80}, {3.834, 0.82}}},
             {"design3 delta=1", Family::Sobol, 0.0, true,
              {{4.569, 1.00}, {4.425, 1.00}, {4.239, 1.00}, {4.094, 1.00}}},
             {"design4", Family::Factorial, 0.0, false,
              {{3.663, 0.40}, {3.548, 0.44}, {3.221, 0.48}, {3.348, 0.50}}},
         }},
        {6, 20, true, {64, 128, 512, 1024},
         {
             {"design1 alpha=0.5", Family::Beta, 0.5, false,
              {{7.541, 0.40}, {7.515, 0.44}, {7.457, 0.52}, {7.421, 0.54}}},
             {"design1 alpha=1", Family::Beta, 1.0, false,
              {{7.552, 0.52}, {7.563, 0.56}, {7.528, 0.64}, {7.484, 0.68}}},
             {"design1 alpha=1.5", Family::Beta, 1.5, false,
              {{7.561, 0.60}, {7.571, 0.64}, {7.556, 0.74}, {7.527, 0.78}}},
             {"design2a", Family::VertexWith, 0.0, false,
              {{7.488, 0.30}, {7.461, 0.33}, {7.346, 0.35}, {7.248, 0.39}}},
             {"design2b", Family::VertexWithout, 0.0, false,
              {{7.487, 0.29}, {7.458, 0.34}, {7.345, 0.36}, {7.234, 0.40}}},
             {"design3", Family::Sobol, 0.0, false,
              {{7.445, 0.48}, {7.464, 0.56}, {7.487, 0.64}, {7.453, 0.66}}},
             {"design3 delta=1", Family::Sobol, 0.0, true,
              {{9.089, 1.00}, {9.133, 1.00}, {8.871, 1.00}, {8.681, 1.00}}},
             {"design4", Family::Factorial, 0.0, false,
              {{7.298, 0.32}, {7.270, 0.33}, {7.133, 0.36}, {7.016, 0.40}}},
         }},
    };
    return tables;
}

inline const BenchmarkTable& benchmark_table(int id) {
    for (const auto& t : benchmark_tables())
        if (t.id == id) return t;
    throw std::invalid_argument("no benchmark table " + std::to_string(id));
}

struct TableResultCell {
    std::string label;
    long long n = 0;
    double value = 0.0;
    double delta = 0.0;
    double paper_value = 0.0;
    double paper_delta = 0.0;
    std::string method;  // "mc" or "approx"
};

namespace detail {

inline int factorial_k(int d, long long n) {
    int m = 0;
    while ((1LL << m) < n) ++m;
    if ((1LL << m) != n || m > d)
        throw std::invalid_argument("table: factorial rows need n = 2^(d-k)");
    return d - m;
}

}  // namespace detail

// Recomputes one benchmark table cell-by-cell against the Monte Carlo
// oracle, which is how the published numbers were produced. (The analytic
// quantization engine lands within a few percent at these dimensions --
// too coarse for +-0.08 table reproduction -- so it is exposed through the
// tuner and CLI but not used here.)
inline std::vector<TableResultCell> reproduce_table(int id, const McConfig& cfg,
                                                    double delta_step = 0.02) {
    const BenchmarkTable& table = benchmark_table(id);
    std::vector<TableResultCell> out;
    const std::vector<double> full_grid = default_delta_grid(delta_step);
    const std::vector<double> unit_grid = {1.0};
    for (const auto& row : table.rows) {
        for (std::size_t col = 0; col < table.ns.size(); ++col) {
            const long long n = table.ns[col];
            DesignSpec spec;
            spec.family = row.family;
            spec.d = table.d;
            spec.n = n;
            spec.alpha = row.alpha;
            if (row.family == Family::Factorial) spec.k = detail::factorial_k(table.d, n);
            const auto& grid = row.fixed_delta_one ? unit_grid : full_grid;
            const TuneMethod method = TuneMethod::MonteCarlo;
            const TuneResult tuned =
                table.quantization
                    ? optimal_delta_for_quantization(spec, Domain::cube(), grid, cfg, method)
                    : optimal_delta_for_coverage(spec, Domain::cube(), 0.9, grid, cfg, method);

            TableResultCell cell;
            cell.label = row.label;
            cell.n = n;
            cell.value = tuned.objective_star;
            cell.delta = tuned.delta_star;
            cell.paper_value = row.cells[col].value;
            cell.paper_delta = row.cells[col].delta;
            cell.method = method == TuneMethod::Approx ? "approx" : "mc";
            out.push_back(cell);
        }
    }
    return out;
}

}  // namespace covq

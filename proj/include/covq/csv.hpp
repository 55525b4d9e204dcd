#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "covq/montecarlo.hpp"
#include "covq/points.hpp"
#include "covq/simplexlab.hpp"
#include "covq/tuner.hpp"

namespace covq {

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace detail

// One point per row, plain decimal, header "x1,...,xd".
inline void write_points_csv(std::ostream& os, const PointSet& points) {
    for (int j = 0; j < points.dim(); ++j) os << (j ? "," : "") << "x" << (j + 1);
    os << "\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto row = points[i];
        for (int j = 0; j < points.dim(); ++j)
            os << (j ? "," : "") << detail::format_double(row[static_cast<std::size_t>(j)]);
        os << "\n";
    }
}

inline PointSet read_points_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("points csv: missing header");
    int dim = 0;
    {
        std::stringstream header(line);
        std::string cell;
        while (std::getline(header, cell, ',')) ++dim;
    }
    if (dim < 1) throw std::invalid_argument("points csv: empty header");
    std::vector<double> flat;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        int count = 0;
        while (std::getline(row, cell, ',')) {
            flat.push_back(std::stod(cell));
            ++count;
        }
        if (count != dim) throw std::invalid_argument("points csv: ragged row");
    }
    return PointSet(dim, std::move(flat));
}

// Curve schema: r,value,std_error.
inline void write_curve_csv(std::ostream& os, const CoverageCurve& curve) {
    os << "r,value,std_error\n";
    for (std::size_t i = 0; i < curve.radii.size(); ++i)
        os << detail::format_double(curve.radii[i]) << "," << detail::format_double(curve.values[i])
           << "," << detail::format_double(curve.std_errors[i]) << "\n";
}

// Tune trace schema: delta,objective.
inline void write_tune_csv(std::ostream& os, const TuneResult& result) {
    os << "delta,objective\n";
    for (const auto& [delta, objective] : result.trace)
        os << detail::format_double(delta) << "," << detail::format_double(objective) << "\n";
}

// Simplex sweeps in long form: design,d,n,delta,r,value,std_error
// (r empty for quantization sweeps).
inline void write_sweep_csv(std::ostream& os, const SimplexSweep& sweep) {
    os << "design,d,n,delta,r,value,std_error\n";
    const std::size_t cols = sweep.r_grid.empty() ? 1 : sweep.r_grid.size();
    for (std::size_t di = 0; di < sweep.delta_grid.size(); ++di)
        for (std::size_t ri = 0; ri < cols; ++ri) {
            const McEstimate& est = sweep.at(di, ri);
            os << family_name(sweep.design) << "," << sweep.d << "," << sweep.n << ","
               << detail::format_double(sweep.delta_grid[di]) << ","
               << (sweep.r_grid.empty() ? "" : detail::format_double(sweep.r_grid[ri])) << ","
               << detail::format_double(est.value) << "," << detail::format_double(est.std_error)
               << "\n";
        }
}

}  // namespace covq

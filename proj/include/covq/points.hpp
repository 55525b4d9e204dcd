#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace covq {

using Point = std::vector<double>;

// Ordered list of d-dimensional points, stored row-major. Nested families
// rely on the ordering: the n-point design is the prefix of the (n+1)-point
// design generated from the same seed.
class PointSet {
public:
    explicit PointSet(int dim) : dim_(dim) {
        if (dim < 1) throw std::invalid_argument("PointSet: dim must be >= 1");
    }

    PointSet(int dim, std::vector<double> flat) : dim_(dim), data_(std::move(flat)) {
        if (dim < 1) throw std::invalid_argument("PointSet: dim must be >= 1");
        if (data_.size() % static_cast<std::size_t>(dim) != 0)
            throw std::invalid_argument("PointSet: flat size not a multiple of dim");
        for (double v : data_)
            if (!std::isfinite(v)) throw std::invalid_argument("PointSet: non-finite coordinate");
    }

    int dim() const { return dim_; }
    std::size_t size() const { return data_.size() / static_cast<std::size_t>(dim_); }
    bool empty() const { return data_.empty(); }

    std::span<const double> operator[](std::size_t i) const {
        return {data_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
    }

    Point point(std::size_t i) const {
        const auto row = (*this)[i];
        return Point(row.begin(), row.end());
    }

    void push_back(std::span<const double> p) {
        if (static_cast<int>(p.size()) != dim_)
            throw std::invalid_argument("PointSet: dimension mismatch on insert");
        for (double v : p)
            if (!std::isfinite(v)) throw std::invalid_argument("PointSet: non-finite coordinate");
        data_.insert(data_.end(), p.begin(), p.end());
    }

    PointSet prefix(std::size_t n) const {
        if (n > size()) throw std::invalid_argument("PointSet: prefix longer than set");
        return PointSet(dim_, std::vector<double>(data_.begin(),
                                                  data_.begin() + static_cast<std::ptrdiff_t>(n * static_cast<std::size_t>(dim_))));
    }

    const std::vector<double>& flat() const { return data_; }

private:
    int dim_;
    std::vector<double> data_;
};

enum class DomainKind { Cube, Simplex, ScaledSimplex1, ScaledSimplex2 };

// Sampling domain: the cube [-1,1]^d, the standard orthogonal simplex
// {u : sum u_i <= 1, u_i >= 0}, or one of its two delta-scalings (about the
// origin and about the centroid respectively). ScaledSimplex2 with delta=1
// is the standard simplex.
struct Domain {
    DomainKind kind = DomainKind::Cube;
    double delta = 1.0;  // used by the scaled simplices only

    static Domain cube() { return {DomainKind::Cube, 1.0}; }
    static Domain simplex() { return {DomainKind::Simplex, 1.0}; }
    static Domain scaled_simplex1(double delta) { return {DomainKind::ScaledSimplex1, delta}; }
    static Domain scaled_simplex2(double delta) { return {DomainKind::ScaledSimplex2, delta}; }

    bool is_cube() const { return kind == DomainKind::Cube; }
};

}  // namespace covq

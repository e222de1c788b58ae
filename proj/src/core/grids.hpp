#pragma once

#include <cmath>
#include <vector>

#include "core/errors.hpp"

namespace qpl {

/// Uniform spatial grid on [x_min, x_max] with n_points nodes (immutable).
class SpatialGrid {
public:
    SpatialGrid(double x_min, double x_max, int n_points)
        : x_min_(x_min), x_max_(x_max), n_(n_points) {
        if (!(x_max > x_min))
            throw UsageError("SpatialGrid: x_max must exceed x_min");
        if (n_points < 8)
            throw UsageError("SpatialGrid: n_points must be >= 8");
        dx_ = (x_max_ - x_min_) / static_cast<double>(n_ - 1);
    }

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    int size() const { return n_; }
    double dx() const { return dx_; }

    double x(int i) const { return x_min_ + dx_ * static_cast<double>(i); }

    int nearest_index(double x) const {
        int i = static_cast<int>(std::lround((x - x_min_) / dx_));
        if (i < 0) i = 0;
        if (i >= n_) i = n_ - 1;
        return i;
    }

    bool contains(double x) const { return x >= x_min_ && x <= x_max_; }

    std::vector<double> points() const {
        std::vector<double> p(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) p[static_cast<std::size_t>(i)] = x(i);
        return p;
    }

    bool operator==(const SpatialGrid& o) const {
        return x_min_ == o.x_min_ && x_max_ == o.x_max_ && n_ == o.n_;
    }

private:
    double x_min_, x_max_;
    int n_;
    double dx_;
};

inline SpatialGrid make_grid(double x_min, double x_max, int n_points) {
    return SpatialGrid(x_min, x_max, n_points);
}

/// Polygonal time slicing of (t_a, t_b) into N slices of length eps.
class TimeGrid {
public:
    TimeGrid(double t_a, double t_b, int n_slices)
        : t_a_(t_a), t_b_(t_b), n_(n_slices) {
        if (!(t_b > t_a))
            throw UsageError("TimeGrid: t_b must exceed t_a");
        if (n_slices < 1)
            throw UsageError("TimeGrid: n_slices must be >= 1");
        eps_ = (t_b_ - t_a_) / static_cast<double>(n_);
    }

    double t_a() const { return t_a_; }
    double t_b() const { return t_b_; }
    int n_slices() const { return n_; }
    double eps() const { return eps_; }
    double t(int k) const { return t_a_ + eps_ * static_cast<double>(k); }

    bool operator==(const TimeGrid& o) const {
        return t_a_ == o.t_a_ && t_b_ == o.t_b_ && n_ == o.n_;
    }

private:
    double t_a_, t_b_;
    int n_;
    double eps_;
};

}  // namespace qpl

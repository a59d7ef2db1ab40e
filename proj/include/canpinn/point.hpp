#pragma once

#include <array>
#include <cassert>
#include <stdexcept>

namespace canpinn {

/// Spatial-temporal coordinate with up to three axes (x, y, t).
class Point {
public:
    Point() = default;
    explicit Point(double x) : c_{x, 0.0, 0.0}, dim_(1) {}
    Point(double x, double y) : c_{x, y, 0.0}, dim_(2) {}
    Point(double x, double y, double t) : c_{x, y, t}, dim_(3) {}

    static Point zeros(int dim) {
        if (dim < 1 || dim > 3) throw std::invalid_argument("Point: dim must be 1..3");
        Point p;
        p.dim_ = dim;
        return p;
    }

    int dim() const { return dim_; }

    double operator[](int i) const {
        assert(i >= 0 && i < dim_);
        return c_[static_cast<std::size_t>(i)];
    }
    double& operator[](int i) {
        assert(i >= 0 && i < dim_);
        return c_[static_cast<std::size_t>(i)];
    }

    /// Copy with one coordinate displaced; stencil points are built through
    /// this single helper so equal offsets give bit-identical points.
    Point shifted(int axis, double offset) const {
        Point p = *this;
        p[axis] += offset;
        return p;
    }

    bool operator==(const Point& o) const {
        if (dim_ != o.dim_) return false;
        for (int i = 0; i < dim_; ++i)
            if (c_[static_cast<std::size_t>(i)] != o.c_[static_cast<std::size_t>(i)]) return false;
        return true;
    }

private:
    std::array<double, 3> c_{};
    int dim_ = 0;
};

} // namespace canpinn

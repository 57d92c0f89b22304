#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "errors.hpp"

namespace hybridfd {

using Point = Eigen::Vector2d;

// Axis-aligned rectangle [x0,x1] x [z0,z1]. The second coordinate is called
// z throughout (depth axis in the acoustic experiments).
struct Rect {
    double x0 = 0.0, x1 = 1.0, z0 = 0.0, z1 = 1.0;

    double width() const { return x1 - x0; }
    double height() const { return z1 - z0; }
    double area() const { return width() * height(); }

    bool degenerate() const { return !(x1 > x0) || !(z1 > z0); }

    bool contains(const Point& p, double tol = 0.0) const {
        return p.x() >= x0 - tol && p.x() <= x1 + tol &&
               p.y() >= z0 - tol && p.y() <= z1 + tol;
    }

    void require_valid() const {
        if (degenerate())
            throw validation_error("degenerate rectangle: require x1 > x0 and z1 > z0");
    }
};

// Eigen::Vector2d has no named z(); alias the second component.
inline double z_of(const Point& p) { return p.y(); }

} // namespace hybridfd

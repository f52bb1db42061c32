#pragma once

#include <stdexcept>

namespace ssiss {

// Natural units hbar = m = omega = 1 by default; everything configurable.
struct PhysicalConstants {
    double hbar = 1.0;
    double mass = 1.0;
    double omega = 1.0;

    void validate() const {
        if (!(hbar > 0.0) || !(mass > 0.0) || !(omega > 0.0))
            throw std::invalid_argument("PhysicalConstants: hbar, mass, omega must be > 0");
    }
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrtPi = 1.7724538509055160273;

}  // namespace ssiss

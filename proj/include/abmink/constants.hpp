#pragma once

namespace abmink {

/// CODATA values in SI units; eps0 = 1 / (mu0 c^2).
struct PhysicalConstants {
    double c = 299792458.0;
    double mu0 = 1.25663706212e-6;
    double eps0 = 1.0 / (1.25663706212e-6 * 299792458.0 * 299792458.0);
    double hbar = 1.054571817e-34;
    double e_charge = 1.602176634e-19;
};

inline constexpr PhysicalConstants kSI{};

namespace si {
inline constexpr double c = kSI.c;
inline constexpr double mu0 = kSI.mu0;
inline constexpr double eps0 = kSI.eps0;
inline constexpr double hbar = kSI.hbar;
inline constexpr double e_charge = kSI.e_charge;
}  // namespace si

}  // namespace abmink

#pragma once

#include <numbers>

// CODATA 2018 exact / recommended values, SI units.
namespace casimir::constants
{

inline constexpr double pi = std::numbers::pi;

inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double c = 299792458.0;                 // m / s
inline constexpr double k_B = 1.380649e-23;              // J / K
inline constexpr double N_A = 6.02214076e23;             // 1 / mol
inline constexpr double e = 1.602176634e-19;             // C
inline constexpr double epsilon_0 = 8.8541878128e-12;    // F / m

// Photon energy in eV <-> angular frequency in rad/s.
constexpr double ev_to_rad_per_s(double energy_ev) { return energy_ev * e / hbar; }
constexpr double rad_per_s_to_ev(double omega) { return omega * hbar / e; }

// n-th Matsubara frequency 2 pi n k_B T / hbar, expressed as an energy in eV.
constexpr double matsubara_energy_ev(long n, double temperature)
{
   return 2.0 * pi * static_cast<double>(n) * k_B * temperature / e;
}

} // namespace casimir::constants

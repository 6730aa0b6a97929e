#pragma once

#include "casimir/dielectric.hpp"

#include <span>
#include <string>
#include <vector>

// Finite-temperature Lifshitz interaction across a fluid gap, the
// proximity-force mapping to sphere-plate geometry, and ensemble sweeps.
//
// SI units throughout (m, K, J, N); attraction is negative.
namespace casimir
{

/// Zero-frequency TE reflection of metals. Drude: r_TE(0) = 0. Plasma: the
/// reflection of a lossless plasma with the model's omega_p.
enum class ZeroFrequencyTE
{
   Drude,
   Plasma,
};

struct LifshitzOptions
{
   double k_rel_tol = 1e-7;         // per-frequency transverse-momentum quadrature
   int k_max_depth = 20;            // adaptive bisection depth
   double matsubara_rel_tol = 1e-8; // stop once a term drops below this fraction of the sum...
   int matsubara_small_terms = 3;   // ...for this many consecutive frequencies
   long matsubara_max_terms = 100000;
   double truncation_factor = 1.0;  // keep summing to factor * (stopping index)
   ZeroFrequencyTE te_zero = ZeroFrequencyTE::Drude;
};

std::string to_string(ZeroFrequencyTE prescription);

struct MaterialStack
{
   PermittivityModel sphere;
   PermittivityModel plate;
   PermittivityModel medium;
};

struct SpherePlateSystem
{
   double sphere_radius; // m
   double temperature;   // K
   MaterialStack materials;

   SpherePlateSystem(double sphere_radius_m, double temperature_k, MaterialStack stack);
};

/// xi_n = 2 pi n k_B T / hbar for n = 0..n_max.
class MatsubaraGrid
{
public:
   MatsubaraGrid(double temperature, long n_max);

   double temperature() const { return temperature_; }
   long n_max() const { return static_cast<long>(xi_.size()) - 1; }
   double xi(long n) const { return xi_.at(static_cast<std::size_t>(n)); } // rad/s
   const std::vector<double>& frequencies() const { return xi_; }

private:
   double temperature_;
   std::vector<double> xi_;
};

struct ReflectionCoefficients
{
   double tm;
   double te;
};

/// Fresnel coefficients of a half-space `eps_layer` seen from `eps_medium` at
/// imaginary frequency xi (rad/s) and transverse wavevector k (1/m). An
/// infinite eps_layer is the perfect mirror (1, -1).
ReflectionCoefficients reflection_coeffs(double eps_layer, double eps_medium, double xi, double k);

struct EnergyEvaluation
{
   double energy;         // J / m^2
   long matsubara_terms;  // number of frequencies summed, n = 0 included
};

EnergyEvaluation plate_plate_energy_detailed(double distance, double temperature,
                                             const MaterialStack& materials,
                                             const LifshitzOptions& options = {});

/// Free energy per unit area between the sphere and plate materials as
/// parallel half-spaces separated by `distance` of medium.
double plate_plate_energy(double distance, double temperature, const MaterialStack& materials,
                          const LifshitzOptions& options = {});

/// F(d) = 2 pi R E_pp(d).
double pfa_sphere_plate_force(const SpherePlateSystem& system, double distance,
                              const LifshitzOptions& options = {});

/// True once d/R exceeds 0.01, where the proximity mapping loses accuracy.
bool pfa_accuracy_degraded(double sphere_radius, double distance);

struct ForceCurve
{
   std::vector<double> distances; // m
   std::vector<double> forces;    // N
   std::string model_label;
};

struct ForceBand
{
   std::vector<double> distances;
   std::vector<double> f_min;
   std::vector<double> f_max;
   std::vector<ForceCurve> members;
};

/// Sphere and plate are both made of each ensemble member in turn.
struct BandGeometry
{
   double sphere_radius;
   double temperature;
   PermittivityModel medium;
};

/// Distances must be positive and strictly increasing. Evaluated on up to
/// `threads` workers (0 = hardware concurrency); the result does not depend on
/// the thread count.
ForceCurve force_curve(const SpherePlateSystem& system, std::span<const double> distances,
                       std::string model_label, const LifshitzOptions& options = {},
                       unsigned threads = 0);

ForceBand force_band(const ModelEnsemble& ensemble, const BandGeometry& geometry,
                     std::span<const double> distances, const LifshitzOptions& options = {},
                     unsigned threads = 0);

/// -pi^2 hbar c / (720 d^3): perfect mirrors in vacuum at T = 0.
double ideal_casimir_energy(double distance);

} // namespace casimir

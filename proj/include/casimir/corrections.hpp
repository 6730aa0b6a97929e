#pragma once

#include <optional>

// Electrostatic, double-layer screening and hydrodynamic estimates for a
// sphere near a plate in a fluid. SI units; attraction is negative.
namespace casimir
{

struct ElectrostaticScenario
{
   double sphere_radius;                // m
   double potential;                    // V0, volts
   double eps_medium_static;            // relative permittivity of the medium
   std::optional<double> debye_length;  // m; empty = unscreened

   ElectrostaticScenario(double sphere_radius_m, double potential_v, double eps_medium,
                         std::optional<double> debye_length_m = std::nullopt);
};

/// Ideal-model sphere-plate force -(pi R eps eps0 V0^2 / d) exp(-d / lambda).
/// An estimate, not a prediction of what a real surface with patches produces.
double electrostatic_force(const ElectrostaticScenario& scenario, double distance);

/// Where the residual force measured in air comes from.
enum class ChargeOrigin
{
   WorkFunction,                // contact potential: fixed V0, field energy grows with eps
   TrappedChargeOrExternalField // fixed charge: induced polarization screens by 1/eps
};

/// Force in the fluid given the force measured in air.
double fluid_scaling(double force_in_air, double eps_medium_static, ChargeOrigin origin);

struct IonicSolution
{
   double residue_mass_fraction = 3.6e-6; // evaporation residue, by mass
   double salt_molar_mass = 58.44e-3;     // kg/mol, NaCl
   double solvent_density = 789.0;        // kg/m^3, ethanol
   int ion_valence = 1;                   // symmetric z:z electrolyte
   double eps_static = 24.3;
   double temperature = 298.0;            // K

   void validate() const;
};

/// Salt concentration (mol/L) if the whole residue is salt dissolved back in
/// the solvent.
double concentration_from_residue(const IonicSolution& solution);

/// lambda = sqrt(eps eps0 k_B T / (2 N_A e^2 z^2 c)), c in mol/L.
double debye_length(double concentration, int valence, double eps_static, double temperature);

struct HydroScenario
{
   double sphere_radius;  // m
   double viscosity;      // Pa s
   double approach_speed; // m/s, > 0 when the sphere moves towards the plate

   HydroScenario(double sphere_radius_m, double viscosity_pa_s, double approach_speed_m_s);
};

/// Reynolds lubrication drag 6 pi eta R^2 v / d. Positive (repulsive) while
/// approaching, since the drag opposes the motion.
double hydrodynamic_force(const HydroScenario& scenario, double distance);

/// Approach speed producing `force` at `distance`; inverse of hydrodynamic_force.
double approach_speed_for_force(double force, double distance, double sphere_radius,
                                double viscosity);

} // namespace casimir

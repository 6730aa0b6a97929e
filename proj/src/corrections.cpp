#include "casimir/corrections.hpp"

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

#include <cmath>

namespace casimir
{

namespace
{

void require_positive_distance(double d)
{
   if (!(d > 0.0))
   {
      throw DomainError("separation must be > 0");
   }
}

} // namespace

ElectrostaticScenario::ElectrostaticScenario(double r, double v, double eps,
                                             std::optional<double> lambda)
   : sphere_radius(r), potential(v), eps_medium_static(eps), debye_length(lambda)
{
   if (!(sphere_radius > 0.0))
   {
      throw InputError("sphere radius must be > 0");
   }
   if (!(eps_medium_static >= 1.0))
   {
      throw InputError("static permittivity must be >= 1");
   }
   if (debye_length && !(*debye_length > 0.0))
   {
      throw InputError("Debye length must be > 0 when given");
   }
   if (!std::isfinite(potential))
   {
      throw InputError("potential must be finite");
   }
}

double electrostatic_force(const ElectrostaticScenario& s, double distance)
{
   require_positive_distance(distance);
   const double unscreened = -constants::pi * s.sphere_radius * s.eps_medium_static *
                             constants::epsilon_0 * s.potential * s.potential / distance;
   return s.debye_length ? unscreened * std::exp(-distance / *s.debye_length) : unscreened;
}

double fluid_scaling(double force_in_air, double eps_medium_static, ChargeOrigin origin)
{
   if (!(eps_medium_static >= 1.0))
   {
      throw InputError("static permittivity must be >= 1");
   }
   return origin == ChargeOrigin::WorkFunction ? force_in_air * eps_medium_static
                                               : force_in_air / eps_medium_static;
}

void IonicSolution::validate() const
{
   if (!(residue_mass_fraction >= 0.0) || !(salt_molar_mass > 0.0) || !(solvent_density > 0.0) ||
       ion_valence < 1 || !(eps_static >= 1.0) || !(temperature > 0.0))
   {
      throw InputError("ionic solution parameters out of range");
   }
}

double concentration_from_residue(const IonicSolution& solution)
{
   solution.validate();
   // mol/m^3 -> mol/L
   return solution.residue_mass_fraction * solution.solvent_density / solution.salt_molar_mass /
          1000.0;
}

double debye_length(double concentration, int valence, double eps_static, double temperature)
{
   if (!(concentration > 0.0))
   {
      throw DomainError("concentration must be > 0");
   }
   if (valence < 1 || !(eps_static >= 1.0) || !(temperature > 0.0))
   {
      throw InputError("Debye length needs valence >= 1, eps >= 1, T > 0");
   }
   using namespace constants;
   const double number_density_term = 2.0 * N_A * e * e * valence * valence * concentration * 1000.0;
   return std::sqrt(eps_static * epsilon_0 * k_B * temperature / number_density_term);
}

HydroScenario::HydroScenario(double r, double eta, double v)
   : sphere_radius(r), viscosity(eta), approach_speed(v)
{
   if (!(sphere_radius > 0.0) || !(viscosity > 0.0) || !(approach_speed >= 0.0))
   {
      throw InputError("hydrodynamic scenario needs R > 0, eta > 0, v >= 0");
   }
}

double hydrodynamic_force(const HydroScenario& s, double distance)
{
   require_positive_distance(distance);
   return 6.0 * constants::pi * s.viscosity * s.sphere_radius * s.sphere_radius *
          s.approach_speed / distance;
}

double approach_speed_for_force(double force, double distance, double sphere_radius,
                                double viscosity)
{
   require_positive_distance(distance);
   return force * distance /
          (6.0 * constants::pi * viscosity * sphere_radius * sphere_radius);
}

} // namespace casimir

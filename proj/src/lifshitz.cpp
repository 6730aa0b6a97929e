#include "casimir/lifshitz.hpp"

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "parallel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace casimir
{

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

// Reflection of one interface in units where lengths are scaled by 2d:
// x = 2 q d is the medium's normal wavevector, zeta2 = (2 xi d / c)^2.
struct Interface
{
   double eps = 1.0;   // layer permittivity at this frequency
   bool mirror = false;
   // n = 0 only
   double static_tm = 0.0;
   double static_te_plasma = 0.0; // (2 d omega_p / c)^2, 0 when r_TE(0) = 0
};

ReflectionCoefficients fresnel(const Interface& layer, double eps_medium, double x, double zeta2,
                               bool zero_frequency)
{
   if (layer.mirror)
   {
      return {1.0, -1.0};
   }
   if (zero_frequency)
   {
      double te = 0.0;
      if (layer.static_te_plasma > 0.0)
      {
         const double kappa = std::sqrt(x * x + layer.static_te_plasma);
         te = (x - kappa) / (x + kappa);
      }
      return {layer.static_tm, te};
   }
   const double kappa = std::sqrt(x * x + (layer.eps - eps_medium) * zeta2);
   const double tm = (layer.eps * x - eps_medium * kappa) / (layer.eps * x + eps_medium * kappa);
   const double te = (x - kappa) / (x + kappa);
   return {tm, te};
}

Interface static_interface(const PermittivityModel& model, double eps_medium_static,
                           double distance, ZeroFrequencyTE prescription)
{
   Interface layer;
   if (std::holds_alternative<IdealConductor>(model))
   {
      layer.mirror = true;
      return layer;
   }
   const double eps0 = static_permittivity(model);
   layer.static_tm = std::isinf(eps0) ? 1.0 : (eps0 - eps_medium_static) / (eps0 + eps_medium_static);
   if (prescription == ZeroFrequencyTE::Plasma)
   {
      if (const auto wp = plasma_frequency(model))
      {
         const double scaled = 2.0 * distance * constants::ev_to_rad_per_s(*wp) / constants::c;
         layer.static_te_plasma = scaled * scaled;
      }
   }
   return layer;
}

Interface dynamic_interface(const PermittivityModel& model, double xi_ev)
{
   Interface layer;
   layer.mirror = std::holds_alternative<IdealConductor>(model);
   if (!layer.mirror)
   {
      layer.eps = eval_eps_imag(model, xi_ev);
   }
   return layer;
}

// int_{x0}^inf x sum_p ln(1 - r_p^s r_p^p e^{-x}) dx
double matsubara_term(const Interface& sphere, const Interface& plate, double eps_medium,
                      double zeta, bool zero_frequency, const LifshitzOptions& options,
                      double distance, long n)
{
   const double zeta2 = zeta * zeta;
   const double x0 = std::sqrt(eps_medium) * zeta;

   auto integrand = [&](double t) {
      const double x = x0 + t;
      const double decay = std::exp(-x);
      if (decay == 0.0)
      {
         return 0.0;
      }
      const auto rs = fresnel(sphere, eps_medium, x, zeta2, zero_frequency);
      const auto rp = fresnel(plate, eps_medium, x, zeta2, zero_frequency);
      return x * (std::log1p(-rs.tm * rp.tm * decay) + std::log1p(-rs.te * rp.te * decay));
   };

   double error = 0.0;
   const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, inf, static_cast<unsigned>(options.k_max_depth), options.k_rel_tol, &error);

   if (!std::isfinite(value) || error > std::max(10.0 * options.k_rel_tol * std::abs(value), 1e-300))
   {
      std::ostringstream msg;
      msg << "transverse-momentum quadrature did not converge at n=" << n << ", d=" << distance
          << " m (value " << value << ", error estimate " << error << ")";
      throw NumericalError(msg.str());
   }
   return value;
}

void validate_distances(std::span<const double> distances)
{
   if (distances.empty())
   {
      throw InputError("distance list is empty");
   }
   for (std::size_t i = 0; i < distances.size(); ++i)
   {
      if (!(distances[i] > 0.0))
      {
         throw DomainError("distances must be > 0");
      }
      if (i > 0 && !(distances[i] > distances[i - 1]))
      {
         throw InputError("distances must be strictly increasing");
      }
   }
}

} // namespace

std::string to_string(ZeroFrequencyTE prescription)
{
   return prescription == ZeroFrequencyTE::Drude ? "drude" : "plasma";
}

SpherePlateSystem::SpherePlateSystem(double r, double t, MaterialStack stack)
   : sphere_radius(r), temperature(t), materials(std::move(stack))
{
   if (!(sphere_radius > 0.0) || !(temperature > 0.0))
   {
      throw InputError("sphere radius and temperature must be > 0");
   }
}

MatsubaraGrid::MatsubaraGrid(double temperature, long n_max) : temperature_(temperature)
{
   if (!(temperature > 0.0) || n_max < 0)
   {
      throw InputError("Matsubara grid needs T > 0 and n_max >= 0");
   }
   xi_.reserve(static_cast<std::size_t>(n_max) + 1);
   for (long n = 0; n <= n_max; ++n)
   {
      xi_.push_back(constants::ev_to_rad_per_s(constants::matsubara_energy_ev(n, temperature)));
   }
}

ReflectionCoefficients reflection_coeffs(double eps_layer, double eps_medium, double xi, double k)
{
   if (!(xi >= 0.0) || !(k >= 0.0))
   {
      throw DomainError("reflection coefficients need xi >= 0 and k >= 0");
   }
   if (xi == 0.0 && k == 0.0)
   {
      throw DomainError("reflection coefficients undefined at xi = k = 0");
   }
   if (std::isinf(eps_layer))
   {
      return {1.0, -1.0};
   }
   const double w2 = (xi / constants::c) * (xi / constants::c);
   const double kappa_med = std::sqrt(eps_medium * w2 + k * k);
   const double kappa_layer = std::sqrt(eps_layer * w2 + k * k);
   return {(eps_layer * kappa_med - eps_medium * kappa_layer) /
              (eps_layer * kappa_med + eps_medium * kappa_layer),
           (kappa_med - kappa_layer) / (kappa_med + kappa_layer)};
}

EnergyEvaluation plate_plate_energy_detailed(double distance, double temperature,
                                             const MaterialStack& materials,
                                             const LifshitzOptions& options)
{
   if (!(distance > 0.0))
   {
      throw DomainError("plate separation must be > 0");
   }
   if (!(temperature > 0.0))
   {
      throw DomainError("temperature must be > 0");
   }
   if (is_conductor(materials.medium))
   {
      throw InputError("the gap medium must be a dielectric");
   }

   // n = 0 from the static limits; metals never see eps(0).
   const double eps_medium_static = static_permittivity(materials.medium);
   const Interface sphere0 =
      static_interface(materials.sphere, eps_medium_static, distance, options.te_zero);
   const Interface plate0 =
      static_interface(materials.plate, eps_medium_static, distance, options.te_zero);
   double sum =
      0.5 * matsubara_term(sphere0, plate0, eps_medium_static, 0.0, true, options, distance, 0);

   // zeta_n = 2 d xi_n / c
   const double zeta_step =
      2.0 * distance *
      constants::ev_to_rad_per_s(constants::matsubara_energy_ev(1, temperature)) / constants::c;

   long n = 1;
   long stop_at = -1;
   int small_run = 0;
   for (;; ++n)
   {
      if (n >= options.matsubara_max_terms)
      {
         std::ostringstream msg;
         msg << "Matsubara sum not converged after " << options.matsubara_max_terms
             << " terms (d=" << distance << " m, T=" << temperature << " K, partial sum " << sum
             << ")";
         throw NumericalError(msg.str());
      }
      const double xi_ev = constants::matsubara_energy_ev(n, temperature);
      const double eps_medium = eval_eps_imag(materials.medium, xi_ev);
      const Interface sphere = dynamic_interface(materials.sphere, xi_ev);
      const Interface plate = dynamic_interface(materials.plate, xi_ev);
      const double term = matsubara_term(sphere, plate, eps_medium,
                                         static_cast<double>(n) * zeta_step, false, options,
                                         distance, n);
      sum += term;

      if (stop_at < 0)
      {
         small_run = (std::abs(term) <= options.matsubara_rel_tol * std::abs(sum)) ? small_run + 1 : 0;
         if (small_run >= options.matsubara_small_terms)
         {
            stop_at = static_cast<long>(std::ceil(options.truncation_factor * static_cast<double>(n)));
         }
      }
      if (stop_at >= 0 && n >= stop_at)
      {
         break;
      }
   }

   // E = (k_B T / 2 pi) sum' int k dk ..., with k dk = x dx / (2d)^2.
   const double energy =
      constants::k_B * temperature / (2.0 * constants::pi) * sum / (4.0 * distance * distance);
   return {energy, n + 1};
}

double plate_plate_energy(double distance, double temperature, const MaterialStack& materials,
                          const LifshitzOptions& options)
{
   return plate_plate_energy_detailed(distance, temperature, materials, options).energy;
}

double pfa_sphere_plate_force(const SpherePlateSystem& system, double distance,
                              const LifshitzOptions& options)
{
   return 2.0 * constants::pi * system.sphere_radius *
          plate_plate_energy(distance, system.temperature, system.materials, options);
}

bool pfa_accuracy_degraded(double sphere_radius, double distance)
{
   return distance / sphere_radius > 0.01;
}

ForceCurve force_curve(const SpherePlateSystem& system, std::span<const double> distances,
                       std::string model_label, const LifshitzOptions& options, unsigned threads)
{
   validate_distances(distances);
   ForceCurve curve{{distances.begin(), distances.end()},
                    std::vector<double>(distances.size()),
                    std::move(model_label)};
   detail::parallel_for(distances.size(), threads, [&](std::size_t i) {
      curve.forces[i] = pfa_sphere_plate_force(system, distances[i], options);
   });
   return curve;
}

ForceBand force_band(const ModelEnsemble& ensemble, const BandGeometry& geometry,
                     std::span<const double> distances, const LifshitzOptions& options,
                     unsigned threads)
{
   validate_distances(distances);
   const std::size_t n_members = ensemble.members.size();
   const std::size_t n_dist = distances.size();

   std::vector<SpherePlateSystem> systems;
   systems.reserve(n_members);
   for (const auto& member : ensemble.members)
   {
      systems.emplace_back(geometry.sphere_radius, geometry.temperature,
                           MaterialStack{member, member, geometry.medium});
   }

   ForceBand band;
   band.distances.assign(distances.begin(), distances.end());
   for (std::size_t m = 0; m < n_members; ++m)
   {
      band.members.push_back(
         {band.distances, std::vector<double>(n_dist), ensemble.member_labels[m]});
   }

   // One task per (member, distance) pair, row-major so the lowest failing
   // index belongs to the first failing member.
   detail::parallel_for(n_members * n_dist, threads, [&](std::size_t task) {
      const std::size_t m = task / n_dist;
      const std::size_t i = task % n_dist;
      try
      {
         band.members[m].forces[i] = pfa_sphere_plate_force(systems[m], distances[i], options);
      }
      catch (const NumericalError& err)
      {
         throw NumericalError("ensemble member '" + ensemble.member_labels[m] + "': " + err.what());
      }
      catch (const Error& err)
      {
         throw InputError("ensemble member '" + ensemble.member_labels[m] + "': " + err.what());
      }
   });

   band.f_min.resize(n_dist);
   band.f_max.resize(n_dist);
   for (std::size_t i = 0; i < n_dist; ++i)
   {
      double lo = band.members.front().forces[i];
      double hi = lo;
      for (const auto& curve : band.members)
      {
         lo = std::min(lo, curve.forces[i]);
         hi = std::max(hi, curve.forces[i]);
      }
      band.f_min[i] = lo;
      band.f_max[i] = hi;
   }
   return band;
}

double ideal_casimir_energy(double distance)
{
   const double d3 = distance * distance * distance;
   return -constants::pi * constants::pi * constants::hbar * constants::c / (720.0 * d3);
}

} // namespace casimir

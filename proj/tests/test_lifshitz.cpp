#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"

#include <cmath>
#include <random>

using namespace casimir;
namespace cst = casimir::constants;

namespace
{

const DrudeModel gold(9.0, 0.035);

MaterialStack gold_in_ethanol() { return {gold, gold, default_ethanol_model()}; }
MaterialStack mirrors_in_vacuum() { return {IdealConductor{}, IdealConductor{}, Vacuum{}}; }

// Brute-force Lifshitz energy: fixed-step Simpson rule in physical k for every
// Matsubara frequency up to a generous fixed cutoff. Drude gold plates in the
// two-oscillator ethanol model, n = 0 TE reflection zero.
double brute_force_gold_ethanol_energy(double d, double temperature)
{
   auto eps_gold = [](double xi_ev) { return 1.0 + 81.0 / (xi_ev * (xi_ev + 0.035)); };
   auto eps_ethanol = [](double xi_ev) {
      return 1.0 + 22.45 / (1.0 + std::pow(xi_ev / 6.6e-5, 2)) +
             0.85 / (1.0 + std::pow(xi_ev / 11.35, 2));
   };

   const int steps = 6000;
   const double k_max = 35.0 / d;
   const double h = k_max / steps;

   auto k_integral = [&](auto&& integrand) {
      double s = integrand(0.0) + integrand(k_max);
      for (int i = 1; i < steps; ++i)
      {
         s += (i % 2 ? 4.0 : 2.0) * integrand(i * h);
      }
      return s * h / 3.0;
   };

   // n = 0: metals reflect TM fully, TE not at all.
   double sum = 0.5 * k_integral([&](double k) {
      return k == 0.0 ? 0.0 : k * std::log(1.0 - std::exp(-2.0 * k * d));
   });

   for (int n = 1; n < 4000; ++n)
   {
      const double xi_ev = 2.0 * cst::pi * n * cst::k_B * temperature / cst::e;
      const double xi = xi_ev * cst::e / cst::hbar;
      const double em = eps_ethanol(xi_ev);
      const double el = eps_gold(xi_ev);
      sum += k_integral([&](double k) {
         const double q = std::sqrt(em * xi * xi / (cst::c * cst::c) + k * k);
         const double kl = std::sqrt(el * xi * xi / (cst::c * cst::c) + k * k);
         const double tm = (el * q - em * kl) / (el * q + em * kl);
         const double te = (q - kl) / (q + kl);
         const double decay = std::exp(-2.0 * q * d);
         return k * (std::log(1.0 - tm * tm * decay) + std::log(1.0 - te * te * decay));
      });
   }
   return cst::k_B * temperature / (2.0 * cst::pi) * sum;
}

} // namespace

TEST_CASE("reflection coefficients")
{
   const double xi = cst::ev_to_rad_per_s(0.1);
   const double k = 1.0 / 40e-9;

   const auto same = reflection_coeffs(2.0, 2.0, xi, k);
   CHECK(same.tm == 0.0);
   CHECK(same.te == 0.0);

   const auto mirror = reflection_coeffs(std::numeric_limits<double>::infinity(), 24.3, xi, k);
   CHECK(mirror.tm == 1.0);
   CHECK(mirror.te == -1.0);

   // arbitrary-precision evaluation of the kappa formulas
   const auto r = reflection_coeffs(6001.0, 24.3, xi, k);
   CHECK(r.tm == doctest::Approx(0.985109273505185518).epsilon(1e-13));
   CHECK(r.te == doctest::Approx(-0.298850798361975950).epsilon(1e-13));

   CHECK_THROWS_AS(reflection_coeffs(3.0, 1.0, 0.0, 0.0), DomainError);
   CHECK_THROWS_AS(reflection_coeffs(3.0, 1.0, -1.0, 1.0), DomainError);

   std::mt19937_64 rng(7);
   std::uniform_real_distribution<double> u(-3.0, 4.0);
   for (int trial = 0; trial < 2000; ++trial)
   {
      const double el = std::pow(10.0, u(rng));
      const double em = std::pow(10.0, u(rng));
      const auto c = reflection_coeffs(el, em, xi * std::pow(10.0, u(rng)), k * std::pow(10.0, u(rng)));
      CHECK(std::abs(c.tm) <= 1.0);
      CHECK(std::abs(c.te) <= 1.0);
   }
}

TEST_CASE("Matsubara grid")
{
   const MatsubaraGrid grid(300.0, 10);
   CHECK(grid.n_max() == 10);
   CHECK(grid.xi(0) == 0.0);
   CHECK(grid.xi(1) == doctest::Approx(2.0 * cst::pi * cst::k_B * 300.0 / cst::hbar));
   for (long n = 1; n <= grid.n_max(); ++n)
   {
      CHECK(grid.xi(n) > grid.xi(n - 1));
   }
   CHECK_THROWS_AS(MatsubaraGrid(0.0, 3), InputError);
}

TEST_CASE("perfect mirrors in vacuum reproduce the T = 0 closed form")
{
   for (double d : {50e-9, 100e-9, 200e-9, 500e-9})
   {
      CAPTURE(d);
      const double e = plate_plate_energy(d, 1.0, mirrors_in_vacuum());
      CHECK(e == doctest::Approx(ideal_casimir_energy(d)).epsilon(1e-2));
   }
}

TEST_CASE("zero dielectric contrast gives zero energy")
{
   const MaterialStack uniform{default_ethanol_model(), default_ethanol_model(),
                               default_ethanol_model()};
   CHECK(plate_plate_energy(40e-9, 300.0, uniform) == 0.0);
   const MaterialStack empty{Vacuum{}, Vacuum{}, Vacuum{}};
   CHECK(plate_plate_energy(100e-9, 300.0, empty) == 0.0);
}

TEST_CASE("Drude gold across ethanol agrees with a brute-force double sum")
{
   const double d = 40e-9;
   const double e = plate_plate_energy(d, 300.0, gold_in_ethanol());
   CHECK(e < 0.0);
   CHECK(e == doctest::Approx(brute_force_gold_ethanol_energy(d, 300.0)).epsilon(5e-3));
}

TEST_CASE("attraction weakens monotonically with distance")
{
   double previous = -std::numeric_limits<double>::infinity();
   for (double d = 10e-9; d < 3e-6; d *= 1.3)
   {
      const double e = plate_plate_energy(d, 300.0, gold_in_ethanol());
      CHECK(e < 0.0);
      CHECK(e > previous);
      previous = e;
   }
   CHECK(std::abs(previous) < 1e-3 * std::abs(plate_plate_energy(10e-9, 300.0, gold_in_ethanol())));
}

TEST_CASE("doubling the frequency cutoff and halving the quadrature tolerance")
{
   LifshitzOptions tight;
   tight.truncation_factor = 2.0;
   tight.k_rel_tol = 0.5e-7;
   for (double d : {20e-9, 40e-9, 100e-9, 300e-9})
   {
      CAPTURE(d);
      const auto base = plate_plate_energy_detailed(d, 300.0, gold_in_ethanol());
      const auto refined = plate_plate_energy_detailed(d, 300.0, gold_in_ethanol(), tight);
      CHECK(refined.matsubara_terms >= 2 * (base.matsubara_terms - 1));
      CHECK(std::abs(refined.energy / base.energy - 1.0) < 1e-3);
   }
}

TEST_CASE("zero-frequency TE prescription")
{
   LifshitzOptions plasma;
   plasma.te_zero = ZeroFrequencyTE::Plasma;
   const double drude_e = plate_plate_energy(200e-9, 300.0, gold_in_ethanol());
   const double plasma_e = plate_plate_energy(200e-9, 300.0, gold_in_ethanol(), plasma);
   CHECK(plasma_e < drude_e);

   // dielectrics have no static TE reflection under either prescription
   const MaterialStack dielectric{OscillatorModel({{3.0, 5.0}}), OscillatorModel({{3.0, 5.0}}),
                                  Vacuum{}};
   CHECK(plate_plate_energy(100e-9, 300.0, dielectric) ==
         plate_plate_energy(100e-9, 300.0, dielectric, plasma));
}

TEST_CASE("errors")
{
   CHECK_THROWS_AS(plate_plate_energy(0.0, 300.0, gold_in_ethanol()), DomainError);
   CHECK_THROWS_AS(plate_plate_energy(40e-9, 0.0, gold_in_ethanol()), DomainError);
   CHECK_THROWS_AS(plate_plate_energy(40e-9, 300.0, {gold, gold, gold}), InputError);

   LifshitzOptions capped;
   capped.matsubara_max_terms = 5;
   CHECK_THROWS_AS(plate_plate_energy(40e-9, 300.0, gold_in_ethanol(), capped), NumericalError);

   CHECK_THROWS_AS(SpherePlateSystem(0.0, 300.0, gold_in_ethanol()), InputError);
   CHECK_THROWS_AS(SpherePlateSystem(1e-6, -1.0, gold_in_ethanol()), InputError);
}

TEST_CASE("proximity-force mapping")
{
   const SpherePlateSystem mirrors(19.9e-6, 1.0, mirrors_in_vacuum());
   const double d = 100e-9;
   CHECK(pfa_sphere_plate_force(mirrors, d) ==
         doctest::Approx(2.0 * cst::pi * 19.9e-6 * ideal_casimir_energy(d)).epsilon(1e-2));

   const SpherePlateSystem gold_sys(19.9e-6, 300.0, gold_in_ethanol());
   CHECK(pfa_sphere_plate_force(gold_sys, 40e-9) ==
         doctest::Approx(2.0 * cst::pi * 19.9e-6 * plate_plate_energy(40e-9, 300.0, gold_in_ethanol()))
            .epsilon(1e-15));

   const SpherePlateSystem uniform(19.9e-6, 300.0, {Vacuum{}, Vacuum{}, Vacuum{}});
   CHECK(pfa_sphere_plate_force(uniform, 50e-9) == 0.0);

   CHECK_FALSE(pfa_accuracy_degraded(19.9e-6, 100e-9));
   CHECK(pfa_accuracy_degraded(19.9e-6, 300e-9));
}

TEST_CASE("force curves and bands")
{
   const std::vector<double> distances{20e-9, 40e-9, 60e-9, 100e-9};
   const BandGeometry geometry{19.9e-6, 300.0, default_ethanol_model()};

   SUBCASE("single member band collapses onto its curve")
   {
      const ModelEnsemble one("one", {gold});
      const auto band = force_band(one, geometry, distances);
      const auto curve =
         force_curve(SpherePlateSystem(19.9e-6, 300.0, gold_in_ethanol()), distances, "gold");
      CHECK(band.f_min == band.f_max);
      CHECK(band.f_min == curve.forces);
      REQUIRE(band.members.size() == 1);
      CHECK(band.members[0].forces == curve.forces);
   }

   SUBCASE("two plasma frequencies give a band of nonzero width")
   {
      const ModelEnsemble two("two", {DrudeModel(8.4, 0.035), DrudeModel(9.0, 0.035)});
      const auto band = force_band(two, geometry, distances);
      for (std::size_t i = 0; i < distances.size(); ++i)
      {
         CHECK(band.f_max[i] - band.f_min[i] > 0.0);
         CHECK((band.f_max[i] - band.f_min[i]) / std::abs(band.f_max[i]) > 1e-3);
         // higher plasma frequency is the better mirror: stronger attraction
         CHECK(band.members[1].forces[i] == band.f_min[i]);
      }
   }

   SUBCASE("containment and thread-count independence")
   {
      const ModelEnsemble many("spread", {DrudeModel(6.8, 0.02), DrudeModel(7.5, 0.061),
                                          DrudeModel(8.4, 0.035), DrudeModel(9.0, 0.035),
                                          DrudeModel(8.0, 0.1)});
      const auto serial = force_band(many, geometry, distances, {}, 1);
      const auto threaded = force_band(many, geometry, distances, {}, 4);
      CHECK(serial.f_min == threaded.f_min);
      CHECK(serial.f_max == threaded.f_max);
      for (std::size_t m = 0; m < many.members.size(); ++m)
      {
         CHECK(serial.members[m].forces == threaded.members[m].forces);
         for (std::size_t i = 0; i < distances.size(); ++i)
         {
            CHECK(serial.f_min[i] <= serial.members[m].forces[i]);
            CHECK(serial.members[m].forces[i] <= serial.f_max[i]);
         }
      }
   }

   SUBCASE("a failing member is named")
   {
      LifshitzOptions capped;
      capped.matsubara_max_terms = 5;
      const ModelEnsemble e("e", {gold}, {"film-A"});
      try
      {
         force_band(e, geometry, distances, capped);
         FAIL("expected failure");
      }
      catch (const NumericalError& err)
      {
         CHECK(std::string(err.what()).find("film-A") != std::string::npos);
      }
   }

   SUBCASE("distance validation")
   {
      const ModelEnsemble one("one", {gold});
      CHECK_THROWS_AS(force_band(one, geometry, std::vector<double>{}), InputError);
      CHECK_THROWS_AS(force_band(one, geometry, std::vector<double>{40e-9, 20e-9}), InputError);
      CHECK_THROWS_AS(force_band(one, geometry, std::vector<double>{-1e-9}), DomainError);
   }
}

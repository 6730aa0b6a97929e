#include "casimir/dielectric.hpp"

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace casimir
{

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

void require_positive_xi(double xi)
{
   if (!(xi > 0.0))
   {
      throw DomainError("imaginary frequency must be > 0, got " + std::to_string(xi));
   }
}

// 1 - atan(u)/u, accurate for small u.
double one_minus_atan_ratio(double u)
{
   if (u < 1e-2)
   {
      const double u2 = u * u;
      return u2 * (1.0 / 3.0 - u2 * (1.0 / 5.0 - u2 * (1.0 / 7.0 - u2 / 9.0)));
   }
   return 1.0 - std::atan(u) / u;
}

// (2/pi) int_0^a omega eps''_D(omega) / (omega^2 + xi^2) with the Drude
// absorption eps''_D = wp^2 gamma / (omega (omega^2 + gamma^2)).
double drude_low_segment_raw(const DrudeModel& m, double a, double xi)
{
   const double wp2 = m.plasma_frequency * m.plasma_frequency;
   const double g = m.relaxation_rate;
   if (g == 0.0)
   {
      // Lossless limit: all absorption sits in a delta function at omega = 0.
      return wp2 / (xi * xi);
   }
   const double num = std::atan(a / g) - (g / xi) * std::atan(a / xi);
   return (2.0 / constants::pi) * wp2 * num / ((xi - g) * (xi + g));
}

double drude_low_segment(const DrudeModel& m, double a, double xi)
{
   const double g = m.relaxation_rate;
   if (xi == 0.0)
   {
      return inf;
   }
   if (g > 0.0 && std::abs(xi - g) < 1e-6 * xi)
   {
      // Removable 0/0 at xi = gamma; average symmetric neighbours.
      const double h = 1e-4 * xi;
      return 0.5 * (drude_low_segment_raw(m, a, xi - h) + drude_low_segment_raw(m, a, xi + h));
   }
   return drude_low_segment_raw(m, a, xi);
}

// int_{w1}^{w2} omega (alpha + beta omega) / (omega^2 + xi^2) d omega, exact.
double linear_segment(double w1, double w2, double alpha, double beta, double xi)
{
   const double dw = w2 - w1;
   double result = 0.0;
   if (alpha != 0.0)
   {
      result += 0.5 * alpha * std::log1p((w2 - w1) * (w2 + w1) / (w1 * w1 + xi * xi));
   }
   if (beta != 0.0)
   {
      // beta * [dw - xi (atan(w2/xi) - atan(w1/xi))]
      double shape;
      if (xi == 0.0)
      {
         shape = dw;
      }
      else
      {
         const double denom = xi * xi + w1 * w2;
         const double y = dw * xi / denom;
         if (y < 1e-3)
         {
            const double y2 = y * y;
            shape = dw * w1 * w2 / denom + xi * y * y2 * (1.0 / 3.0 - y2 * (1.0 / 5.0 - y2 / 7.0));
         }
         else
         {
            shape = dw - xi * std::atan(y);
         }
      }
      result += beta * shape;
   }
   return result;
}

double tabulated_eps(const TabulatedOptics& data, double xi)
{
   const auto& pts = data.points();
   double integral = 0.0;

   for (std::size_t i = 0; i + 1 < pts.size(); ++i)
   {
      const double w1 = pts[i].energy;
      const double w2 = pts[i + 1].energy;
      const double beta = (pts[i + 1].eps2 - pts[i].eps2) / (w2 - w1);
      const double alpha = pts[i].eps2 - beta * w1;
      integral += linear_segment(w1, w2, alpha, beta, xi);
   }

   // omega^-3 continuation: eps''_N (w_N/omega)^3 integrates to eps''_N g(u)/u^2.
   const OpticsPoint& last = pts.back();
   const double u = xi / last.energy;
   integral += (u == 0.0) ? last.eps2 / 3.0 : last.eps2 * one_minus_atan_ratio(u) / (u * u);

   double eps = 1.0 + (2.0 / constants::pi) * integral;
   if (const auto& ext = data.low_energy_extension())
   {
      eps += drude_low_segment(*ext, pts.front().energy, xi);
   }
   return eps;
}

double oscillator_eps(const OscillatorModel& model, double xi)
{
   double eps = 1.0;
   for (const auto& term : model.terms)
   {
      const double r = xi / term.resonance;
      eps += term.strength / (1.0 + r * r);
   }
   return eps;
}

template <class... Ts>
struct overloaded : Ts...
{
   using Ts::operator()...;
};

} // namespace

DrudeModel::DrudeModel(double plasma_frequency_ev, double relaxation_rate_ev)
   : plasma_frequency(plasma_frequency_ev), relaxation_rate(relaxation_rate_ev)
{
   if (!(plasma_frequency > 0.0) || !(relaxation_rate >= 0.0) || !std::isfinite(plasma_frequency) ||
       !std::isfinite(relaxation_rate))
   {
      throw InputError("Drude model requires omega_p > 0 and gamma >= 0");
   }
}

TabulatedOptics::TabulatedOptics(std::vector<OpticsPoint> points, std::string source_label,
                                 std::optional<DrudeModel> low_energy_extension)
   : points_(std::move(points)),
     source_label_(std::move(source_label)),
     extension_(std::move(low_energy_extension))
{
   if (points_.empty())
   {
      throw InputError("optical table is empty");
   }
   for (std::size_t i = 0; i < points_.size(); ++i)
   {
      const auto& p = points_[i];
      if (!(p.energy > 0.0) || !std::isfinite(p.energy))
      {
         throw InputError("photon energies must be positive and finite");
      }
      if (!(p.eps2 >= 0.0) || !std::isfinite(p.eps2))
      {
         throw InputError("eps2 must be finite and >= 0 (passive medium)");
      }
      if (i > 0 && !(p.energy > points_[i - 1].energy))
      {
         throw InputError("photon energies must be strictly increasing");
      }
   }
}

OscillatorModel::OscillatorModel(std::vector<OscillatorTerm> t) : terms(std::move(t))
{
   for (const auto& term : terms)
   {
      if (!(term.strength >= 0.0) || !(term.resonance > 0.0))
      {
         throw InputError("oscillator terms require C >= 0 and omega > 0");
      }
   }
}

ModelEnsemble::ModelEnsemble(std::string l, std::vector<PermittivityModel> m,
                             std::vector<std::string> ml)
   : label(std::move(l)), members(std::move(m)), member_labels(std::move(ml))
{
   if (members.empty())
   {
      throw InputError("model ensemble '" + label + "' has no members");
   }
   if (member_labels.empty())
   {
      for (const auto& member : members)
      {
         member_labels.push_back(describe(member));
      }
   }
   if (member_labels.size() != members.size())
   {
      throw InputError("ensemble labels do not match members");
   }
}

double drude_eps_imag(const DrudeModel& model, double xi)
{
   require_positive_xi(xi);
   const double wp = model.plasma_frequency;
   return 1.0 + wp * wp / (xi * (xi + model.relaxation_rate));
}

double kk_eps_imag(const TabulatedOptics& data, double xi)
{
   require_positive_xi(xi);
   return tabulated_eps(data, xi);
}

double eval_eps_imag(const PermittivityModel& model, double xi)
{
   require_positive_xi(xi);
   return std::visit(overloaded{
                        [xi](const DrudeModel& m) { return drude_eps_imag(m, xi); },
                        [xi](const TabulatedOptics& m) { return kk_eps_imag(m, xi); },
                        [xi](const OscillatorModel& m) { return oscillator_eps(m, xi); },
                        [](const Vacuum&) { return 1.0; },
                        [](const IdealConductor&) { return inf; },
                     },
                     model);
}

double static_permittivity(const PermittivityModel& model)
{
   return std::visit(overloaded{
                        [](const DrudeModel&) { return inf; },
                        [](const TabulatedOptics& m) {
                           return m.low_energy_extension() ? inf : tabulated_eps(m, 0.0);
                        },
                        [](const OscillatorModel& m) { return oscillator_eps(m, 0.0); },
                        [](const Vacuum&) { return 1.0; },
                        [](const IdealConductor&) { return inf; },
                     },
                     model);
}

bool is_conductor(const PermittivityModel& model)
{
   return std::isinf(static_permittivity(model));
}

std::optional<double> plasma_frequency(const PermittivityModel& model)
{
   if (const auto* d = std::get_if<DrudeModel>(&model))
   {
      return d->plasma_frequency;
   }
   if (const auto* t = std::get_if<TabulatedOptics>(&model))
   {
      if (const auto& ext = t->low_energy_extension())
      {
         return ext->plasma_frequency;
      }
   }
   return std::nullopt;
}

std::string describe(const PermittivityModel& model)
{
   char buf[128];
   return std::visit(overloaded{
                        [&](const DrudeModel& m) {
                           std::snprintf(buf, sizeof buf, "drude(wp=%g eV, gamma=%g eV)",
                                         m.plasma_frequency, m.relaxation_rate);
                           return std::string(buf);
                        },
                        [&](const TabulatedOptics& m) {
                           std::snprintf(buf, sizeof buf, "tabulated(%s, %zu points)",
                                         m.source_label().c_str(), m.points().size());
                           return std::string(buf);
                        },
                        [&](const OscillatorModel& m) {
                           std::snprintf(buf, sizeof buf, "oscillator(%zu terms, eps0=%g)",
                                         m.terms.size(), oscillator_eps(m, 0.0));
                           return std::string(buf);
                        },
                        [](const Vacuum&) { return std::string("vacuum"); },
                        [](const IdealConductor&) { return std::string("ideal-conductor"); },
                     },
                     model);
}

TabulatedOptics parse_optics_file(std::string_view content, std::string source_label,
                                  std::optional<DrudeModel> extension)
{
   std::vector<OpticsPoint> points;
   std::istringstream in{std::string(content)};
   std::string line;
   int line_no = 0;
   while (std::getline(in, line))
   {
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string::npos)
      {
         line.erase(hash);
      }
      std::istringstream fields(line);
      std::vector<double> values;
      std::string token;
      while (fields >> token)
      {
         try
         {
            std::size_t used = 0;
            values.push_back(std::stod(token, &used));
            if (used != token.size())
            {
               throw ParseError("trailing characters in '" + token + "'", line_no);
            }
         }
         catch (const std::logic_error&)
         {
            throw ParseError("not a number: '" + token + "'", line_no);
         }
      }
      if (values.empty())
      {
         continue;
      }
      if (values.size() == 2)
      {
         points.push_back({values[0], values[1]});
      }
      else if (values.size() == 3)
      {
         // eps'' = 2 n k
         points.push_back({values[0], 2.0 * values[1] * values[2]});
      }
      else
      {
         throw ParseError("expected 2 or 3 columns, found " + std::to_string(values.size()),
                          line_no);
      }
      if (points.back().eps2 < 0.0)
      {
         throw InputError("line " + std::to_string(line_no) + ": negative eps2 (passivity)");
      }
   }

   std::stable_sort(points.begin(), points.end(),
                    [](const OpticsPoint& a, const OpticsPoint& b) { return a.energy < b.energy; });
   for (std::size_t i = 1; i < points.size(); ++i)
   {
      if (points[i].energy == points[i - 1].energy)
      {
         throw InputError("duplicate photon energy " + std::to_string(points[i].energy) + " eV");
      }
   }
   return TabulatedOptics(std::move(points), std::move(source_label), std::move(extension));
}

std::string serialize_optics(const TabulatedOptics& data)
{
   std::string out = "# energy_eV eps2\n";
   char buf[64];
   for (const auto& p : data.points())
   {
      std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.energy, p.eps2);
      out += buf;
   }
   return out;
}

OscillatorModel default_ethanol_model()
{
   // Orientational relaxation near 1e11 rad/s and an electronic UV band.
   return OscillatorModel({{22.45, 6.6e-5}, {0.85, 11.35}});
}

} // namespace casimir

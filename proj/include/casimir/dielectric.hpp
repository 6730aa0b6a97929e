#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

// Dielectric response on the imaginary frequency axis. All frequencies are
// photon energies in eV.
namespace casimir
{

struct DrudeModel
{
   double plasma_frequency; // omega_p, eV
   double relaxation_rate;  // gamma, eV

   DrudeModel(double plasma_frequency_ev, double relaxation_rate_ev);
};

struct OpticsPoint
{
   double energy; // eV
   double eps2;   // imaginary part of eps(omega)

   friend bool operator==(const OpticsPoint&, const OpticsPoint&) = default;
};

/// Measured absorption eps''(omega) on a real-frequency grid, continued below
/// the first point by an optional Drude model. Without an extension the
/// material is treated as non-absorbing below the table.
class TabulatedOptics
{
public:
   TabulatedOptics(std::vector<OpticsPoint> points, std::string source_label,
                   std::optional<DrudeModel> low_energy_extension = std::nullopt);

   const std::vector<OpticsPoint>& points() const { return points_; }
   const std::string& source_label() const { return source_label_; }
   const std::optional<DrudeModel>& low_energy_extension() const { return extension_; }

private:
   std::vector<OpticsPoint> points_;
   std::string source_label_;
   std::optional<DrudeModel> extension_;
};

struct OscillatorTerm
{
   double strength;  // C_j
   double resonance; // omega_j, eV
};

/// eps(i xi) = 1 + sum_j C_j / (1 + (xi / omega_j)^2)
struct OscillatorModel
{
   std::vector<OscillatorTerm> terms;

   explicit OscillatorModel(std::vector<OscillatorTerm> terms);
};

struct Vacuum
{
};

/// Perfect mirror; eps -> infinity at every frequency.
struct IdealConductor
{
};

using PermittivityModel =
   std::variant<DrudeModel, TabulatedOptics, OscillatorModel, Vacuum, IdealConductor>;

struct ModelEnsemble
{
   std::string label;
   std::vector<PermittivityModel> members;
   std::vector<std::string> member_labels;

   ModelEnsemble(std::string label, std::vector<PermittivityModel> members,
                 std::vector<std::string> member_labels = {});
};

/// eps(i xi) = 1 + omega_p^2 / (xi (xi + gamma)). Throws DomainError for xi <= 0.
double drude_eps_imag(const DrudeModel& model, double xi);

/// Dispersion-relation transform of tabulated absorption:
///    eps(i xi) = 1 + (2/pi) int_0^inf omega eps''(omega) / (omega^2 + xi^2) d omega.
///
/// Below the first point the Drude extension's eps'' is integrated in closed
/// form. Inside the table eps'' is linearly interpolated and each segment is
/// integrated exactly. Above the last point eps'' is continued as omega^-3.
double kk_eps_imag(const TabulatedOptics& data, double xi);

/// Dispatch over the model variants. IdealConductor yields +infinity.
double eval_eps_imag(const PermittivityModel& model, double xi);

/// xi -> 0 limit of eps(i xi); +infinity for conductors (Drude, tabulated with a
/// Drude extension, ideal).
double static_permittivity(const PermittivityModel& model);

bool is_conductor(const PermittivityModel& model);

/// Plasma frequency (eV) governing the xi -> 0 TE response under the plasma
/// prescription; empty for non-metals and the ideal conductor.
std::optional<double> plasma_frequency(const PermittivityModel& model);

std::string describe(const PermittivityModel& model);

/// Two-column "eV eps2" or three-column "eV n k" text, '#' starts a comment.
TabulatedOptics parse_optics_file(std::string_view content, std::string source_label = {},
                                  std::optional<DrudeModel> extension = std::nullopt);

/// Two-column form, round-trips through parse_optics_file.
std::string serialize_optics(const TabulatedOptics& data);

/// Ethanol default: a microwave and a UV term giving static eps = 24.3 and
/// optical n^2 = 1.85.
OscillatorModel default_ethanol_model();

} // namespace casimir

// casimir: sphere-plate Casimir-Lifshitz forces in a fluid, force bands over
// dielectric-model ensembles, electrostatic / double-layer / hydrodynamic
// estimates, and the Welch t-test.
//
// Exit codes: 0 success, 2 configuration or input, 3 data file, 4 numerics.

#include "casimir/config.hpp"
#include "casimir/corrections.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/output.hpp"
#include "casimir/stats.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

namespace
{

using namespace casimir;
namespace fs = std::filesystem;

constexpr int exit_config = 2;
constexpr int exit_data = 3;
constexpr int exit_numerics = 4;

std::string rec(double v)
{
   char buf[40];
   std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
   return buf;
}

void announce_defaults(const std::vector<std::string>& assumed)
{
   for (const auto& a : assumed)
   {
      std::cerr << "casimir: ASSUMED DEFAULT " << a << "\n";
   }
}

// Writes `text` to `path`, or stdout when empty.
void emit(const std::optional<fs::path>& path, const std::string& text)
{
   if (!path)
   {
      std::cout << text;
      return;
   }
   std::ofstream out(*path, std::ios::binary);
   if (!out)
   {
      throw ConfigError("cannot write " + path->string());
   }
   out << text;
}

struct RunFlags
{
   std::string config;
   bool assume_defaults = false;
   std::string output;
   int threads = -1;
};

void add_run_flags(CLI::App* cmd, RunFlags& flags)
{
   cmd->add_option("--config", flags.config, "Run configuration file");
   cmd->add_flag("--assume-defaults", flags.assume_defaults,
                 "Fill missing values with R=19.9 um, T=300 K, Drude gold (9.0, 0.035 eV), "
                 "ethanol (static eps 24.3)");
   cmd->add_option("--output", flags.output, "Output CSV (default: [output] path, else stdout)");
   cmd->add_option("--threads", flags.threads, "Worker threads (0 = all cores)");
}

RunConfig resolve_config(const RunFlags& flags)
{
   RunConfig cfg;
   if (!flags.config.empty())
   {
      cfg = load_run_config(flags.config, flags.assume_defaults);
   }
   else if (flags.assume_defaults)
   {
      cfg = default_run_config();
   }
   else
   {
      throw ConfigError("--config is required unless --assume-defaults is given");
   }
   if (!flags.output.empty())
   {
      cfg.output = flags.output;
   }
   if (flags.threads >= 0)
   {
      cfg.threads = static_cast<unsigned>(flags.threads);
   }
   announce_defaults(cfg.assumed);
   return cfg;
}

std::vector<std::string> run_notes(const RunConfig& cfg, const std::vector<double>& distances)
{
   std::vector<std::string> notes{
      "sign: negative force = attraction",
      "geometry: proximity-force approximation F = 2 pi R E_pp(d)",
   };
   for (const auto& a : cfg.assumed)
   {
      notes.push_back("assumed: " + a);
   }
   if (pfa_accuracy_degraded(cfg.sphere_radius, distances.back()))
   {
      notes.push_back("warning: d/R > 0.01 at the largest distances; PFA accuracy degrades");
   }
   return notes;
}

int cmd_force_curve(const RunFlags& flags)
{
   const RunConfig cfg = resolve_config(flags);
   if (!cfg.sphere || !cfg.plate || !cfg.medium)
   {
      throw ConfigError("force-curve needs [sphere], [plate] and [medium] sections");
   }
   const auto distances = cfg.grid.points();
   const SpherePlateSystem system(cfg.sphere_radius, cfg.temperature,
                                  {cfg.sphere->model, cfg.plate->model, cfg.medium->model});
   std::string label = describe(cfg.sphere->model);
   if (const auto plate = describe(cfg.plate->model); plate != label)
   {
      label += " / " + plate;
   }
   const auto curve = force_curve(system, distances, label, cfg.numerics, cfg.threads);

   std::ostringstream out;
   const auto canonical = cfg.canonical();
   write_header(out, {config_hash(canonical), canonical, run_notes(cfg, distances)});
   write_force_curve_csv(out, curve);
   emit(cfg.output, out.str());
   return 0;
}

int cmd_force_band(const RunFlags& flags, const std::string& manifest_flag,
                   const std::string& members_flag)
{
   RunConfig cfg = resolve_config(flags);
   if (!manifest_flag.empty())
   {
      cfg.ensemble_manifest = manifest_flag;
   }
   if (!cfg.ensemble_manifest)
   {
      throw ConfigError("force-band needs an ensemble manifest ([ensemble] manifest or --manifest)");
   }
   if (!cfg.medium)
   {
      throw ConfigError("force-band needs a [medium] section");
   }
   const ModelEnsemble ensemble = load_ensemble(*cfg.ensemble_manifest);
   const auto distances = cfg.grid.points();
   const auto band = force_band(ensemble, {cfg.sphere_radius, cfg.temperature, cfg.medium->model},
                                distances, cfg.numerics, cfg.threads);

   auto canonical = cfg.canonical();
   canonical.emplace_back("ensemble.label", ensemble.label);
   canonical.emplace_back("ensemble.manifest_sha256",
                          sha256_hex(read_text_file(*cfg.ensemble_manifest)));
   canonical.emplace_back("ensemble.members", std::to_string(ensemble.members.size()));
   const OutputHeader header{config_hash(canonical), canonical, run_notes(cfg, distances)};

   std::ostringstream out;
   write_header(out, header);
   write_band_csv(out, band);
   emit(cfg.output, out.str());

   std::optional<fs::path> members_path;
   if (!members_flag.empty())
   {
      members_path = members_flag;
   }
   else if (cfg.output)
   {
      members_path = cfg.output->parent_path() / (cfg.output->stem().string() + ".members.csv");
   }
   if (members_path)
   {
      std::ostringstream members;
      write_header(members, header);
      members << "distance_nm,force_pN,model_label\n";
      for (const auto& curve : band.members)
      {
         write_force_curve_csv(members, curve, false);
      }
      emit(members_path, members.str());
   }
   return 0;
}

struct Sweep
{
   std::optional<double> d_nm;
   std::optional<double> start_nm;
   std::optional<double> stop_nm;
   int count = 0;
   bool log = false;

   void add_to(CLI::App* cmd)
   {
      auto* single = cmd->add_option("--d", d_nm, "Separation (nm)");
      auto* start = cmd->add_option("--d-start", start_nm, "Sweep start (nm)");
      cmd->add_option("--d-stop", stop_nm, "Sweep stop (nm)")->needs(start);
      cmd->add_option("--count", count, "Sweep points");
      cmd->add_flag("--log", log, "Logarithmic sweep spacing");
      single->excludes(start);
   }

   bool is_sweep() const { return start_nm.has_value(); }

   std::vector<double> distances() const
   {
      if (is_sweep())
      {
         DistanceGrid grid{*start_nm * 1e-9, stop_nm.value_or(*start_nm) * 1e-9,
                           count > 0 ? count : 1,
                           log ? DistanceGrid::Spacing::Log : DistanceGrid::Spacing::Linear};
         return grid.points();
      }
      if (!d_nm)
      {
         throw ConfigError("give --d or --d-start/--d-stop/--count");
      }
      return {*d_nm * 1e-9};
   }
};

// Single distance -> key=value records; sweep -> CSV with a header block.
void emit_force_records(const Sweep& sweep, const std::function<double(double)>& force,
                        const std::vector<std::pair<std::string, std::string>>& params,
                        const std::vector<std::string>& notes)
{
   const auto distances = sweep.distances();
   if (!sweep.is_sweep())
   {
      for (const auto& [k, v] : params)
      {
         std::cout << k << "=" << v << "\n";
      }
      const double f = force(distances.front());
      std::cout << "distance_nm=" << rec(distances.front() * 1e9) << "\n"
                << "force_N=" << rec(f) << "\n"
                << "force_pN=" << rec(f * 1e12) << "\n";
      return;
   }
   std::ostringstream out;
   write_header(out, {config_hash(params), params, notes});
   out << "distance_nm,force_pN\n";
   for (double d : distances)
   {
      out << format_sci(d * 1e9) << "," << format_sci(force(d) * 1e12) << "\n";
   }
   std::cout << out.str();
}

std::vector<double> parse_list(const std::string& text)
{
   std::vector<double> values;
   std::istringstream in(text);
   std::string item;
   while (std::getline(in, item, ','))
   {
      try
      {
         std::size_t used = 0;
         values.push_back(std::stod(item, &used));
         if (item.find_first_not_of(" \t", used) != std::string::npos)
         {
            throw std::invalid_argument(item);
         }
      }
      catch (const std::logic_error&)
      {
         throw InputError("not a number: '" + item + "'");
      }
   }
   return values;
}

SampleSummary summary_from(const std::string& raw, const std::string& triple, const char* name)
{
   if (!raw.empty() == !triple.empty())
   {
      throw InputError(std::string("give exactly one of --") + name + " or --" + name + "-summary");
   }
   if (!raw.empty())
   {
      return SampleSummary::from_observations(parse_list(raw));
   }
   const auto v = parse_list(triple);
   if (v.size() != 3 || v[0] != static_cast<double>(static_cast<long>(v[0])))
   {
      throw InputError(std::string("--") + name + "-summary expects n,mean,sd");
   }
   return SampleSummary(static_cast<long>(v[0]), v[1], v[2]);
}

template <class T>
T need(const std::optional<T>& value, bool assume, T fallback, const char* flag)
{
   if (value)
   {
      return *value;
   }
   if (assume)
   {
      std::cerr << "casimir: ASSUMED DEFAULT " << flag << "=" << fallback << "\n";
      return fallback;
   }
   throw ConfigError(std::string(flag) + " is required (or pass --assume-defaults)");
}

} // namespace

int main(int argc, char** argv)
{
   CLI::App app{"Casimir-Lifshitz forces in a fluid and the accompanying correction estimates"};
   app.require_subcommand(1);
   app.set_version_flag("--version", std::string(casimir::version));

   std::function<int()> action;

   // force-curve
   RunFlags curve_flags;
   auto* curve = app.add_subcommand("force-curve", "Sphere-plate force vs distance for one model");
   add_run_flags(curve, curve_flags);
   curve->callback([&] { action = [&] { return cmd_force_curve(curve_flags); }; });

   // force-band
   RunFlags band_flags;
   std::string manifest;
   std::string members_out;
   auto* band = app.add_subcommand("force-band", "Min/max force envelope over a model ensemble");
   add_run_flags(band, band_flags);
   band->add_option("--manifest", manifest, "Ensemble manifest (overrides [ensemble] manifest)");
   band->add_option("--members-output", members_out,
                    "Per-member curves CSV (default: <output stem>.members.csv)");
   band->callback([&] { action = [&] { return cmd_force_band(band_flags, manifest, members_out); }; });

   // electrostatic
   std::optional<double> es_radius_um, es_v0_mv, es_eps, es_lambda_nm;
   bool es_assume = false;
   Sweep es_sweep;
   auto* es = app.add_subcommand("electrostatic", "Ideal sphere-plate electrostatic force estimate");
   es->add_option("--R", es_radius_um, "Sphere radius (um)");
   es->add_option("--V0", es_v0_mv, "Residual potential (mV)")->required();
   es->add_option("--eps", es_eps, "Static permittivity of the medium");
   es->add_option("--lambda", es_lambda_nm, "Debye length (nm); omit for no screening");
   es->add_flag("--assume-defaults", es_assume, "R=19.9 um, eps=24.3");
   es_sweep.add_to(es);
   es->callback([&] {
      action = [&] {
         const double r = need(es_radius_um, es_assume, 19.9, "--R") * 1e-6;
         const double eps = need(es_eps, es_assume, 24.3, "--eps");
         std::optional<double> lambda;
         if (es_lambda_nm)
         {
            lambda = *es_lambda_nm * 1e-9;
         }
         const ElectrostaticScenario scenario(r, *es_v0_mv * 1e-3, eps, lambda);
         emit_force_records(
            es_sweep, [&](double d) { return electrostatic_force(scenario, d); },
            {{"model", "ideal-sphere-plate-estimate"},
             {"sphere_radius_um", rec(r * 1e6)},
             {"V0_mV", rec(*es_v0_mv)},
             {"eps_medium", rec(eps)},
             {"debye_length_nm", es_lambda_nm ? rec(*es_lambda_nm) : "none"}},
            {"sign: negative force = attraction",
             "estimate from the ideal-conductor model, not a measurement prediction"});
         return 0;
      };
   });

   // scale
   double sc_force = 0.0;
   double sc_eps = 1.0;
   std::string sc_origin;
   auto* sc = app.add_subcommand("scale", "Air-to-fluid scaling of a residual electrostatic force");
   sc->add_option("--F", sc_force, "Force measured in air (N)")->required();
   sc->add_option("--eps", sc_eps, "Static permittivity of the fluid")->required();
   sc->add_option("--origin", sc_origin, "workfunction | trapped")
      ->required()
      ->check(CLI::IsMember({"workfunction", "trapped"}));
   sc->callback([&] {
      action = [&] {
         const auto origin = sc_origin == "workfunction" ? ChargeOrigin::WorkFunction
                                                         : ChargeOrigin::TrappedChargeOrExternalField;
         std::cout << "origin=" << sc_origin << "\n"
                   << "force_N=" << rec(fluid_scaling(sc_force, sc_eps, origin)) << "\n";
         return 0;
      };
   });

   // debye
   double db_c = 0.0;
   double db_eps = 24.3;
   double db_t = 298.0;
   int db_valence = 1;
   auto* db = app.add_subcommand("debye", "Debye screening length of a symmetric electrolyte");
   db->add_option("--c", db_c, "Salt concentration (mol/L)")->required();
   db->add_option("--eps", db_eps, "Static permittivity")->required();
   db->add_option("--T", db_t, "Temperature (K)")->capture_default_str();
   db->add_option("--valence", db_valence, "Ion valence z")->capture_default_str();
   db->callback([&] {
      action = [&] {
         const double lambda = debye_length(db_c, db_valence, db_eps, db_t);
         std::cout << "lambda_m=" << rec(lambda) << "\n" << "lambda_nm=" << rec(lambda * 1e9) << "\n";
         return 0;
      };
   });

   // concentration
   IonicSolution solution;
   double molar_mass_g = 58.44;
   bool with_debye = false;
   auto* conc = app.add_subcommand("concentration",
                                   "Salt concentration implied by an evaporation residue");
   conc->add_option("--residue", solution.residue_mass_fraction, "Residue mass fraction")->capture_default_str();
   conc->add_option("--molar-mass", molar_mass_g, "Salt molar mass (g/mol)")->capture_default_str();
   conc->add_option("--density", solution.solvent_density, "Solvent density (kg/m^3)")->capture_default_str();
   conc->add_flag("--debye", with_debye, "Also report the resulting Debye length");
   conc->add_option("--eps", solution.eps_static, "Static permittivity (with --debye)")->capture_default_str();
   conc->add_option("--T", solution.temperature, "Temperature in K (with --debye)")->capture_default_str();
   conc->add_option("--valence", solution.ion_valence, "Ion valence (with --debye)")->capture_default_str();
   conc->callback([&] {
      action = [&] {
         solution.salt_molar_mass = molar_mass_g * 1e-3;
         const double c = concentration_from_residue(solution);
         std::cout << "concentration_M=" << rec(c) << "\n"
                   << "concentration_uM=" << rec(c * 1e6) << "\n";
         if (with_debye)
         {
            const double lambda =
               debye_length(c, solution.ion_valence, solution.eps_static, solution.temperature);
            std::cout << "lambda_nm=" << rec(lambda * 1e9) << "\n";
         }
         return 0;
      };
   });

   // hydro
   std::optional<double> hy_radius_um, hy_speed_nm_s, hy_target_pn, hy_target_d_nm;
   double hy_eta = 1.074e-3;
   bool hy_assume = false;
   Sweep hy_sweep;
   auto* hy = app.add_subcommand("hydro", "Sphere-plate lubrication drag");
   hy->add_option("--R", hy_radius_um, "Sphere radius (um)");
   hy->add_option("--eta", hy_eta, "Viscosity (Pa s), default ethanol")->capture_default_str();
   auto* speed = hy->add_option("--v", hy_speed_nm_s, "Approach speed (nm/s)");
   auto* target = hy->add_option("--target-pN", hy_target_pn,
                                 "Solve for the speed giving this force at --d");
   speed->excludes(target);
   hy->add_flag("--assume-defaults", hy_assume, "R=19.9 um");
   hy_sweep.add_to(hy);
   hy->callback([&] {
      action = [&] {
         const double r = need(hy_radius_um, hy_assume, 19.9, "--R") * 1e-6;
         double v;
         if (hy_target_pn)
         {
            if (hy_sweep.is_sweep() || !hy_sweep.d_nm)
            {
               throw ConfigError("--target-pN needs a single --d");
            }
            v = approach_speed_for_force(*hy_target_pn * 1e-12, *hy_sweep.d_nm * 1e-9, r, hy_eta);
         }
         else if (hy_speed_nm_s)
         {
            v = *hy_speed_nm_s * 1e-9;
         }
         else
         {
            throw ConfigError("give --v or --target-pN");
         }
         const HydroScenario scenario(r, hy_eta, v);
         emit_force_records(
            hy_sweep, [&](double d) { return hydrodynamic_force(scenario, d); },
            {{"sphere_radius_um", rec(r * 1e6)},
             {"viscosity_Pa_s", rec(hy_eta)},
             {"approach_speed_nm_s", rec(v * 1e9)}},
            {"sign: positive = repulsive drag opposing the approach"});
         return 0;
      };
   });

   // ttest
   std::string ta, tb, ta_sum, tb_sum;
   auto* tt = app.add_subcommand("ttest", "Unpaired two-sided t-test, Satterthwaite df");
   tt->add_option("--a", ta, "Sample A observations, comma separated");
   tt->add_option("--b", tb, "Sample B observations, comma separated");
   tt->add_option("--a-summary", ta_sum, "Sample A as n,mean,sd");
   tt->add_option("--b-summary", tb_sum, "Sample B as n,mean,sd");
   tt->callback([&] {
      action = [&] {
         const auto a = summary_from(ta, ta_sum, "a");
         const auto b = summary_from(tb, tb_sum, "b");
         const auto result = welch_t_test(a, b);
         std::cout << "t=" << rec(result.t_statistic) << "\n"
                   << "df=" << rec(result.degrees_of_freedom) << "\n"
                   << "p=" << rec(result.p_two_sided) << "\n";
         return 0;
      };
   });

   try
   {
      app.parse(argc, argv);
   }
   catch (const CLI::ParseError& err)
   {
      const int code = app.exit(err);
      return code == 0 ? 0 : exit_config;
   }

   try
   {
      return action ? action() : exit_config;
   }
   catch (const ParseError& err)
   {
      std::cerr << "casimir: data error: " << err.what() << "\n";
      return exit_data;
   }
   catch (const NumericalError& err)
   {
      std::cerr << "casimir: numerical error: " << err.what() << "\n";
      return exit_numerics;
   }
   catch (const Error& err)
   {
      std::cerr << "casimir: " << err.what() << "\n";
      return exit_config;
   }
}

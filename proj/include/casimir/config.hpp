#pragma once

#include "casimir/dielectric.hpp"
#include "casimir/lifshitz.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

// Run configuration: a sectioned key = value text file.
//
//    [geometry]   sphere_radius_um, temperature_K
//    [sphere] [plate] [medium]
//                 model = drude | tabulated | oscillator | ethanol | vacuum | ideal
//    [grid]       start_nm, stop_nm, count, spacing = linear | log
//    [ensemble]   manifest
//    [output]     path
//    [numerics]   k_rel_tol, matsubara_rel_tol, matsubara_max_terms,
//                 zero_frequency_te = drude | plasma, threads
//
// Relative paths resolve against the directory of the file naming them.
namespace casimir
{

inline constexpr double default_sphere_radius = 19.9e-6; // m
inline constexpr double default_temperature = 300.0;     // K

struct DistanceGrid
{
   enum class Spacing
   {
      Linear,
      Log,
   };

   double start; // m
   double stop;  // m
   int count;
   Spacing spacing = Spacing::Linear;

   std::vector<double> points() const;
};

struct MaterialSpec
{
   PermittivityModel model;
   std::vector<std::pair<std::string, std::string>> parameters; // canonical, for headers and hashing
};

struct RunConfig
{
   double sphere_radius = default_sphere_radius;
   double temperature = default_temperature;
   std::optional<MaterialSpec> sphere;
   std::optional<MaterialSpec> plate;
   std::optional<MaterialSpec> medium;
   DistanceGrid grid{20e-9, 100e-9, 9};
   std::optional<std::filesystem::path> ensemble_manifest;
   std::optional<std::filesystem::path> output;
   LifshitzOptions numerics;
   unsigned threads = 0;

   /// Parameters filled in from built-in defaults rather than the file.
   std::vector<std::string> assumed;

   /// Sorted key=value lines of every effective parameter.
   std::vector<std::pair<std::string, std::string>> canonical() const;
};

/// Parse a configuration. With `assume_defaults`, missing geometry and
/// materials take the built-in gold / ethanol values and are listed in
/// RunConfig::assumed; otherwise they stay empty.
RunConfig parse_run_config(const std::string& content, const std::filesystem::path& base_dir,
                           bool assume_defaults);

RunConfig load_run_config(const std::filesystem::path& path, bool assume_defaults);

/// Configuration built from defaults alone.
RunConfig default_run_config();

/// Ensemble manifest: an optional [ensemble] section with `label`, and one
/// section per member holding a material description. Member labels default to
/// the section name.
ModelEnsemble parse_ensemble(const std::string& content, const std::filesystem::path& base_dir);

ModelEnsemble load_ensemble(const std::filesystem::path& path);

/// Reads an optics data file; format errors surface as ParseError.
TabulatedOptics load_optics_file(const std::filesystem::path& path, std::string source_label,
                                 std::optional<DrudeModel> extension);

std::string read_text_file(const std::filesystem::path& path);

} // namespace casimir

#include "casimir/config.hpp"

#include "casimir/errors.hpp"
#include "casimir/output.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace casimir
{

namespace fs = std::filesystem;
using boost::property_tree::ptree;

namespace
{

std::string num(double v)
{
   char buf[40];
   std::snprintf(buf, sizeof buf, "%.15g", v);
   return buf;
}

ptree parse_ini(const std::string& content, const std::string& origin)
{
   // The INI reader only knows ';' comments; accept '#' as well.
   std::istringstream raw(content);
   std::ostringstream cleaned;
   std::string line;
   while (std::getline(raw, line))
   {
      const auto first = line.find_first_not_of(" \t\r");
      if (first != std::string::npos && line[first] == '#')
      {
         continue;
      }
      cleaned << line << '\n';
   }
   std::istringstream in(cleaned.str());
   ptree tree;
   try
   {
      boost::property_tree::ini_parser::read_ini(in, tree);
   }
   catch (const boost::property_tree::ini_parser_error& err)
   {
      throw ConfigError(origin + ": " + err.message() + " (line " + std::to_string(err.line()) + ")");
   }
   return tree;
}

class Section
{
public:
   Section(const ptree& tree, std::string name) : tree_(tree), name_(std::move(name)) {}

   bool has(const std::string& key) const { return tree_.find(key) != tree_.not_found(); }

   std::string text(const std::string& key) const
   {
      used_.insert(key);
      const auto it = tree_.find(key);
      if (it == tree_.not_found())
      {
         throw ConfigError("[" + name_ + "] missing key '" + key + "'");
      }
      return trim(it->second.data());
   }

   std::string text(const std::string& key, const std::string& fallback) const
   {
      return has(key) ? text(key) : (used_.insert(key), fallback);
   }

   double number(const std::string& key) const { return to_number(key, text(key)); }

   double number(const std::string& key, double fallback) const
   {
      return has(key) ? number(key) : (used_.insert(key), fallback);
   }

   void reject_unknown_keys() const
   {
      for (const auto& [key, value] : tree_)
      {
         if (!used_.count(key))
         {
            throw ConfigError("[" + name_ + "] unknown key '" + key + "'");
         }
      }
   }

   const std::string& name() const { return name_; }

   static std::string trim(std::string s)
   {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
   }

   double to_number(const std::string& key, const std::string& value) const
   {
      try
      {
         std::size_t used = 0;
         const double v = std::stod(value, &used);
         if (used != value.size() || !std::isfinite(v))
         {
            throw std::invalid_argument(value);
         }
         return v;
      }
      catch (const std::logic_error&)
      {
         throw ConfigError("[" + name_ + "] " + key + ": not a number: '" + value + "'");
      }
   }

private:
   const ptree& tree_;
   std::string name_;
   mutable std::set<std::string> used_;
};

using Params = std::vector<std::pair<std::string, std::string>>;

std::optional<DrudeModel> drude_from(const Section& s, Params& params, bool required)
{
   if (!required && !s.has("plasma_frequency_eV"))
   {
      return std::nullopt;
   }
   const double wp = s.number("plasma_frequency_eV");
   const double gamma = s.number("relaxation_rate_eV");
   params.emplace_back("plasma_frequency_eV", num(wp));
   params.emplace_back("relaxation_rate_eV", num(gamma));
   try
   {
      return DrudeModel(wp, gamma);
   }
   catch (const InputError& err)
   {
      throw ConfigError("[" + s.name() + "] " + err.what());
   }
}

OscillatorModel oscillator_from(const Section& s, Params& params)
{
   // terms = C1@w1, C2@w2
   const std::string spec = s.text("terms");
   std::vector<OscillatorTerm> terms;
   std::istringstream in(spec);
   std::string item;
   while (std::getline(in, item, ','))
   {
      item = Section::trim(item);
      const auto at = item.find('@');
      if (at == std::string::npos)
      {
         throw ConfigError("[" + s.name() + "] terms: expected strength@resonance_eV, got '" +
                           item + "'");
      }
      terms.push_back({s.to_number("terms", Section::trim(item.substr(0, at))),
                       s.to_number("terms", Section::trim(item.substr(at + 1)))});
   }
   if (terms.empty())
   {
      throw ConfigError("[" + s.name() + "] terms: no oscillator terms");
   }
   std::string canonical;
   for (const auto& t : terms)
   {
      canonical += (canonical.empty() ? "" : ",") + num(t.strength) + "@" + num(t.resonance);
   }
   params.emplace_back("terms", canonical);
   try
   {
      return OscillatorModel(std::move(terms));
   }
   catch (const InputError& err)
   {
      throw ConfigError("[" + s.name() + "] " + err.what());
   }
}

MaterialSpec material_from(const Section& s, const fs::path& base_dir)
{
   const std::string kind = s.text("model");
   Params params{{"model", kind}};
   MaterialSpec spec{Vacuum{}, {}};

   if (kind == "drude")
   {
      spec.model = *drude_from(s, params, true);
   }
   else if (kind == "tabulated")
   {
      fs::path file = s.text("file");
      if (file.is_relative())
      {
         file = base_dir / file;
      }
      const std::string label = s.text("label", file.stem().string());
      auto extension = drude_from(s, params, false);
      auto data = load_optics_file(file, label, extension);
      params.emplace_back("file", file.filename().string());
      params.emplace_back("label", label);
      params.emplace_back("data_sha256", sha256_hex(serialize_optics(data)));
      spec.model = std::move(data);
   }
   else if (kind == "oscillator")
   {
      spec.model = oscillator_from(s, params);
   }
   else if (kind == "ethanol")
   {
      spec.model = default_ethanol_model();
   }
   else if (kind == "vacuum")
   {
      spec.model = Vacuum{};
   }
   else if (kind == "ideal")
   {
      spec.model = IdealConductor{};
   }
   else
   {
      throw ConfigError("[" + s.name() + "] unknown model '" + kind +
                        "' (drude, tabulated, oscillator, ethanol, vacuum, ideal)");
   }
   s.reject_unknown_keys();
   spec.parameters = std::move(params);
   return spec;
}

MaterialSpec default_gold()
{
   return {DrudeModel(9.0, 0.035),
           {{"model", "drude"}, {"plasma_frequency_eV", "9"}, {"relaxation_rate_eV", "0.035"}}};
}

MaterialSpec default_medium()
{
   return {default_ethanol_model(), {{"model", "ethanol"}}};
}

const ptree& section_or_empty(const ptree& tree, const std::string& name)
{
   static const ptree empty;
   const auto it = tree.find(name);
   return it == tree.not_found() ? empty : it->second;
}

} // namespace

std::vector<double> DistanceGrid::points() const
{
   if (count < 1 || !(start > 0.0) || (count > 1 && !(stop > start)))
   {
      throw ConfigError("distance grid must be positive and increasing with count >= 1");
   }
   std::vector<double> out(static_cast<std::size_t>(count));
   for (int i = 0; i < count; ++i)
   {
      const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
      out[static_cast<std::size_t>(i)] = spacing == Spacing::Linear
                                            ? start + f * (stop - start)
                                            : start * std::pow(stop / start, f);
   }
   if (count > 1)
   {
      out.back() = stop;
   }
   return out;
}

std::vector<std::pair<std::string, std::string>> RunConfig::canonical() const
{
   Params out;
   out.emplace_back("geometry.sphere_radius_um", num(sphere_radius * 1e6));
   out.emplace_back("geometry.temperature_K", num(temperature));
   auto add_material = [&](const std::string& name, const std::optional<MaterialSpec>& m) {
      if (m)
      {
         for (const auto& [k, v] : m->parameters)
         {
            out.emplace_back(name + "." + k, v);
         }
      }
   };
   add_material("sphere", sphere);
   add_material("plate", plate);
   add_material("medium", medium);
   out.emplace_back("grid.start_nm", num(grid.start * 1e9));
   out.emplace_back("grid.stop_nm", num(grid.stop * 1e9));
   out.emplace_back("grid.count", std::to_string(grid.count));
   out.emplace_back("grid.spacing", grid.spacing == DistanceGrid::Spacing::Linear ? "linear" : "log");
   if (ensemble_manifest)
   {
      out.emplace_back("ensemble.manifest", ensemble_manifest->filename().string());
   }
   out.emplace_back("numerics.k_rel_tol", num(numerics.k_rel_tol));
   out.emplace_back("numerics.matsubara_rel_tol", num(numerics.matsubara_rel_tol));
   out.emplace_back("numerics.matsubara_max_terms", std::to_string(numerics.matsubara_max_terms));
   out.emplace_back("numerics.zero_frequency_te", to_string(numerics.te_zero));
   std::sort(out.begin(), out.end());
   return out;
}

RunConfig parse_run_config(const std::string& content, const fs::path& base_dir,
                           bool assume_defaults)
{
   const ptree tree = parse_ini(content, "config");
   static const std::set<std::string> known{"geometry", "sphere", "plate",   "medium",
                                            "grid",     "ensemble", "output", "numerics"};
   for (const auto& [name, sec] : tree)
   {
      if (!known.count(name))
      {
         throw ConfigError("unknown config section [" + name + "]");
      }
      if (sec.empty() && !sec.data().empty())
      {
         throw ConfigError("key '" + name + "' outside any section");
      }
   }

   RunConfig cfg;

   const Section geometry(section_or_empty(tree, "geometry"), "geometry");
   if (geometry.has("sphere_radius_um"))
   {
      cfg.sphere_radius = geometry.number("sphere_radius_um") * 1e-6;
   }
   else if (assume_defaults)
   {
      cfg.assumed.push_back("sphere_radius_um=19.9");
   }
   else
   {
      throw ConfigError("[geometry] sphere_radius_um is required (or pass --assume-defaults)");
   }
   if (geometry.has("temperature_K"))
   {
      cfg.temperature = geometry.number("temperature_K");
   }
   else if (assume_defaults)
   {
      cfg.assumed.push_back("temperature_K=300");
   }
   else
   {
      throw ConfigError("[geometry] temperature_K is required (or pass --assume-defaults)");
   }
   geometry.reject_unknown_keys();
   if (!(cfg.sphere_radius > 0.0) || !(cfg.temperature > 0.0))
   {
      throw ConfigError("[geometry] radius and temperature must be > 0");
   }

   for (const char* name : {"sphere", "plate", "medium"})
   {
      std::optional<MaterialSpec>& slot = std::string(name) == "sphere"  ? cfg.sphere
                                          : std::string(name) == "plate" ? cfg.plate
                                                                         : cfg.medium;
      if (tree.find(name) != tree.not_found())
      {
         slot = material_from(Section(tree.get_child(name), name), base_dir);
      }
      else if (assume_defaults)
      {
         slot = std::string(name) == "medium" ? default_medium() : default_gold();
         cfg.assumed.push_back(std::string(name) + "=" + describe(slot->model));
      }
   }
   if (cfg.medium && is_conductor(cfg.medium->model))
   {
      throw ConfigError("[medium] must be a dielectric");
   }

   const Section grid(section_or_empty(tree, "grid"), "grid");
   if (grid.has("start_nm") || !assume_defaults)
   {
      cfg.grid.start = grid.number("start_nm") * 1e-9;
      cfg.grid.stop = grid.number("stop_nm", cfg.grid.start * 1e9) * 1e-9;
      const double count = grid.number("count", 1.0);
      if (count != std::floor(count) || count < 1.0 || count > 1e6)
      {
         throw ConfigError("[grid] count must be a positive integer");
      }
      cfg.grid.count = static_cast<int>(count);
      const std::string spacing = grid.text("spacing", "linear");
      if (spacing == "log")
      {
         cfg.grid.spacing = DistanceGrid::Spacing::Log;
      }
      else if (spacing != "linear")
      {
         throw ConfigError("[grid] spacing must be linear or log");
      }
   }
   else
   {
      cfg.assumed.push_back("grid=20..100 nm, 9 points");
   }
   grid.reject_unknown_keys();
   (void)cfg.grid.points();

   const Section ensemble(section_or_empty(tree, "ensemble"), "ensemble");
   if (ensemble.has("manifest"))
   {
      fs::path manifest = ensemble.text("manifest");
      cfg.ensemble_manifest = manifest.is_relative() ? base_dir / manifest : manifest;
      if (!fs::exists(*cfg.ensemble_manifest))
      {
         throw ConfigError("ensemble manifest not found: " + cfg.ensemble_manifest->string());
      }
   }
   ensemble.reject_unknown_keys();

   const Section output(section_or_empty(tree, "output"), "output");
   if (output.has("path"))
   {
      fs::path out = output.text("path");
      cfg.output = out.is_relative() ? base_dir / out : out;
   }
   output.reject_unknown_keys();

   const Section numerics(section_or_empty(tree, "numerics"), "numerics");
   cfg.numerics.k_rel_tol = numerics.number("k_rel_tol", cfg.numerics.k_rel_tol);
   cfg.numerics.matsubara_rel_tol =
      numerics.number("matsubara_rel_tol", cfg.numerics.matsubara_rel_tol);
   cfg.numerics.matsubara_max_terms = static_cast<long>(
      numerics.number("matsubara_max_terms", static_cast<double>(cfg.numerics.matsubara_max_terms)));
   const std::string te = numerics.text("zero_frequency_te", "drude");
   if (te == "plasma")
   {
      cfg.numerics.te_zero = ZeroFrequencyTE::Plasma;
   }
   else if (te != "drude")
   {
      throw ConfigError("[numerics] zero_frequency_te must be drude or plasma");
   }
   const double threads = numerics.number("threads", 0.0);
   if (threads < 0.0 || threads != std::floor(threads))
   {
      throw ConfigError("[numerics] threads must be a non-negative integer");
   }
   cfg.threads = static_cast<unsigned>(threads);
   numerics.reject_unknown_keys();
   if (!(cfg.numerics.k_rel_tol > 0.0) || !(cfg.numerics.matsubara_rel_tol > 0.0) ||
       cfg.numerics.matsubara_max_terms < 1)
   {
      throw ConfigError("[numerics] tolerances and term cap must be positive");
   }
   return cfg;
}

RunConfig load_run_config(const fs::path& path, bool assume_defaults)
{
   return parse_run_config(read_text_file(path), path.parent_path(), assume_defaults);
}

RunConfig default_run_config()
{
   return parse_run_config("", fs::current_path(), true);
}

ModelEnsemble parse_ensemble(const std::string& content, const fs::path& base_dir)
{
   const ptree tree = parse_ini(content, "ensemble manifest");
   std::string label = "ensemble";
   std::vector<PermittivityModel> members;
   std::vector<std::string> labels;
   for (const auto& [name, sec] : tree)
   {
      if (name == "ensemble")
      {
         const Section head(sec, name);
         label = head.text("label", label);
         head.reject_unknown_keys();
         continue;
      }
      if (sec.empty())
      {
         throw ConfigError("manifest key '" + name + "' outside any member section");
      }
      const Section member(sec, name);
      const std::string member_label = member.text("label", name);
      members.push_back(material_from(member, base_dir).model);
      labels.push_back(member_label);
   }
   if (members.empty())
   {
      throw ConfigError("ensemble manifest lists no members");
   }
   return ModelEnsemble(label, std::move(members), std::move(labels));
}

ModelEnsemble load_ensemble(const fs::path& path)
{
   return parse_ensemble(read_text_file(path), path.parent_path());
}

TabulatedOptics load_optics_file(const fs::path& path, std::string source_label,
                                 std::optional<DrudeModel> extension)
{
   const std::string content = read_text_file(path);
   try
   {
      return parse_optics_file(content, std::move(source_label), std::move(extension));
   }
   catch (const ParseError& err)
   {
      throw ParseError(path.string() + ": " + err.what());
   }
   catch (const InputError& err)
   {
      throw ParseError(path.string() + ": " + err.what());
   }
}

std::string read_text_file(const fs::path& path)
{
   std::ifstream in(path, std::ios::binary);
   if (!in)
   {
      throw ConfigError("cannot open " + path.string());
   }
   std::ostringstream buf;
   buf << in.rdbuf();
   return buf.str();
}

} // namespace casimir

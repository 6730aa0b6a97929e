#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cli_support.hpp"

#include <cmath>
#include <numbers>

using namespace cli_support;
namespace fs = std::filesystem;

namespace
{

const fs::path data_dir = CASIMIR_DATA_DIR;

std::string quoted(const fs::path& p)
{
   return "\"" + p.string() + "\"";
}

double ideal_pfa_force_pN(double radius, double d)
{
   const double hbar = 1.054571817e-34;
   const double c = 299792458.0;
   return -std::pow(std::numbers::pi, 3) * hbar * c * radius / (360.0 * d * d * d) * 1e12;
}

const char* zero_contrast = R"(
[geometry]
sphere_radius_um = 10
temperature_K = 300
[sphere]
model = ethanol
[plate]
model = ethanol
[medium]
model = ethanol
[grid]
start_nm = 20
stop_nm = 100
count = 5
)";

} // namespace

TEST_CASE("corrections subcommands")
{
   auto r = run("debye --c 48.6e-6 --eps 24.3 --T 298");
   REQUIRE(r.exit_code == 0);
   CHECK(std::stod(record(r.out, "lambda_nm")) == doctest::Approx(24.0).epsilon(0.5 / 24.0));

   r = run("electrostatic --V0 0 --R 19.9 --eps 24.3 --d 40");
   REQUIRE(r.exit_code == 0);
   CHECK(record(r.out, "force_N") == "0");
   CHECK(record(r.out, "model") == "ideal-sphere-plate-estimate");

   r = run("electrostatic --V0 130 --R 19.9 --eps 24.3 --lambda 24 --d 40");
   REQUIRE(r.exit_code == 0);
   CHECK(std::stod(record(r.out, "force_pN")) == doctest::Approx(-1200.0).epsilon(0.25));

   r = run("electrostatic --V0 130 --assume-defaults --d 40");
   REQUIRE(r.exit_code == 0);
   CHECK(r.err.find("ASSUMED DEFAULT --R=19.9") != std::string::npos);
   CHECK(r.err.find("ASSUMED DEFAULT --eps=24.3") != std::string::npos);

   r = run("scale --F -243e-12 --eps 24.3 --origin trapped");
   REQUIRE(r.exit_code == 0);
   CHECK(std::stod(record(r.out, "force_N")) == doctest::Approx(-1.0e-11).epsilon(1e-12));

   r = run("concentration --debye");
   REQUIRE(r.exit_code == 0);
   CHECK(std::stod(record(r.out, "concentration_uM")) == doctest::Approx(48.6).epsilon(0.02));
   CHECK(std::stod(record(r.out, "lambda_nm")) == doctest::Approx(24.0).epsilon(0.5 / 24.0));

   r = run("hydro --R 19.9 --target-pN 12 --d 40");
   REQUIRE(r.exit_code == 0);
   CHECK(std::stod(record(r.out, "approach_speed_nm_s")) == doctest::Approx(60.0).epsilon(0.01));
   CHECK(std::stod(record(r.out, "force_pN")) == doctest::Approx(12.0).epsilon(1e-8));
}

TEST_CASE("sweep mode emits CSV")
{
   const auto r = run("hydro --R 19.9 --v 60 --d-start 20 --d-stop 100 --count 5");
   REQUIRE(r.exit_code == 0);
   CHECK(r.out.rfind("# casimir ", 0) == 0);
   CHECK(r.out.find("\ndistance_nm,force_pN\n") != std::string::npos);
   const auto rows = csv_rows(r.out);
   REQUIRE(rows.size() == 5);
   CHECK(std::stod(rows[0][0]) == doctest::Approx(20.0));
   CHECK(std::stod(rows[4][0]) == doctest::Approx(100.0));
   CHECK(std::stod(rows[0][1]) == doctest::Approx(5.0 * std::stod(rows[4][1])));
}

TEST_CASE("t-test subcommand")
{
   auto r = run("ttest --a 1,2,3,4 --b 1,2,3,4");
   REQUIRE(r.exit_code == 0);
   CHECK(record(r.out, "p") == "1");

   r = run("ttest --a-summary 5,1.0,0.5 --b-summary 5,2.0,0.5");
   REQUIRE(r.exit_code == 0);
   CHECK(std::stod(record(r.out, "t")) == doctest::Approx(-3.16227766).epsilon(1e-8));
   CHECK(record(r.out, "df") == "8");
   CHECK(std::stod(record(r.out, "p")) == doctest::Approx(0.0133490634).epsilon(1e-8));

   r = run("ttest --a-summary 5,1.0,0.2 --b-summary 5,1.4,0.9");
   REQUIRE(r.exit_code == 0);
   const double df = std::stod(record(r.out, "df"));
   CHECK(df != std::floor(df));

   CHECK(run("ttest --a-summary 5,1,0 --b-summary 5,2,0").exit_code == 2);
   CHECK(run("ttest --a 1,x,3 --b 1,2").exit_code == 2);
}

TEST_CASE("exit codes")
{
   CHECK(run("--version").exit_code == 0);
   CHECK(run("").exit_code == 2);
   CHECK(run("no-such-command").exit_code == 2);
   CHECK(run("debye --c -1 --eps 24.3").exit_code == 2);
   CHECK(run("force-curve").exit_code == 2);
   CHECK(run("force-curve --config /nonexistent.ini").exit_code == 2);

   const auto dir = scratch_dir("exit");
   write_file(dir / "bad.txt", "1.0 0.5\n2.0 oops\n");
   write_file(dir / "bad.ini", std::string(zero_contrast) + "[numerics]\n"
                                                            "k_rel_tol = 1e-7\n");
   std::string with_table = zero_contrast;
   with_table.replace(with_table.find("[sphere]\nmodel = ethanol"), 24,
                      "[sphere]\nmodel = tabulated\nfile = bad.txt");
   write_file(dir / "table.ini", with_table);
   CHECK(run("force-curve --config " + quoted(dir / "table.ini")).exit_code == 3);

   std::string capped = zero_contrast;
   capped.replace(capped.find("model = ethanol"), 15,
                  "model = drude\nplasma_frequency_eV = 9\nrelaxation_rate_eV = 0.035");
   capped += "[numerics]\nmatsubara_max_terms = 2\n";
   write_file(dir / "capped.ini", capped);
   const auto numerics = run("force-curve --config " + quoted(dir / "capped.ini"));
   CHECK(numerics.exit_code == 4);
   CHECK(numerics.err.find("not converged") != std::string::npos);

   CHECK(run("force-band --config " + quoted(dir / "bad.ini")).exit_code == 2);
   fs::remove_all(dir);
}

TEST_CASE("force-curve output")
{
   const auto dir = scratch_dir("curve");
   write_file(dir / "zero.ini", zero_contrast);
   auto r = run("force-curve --config " + quoted(dir / "zero.ini"));
   REQUIRE(r.exit_code == 0);
   CHECK(r.out.rfind("# casimir ", 0) == 0);
   CHECK(r.out.find("# config_sha256=") != std::string::npos);
   CHECK(r.out.find("# geometry.sphere_radius_um=10\n") != std::string::npos);
   CHECK(r.out.find("# geometry.temperature_K=300\n") != std::string::npos);
   CHECK(r.out.find("# numerics.zero_frequency_te=drude") != std::string::npos);
   auto rows = csv_rows(r.out);
   REQUIRE(rows.size() == 5);
   for (const auto& row : rows)
   {
      REQUIRE(row.size() == 3);
      CHECK(std::stod(row[1]) == 0.0);
   }

   r = run("force-curve --config " + quoted(data_dir / "mirrors_vacuum.ini") + " --output " +
           quoted(dir / "ideal.csv"));
   REQUIRE(r.exit_code == 0);
   CHECK(r.out.empty());
   rows = csv_rows(slurp(dir / "ideal.csv"));
   REQUIRE(rows.size() == 4);
   for (const auto& row : rows)
   {
      const double d = std::stod(row[0]) * 1e-9;
      CHECK(std::stod(row[1]) == doctest::Approx(ideal_pfa_force_pN(19.9e-6, d)).epsilon(0.01));
   }

   r = run("force-curve --assume-defaults --output " + quoted(dir / "defaults.csv"));
   REQUIRE(r.exit_code == 0);
   CHECK(r.err.find("ASSUMED DEFAULT") != std::string::npos);
   const auto text = slurp(dir / "defaults.csv");
   CHECK(text.find("# assumed: ") != std::string::npos);
   fs::remove_all(dir);
}

TEST_CASE("force-band output")
{
   const auto dir = scratch_dir("band");
   write_file(dir / "one.ini", "[only]\nmodel = drude\nplasma_frequency_eV = 9\nrelaxation_rate_eV = 0.035\n");
   const std::string base = "force-band --config " + quoted(data_dir / "gold_ethanol.ini");

   auto r = run(base + " --manifest " + quoted(dir / "one.ini") + " --output " + quoted(dir / "one.csv"));
   REQUIRE(r.exit_code == 0);
   auto rows = csv_rows(slurp(dir / "one.csv"));
   REQUIRE(rows.size() == 17);
   for (const auto& row : rows)
   {
      CHECK(row[1] == row[2]);
   }
   CHECK(fs::exists(dir / "one.members.csv"));

   r = run(base + " --manifest " + quoted(data_dir / "two_drude.ini") + " --output " +
           quoted(dir / "two.csv") + " --members-output " + quoted(dir / "members.csv"));
   REQUIRE(r.exit_code == 0);
   rows = csv_rows(slurp(dir / "two.csv"));
   REQUIRE(rows.size() == 17);
   for (const auto& row : rows)
   {
      CHECK(std::stod(row[1]) < std::stod(row[2]));
   }
   const auto members = csv_rows(slurp(dir / "members.csv"));
   REQUIRE(members.size() == 34);
   CHECK(members[0][2] == "wp-8.4");
   CHECK(members[17][2] == "wp-9.0");
   fs::remove_all(dir);
}

TEST_CASE("output is deterministic across runs and thread counts")
{
   const auto dir = scratch_dir("det");
   const std::string base = "force-band --config " + quoted(data_dir / "gold_ethanol.ini");
   std::string first;
   std::string first_members;
   for (int threads : {1, 4, 1, 3})
   {
      const auto out = dir / ("band" + std::to_string(threads) + ".csv");
      const auto r = run(base + " --threads " + std::to_string(threads) + " --output " + quoted(out));
      REQUIRE(r.exit_code == 0);
      const auto text = slurp(out);
      const auto members = slurp(dir / ("band" + std::to_string(threads) + ".members.csv"));
      if (first.empty())
      {
         first = text;
         first_members = members;
      }
      CHECK(text == first);
      CHECK(members == first_members);
   }
   fs::remove_all(dir);
}

// Command line front end: run, sweep or batch scenarios.

#include "fwguide/kernels.hpp"
#include "fwguide/scenario.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace fwguide;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

int report(const RunResult &r)
{
	if (r.exit_code == kExitOk) {
		std::cout << fmt::format("{}: ok, log {}, metrics {}\n", r.name, r.log_file.string(),
					 r.metrics_file.string());

	} else {
		std::cerr << r.message << '\n';
	}

	return r.exit_code;
}

int cmd_sweep(const fs::path &grid_file, const fs::path &out_dir)
{
	std::string name;
	AirspeedMapSpec spec;

	try {
		spec = load_sweep_grid(grid_file, &name);

	} catch (const std::exception &e) {
		std::cerr << e.what() << '\n';
		return kExitValidation;
	}

	try {
		const AirspeedMap map = airspeed_map(spec);
		std::ostringstream csv;
		write_airspeed_map_csv(map, csv);
		fs::create_directories(out_dir);
		const fs::path file = out_dir / (name + "_airspeed_map.csv");
		write_file_atomic(file, csv.str());

		const auto unconverged = std::count_if(map.cells.begin(), map.cells.end(), [](const AirspeedMapCell &c) {
			return !c.no_min.converged || !c.with_min.converged;
		});
		std::cout << fmt::format("{}: {} cells, {} unconverged, map {}\n", name, map.cells.size(), unconverged,
					 file.string());

	} catch (const std::exception &e) {
		std::cerr << name << ": " << e.what() << '\n';
		return kExitRuntime;
	}

	return kExitOk;
}

int cmd_batch(const fs::path &dir, const fs::path &out_dir, std::optional<std::uint64_t> seed)
{
	std::vector<fs::path> files;
	std::error_code ec;

	for (const auto &entry : fs::directory_iterator(dir, ec)) {
		const auto ext = entry.path().extension();

		if (entry.is_regular_file() && (ext == ".yaml" || ext == ".yml")) {
			files.push_back(entry.path());
		}
	}

	if (ec) {
		std::cerr << dir.string() << ": " << ec.message() << '\n';
		return kExitValidation;
	}

	std::sort(files.begin(), files.end());
	int worst = kExitOk;

	for (const RunResult &r : run_batch(files, out_dir, seed)) {
		worst = std::max(worst, report(r));
	}

	std::cout << fmt::format("{} scenarios\n", files.size());
	return worst;
}

/// Evaluates the feasibility function on a dense grid in float and double and
/// reports the largest difference.
int cmd_f32_conformance()
{
	constexpr double kTol = 1e-4;
	const Grid1D lambda{0.0, kPi, 721};
	const Grid1D beta{0.0, 3.0, 1201};

	const auto t64 = feasibility_table(lambda, beta, FeasibilityParams{});
	const auto t32 = feasibility_table(lambda, beta, BasicFeasibilityParams<float>{});

	double worst = 0.0;

	for (std::size_t i = 0; i < t64.values.size(); ++i) {
		worst = std::max(worst, std::fabs(t64.values[i] - static_cast<double>(t32.values[i])));
	}

	const bool ok = worst <= kTol;
	std::cout << fmt::format("f32 conformance: max |f32 - f64| = {:.3g} over {} points (tol {}): {}\n", worst,
				 t64.values.size(), kTol, ok ? "PASS" : "FAIL");
	return ok ? kExitOk : kExitRuntime;
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"Wind-aware path following guidance simulator"};
	app.require_subcommand(0, 1);

	bool dump_defaults = false;
	bool f32 = false;
	app.add_flag("--dump-defaults", dump_defaults, "Print the default scenario as YAML and exit");
	app.add_flag("--f32-conformance", f32, "Compare single and double precision feasibility");

	fs::path out_dir = "out";
	std::optional<std::uint64_t> seed;

	auto *run = app.add_subcommand("run", "Simulate one scenario file");
	fs::path run_file;
	run->add_option("file", run_file, "Scenario YAML")->required();
	run->add_option("--out", out_dir, "Output directory");
	run->add_option("--seed", seed, "Override the scenario seed");

	auto *sweep = app.add_subcommand("sweep", "Steady-state airspeed map over a grid");
	fs::path grid_file;
	sweep->add_option("grid", grid_file, "Grid YAML")->required();
	sweep->add_option("--out", out_dir, "Output directory");

	auto *batch = app.add_subcommand("batch", "Run every scenario in a directory");
	fs::path batch_dir;
	batch->add_option("dir", batch_dir, "Directory of scenario YAML files")->required();
	batch->add_option("--out", out_dir, "Output directory");
	batch->add_option("--seed", seed, "Override every scenario seed");

	try {
		app.parse(argc, argv);

	} catch (const CLI::CallForHelp &e) {
		return app.exit(e);

	} catch (const CLI::ParseError &e) {
		app.exit(e);
		return kExitValidation;
	}

	if (dump_defaults) {
		std::cout << dump_scenario(default_scenario());
		return kExitOk;
	}

	if (f32) {
		return cmd_f32_conformance();
	}

	if (*run) {
		return report(run_scenario_file(run_file, out_dir, seed));
	}

	if (*sweep) {
		return cmd_sweep(grid_file, out_dir);
	}

	if (*batch) {
		return cmd_batch(batch_dir, out_dir, seed);
	}

	std::cout << app.help();
	return kExitValidation;
}

#pragma once

#include "fwguide/kernels.hpp"
#include "fwguide/windsim.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fwguide {

struct MetricsRequest {
	double start_time{0.0}; ///< samples before this are excluded from the statistics [s]

	friend bool operator==(const MetricsRequest &, const MetricsRequest &) = default;
};

struct Scenario {
	std::string name{"default"};
	SimScenario sim;
	MetricsRequest metrics;

	friend bool operator==(const Scenario &, const Scenario &) = default;
};

Scenario default_scenario();

/// Invalid configuration. what() reads "<source>:<line>: <key.path>: <reason>".
class ConfigError : public std::runtime_error {
public:
	ConfigError(const std::string &source, int line, const std::string &key, const std::string &reason);

	const std::string &key() const { return _key; }
	int line() const { return _line; }

private:
	std::string _key;
	int _line;
};

/// Parses a scenario from YAML text. source names the input in messages.
Scenario parse_scenario(const std::string &text, const std::string &source = "<string>");
Scenario load_scenario(const std::filesystem::path &file);

/// YAML text that parse_scenario() turns back into an identical Scenario.
std::string dump_scenario(const Scenario &scenario);

AirspeedMapSpec parse_sweep_grid(const std::string &text, const std::string &source = "<string>",
				 std::string *name = nullptr);
AirspeedMapSpec load_sweep_grid(const std::filesystem::path &file, std::string *name = nullptr);

void write_airspeed_map_csv(const AirspeedMap &map, std::ostream &os);

// --- metrics ---------------------------------------------------------------

struct SaturationCounts {
	std::size_t curvature_asin{0};
	std::size_t roll_limit{0};
	std::size_t airspeed_max{0};
};

struct MetricsReport {
	std::size_t samples{0};
	double track_error_mean{0.0};
	double track_error_max{0.0};
	double track_error_std{0.0};

	/// Over samples with minimum ground speed compensation active.
	std::size_t undershoot_samples{0};
	double undershoot_mean{0.0};
	double undershoot_std{0.0};

	double infeasible_fraction{0.0}; ///< fraction of samples with feas == 0
	double command_step_max{0.0};    ///< largest heading reference change between updates [rad]
	SaturationCounts saturation;

	/// Over samples where the wind exceeds v_A_nom.
	std::size_t excess_wind_samples{0};
	double excess_wind_track_error_max{0.0};

	double final_track_error{0.0};
	double final_ground_speed{0.0};
	double final_forward_ground_speed{0.0};
	double final_heading{0.0};
	double final_airspeed{0.0};

	double roll_rate_max{0.0};  ///< observed between updates [rad/s]
	double airspeed_accel_max{0.0};
};

MetricsReport compute_metrics(const SimLog &log, const Scenario &scenario);

std::string metrics_json(const MetricsReport &m, const Scenario &scenario);

// --- running ---------------------------------------------------------------

struct RunResult {
	std::string name;
	int exit_code{0}; ///< 0 ok, 1 validation error, 2 runtime failure
	std::string message;
	std::filesystem::path log_file;
	std::filesystem::path metrics_file;
	std::optional<MetricsReport> metrics;
};

/// Writes `<name>_log.csv` and `<name>_metrics.json` to out_dir. Files are
/// written to a temporary name and renamed into place.
RunResult run_scenario(const Scenario &scenario, const std::filesystem::path &out_dir);

/// Loads and runs one scenario file; never throws.
RunResult run_scenario_file(const std::filesystem::path &file, const std::filesystem::path &out_dir,
			    std::optional<std::uint64_t> seed_override = std::nullopt);

/// Runs each file on a worker pool. Results are in input order.
std::vector<RunResult> run_batch(const std::vector<std::filesystem::path> &files,
				 const std::filesystem::path &out_dir,
				 std::optional<std::uint64_t> seed_override = std::nullopt);

void write_file_atomic(const std::filesystem::path &file, const std::string &content);

} // namespace fwguide

#include "fwguide/scenario.hpp"

#include <fmt/format.h>
#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace fwguide {

ConfigError::ConfigError(const std::string &source, int line, const std::string &key, const std::string &reason) :
	std::runtime_error(key.empty() ? fmt::format("{}:{}: {}", source, line, reason)
		: fmt::format("{}:{}: {}: {}", source, line, key, reason)),
	_key(key),
	_line(line)
{
}

Scenario default_scenario()
{
	Scenario sc;
	sc.sim.initial.v_A = sc.sim.guidance.airspeed.v_A_nom;
	return sc;
}

namespace {

/// One YAML mapping being read. Tracks which keys were consumed so unknown
/// keys can be reported, and where each key sits in the source.
class Section {
public:
	Section(const YAML::Node &node, std::string path, const std::string &source, int line) :
		_path(std::move(path)), _source(source), _line(line)
	{
		if (!node || node.IsNull()) {
			return;
		}

		if (!node.IsMap()) {
			throw ConfigError(_source, node.Mark().line + 1, _path.empty() ? "<root>" : _path,
					  "expected a mapping");
		}

		for (const auto &kv : node) {
			const std::string key = kv.first.as<std::string>();
			_entries.emplace(key, Entry{kv.second, kv.first.Mark().line + 1});
		}
	}

	std::string key_path(const std::string &key) const { return _path.empty() ? key : _path + "." + key; }

	int line_of(const std::string &key) const
	{
		const auto it = _entries.find(key);
		return it != _entries.end() ? it->second.line : _line;
	}

	int line() const { return _line; }
	const std::string &source() const { return _source; }

	ConfigError error(const std::string &key, const std::string &reason) const
	{
		return {_source, line_of(key), key_path(key), reason};
	}

	bool has(const std::string &key) const { return _entries.count(key) != 0; }

	const YAML::Node *find(const std::string &key)
	{
		const auto it = _entries.find(key);

		if (it == _entries.end()) {
			return nullptr;
		}

		_used.insert(key);
		return &it->second.node;
	}

	template <class T>
	void read(const std::string &key, T &out)
	{
		if (const YAML::Node *n = find(key)) {
			out = convert<T>(key, *n);
		}
	}

	template <class T>
	T require(const std::string &key)
	{
		const YAML::Node *n = find(key);

		if (n == nullptr) {
			throw error(key, "required key missing");
		}

		return convert<T>(key, *n);
	}

	/// Angle given in radians as `key` or in degrees as `key_deg`.
	void read_angle(const std::string &key, double &out)
	{
		const std::string deg_key = key + "_deg";

		if (has(key) && has(deg_key)) {
			throw error(deg_key, "give either " + key + " or " + deg_key + ", not both");
		}

		read(key, out);

		if (const YAML::Node *n = find(deg_key)) {
			out = deg2rad(convert<double>(deg_key, *n));
		}
	}

	void read_vec(const std::string &key, Vec2 &out)
	{
		if (const YAML::Node *n = find(key)) {
			out = to_vec(key, *n);
		}
	}

	Vec2 to_vec(const std::string &key, const YAML::Node &n) const
	{
		if (!n.IsSequence() || n.size() != 2) {
			throw error(key, "expected [x, y]");
		}

		return {convert<double>(key, n[0]), convert<double>(key, n[1])};
	}

	Section child(const std::string &key)
	{
		const YAML::Node *n = find(key);
		static const YAML::Node null_node;
		return {n ? *n : null_node, key_path(key), _source, line_of(key)};
	}

	void finish() const
	{
		for (const auto &[key, entry] : _entries) {
			if (_used.count(key) == 0) {
				throw ConfigError(_source, entry.line, key_path(key), "unknown key");
			}
		}
	}

	template <class T>
	T convert(const std::string &key, const YAML::Node &n) const
	{
		try {
			return n.as<T>();

		} catch (const YAML::Exception &) {
			if constexpr (std::is_same_v<T, std::string>) {
				throw error(key, "expected a string");

			} else if constexpr (std::is_integral_v<T>) {
				throw error(key, "expected an integer");

			} else {
				throw error(key, "expected a number");
			}
		}
	}

private:
	struct Entry {
		YAML::Node node;
		int line;
	};

	std::string _path;
	const std::string &_source;
	int _line;
	std::map<std::string, Entry> _entries;
	std::set<std::string> _used;
};

YAML::Node parse_yaml(const std::string &text, const std::string &source)
{
	try {
		return YAML::Load(text);

	} catch (const YAML::ParserException &e) {
		throw ConfigError(source, e.mark.line + 1, "", e.msg);
	}
}

const char *mode_name(CompensationMode m)
{
	switch (m) {
	case CompensationMode::Disabled: return "disabled";
	case CompensationMode::WindExcess: return "wind_excess";
	case CompensationMode::TrackKeeping: return "track_keeping";
	case CompensationMode::MinGroundSpeed: return "min_ground_speed";
	}

	return "disabled";
}

CompensationMode parse_mode(Section &s)
{
	const std::string name = s.require<std::string>("mode");

	for (CompensationMode m : {CompensationMode::Disabled, CompensationMode::WindExcess,
				   CompensationMode::TrackKeeping, CompensationMode::MinGroundSpeed}) {
		if (name == mode_name(m)) {
			return m;
		}
	}

	throw s.error("mode", "expected one of disabled, wind_excess, track_keeping, min_ground_speed");
}

/// Re-raises a "<field>: <reason>" validation message at the key's location,
/// searching the given sections in order.
[[noreturn]] void raise_validation(const std::string &err, std::initializer_list<const Section *> sections)
{
	const auto colon = err.find(':');
	const std::string field = err.substr(0, colon);
	const std::string reason = colon == std::string::npos ? err : err.substr(colon + 2);

	for (const Section *s : sections) {
		if (s->has(field)) {
			throw s->error(field, reason);
		}
	}

	throw (*sections.begin())->error(field, reason);
}

PathRef parse_path(Section &s)
{
	const std::string type = s.require<std::string>("type");

	if (type == "line") {
		LinePath line;
		s.read_vec("origin", line.origin);
		s.read_vec("direction", line.direction);
		const double n = line.direction.norm();

		if (n <= kEpsVec) {
			throw s.error("direction", "must be non-zero");
		}

		// leave exactly-unit input untouched so dumps reload bit-identically
		if (std::fabs(n - 1.0) > 4.0 * std::numeric_limits<double>::epsilon()) {
			line.direction = line.direction.unit();
		}

		return line;
	}

	if (type == "circle") {
		CirclePath circle;
		s.read_vec("center", circle.center);
		s.read("radius", circle.radius);

		if (!(circle.radius >= kMinCircleRadius)) {
			throw s.error("radius", fmt::format("must be >= {} m", kMinCircleRadius));
		}

		std::string turn = "ccw";
		s.read("turn", turn);

		if (turn == "ccw") {
			circle.turn = TurnDirection::CCW;

		} else if (turn == "cw") {
			circle.turn = TurnDirection::CW;

		} else {
			throw s.error("turn", "expected ccw or cw");
		}

		return circle;
	}

	throw s.error("type", "expected line or circle");
}

WindField parse_wind(Section &s)
{
	const std::string type = s.require<std::string>("type");
	WindField field;

	if (type == "constant") {
		ConstantWind c;
		s.read_vec("velocity", c.w);
		field = c;

	} else if (type == "ramp") {
		PiecewiseRampWind ramp;
		const YAML::Node *knots = s.find("knots");

		if (knots == nullptr || !knots->IsSequence()) {
			throw s.error("knots", "expected a list of [t, w_x, w_y]");
		}

		for (const auto &k : *knots) {
			if (!k.IsSequence() || k.size() != 3) {
				throw ConfigError(s.source(), k.Mark().line + 1, s.key_path("knots"),
						  "each knot must be [t, w_x, w_y]");
			}

			ramp.knots.push_back({s.convert<double>("knots", k[0]),
					      {s.convert<double>("knots", k[1]), s.convert<double>("knots", k[2])}});
		}

		field = ramp;

	} else if (type == "gust") {
		GustWind g;
		s.read_vec("base", g.base);
		s.read_vec("amplitude", g.amplitude);
		s.read("t0", g.t0);
		s.read("period", g.period);
		field = g;

	} else if (type == "noise") {
		NoiseWind n;
		s.read_vec("base", n.base);
		s.read("sigma", n.sigma);
		s.read("correlation_time", n.correlation_time);
		s.read("seed", n.seed);
		field = n;

	} else {
		throw s.error("type", "expected constant, ramp, gust or noise");
	}

	if (const std::string err = validate(field); !err.empty()) {
		raise_validation(err, {&s});
	}

	return field;
}

} // namespace

Scenario parse_scenario(const std::string &text, const std::string &source)
{
	const YAML::Node root = parse_yaml(text, source);
	Section top(root, "", source, 1);

	Scenario sc = default_scenario();
	SimScenario &sim = sc.sim;
	GuidanceConfig &g = sim.guidance;
	AirspeedConfig &as = g.airspeed;
	SimConfig &cfg = sim.sim;

	top.read("name", sc.name);

	if (sc.name.empty() || sc.name.find_first_of("/\\") != std::string::npos) {
		throw top.error("name", "must be a non-empty file name");
	}

	Section path = top.child("path");

	if (!top.has("path")) {
		throw top.error("path", "required key missing");
	}

	sim.path = parse_path(path);

	Section wind = top.child("wind");

	if (top.has("wind")) {
		sim.wind = parse_wind(wind);
	}

	Section guidance = top.child("guidance");
	guidance.read("k", g.k);
	guidance.read("k_mult", g.k_mult);
	guidance.read("T_b", g.T_b);
	guidance.read("v_G_co", g.v_G_co);
	guidance.read("beta_buf", g.feas.beta_buf);
	guidance.read_angle("lambda_co", g.feas.lambda_co);
	guidance.read("g", g.g);
	guidance.read_angle("phi_max", g.phi_max);
	guidance.read("v_A_floor", g.v_A_floor);

	Section airspeed = top.child("airspeed");

	if (airspeed.has("mode")) {
		as.mode = parse_mode(airspeed);
	}

	airspeed.read("v_A_nom", as.v_A_nom);
	airspeed.read("v_A_max", as.v_A_max);
	airspeed.read("e_bar_buf", as.e_bar_buf);
	airspeed.read("dw_buf", as.dw_buf);
	airspeed.read("dv_e_max", as.dv_e_max);
	airspeed.read("v_G_min", as.v_G_min);

	if (const std::string err = validate(g); !err.empty()) {
		raise_validation(err, {&guidance, &airspeed});
	}

	Section initial = top.child("initial");
	sim.initial.v_A = as.v_A_nom;
	initial.read_vec("position", sim.initial.r);
	initial.read_angle("heading", sim.initial.xi);
	initial.read_angle("roll", sim.initial.phi);
	initial.read("airspeed", sim.initial.v_A);

	if (!(sim.initial.v_A > g.v_A_floor)) {
		throw initial.error("airspeed", "must exceed guidance.v_A_floor");
	}

	Section simsec = top.child("sim");
	simsec.read("dt", cfg.dt);
	simsec.read("guidance_rate", cfg.guidance_rate);
	simsec.read("tau_roll", cfg.tau_roll);
	simsec.read("tau_airspeed", cfg.tau_airspeed);
	simsec.read_angle("phi_max", cfg.phi_max);
	simsec.read_angle("roll_rate_max", cfg.roll_rate_max);
	simsec.read("accel_limit", cfg.accel_limit);
	simsec.read("g", cfg.g);
	simsec.read("duration", cfg.duration);
	simsec.read("wind_estimator_tau", cfg.wind_estimator_tau);
	simsec.read("seed", cfg.seed);

	if (const std::string err = validate(cfg); !err.empty()) {
		raise_validation(err, {&simsec});
	}

	Section metrics = top.child("metrics");
	metrics.read("start_time", sc.metrics.start_time);

	for (const Section *s : {&top, &path, &wind, &guidance, &airspeed, &initial, &simsec, &metrics}) {
		s->finish();
	}

	return sc;
}

namespace {

std::string read_text(const std::filesystem::path &file)
{
	std::ifstream in(file, std::ios::binary);

	if (!in) {
		throw ConfigError(file.string(), 0, "", "cannot open file");
	}

	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

std::string vec(const Vec2 &v)
{
	return fmt::format("[{}, {}]", v.x, v.y);
}

} // namespace

Scenario load_scenario(const std::filesystem::path &file)
{
	return parse_scenario(read_text(file), file.string());
}

std::string dump_scenario(const Scenario &sc)
{
	const SimScenario &sim = sc.sim;
	const GuidanceConfig &g = sim.guidance;
	const AirspeedConfig &as = g.airspeed;
	const SimConfig &cfg = sim.sim;

	std::string out;
	auto line = [&out](const std::string &s) { out += s; out += '\n'; };

	line(fmt::format("name: {}", sc.name));

	line("path:");

	if (const auto *l = std::get_if<LinePath>(&sim.path)) {
		line("  type: line");
		line("  origin: " + vec(l->origin));
		line("  direction: " + vec(l->direction));

	} else {
		const auto &c = std::get<CirclePath>(sim.path);
		line("  type: circle");
		line("  center: " + vec(c.center));
		line(fmt::format("  radius: {}", c.radius));
		line(fmt::format("  turn: {}", c.turn == TurnDirection::CCW ? "ccw" : "cw"));
	}

	line("wind:");

	if (const auto *c = std::get_if<ConstantWind>(&sim.wind)) {
		line("  type: constant");
		line("  velocity: " + vec(c->w));

	} else if (const auto *r = std::get_if<PiecewiseRampWind>(&sim.wind)) {
		line("  type: ramp");
		line("  knots:");

		for (const RampKnot &k : r->knots) {
			line(fmt::format("    - [{}, {}, {}]", k.t, k.w.x, k.w.y));
		}

	} else if (const auto *gu = std::get_if<GustWind>(&sim.wind)) {
		line("  type: gust");
		line("  base: " + vec(gu->base));
		line("  amplitude: " + vec(gu->amplitude));
		line(fmt::format("  t0: {}", gu->t0));
		line(fmt::format("  period: {}", gu->period));

	} else {
		const auto &n = std::get<NoiseWind>(sim.wind);
		line("  type: noise");
		line("  base: " + vec(n.base));
		line(fmt::format("  sigma: {}", n.sigma));
		line(fmt::format("  correlation_time: {}", n.correlation_time));
		line(fmt::format("  seed: {}", n.seed));
	}

	line("initial:");
	line("  position: " + vec(sim.initial.r));
	line(fmt::format("  heading: {}", sim.initial.xi));
	line(fmt::format("  roll: {}", sim.initial.phi));
	line(fmt::format("  airspeed: {}", sim.initial.v_A));

	line("guidance:");
	line(fmt::format("  k: {}", g.k));
	line(fmt::format("  k_mult: {}", g.k_mult));
	line(fmt::format("  T_b: {}", g.T_b));
	line(fmt::format("  v_G_co: {}", g.v_G_co));
	line(fmt::format("  beta_buf: {}", g.feas.beta_buf));
	line(fmt::format("  lambda_co: {}", g.feas.lambda_co));
	line(fmt::format("  g: {}", g.g));
	line(fmt::format("  phi_max: {}", g.phi_max));
	line(fmt::format("  v_A_floor: {}", g.v_A_floor));

	line("airspeed:");
	line(fmt::format("  mode: {}", mode_name(as.mode)));
	line(fmt::format("  v_A_nom: {}", as.v_A_nom));
	line(fmt::format("  v_A_max: {}", as.v_A_max));
	line(fmt::format("  e_bar_buf: {}", as.e_bar_buf));
	line(fmt::format("  dw_buf: {}", as.dw_buf));
	line(fmt::format("  dv_e_max: {}", as.dv_e_max));
	line(fmt::format("  v_G_min: {}", as.v_G_min));

	line("sim:");
	line(fmt::format("  dt: {}", cfg.dt));
	line(fmt::format("  guidance_rate: {}", cfg.guidance_rate));
	line(fmt::format("  tau_roll: {}", cfg.tau_roll));
	line(fmt::format("  tau_airspeed: {}", cfg.tau_airspeed));
	line(fmt::format("  phi_max: {}", cfg.phi_max));
	line(fmt::format("  roll_rate_max: {}", cfg.roll_rate_max));
	line(fmt::format("  accel_limit: {}", cfg.accel_limit));
	line(fmt::format("  g: {}", cfg.g));
	line(fmt::format("  duration: {}", cfg.duration));
	line(fmt::format("  wind_estimator_tau: {}", cfg.wind_estimator_tau));
	line(fmt::format("  seed: {}", cfg.seed));

	line("metrics:");
	line(fmt::format("  start_time: {}", sc.metrics.start_time));

	return out;
}

namespace {

Grid1D parse_grid(Section &parent, const std::string &key, bool angle)
{
	const std::string deg_key = key + "_deg";
	const bool in_deg = angle && parent.has(deg_key);

	if (!in_deg && !parent.has(key)) {
		throw parent.error(key, "required key missing");
	}

	Section s = parent.child(in_deg ? deg_key : key);
	Grid1D g;
	g.min = s.require<double>("min");
	g.max = s.require<double>("max");
	g.count = s.require<std::size_t>("count");
	s.finish();

	if (!(g.max >= g.min)) {
		throw s.error("max", "must be >= min");
	}

	if (g.count < 1) {
		throw s.error("count", "must be >= 1");
	}

	if (in_deg) {
		g.min = deg2rad(g.min);
		g.max = deg2rad(g.max);
	}

	return g;
}

} // namespace

AirspeedMapSpec parse_sweep_grid(const std::string &text, const std::string &source, std::string *name)
{
	const YAML::Node root = parse_yaml(text, source);
	Section top(root, "", source, 1);
	AirspeedMapSpec spec;

	std::string n = "airspeed_map";
	top.read("name", n);

	if (name != nullptr) {
		*name = n;
	}

	spec.wind = parse_grid(top, "wind", false);
	spec.lambda = parse_grid(top, "lambda", true);

	if (spec.wind.min < 0.0) {
		throw top.error("wind", "wind speeds must be >= 0");
	}

	Section as = top.child("airspeed");
	as.read("v_A_nom", spec.airspeed.v_A_nom);
	as.read("v_A_max", spec.airspeed.v_A_max);
	as.read("v_G_min", spec.airspeed.v_G_min);
	as.finish();

	if (!(spec.airspeed.v_A_nom > 0.0)) {
		throw as.error("v_A_nom", "must be > 0");
	}

	if (!(spec.airspeed.v_A_max >= spec.airspeed.v_A_nom)) {
		throw as.error("v_A_max", "must be >= v_A_nom");
	}

	if (!(spec.airspeed.v_G_min >= 0.0)) {
		throw as.error("v_G_min", "must be >= 0");
	}

	Section fs = top.child("feasibility");
	fs.read("beta_buf", spec.feas.beta_buf);
	fs.read_angle("lambda_co", spec.feas.lambda_co);
	fs.finish();

	if (!spec.feas.valid()) {
		throw fs.error("beta_buf", "feasibility parameters out of range");
	}

	top.read("tol", spec.tol);
	top.read("max_iter", spec.max_iter);

	if (!(spec.tol > 0.0)) {
		throw top.error("tol", "must be > 0");
	}

	if (spec.max_iter < 1) {
		throw top.error("max_iter", "must be >= 1");
	}

	top.finish();
	return spec;
}

AirspeedMapSpec load_sweep_grid(const std::filesystem::path &file, std::string *name)
{
	return parse_sweep_grid(read_text(file), file.string(), name);
}

void write_airspeed_map_csv(const AirspeedMap &map, std::ostream &os)
{
	os << "w,lambda,v_A_ref,v_G_fwd,converged,v_A_ref_min,v_G_fwd_min,converged_min\n";

	for (const AirspeedMapCell &c : map.cells) {
		os << fmt::format("{},{},{},{},{},{},{},{}\n", c.w, c.lambda, c.no_min.v_A_ref, c.no_min.v_G_fwd,
				  c.no_min.converged ? 1 : 0, c.with_min.v_A_ref, c.with_min.v_G_fwd,
				  c.with_min.converged ? 1 : 0);
	}
}

void write_file_atomic(const std::filesystem::path &file, const std::string &content)
{
	const auto tag = std::hash<std::thread::id>{}(std::this_thread::get_id());
	std::filesystem::path tmp = file;
	tmp += fmt::format(".tmp{:x}", tag);

	{
		std::ofstream out(tmp, std::ios::binary | std::ios::trunc);

		if (!out) {
			throw std::runtime_error("cannot write " + tmp.string());
		}

		out.write(content.data(), static_cast<std::streamsize>(content.size()));

		if (!out) {
			throw std::runtime_error("write failed for " + tmp.string());
		}
	}

	std::filesystem::rename(tmp, file);
}

// --- metrics ---------------------------------------------------------------

namespace {

struct Stats {
	std::size_t n{0};
	double sum{0.0};
	double sum_sq{0.0};
	double max{0.0};

	void add(double x)
	{
		++n;
		sum += x;
		sum_sq += x * x;
		max = n == 1 ? x : std::fmax(max, x);
	}

	double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }

	double stddev() const
	{
		if (n == 0) {
			return 0.0;
		}

		const double m = mean();
		return std::sqrt(std::fmax(sum_sq / static_cast<double>(n) - m * m, 0.0));
	}
};

} // namespace

MetricsReport compute_metrics(const SimLog &log, const Scenario &scenario)
{
	const AirspeedConfig &as = scenario.sim.guidance.airspeed;
	const double period = log.guidance_period;
	MetricsReport m;

	Stats track;
	Stats undershoot;
	std::size_t infeasible = 0;
	const SimLogRow *prev = nullptr;

	for (const SimLogRow &r : log.rows) {
		if (r.t < scenario.metrics.start_time - 1e-9) {
			continue;
		}

		track.add(r.e_norm);

		if (as.mode == CompensationMode::MinGroundSpeed && r.v_A_ref > as.v_A_nom) {
			undershoot.add(std::fmax(as.v_G_min - r.v_G_fwd, 0.0));
		}

		if (r.feas <= 0.0) {
			++infeasible;
		}

		if (r.flags & kFlagCurvatureSaturated) { ++m.saturation.curvature_asin; }
		if (r.flags & kFlagRollSaturated) { ++m.saturation.roll_limit; }
		if (as.dv_max() > 0.0 && r.v_A_ref >= as.v_A_max - 1e-9) { ++m.saturation.airspeed_max; }

		if (r.wind.norm() > as.v_A_nom) {
			++m.excess_wind_samples;
			m.excess_wind_track_error_max = std::fmax(m.excess_wind_track_error_max, r.e_norm);
		}

		if (prev != nullptr) {
			m.command_step_max = std::fmax(m.command_step_max, std::fabs(wrap_pi(r.ref_heading - prev->ref_heading)));
			m.roll_rate_max = std::fmax(m.roll_rate_max, std::fabs(r.phi - prev->phi) / period);
			m.airspeed_accel_max = std::fmax(m.airspeed_accel_max, std::fabs(r.v_A - prev->v_A) / period);
		}

		prev = &r;
	}

	m.samples = track.n;
	m.track_error_mean = track.mean();
	m.track_error_max = track.max;
	m.track_error_std = track.stddev();
	m.undershoot_samples = undershoot.n;
	m.undershoot_mean = undershoot.mean();
	m.undershoot_std = undershoot.stddev();
	m.infeasible_fraction = track.n ? static_cast<double>(infeasible) / static_cast<double>(track.n) : 0.0;

	if (!log.rows.empty()) {
		const SimLogRow &last = log.rows.back();
		m.final_track_error = last.e_norm;
		m.final_ground_speed = last.v_G.norm();
		m.final_forward_ground_speed = last.v_G_fwd;
		m.final_heading = last.xi;
		m.final_airspeed = last.v_A;
	}

	return m;
}

std::string metrics_json(const MetricsReport &m, const Scenario &scenario)
{
	nlohmann::ordered_json j;
	j["name"] = scenario.name;
	j["samples"] = m.samples;
	j["start_time"] = scenario.metrics.start_time;
	j["track_error"] = {{"mean", m.track_error_mean}, {"max", m.track_error_max}, {"std", m.track_error_std}};
	j["undershoot"] = {{"samples", m.undershoot_samples}, {"mean", m.undershoot_mean}, {"std", m.undershoot_std}};
	j["infeasible_fraction"] = m.infeasible_fraction;
	j["command_step_max"] = m.command_step_max;
	j["saturation"] = {{"curvature_asin", m.saturation.curvature_asin},
			   {"roll_limit", m.saturation.roll_limit},
			   {"airspeed_max", m.saturation.airspeed_max}};
	j["excess_wind"] = {{"samples", m.excess_wind_samples}, {"track_error_max", m.excess_wind_track_error_max}};
	j["final"] = {{"track_error", m.final_track_error},
		      {"ground_speed", m.final_ground_speed},
		      {"forward_ground_speed", m.final_forward_ground_speed},
		      {"heading", m.final_heading},
		      {"airspeed", m.final_airspeed}};
	j["roll_rate_max"] = m.roll_rate_max;
	j["airspeed_accel_max"] = m.airspeed_accel_max;
	return j.dump(2) + "\n";
}

// --- running ---------------------------------------------------------------

RunResult run_scenario(const Scenario &scenario, const std::filesystem::path &out_dir)
{
	RunResult res;
	res.name = scenario.name;

	SimLog log;

	try {
		log = run(scenario.sim);

	} catch (const std::invalid_argument &e) {
		res.exit_code = 1;
		res.message = fmt::format("{}: {}", scenario.name, e.what());
		return res;

	} catch (const SimulationError &e) {
		res.exit_code = 2;
		res.message = fmt::format("{}: simulation failed: {}", scenario.name, e.what());
		return res;
	}

	try {
		std::filesystem::create_directories(out_dir);
		const MetricsReport m = compute_metrics(log, scenario);

		std::ostringstream csv;
		write_csv(log, csv);
		res.log_file = out_dir / (scenario.name + "_log.csv");
		write_file_atomic(res.log_file, csv.str());

		res.metrics_file = out_dir / (scenario.name + "_metrics.json");
		write_file_atomic(res.metrics_file, metrics_json(m, scenario));
		res.metrics = m;

	} catch (const std::exception &e) {
		res.exit_code = 2;
		res.message = fmt::format("{}: cannot write output: {}", scenario.name, e.what());
	}

	return res;
}

RunResult run_scenario_file(const std::filesystem::path &file, const std::filesystem::path &out_dir,
			    std::optional<std::uint64_t> seed_override)
{
	Scenario sc;

	try {
		sc = load_scenario(file);

	} catch (const ConfigError &e) {
		RunResult res;
		res.name = file.stem().string();
		res.exit_code = 1;
		res.message = e.what();
		return res;

	} catch (const std::exception &e) {
		RunResult res;
		res.name = file.stem().string();
		res.exit_code = 1;
		res.message = fmt::format("{}: {}", file.string(), e.what());
		return res;
	}

	if (seed_override) {
		sc.sim.sim.seed = *seed_override;
	}

	try {
		return run_scenario(sc, out_dir);

	} catch (const std::exception &e) {
		RunResult res;
		res.name = sc.name;
		res.exit_code = 2;
		res.message = fmt::format("{}: {}", sc.name, e.what());
		return res;
	}
}

std::vector<RunResult> run_batch(const std::vector<std::filesystem::path> &files, const std::filesystem::path &out_dir,
				 std::optional<std::uint64_t> seed_override)
{
	std::vector<RunResult> results(files.size());
	const auto n = static_cast<std::int64_t>(files.size());

	#pragma omp parallel for schedule(dynamic, 1)
	for (std::int64_t i = 0; i < n; ++i) {
		const auto idx = static_cast<std::size_t>(i);
		results[idx] = run_scenario_file(files[idx], out_dir, seed_override);
	}

	return results;
}

} // namespace fwguide

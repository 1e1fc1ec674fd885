// Serial reference against the OpenMP kernels.

#include "fwguide/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace fwguide;

namespace {

const Grid1D kLambda{-kPi, kPi, 721};
const Grid1D kBeta{0.0, 3.0, 1201};

void BM_feasibility_table_serial(benchmark::State &state)
{
	for (auto _ : state) {
		benchmark::DoNotOptimize(feasibility_table_serial(kLambda, kBeta, FeasibilityParams{}));
	}
}

void BM_feasibility_table_omp(benchmark::State &state)
{
	for (auto _ : state) {
		benchmark::DoNotOptimize(feasibility_table(kLambda, kBeta, FeasibilityParams{}));
	}
}

void BM_feasibility_table_f32(benchmark::State &state)
{
	for (auto _ : state) {
		benchmark::DoNotOptimize(feasibility_table(kLambda, kBeta, BasicFeasibilityParams<float>{}));
	}
}

void BM_airspeed_map_serial(benchmark::State &state)
{
	const AirspeedMapSpec spec;

	for (auto _ : state) {
		benchmark::DoNotOptimize(airspeed_map_serial(spec));
	}
}

void BM_airspeed_map_omp(benchmark::State &state)
{
	const AirspeedMapSpec spec;

	for (auto _ : state) {
		benchmark::DoNotOptimize(airspeed_map(spec));
	}
}

std::vector<GuidanceCase> random_cases(std::size_t n)
{
	std::mt19937_64 rng(1);
	std::uniform_real_distribution<double> u(-1.0, 1.0);
	std::vector<GuidanceCase> cases(n);

	for (GuidanceCase &c : cases) {
		c.wind = {12 * u(rng), 12 * u(rng)};
		c.state = {{200 * u(rng), 200 * u(rng)}, 9.0 * from_angle(4 * u(rng)) + c.wind};
		c.path = u(rng) < 0 ? PathRef{CirclePath{{0, 0}, 60, TurnDirection::CW}} : PathRef{LinePath{{0, 0}, {1, 0}}};
	}

	return cases;
}

template <bool Parallel>
void BM_guidance_batch(benchmark::State &state)
{
	const std::vector<GuidanceCase> cases = random_cases(static_cast<std::size_t>(state.range(0)));
	std::vector<GuidanceOutput> out(cases.size());
	const GuidanceConfig cfg;

	for (auto _ : state) {
		if constexpr (Parallel) {
			guidance_batch(cases, cfg, out);

		} else {
			guidance_batch_serial(cases, cfg, out);
		}

		benchmark::DoNotOptimize(out.data());
	}

	state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

BENCHMARK(BM_feasibility_table_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_feasibility_table_omp)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_feasibility_table_f32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_airspeed_map_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_airspeed_map_omp)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_guidance_batch<false>)->Arg(1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_guidance_batch<true>)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

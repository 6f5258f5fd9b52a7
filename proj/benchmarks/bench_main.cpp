#include <ldit/csv.hpp>
#include <ldit/identifiability.hpp>
#include <ldit/kmeans.hpp>
#include <ldit/ledger.hpp>
#include <ldit/orbit.hpp>
#include <ldit/passes.hpp>
#include <ldit/sgp4.hpp>
#include <ldit/stations.hpp>
#include <ldit/tle.hpp>

#include <benchmark/benchmark.h>

#include <filesystem>

namespace {

const std::filesystem::path kFixtures(LDIT_FIXTURE_DIR);

const std::vector<ldit::TleRecord>& catalog() {
    static const auto tles = ldit::parse_tle(ldit::csv::read_file(kFixtures / "catalog" / "catalog.tle")).records;
    return tles;
}

const ldit::TleRecord& first_of(ldit::OrbitClass cls) {
    for (const auto& t : catalog()) {
        if (ldit::classify_orbit(t.mean_motion, t.eccentricity) == cls) return t;
    }
    return catalog().front();
}

void BM_Sgp4NearEarth(benchmark::State& state) {
    const ldit::Sgp4 model(first_of(ldit::OrbitClass::LEO));
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(model.propagate(t));
        t += 0.5;
        if (t > 1440.0) t = 0.0;
    }
}
BENCHMARK(BM_Sgp4NearEarth);

void BM_Sgp4DeepSpace(benchmark::State& state) {
    const ldit::Sgp4 model(first_of(ldit::OrbitClass::GEO));
    ldit::ResonanceCache cache;
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(model.propagate(t, &cache));
        t += 0.5;
    }
}
BENCHMARK(BM_Sgp4DeepSpace);

void BM_ParseCatalog(benchmark::State& state) {
    const auto text = ldit::csv::read_file(kFixtures / "catalog" / "catalog.tle");
    for (auto _ : state) benchmark::DoNotOptimize(ldit::parse_tle(text));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(catalog().size()));
}
BENCHMARK(BM_ParseCatalog)->Unit(benchmark::kMillisecond);

// One LEO object against the 25-station network for one week.
void BM_PassPredictionWeek(benchmark::State& state) {
    const auto stations = ldit::load_ground_stations(kFixtures / "stations.csv");
    const auto& t = first_of(ldit::OrbitClass::LEO);
    const ldit::PassPredictor predictor(stations, {t.epoch, t.epoch.plus_seconds(7 * 86400.0), 30.0}, 10.0);
    for (auto _ : state) benchmark::DoNotOptimize(predictor.predict(t));
}
BENCHMARK(BM_PassPredictionWeek)->Unit(benchmark::kMillisecond);

void BM_BisectingKMeans60(benchmark::State& state) {
    std::vector<ldit::Vec3> momenta;
    for (const auto& t : catalog()) momenta.push_back(ldit::momentum_from_elements(t).l);
    for (auto _ : state) benchmark::DoNotOptimize(ldit::bisecting_kmeans(momenta, 60, ldit::kDefaultSeed));
}
BENCHMARK(BM_BisectingKMeans60)->Unit(benchmark::kMillisecond);

void BM_VerifyLedger(benchmark::State& state) {
    ldit::Ledger ledger;
    std::vector<ldit::ScoreCard> cards(static_cast<std::size_t>(state.range(1)));
    for (std::size_t i = 0; i < cards.size(); ++i) {
        cards[i].norad_id = static_cast<int>(i + 1);
        cards[i].s_dit = 0.5;
    }
    std::int64_t now = 0;
    for (int b = 0; b < state.range(0); ++b)
        ldit::append_block(ledger, cards, {}, [&] { return ++now; });
    const auto bytes = ledger.to_bytes();
    for (auto _ : state) benchmark::DoNotOptimize(ldit::verify_chain(bytes));
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(bytes.size()));
}
BENCHMARK(BM_VerifyLedger)->Args({100, 10})->Args({100, 1000})->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();

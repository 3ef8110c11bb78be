#include <algorithm>
#include <cmath>
#include <tuple>

#include <doctest.h>

#include "secrecy/sweep.hpp"

using namespace secrecy;

namespace {

const char* kBasicConfig = R"({
    "axis": "gamma_I_db",
    "grid": [0, 10, 20],
    "num_users": 2,
    "num_eves": 2,
    "mer_db": 10.0,
    "secrecy_rate": 1.0,
    "mc_trials": 0
})";

}  // namespace

TEST_CASE("config parsing") {
    SUBCASE("dB conversion at the boundary") {
        const SweepSpec spec = parse_config(kBasicConfig);
        CHECK(spec.mer == doctest::Approx(10.0).epsilon(1e-12));
        const SystemConfig cfg = config_at(spec, 10.0);
        CHECK(cfg.interference_limit / cfg.noise_cbs == doctest::Approx(10.0).epsilon(1e-12));
        CHECK(cfg.gain_eve[0][0] == doctest::Approx(0.1).epsilon(1e-12));
    }
    SUBCASE("negative mer in dB maps below one") {
        const std::string text = R"({"axis":"gamma_I_db","grid":[0,10],"num_users":1,
            "num_eves":1,"mer_db":-3.0,"secrecy_rate":0.5})";
        const SweepSpec spec = parse_config(text);
        CHECK(spec.mer == doctest::Approx(0.501187).epsilon(1e-5));
    }
    SUBCASE("unknown keys are rejected") {
        const std::string text = R"({"axis":"gamma_I_db","grid":[0,10],"num_users":1,
            "num_eves":1,"mer_db":0,"secrecy_rate":0.5,"bogus":1})";
        CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("bogus"), ConfigError);
    }
    SUBCASE("missing keys name the key") {
        const std::string text = R"({"axis":"gamma_I_db","grid":[0,10],"num_users":1,
            "num_eves":1,"mer_db":0})";
        CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("secrecy_rate"),
                             ConfigError);
    }
    SUBCASE("negative gain rejection names the field") {
        const std::string text = R"({"axis":"gamma_I_db","grid":[0,10],"num_users":2,
            "num_eves":1,"mer_db":0,"secrecy_rate":0.5,"theta_main":[1.0,-2.0]})";
        CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("theta_main"),
                             ConfigError);
    }
    SUBCASE("ill-typed key names the expected type") {
        const std::string text = R"({"axis":"gamma_I_db","grid":"nope","num_users":1,
            "num_eves":1,"mer_db":0,"secrecy_rate":0.5})";
        CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("grid"), ConfigError);
    }
    SUBCASE("axis-substituted keys conflict") {
        const std::string text = R"({"axis":"gamma_I_db","grid":[0,10],"num_users":1,
            "num_eves":1,"mer_db":0,"secrecy_rate":0.5,"gamma_I_db":10})";
        CHECK_THROWS_AS(parse_config(text), ConfigError);
    }
    SUBCASE("grid must increase") {
        const std::string text = R"({"axis":"gamma_I_db","grid":[10,0],"num_users":1,
            "num_eves":1,"mer_db":0,"secrecy_rate":0.5})";
        CHECK_THROWS_AS(parse_config(text), ConfigError);
    }
    SUBCASE("count axes need integral grids") {
        const std::string text = R"({"axis":"num_users","grid":[1,2.5],
            "num_eves":1,"mer_db":0,"secrecy_rate":0.5,"gamma_I_db":10})";
        CHECK_THROWS_AS(parse_config(text), ConfigError);
    }
}

TEST_CASE("analytic-only sweep emits no Monte-Carlo columns") {
    const SweepSpec spec = parse_config(kBasicConfig);
    const auto rows = run_sweep(spec);
    CHECK(rows.size() == 3 * 3 * 2);
    for (const auto& r : rows) {
        REQUIRE(r.analytic.has_value());
        REQUIRE(!r.mc.has_value());
        REQUIRE(r.floor.has_value());
    }
    const std::string csv = to_csv(rows);
    CHECK(csv.rfind("axis,scheme,mode,analytic,floor_or_bounds,mc_p_hat,mc_ci_low,mc_ci_high\n",
                    0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 18);
}

TEST_CASE("emitted analytic values equal the library calls exactly") {
    const SweepSpec spec = parse_config(kBasicConfig);
    const auto rows = run_sweep(spec);
    for (const auto& r : rows) {
        const SystemConfig cfg = config_at(spec, r.axis_value);
        CHECK(*r.analytic == outage_closed_form(r.scheme, r.mode, cfg).value);
    }
}

TEST_CASE("rows come out sorted by axis, scheme, mode") {
    const SweepSpec spec = parse_config(kBasicConfig);
    const auto rows = run_sweep(spec);
    const auto key = [](const SweepRow& r) {
        return std::tuple(r.axis_value, static_cast<int>(r.scheme),
                          static_cast<int>(r.mode));
    };
    for (std::size_t k = 1; k < rows.size(); ++k)
        REQUIRE(key(rows[k - 1]) < key(rows[k]));
}

TEST_CASE("csv is byte-stable across runs and worker counts") {
    SweepSpec spec = figure_spec(2);
    spec.grid = {0.0, 10.0, 20.0};
    spec.mc_trials = 20000;

    SimulationOptions serial;
    serial.threads = 1;
    SimulationOptions wide;
    wide.threads = 4;

    const std::string a = to_csv(run_sweep(spec, serial));
    const std::string b = to_csv(run_sweep(spec, serial));
    const std::string c = to_csv(run_sweep(spec, wide));
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a.find("\r") == std::string::npos);
}

TEST_CASE("interference-axis sweep decreases toward its floor") {
    SweepSpec spec = figure_spec(2);
    spec.mc_trials = 0;
    const auto rows = run_sweep(spec);
    CHECK(rows.size() == 11 * 6);

    for (auto scheme : {Scheme::RoundRobin, Scheme::Optimal, Scheme::Suboptimal}) {
        for (auto mode :
             {EavesdropperMode::Uncoordinated, EavesdropperMode::Coordinated}) {
            double prev = 1.0;
            for (const auto& r : rows) {
                if (r.scheme != scheme || r.mode != mode) continue;
                REQUIRE(*r.analytic <= prev + 1e-12);
                prev = *r.analytic;
                REQUIRE(r.floor.has_value());
                // The floor (or its lower bound) sits below every finite-budget value.
                REQUIRE(*r.analytic >= r.floor->lower.value - 1e-12);
            }
        }
    }
}

TEST_CASE("user-count sweep: round robin flat, scheduled schemes improve") {
    SweepSpec spec = figure_spec(5);
    spec.mc_trials = 0;
    const auto rows = run_sweep(spec);

    double rr_first = -1.0;
    double prev_opt = 2.0, prev_sub = 2.0;
    for (const auto& r : rows) {
        if (r.mode != EavesdropperMode::Uncoordinated) continue;
        if (r.scheme == Scheme::RoundRobin) {
            if (rr_first < 0.0)
                rr_first = *r.analytic;
            else
                REQUIRE(std::abs(*r.analytic - rr_first) <= 1e-12);
        }
        if (r.scheme == Scheme::Optimal) {
            REQUIRE(*r.analytic < prev_opt);
            prev_opt = *r.analytic;
        }
        if (r.scheme == Scheme::Suboptimal) {
            REQUIRE(*r.analytic < prev_sub);
            prev_sub = *r.analytic;
        }
    }
}

TEST_CASE("heterogeneous eavesdroppers: empty analytic, Monte-Carlo still present") {
    const std::string text = R"({
        "axis": "gamma_I_db",
        "grid": [10],
        "num_users": 2,
        "num_eves": 2,
        "mer_db": 10.0,
        "secrecy_rate": 1.0,
        "theta_eve": [[1.0, 0.4], [0.7, 1.2]],
        "mc_trials": 20000
    })";
    const SweepSpec spec = parse_config(text);
    const auto rows = run_sweep(spec);
    for (const auto& r : rows) {
        REQUIRE(r.mc.has_value());
        // Per-user gains differ across eavesdroppers, so the combining closed
        // forms refuse and only the simulator answers.
        if (r.mode == EavesdropperMode::Uncoordinated) REQUIRE(r.analytic.has_value());
        if (r.mode == EavesdropperMode::Coordinated) REQUIRE(!r.analytic.has_value());
    }

    // Analytic-only mode must refuse instead of emitting empty columns.
    SweepSpec no_mc = spec;
    no_mc.mc_trials = 0;
    CHECK_THROWS_AS(run_sweep(no_mc), ModelAssumptionError);
}

TEST_CASE("figure presets validate and carry the advertised parameters") {
    for (int fig : {2, 3, 4, 5}) {
        const SweepSpec spec = figure_spec(fig);
        CHECK(spec.mc_trials == 1'000'000);
        CHECK(spec.seed == 42);
    }
    CHECK(figure_spec(5).num_eves == 2);
    CHECK(figure_spec(5).secrecy_rate == doctest::Approx(0.2));
    CHECK(figure_spec(4).axis == SweepAxis::NumEves);
    CHECK_THROWS_AS(figure_spec(1), ConfigError);
}

TEST_CASE("floor and diversity tables") {
    SweepSpec spec = parse_config(kBasicConfig);
    const auto floors = run_floor_table(spec, {0.0, 10.0, 20.0});
    CHECK(floors.size() == 3 * 6);
    for (const auto& r : floors) REQUIRE(r.floor.lower.value <= r.floor.upper.value + 1e-15);
    const std::string fcsv = to_csv(floors);
    CHECK(fcsv.find("mer_db") == 0);

    const auto divs = run_diversity_table(spec, {1e6, 1e8});
    CHECK(divs.size() == 6);
    for (const auto& r : divs) {
        const double want = r.scheme == Scheme::RoundRobin ? 1.0 : 2.0;
        REQUIRE(r.estimate.slope == doctest::Approx(want).epsilon(0.05));
        if (r.mode == EavesdropperMode::Coordinated)
            REQUIRE(r.estimate.slope_upper.has_value());
    }
    const std::string dcsv = to_csv(divs);
    CHECK(dcsv.find("scheme,mode,slope") == 0);
}

#include <cmath>
#include <doctest.h>

#include "secrecy/model.hpp"

using namespace secrecy;

namespace {

SystemConfig unit_config(std::size_t m, std::size_t n) {
    return SystemConfig::symmetric(m, n, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0);
}

}  // namespace

TEST_CASE("uniform draws stay inside the open unit interval") {
    RandomStream rng(123);
    for (int k = 0; k < 100000; ++k) {
        const double u = rng.next_unit_open();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("same seed gives a bitwise-identical channel draw") {
    const SystemConfig cfg = unit_config(3, 2);
    RandomStream a(9001), b(9001);
    const ChannelDraw da = sample_channels(cfg, a);
    const ChannelDraw db = sample_channels(cfg, b);
    CHECK(da.g_main == db.g_main);
    CHECK(da.g_primary == db.g_primary);
    CHECK(da.g_eve == db.g_eve);

    // And the sequence stays identical on subsequent draws.
    const ChannelDraw da2 = sample_channels(cfg, a);
    const ChannelDraw db2 = sample_channels(cfg, b);
    CHECK(da2.g_main == db2.g_main);
}

TEST_CASE("substreams differ from each other but reproduce themselves") {
    RandomStream s0 = RandomStream::substream(42, 0);
    RandomStream s1 = RandomStream::substream(42, 1);
    RandomStream s0_again = RandomStream::substream(42, 0);
    CHECK(s0.next_u64() != s1.next_u64());
    RandomStream s0_ref = RandomStream::substream(42, 0);
    CHECK(s0_again.next_u64() == s0_ref.next_u64());
}

TEST_CASE("sampled gains are exponential with the configured means") {
    const int trials = 1'000'000;

    SUBCASE("all gains one") {
        const SystemConfig cfg = unit_config(1, 1);
        RandomStream rng(7);
        double sum = 0.0;
        ChannelDraw draw;
        for (int t = 0; t < trials; ++t) {
            sample_channels(cfg, rng, draw);
            REQUIRE(draw.g_main[0] >= 0.0);
            REQUIRE(draw.g_primary[0] >= 0.0);
            REQUIRE(draw.g_eve[0][0] >= 0.0);
            sum += draw.g_main[0];
        }
        const double mean = sum / trials;
        CHECK(std::abs(mean - 1.0) < 0.01);
    }

    SUBCASE("gain_main of four") {
        SystemConfig cfg = unit_config(2, 1);
        cfg.gain_main[0] = 4.0;
        RandomStream rng(11);
        double sum = 0.0;
        ChannelDraw draw;
        for (int t = 0; t < trials; ++t) {
            sample_channels(cfg, rng, draw);
            sum += draw.g_main[0];
        }
        const double mean = sum / trials;
        const double stderr3 = 3.0 * 4.0 / std::sqrt(static_cast<double>(trials));
        CHECK(std::abs(mean - 4.0) < stderr3);
    }
}

TEST_CASE("main-channel capacity") {
    SystemConfig cfg = unit_config(1, 1);
    ChannelDraw draw;
    draw.g_main = {1.7};
    draw.g_primary = {1.7};
    draw.g_eve = {{0.5}};

    SUBCASE("gains cancel to unit SNR") {
        CHECK(capacity_main(0, draw, cfg) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("zero main gain gives zero capacity") {
        draw.g_main[0] = 0.0;
        CHECK(capacity_main(0, draw, cfg) == 0.0);
    }
    SUBCASE("direct arithmetic") {
        cfg.interference_limit = 10.0;
        draw.g_main[0] = 3.0;
        draw.g_primary[0] = 2.0;
        CHECK(capacity_main(0, draw, cfg) == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("degenerate primary draw is an error") {
        draw.g_primary[0] = 0.0;
        CHECK_THROWS_AS(capacity_main(0, draw, cfg), DegenerateDrawError);
        CHECK_THROWS_AS(capacity_wiretap(0, draw, cfg, EavesdropperMode::Uncoordinated),
                        DegenerateDrawError);
    }
}

TEST_CASE("wiretap capacity") {
    SystemConfig cfg = unit_config(1, 3);
    cfg.interference_limit = 5.0;
    ChannelDraw draw;
    draw.g_main = {1.0};
    draw.g_primary = {2.0};
    draw.g_eve = {{0.3, 0.9, 0.1}};

    SUBCASE("no interception power means zero capacity") {
        draw.g_eve[0] = {0.0, 0.0, 0.0};
        CHECK(capacity_wiretap(0, draw, cfg, EavesdropperMode::Uncoordinated) == 0.0);
        CHECK(capacity_wiretap(0, draw, cfg, EavesdropperMode::Coordinated) == 0.0);
    }

    SUBCASE("single eavesdropper collapses both modes") {
        const SystemConfig one = [] {
            SystemConfig c = unit_config(1, 1);
            c.interference_limit = 5.0;
            c.noise_eve[0] = 1.4;
            return c;
        }();
        RandomStream rng(3);
        for (int t = 0; t < 1000; ++t) {
            const ChannelDraw d = sample_channels(one, rng);
            const double unc = capacity_wiretap(0, d, one, EavesdropperMode::Uncoordinated);
            const double coord = capacity_wiretap(0, d, one, EavesdropperMode::Coordinated);
            REQUIRE(unc == doctest::Approx(coord).epsilon(1e-12));
        }
    }

    SUBCASE("combining dominates the best individual tap under equal noise") {
        RandomStream rng(5);
        for (int t = 0; t < 1000; ++t) {
            const ChannelDraw d = sample_channels(cfg, rng);
            const double unc = capacity_wiretap(0, d, cfg, EavesdropperMode::Uncoordinated);
            const double coord = capacity_wiretap(0, d, cfg, EavesdropperMode::Coordinated);
            REQUIRE(coord >= unc - 1e-12);
        }
    }
}

TEST_CASE("secrecy capacity") {
    SystemConfig cfg = unit_config(1, 2);
    cfg.interference_limit = 4.0;

    SUBCASE("equals main capacity when the taps see nothing") {
        ChannelDraw draw;
        draw.g_main = {0.8};
        draw.g_primary = {1.1};
        draw.g_eve = {{0.0, 0.0}};
        CHECK(secrecy_capacity(0, draw, cfg, EavesdropperMode::Uncoordinated) ==
              capacity_main(0, draw, cfg));
    }

    SUBCASE("identical SINRs cancel to zero") {
        ChannelDraw draw;
        draw.g_main = {0.8};
        draw.g_primary = {1.1};
        draw.g_eve = {{0.8, 0.1}};
        CHECK(secrecy_capacity(0, draw, cfg, EavesdropperMode::Uncoordinated) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }

    SUBCASE("matches direct re-evaluation on random draws") {
        RandomStream rng(17);
        for (int t = 0; t < 1000; ++t) {
            const ChannelDraw d = sample_channels(cfg, rng);
            const double ratio_main =
                cfg.interference_limit * d.g_main[0] / (d.g_primary[0] * cfg.noise_cbs);
            const double best =
                std::max(d.g_eve[0][0] / cfg.noise_eve[0], d.g_eve[0][1] / cfg.noise_eve[1]);
            const double ratio_eve = cfg.interference_limit * best / d.g_primary[0];
            const double expected = std::log2(1.0 + ratio_main) - std::log2(1.0 + ratio_eve);
            REQUIRE(secrecy_capacity(0, d, cfg, EavesdropperMode::Uncoordinated) ==
                    doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("capacities are invariant under joint scaling of limit and noises") {
    SystemConfig cfg = SystemConfig::symmetric(2, 2, 1.5, 0.7, 0.4, 1.3, 6.0, 1.0);
    RandomStream rng(23);
    for (double c : {1e-3, 0.1, 3.0, 1e4}) {
        SystemConfig scaled = cfg;
        scaled.interference_limit *= c;
        scaled.noise_cbs *= c;
        for (double& v : scaled.noise_eve) v *= c;
        for (int t = 0; t < 200; ++t) {
            const ChannelDraw d = sample_channels(cfg, rng);
            for (std::size_t i = 0; i < cfg.num_users; ++i) {
                REQUIRE(capacity_main(i, d, cfg) ==
                        doctest::Approx(capacity_main(i, d, scaled)).epsilon(1e-12));
                for (auto mode :
                     {EavesdropperMode::Uncoordinated, EavesdropperMode::Coordinated})
                    REQUIRE(capacity_wiretap(i, d, cfg, mode) ==
                            doctest::Approx(capacity_wiretap(i, d, scaled, mode))
                                .epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("configuration validation names the offending field") {
    SystemConfig cfg = unit_config(2, 2);
    cfg.gain_main[1] = -1.0;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("gain_main"), ConfigError);

    SystemConfig bad_noise = unit_config(1, 1);
    bad_noise.noise_cbs = 0.0;
    CHECK_THROWS_WITH_AS(bad_noise.validate(), doctest::Contains("noise_cbs"), ConfigError);

    SystemConfig bad_shape = unit_config(2, 2);
    bad_shape.gain_eve[0].pop_back();
    CHECK_THROWS_AS(bad_shape.validate(), ConfigError);
}

TEST_CASE("ratio parameterization round-trips exactly") {
    MerParameterization form;
    form.theta_main = {1.0, 2.0, 0.5};
    form.theta_eve = {{1.0, 0.7}, {1.3, 1.0}, {0.9, 1.1}};
    form.mer = 10.0;
    form.ref_gain_main = 2.0;

    const SystemConfig cfg = make_system_config(form, {0.8, 1.3, 0.6}, 1.0,
                                                {1.0, 1.2}, 10.0, 1.0);
    CHECK(cfg.gain_main[1] == 4.0);
    CHECK(cfg.gain_eve[0][1] == doctest::Approx(0.7 * 0.2).epsilon(1e-15));

    const MerParameterization back = extract_mer(cfg, form.mer, form.ref_gain_main);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back.theta_main[i] == doctest::Approx(form.theta_main[i]).epsilon(1e-15));
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(back.theta_eve[i][j] ==
                  doctest::Approx(form.theta_eve[i][j]).epsilon(1e-15));
    }
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "pvqa/experiments.hpp"
#include "pvqa/io.hpp"
#include "support/dense.hpp"

using namespace pvqa;

TEST_CASE("states serialize with split real and imaginary parts") {
    auto s = prepare_state(ucc_pump_phases(0.25), {0.1, 0.0, -0.2, 0.0}, 0.9);
    json j = to_json(s);
    CHECK(j["alpha_re"].size() == 4);
    CHECK(j["alpha_im"].size() == 4);
    CHECK(j["delta"][2] == doctest::Approx(-0.2));
    CHECK(j["epsilon"] == doctest::Approx(0.9));
    CHECK(j["alpha_re"][2].get<double>() == doctest::Approx(std::cos(0.25)));
}

TEST_CASE("fringe visibility equals the indistinguishability weight") {
    auto grid = default_phase_grid(61);
    for (const char* pair : {"2-3", "1-3", "3-4"}) {
        auto ideal = heralded_interference(pair, 1.0, grid);
        REQUIRE(ideal.fit.valid);
        CHECK(std::abs(ideal.visibility - 1.0) < 1e-9);
        for (double eps : {0.993, 0.95, 0.9}) {
            auto scan = heralded_interference(pair, eps, grid);
            CHECK(std::abs(scan.visibility - eps) < 1e-6);
        }
    }
    CHECK_THROWS_AS(heralded_interference("1-2", 1.0, grid), std::invalid_argument);
}

TEST_CASE("the noiseless fringe is the expected sinusoid") {
    auto grid = default_phase_grid(41);
    for (double eps : {1.0, 0.87}) {
        auto scan = heralded_interference("2-3", eps, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double want = eps * (1.0 + std::cos(grid[i])) / 4.0 + (1.0 - eps) / 4.0;
            CHECK(std::abs(scan.normalized_cc[i] - want) < 1e-10);
        }
        // Fit residual against its own model.
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double model = scan.fit.offset +
                           scan.fit.amplitude * std::cos(grid[i] + scan.fit.phase0);
            CHECK(std::abs(scan.normalized_cc[i] - model) < 1e-10);
        }
    }
}

TEST_CASE("sampled fringes keep near-unit visibility") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        NoiseConfig cfg;
        cfg.total_counts_per_setting = 2000;
        cfg.seed = 500 + seed;
        auto scan = heralded_interference("2-3", 1.0, default_phase_grid(), cfg);
        CHECK(scan.visibility > 0.97);
        CHECK(scan.visibility <= 1.0 + 1e-9);
    }
}

TEST_CASE("visibility-to-indistinguishability inference is the identity") {
    CHECK(epsilon_from_visibility(0.993) == doctest::Approx(0.993));
}

TEST_CASE("ideal witness values equal the prepared dimension") {
    for (const auto& prep : tables::entangled_prep_settings()) {
        auto res = certified_dimension(prep.d, prep.label, 1.0);
        CHECK(std::abs(res.certified_dimension - prep.d) < 1e-9);
        CHECK(res.p1.sum() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(res.p2.sum() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(res.p1.minCoeff() >= -1e-15);
        CHECK(res.p2.minCoeff() >= -1e-15);
    }
}

TEST_CASE("witness values never improve as indistinguishability drops") {
    for (const auto& prep : tables::entangled_prep_settings()) {
        double prev = std::numeric_limits<double>::infinity();
        for (double eps : {1.0, 0.99, 0.95, 0.9}) {
            double d = certified_dimension(prep.d, prep.label, eps).certified_dimension;
            CHECK(d <= prev + 1e-12);
            prev = d;
        }
    }
}

TEST_CASE("shot noise and accidentals degrade the witness the right way") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        NoiseConfig cfg;
        cfg.total_counts_per_setting = 4000;
        cfg.car = 200.0;
        cfg.seed = seed;
        auto res = certified_dimension(3, "1-2-3", 0.97, cfg);
        CHECK(res.certified_dimension < 3.0);
        CHECK(res.certified_dimension > 2.5);
    }
}

TEST_CASE("witness settings match their explicit basis lists") {
    // Second measurement setting for the d = 4 preparation:
    // {|1>, (|2>+|3>)/sqrt2, (|2>-|3>)/sqrt2, |4>} up to projector phases.
    const auto& row = tables::dim_witness_settings()[6];
    auto e = computational_basis();
    std::array<Vec4, 4> expect = {e[0], (e[1] + e[2]) / std::sqrt(2.0),
                                  (e[1] - e[2]) / std::sqrt(2.0), e[3]};
    for (int j = 0; j < 4; ++j) {
        Vec4 got = tables::projector_ket(row.bob2[j]);
        CHECK(phase_aligned_distance(got, expect[j]) < 1e-12);
    }
}

TEST_CASE("projector fidelity scores") {
    for (int m = 1; m <= 4; ++m)
        CHECK(projector_fidelity(m) == doctest::Approx(1.0).epsilon(1e-12));

    Eigen::Matrix4d uniform = Eigen::Matrix4d::Constant(1.0 / 16.0);
    CHECK(fidelity_score(uniform, 2) == doctest::Approx(1.0 / 16.0));

    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        NoiseConfig cfg;
        cfg.total_counts_per_setting = 4000;
        cfg.car = 100.0;
        cfg.seed = seed;
        for (int m = 1; m <= 4; ++m) CHECK(projector_fidelity(m, cfg) >= 0.99);
    }
    CHECK_THROWS_AS(projector_fidelity(5), std::out_of_range);
}

TEST_CASE("energy scan and dissociation reproduce the bundled landscape") {
    std::vector<double> grid;
    for (int i = 0; i <= 60; ++i) grid.push_back(-kPi / 4.0 + (3.0 * kPi / 4.0) * i / 60.0);

    auto scan = h2_theta_scan(0.736, grid, std::nullopt);
    auto fit = fit_energy_sinusoid(scan);
    CHECK(std::abs(fit.e_min - (-1.1373)) < 5e-4);
    CHECK(std::abs(fit.theta_min - 0.11) < 0.01);

    // Repulsive region: the reference configuration sits at positive energy.
    auto repulsive = h2_theta_scan(0.1, {0.0}, std::nullopt);
    CHECK(repulsive[0].energy > 0.0);

    // Far-separation row: the fitted minimum equals the closed form from
    // three exact evaluations.
    auto far = h2_theta_scan(3.0, grid, std::nullopt);
    auto far_fit = fit_energy_sinusoid(far);
    auto e = [&](double th) {
        return evaluate_exact(compile_h2(3.0), prepare_state(ucc_pump_phases(th))).value;
    };
    double g2 = (e(kPi / 4) - e(-kPi / 4)) / 2.0;
    double g0 = (e(kPi / 4) + e(-kPi / 4)) / 2.0;
    double g1 = e(0.0) - g0;
    CHECK(std::abs(far_fit.e_min - (g0 - std::hypot(g1, g2))) < 1e-10);
}

TEST_CASE("dissociation results do not depend on the worker count") {
    std::vector<double> radii = {0.5, 0.736, 1.0, 2.0};
    auto one = h2_dissociation(radii, std::nullopt, 15, 1);
    auto two = h2_dissociation(radii, std::nullopt, 15, 2);
    REQUIRE(one.size() == two.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].e_min == two[i].e_min);
        CHECK(one[i].theta_min == two[i].theta_min);
    }
}

TEST_CASE("factoring runs decode the right primes") {
    struct Case {
        int n, p, q;
    };
    for (auto c : {Case{35, 7, 5}, Case{15, 3, 5}, Case{21, 7, 3}}) {
        auto run = run_vqf(c.n, std::nullopt, vqf_default_gd());
        CHECK(run.p == c.p);
        CHECK(run.q == c.q);
    }

    auto run35 = run_vqf(35, std::nullopt, vqf_default_gd());
    CHECK(std::norm(run35.final_alpha(3)) > 0.99);
    CHECK(run35.run.best.cost < 1.0);
}

TEST_CASE("the restricted trial state only populates admissible outcomes") {
    std::mt19937_64 g(0xabcd);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    auto obs = compile_vqf(35);
    REQUIRE(obs.groups.size() == 1);
    const auto& setting = obs.groups[0].setting;

    for (int k = 0; k < 25; ++k) {
        auto s = prepare_state(make_phase_vector(Stage::Pump, {u(g), u(g), u(g)}));
        Eigen::VectorXd p = probability_vector(s, setting);
        double admissible = 0.0;
        for (const auto& cand : vqf_candidates()) {
            int flat = (cand.n1 - 1) * 4 + (cand.n2 - 1);
            admissible += p(flat);
        }
        CHECK(admissible == doctest::Approx(1.0).epsilon(1e-12));
        for (int j = 0; j < 16; ++j) {
            bool is_admissible = false;
            for (const auto& cand : vqf_candidates())
                if (j == (cand.n1 - 1) * 4 + (cand.n2 - 1)) is_admissible = true;
            if (!is_admissible) CHECK(p(j) < 1e-12);
        }
    }
}

TEST_CASE("candidate table encodes the admissible assignments") {
    CHECK(vqf_candidates()[3].p == 7);
    CHECK(vqf_candidates()[3].q == 5);
    CHECK(std::string(vqf_candidates()[3].bits) == "1110");
    // |1110>: idler |11> = mode 4, signal |10> = mode 3.
    CHECK(vqf_candidates()[3].n1 == 4);
    CHECK(vqf_candidates()[3].n2 == 3);
}

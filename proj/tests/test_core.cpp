#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "chainlab/chain_state.hpp"
#include "chainlab/disorder.hpp"
#include "chainlab/generator.hpp"
#include "chainlab/observable.hpp"
#include "chainlab/params.hpp"
#include "support/oracles.hpp"

using namespace chainlab;

namespace {
ModelParams base_params(int n, double c = 2.0) {
    ModelParams p;
    p.n = n;
    p.c_bound = c;
    return p;
}
} // namespace

TEST_CASE("parameter validation", "[core]") {
    ModelParams p = base_params(8);
    REQUIRE_NOTHROW(p.validate());
    p.gamma = 0.0;
    REQUIRE_THROWS_AS(p.validate(), std::invalid_argument);
    p = base_params(8);
    p.n = 2;
    REQUIRE_THROWS_AS(p.validate(), std::invalid_argument);
    p = base_params(8);
    p.c_bound = 0.5;
    REQUIRE_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("disorder sampling", "[core]") {
    SECTION("degenerate bound gives the ordered chain") {
        ModelParams p = base_params(32, 1.0);
        DisorderField d = sample_disorder(p, 7);
        for (int x = 0; x < d.size(); ++x) REQUIRE(d.mass(x) == Catch::Approx(1.0).margin(1e-15));
    }

    SECTION("deterministic given the seed") {
        ModelParams p = base_params(64);
        DisorderField a = sample_disorder(p, 42);
        DisorderField b = sample_disorder(p, 42);
        REQUIRE(a.masses() == b.masses());
        DisorderField c = sample_disorder(p, 43);
        REQUIRE(a.masses() != c.masses());
    }

    SECTION("bounds hold for every sample and law") {
        for (MassLaw law : {MassLaw::Uniform, MassLaw::TwoPoint, MassLaw::LogUniform}) {
            ModelParams p = base_params(256);
            p.mass_law = law;
            DisorderField d = sample_disorder(p, 11);
            for (int x = 0; x < d.size(); ++x) {
                REQUIRE(d.mass(x) >= 1.0 / p.c_bound - 1e-12);
                REQUIRE(d.mass(x) <= p.c_bound + 1e-12);
            }
        }
    }

    SECTION("law of large numbers against the configured law") {
        ModelParams p = base_params(100000);
        DisorderField d = sample_disorder(p, 5);
        oracle::Moments m = oracle::moments(d.masses());
        double law_mean = mass_law_mean(p);
        double sigma = std::sqrt(mass_law_variance(p) / static_cast<double>(p.n));
        REQUIRE(std::abs(m.mean - law_mean) < 3.0 * sigma);
    }
}

TEST_CASE("gibbs sampling moments", "[core]") {
    SECTION("one-site energy mean and compressibility at beta = 1") {
        ModelParams p = base_params(1000);
        std::vector<double> sq;
        sq.reserve(1000000);
        for (int rep = 0; rep < 1000; ++rep) {
            ChainState s = sample_gibbs(p, 99, static_cast<std::uint64_t>(rep));
            for (double w : s.omega) sq.push_back(w * w);
        }
        oracle::Moments m = oracle::moments(sq);
        const double n_samples = static_cast<double>(sq.size());
        // mean(w^2) = 1/beta with sigma = sqrt(chi/M); var(w^2) = chi = 2/beta^2
        REQUIRE(std::abs(m.mean - 1.0) < 3.0 * std::sqrt(2.0 / n_samples));
        REQUIRE(std::abs(m.var - 2.0) < 3.0 * std::sqrt(56.0 / n_samples));
    }

    SECTION("scaling with beta") {
        ModelParams p = base_params(1000);
        p.beta = 4.0;
        std::vector<double> sq;
        for (int rep = 0; rep < 200; ++rep) {
            ChainState s = sample_gibbs(p, 7, static_cast<std::uint64_t>(rep));
            for (double w : s.omega) sq.push_back(w * w);
        }
        oracle::Moments m = oracle::moments(sq);
        double sigma = std::sqrt((2.0 / 16.0) / static_cast<double>(sq.size()));
        REQUIRE(std::abs(m.mean - 0.25) < 3.0 * sigma);
    }
}

TEST_CASE("drift field", "[core]") {
    SECTION("single-site excitation on the ordered ring") {
        ModelParams p = base_params(8, 1.0);
        DisorderField d = sample_disorder(p, 1);
        ChainState s;
        s.omega.assign(8, 0.0);
        s.omega[0] = 1.0;
        std::vector<double> f = drift_field(s, d);
        REQUIRE(f[7] == Catch::Approx(1.0));  // site -1
        REQUIRE(f[1] == Catch::Approx(-1.0)); // site +1
        for (int x = 2; x <= 6; ++x) REQUIRE(f[static_cast<std::size_t>(x)] == 0.0);
    }

    SECTION("matches the element-wise reference formula") {
        ModelParams p = base_params(33);
        DisorderField d = sample_disorder(p, 3);
        ChainState s = sample_gibbs(p, 4);
        std::vector<double> got = drift_field(s, d);
        std::vector<double> want = oracle::drift_reference(s.omega, d.masses());
        for (std::size_t i = 0; i < got.size(); ++i)
            REQUIRE(got[i] == Catch::Approx(want[i]).margin(1e-14));
    }

    SECTION("orthogonal to the configuration (skew flow conserves energy)") {
        ModelParams p = base_params(128);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            DisorderField d = sample_disorder(p, seed);
            ChainState s = sample_gibbs(p, seed + 100);
            std::vector<double> f = drift_field(s, d);
            double dot = 0.0, norm = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i) {
                dot += s.omega[i] * f[i];
                norm += s.omega[i] * s.omega[i];
            }
            REQUIRE(std::abs(dot) <= 1e-13 * norm);
        }
    }
}

TEST_CASE("bond currents", "[core]") {
    SECTION("unit configuration example") {
        ModelParams p = base_params(8, 1.0);
        p.lambda = 1.0;
        DisorderField d = sample_disorder(p, 1);
        ChainState s;
        s.omega.assign(8, 0.0);
        s.omega[3] = 1.0;
        s.omega[4] = 1.0;
        BondCurrent j = bond_current(s, d, p, 3);
        REQUIRE(j.total == Catch::Approx(2.0));
        REQUIRE(j.ham == Catch::Approx(2.0));
        REQUIRE(j.noise == Catch::Approx(0.0));
    }

    SECTION("zero configuration has zero current") {
        ModelParams p = base_params(8);
        DisorderField d = sample_disorder(p, 1);
        ChainState s;
        s.omega.assign(8, 0.0);
        for (int x = 0; x < 8; ++x) REQUIRE(bond_current(s, d, p, x).total == 0.0);
    }

    SECTION("generator action on the site energy is the current difference") {
        // L(w_x^2) evaluated through the quadratic-sector machinery
        ModelParams p = base_params(16);
        p.gamma = 0.7;
        p.lambda = 1.3;
        DisorderField d = sample_disorder(p, 21);
        ChainState s = sample_gibbs(p, 22);
        for (int x : {0, 5, 15}) {
            QuadraticObservable ex = QuadraticObservable::pair(p.n, x, x);
            QuadraticObservable lex = act_generator(ex, p);
            double lhs = lex.evaluate(d, s, p.beta);
            BondCurrent right = bond_current(s, d, p, x);
            BondCurrent left = bond_current(s, d, p, s.wrap(x - 1));
            REQUIRE(lhs == Catch::Approx(right.total - left.total).margin(1e-12));
        }
    }

    SECTION("index range is checked") {
        ModelParams p = base_params(8);
        DisorderField d = sample_disorder(p, 1);
        ChainState s = sample_gibbs(p, 2);
        REQUIRE_THROWS_AS(bond_current(s, d, p, -1), std::out_of_range);
        REQUIRE_THROWS_AS(bond_current(s, d, p, 8), std::out_of_range);
    }
}

TEST_CASE("flip and exchange events", "[core]") {
    ModelParams p = base_params(32);
    ChainState s = sample_gibbs(p, 17);

    SECTION("both are involutions") {
        ChainState t = s;
        apply_flip(t, 5);
        apply_flip(t, 5);
        REQUIRE(t.omega == s.omega);
        apply_exchange(t, 9);
        apply_exchange(t, 9);
        REQUIRE(t.omega == s.omega);
    }

    SECTION("energy is conserved bit-exactly") {
        ChainState t = s;
        double e0 = t.energy();
        for (int k = 0; k < 100; ++k) {
            apply_flip(t, (k * 7) % 32);
            apply_exchange(t, (k * 11) % 32);
        }
        REQUIRE(t.energy() == e0);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "cusumlab/change_point.hpp"

using namespace cusumlab;

TEST_CASE("change_index takes the integer part") {
    CHECK(change_index(4, 0.5) == 2);
    CHECK(change_index(10, 0.35) == 3);
    CHECK(change_index(3, 0.9) == 2);
}

TEST_CASE("change_index rejects degenerate placements") {
    CHECK_THROWS_AS(change_index(5, 0.1), DegenerateConfigError); // floor = 0
    CHECK_THROWS_AS(change_index(1, 0.5), InvalidInputError);
    CHECK_THROWS_AS(change_index(10, 0.0), InvalidInputError);
    CHECK_THROWS_AS(change_index(10, 1.0), InvalidInputError);
}

TEST_CASE("mean_vector shapes") {
    const std::vector<double> shifted =
        mean_vector(ChangePointConfig{1.0, 2.0, 0.5}, 4);
    CHECK(shifted == std::vector<double>{1.0, 1.0, 3.0, 3.0});

    const std::vector<double> flat =
        mean_vector(ChangePointConfig{1.5, 0.0, 0.5}, 4);
    CHECK(flat == std::vector<double>{1.5, 1.5, 1.5, 1.5});

    // k* = floor(3 * 0.4) = 1
    const std::vector<double> down =
        mean_vector(ChangePointConfig{0.0, -1.0, 0.4}, 3);
    CHECK(down == std::vector<double>{0.0, -1.0, -1.0});
}

TEST_CASE("mean_vector is monotone exactly when the shift is nonnegative") {
    for (double delta : {-2.0, -0.1, 0.0, 0.1, 2.0}) {
        const std::vector<double> m =
            mean_vector(ChangePointConfig{0.7, delta, 0.3}, 20);
        bool nondecreasing = true;
        for (std::size_t k = 1; k < m.size(); ++k) {
            nondecreasing = nondecreasing && m[k] >= m[k - 1];
        }
        CHECK(nondecreasing == (delta >= 0.0));
    }
}

TEST_CASE("index-dependent baseline hook") {
    const ChangePointConfig cfg{0.0, 10.0, 0.5};
    const std::vector<double> m =
        mean_vector(cfg, 4, [](int k) { return k * 0.5; });
    CHECK(m == std::vector<double>{0.5, 1.0, 11.5, 12.0});
}

TEST_CASE("generate_row adds noise to the means") {
    const ChangePointConfig cfg{1.0, 2.0, 0.5};
    const std::vector<double> zeros(4, 0.0);
    const ObservationRow quiet = generate_row(cfg, zeros);
    CHECK(quiet.values == mean_vector(cfg, 4));
    CHECK(quiet.change_index == 2);

    const std::vector<double> noise{0.1, -0.1, 0.0, 0.2};
    const ObservationRow noisy = generate_row(cfg, noise);
    CHECK(noisy.values[0] == doctest::Approx(1.1).epsilon(1e-15));
    CHECK(noisy.values[1] == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(noisy.values[2] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(noisy.values[3] == doctest::Approx(3.2).epsilon(1e-15));
}

TEST_CASE("subtracting the means recovers dyadic noise bitwise") {
    const ChangePointConfig cfg{1.0, 2.0, 0.5};
    const std::vector<double> noise{0.5, -0.25, 0.125, -4.0, 0.0, 1.75};
    const ObservationRow row = generate_row(cfg, noise);
    const std::vector<double> means = mean_vector(cfg, 6);
    for (int i = 0; i < 6; ++i) {
        CHECK(row.values[i] - means[i] == noise[i]);
    }
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(validate(ChangePointConfig{0.0, 1.0, 0.0}),
                    InvalidInputError);
    CHECK_THROWS_AS(validate(ChangePointConfig{0.0, 1.0, 1.0}),
                    InvalidInputError);
    CHECK_NOTHROW(validate(ChangePointConfig{0.0, 0.0, 0.5})); // diagnostic mode
}

// The oracles are trusted references for other suites, so they are checked
// here against closed forms only, never against the library.

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

namespace {

double cauchy_upper_tail(double t) { return 0.5 - std::atan(t) / std::acos(-1.0); }

// Student t with 2 dof has the elementary tail P(T > t) = 1/2 - t / (2 sqrt(2 + t^2)).
double t2_upper_tail(double t) { return 0.5 - t / (2.0 * std::sqrt(2.0 + t * t)); }

}  // namespace

TEST_CASE("taylor_expm matches elementary closed forms") {
    Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 3);
    CHECK((oracle::taylor_expm(zero, 0.7) - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() ==
          0.0);

    Eigen::MatrixXd swap(2, 2);
    swap << 0, 1, 1, 0;
    Eigen::MatrixXd e = oracle::taylor_expm(swap, 1.0);
    CHECK(e(0, 0) == doctest::Approx(std::cosh(1.0)).epsilon(1e-14));
    CHECK(e(0, 1) == doctest::Approx(std::sinh(1.0)).epsilon(1e-14));
    CHECK(e(1, 0) == doctest::Approx(std::sinh(1.0)).epsilon(1e-14));
    CHECK(e(1, 1) == doctest::Approx(std::cosh(1.0)).epsilon(1e-14));

    // Diagonal matrices exponentiate entrywise.
    Eigen::MatrixXd diag = Eigen::Vector3d(0.5, -1.0, 2.0).asDiagonal();
    Eigen::MatrixXd ed = oracle::taylor_expm(diag, 0.5);
    CHECK(ed(0, 0) == doctest::Approx(std::exp(0.25)).epsilon(1e-14));
    CHECK(ed(1, 1) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
    CHECK(ed(2, 2) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
}

TEST_CASE("exhaustive spanning-tree minimum on hand-checkable graphs") {
    Eigen::MatrixXd triangle(3, 3);
    triangle << 0, 1, 2, 1, 0, 3, 2, 3, 0;
    CHECK(oracle::min_spanning_weight_exhaustive(triangle) == doctest::Approx(3.0));

    Eigen::MatrixXd pair(2, 2);
    pair << 0, 7, 7, 0;
    CHECK(oracle::min_spanning_weight_exhaustive(pair) == doctest::Approx(7.0));

    // Square with cheap perimeter and expensive diagonals: best tree uses
    // three perimeter edges.
    Eigen::MatrixXd square(4, 4);
    square << 0, 1, 10, 1, 1, 0, 1, 10, 10, 1, 0, 1, 1, 10, 1, 0;
    CHECK(oracle::min_spanning_weight_exhaustive(square) == doctest::Approx(3.0));
}

TEST_CASE("random_tree_adjacency yields trees") {
    std::mt19937_64 rng(99);
    for (int n : {2, 3, 5, 9, 12}) {
        Eigen::MatrixXd a = oracle::random_tree_adjacency(n, rng);
        CHECK((a - a.transpose()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(a.sum() == doctest::Approx(2.0 * (n - 1)));  // n-1 undirected edges
        CHECK(a.diagonal().cwiseAbs().maxCoeff() == 0.0);
        // Connectivity: (I + A)^n has no zero entries for a connected graph.
        Eigen::MatrixXd reach = Eigen::MatrixXd::Identity(n, n);
        for (int k = 0; k < n; ++k) {
            reach = reach + reach * a;
        }
        CHECK(reach.minCoeff() > 0.0);
    }
}

TEST_CASE("t quadrature tail matches dof=1 and dof=2 closed forms") {
    for (double t : {0.1, 0.5, 1.0, 2.0, 4.5}) {
        CHECK(oracle::t_upper_tail(t, 1.0) == doctest::Approx(cauchy_upper_tail(t)).epsilon(1e-9));
        CHECK(oracle::t_upper_tail(t, 2.0) == doctest::Approx(t2_upper_tail(t)).epsilon(1e-9));
    }
    CHECK(oracle::t_upper_tail(0.0, 5.0) == doctest::Approx(0.5));
    CHECK(oracle::t_two_sided_p(-1.0, 2.0) ==
          doctest::Approx(2.0 * t2_upper_tail(1.0)).epsilon(1e-9));
}

TEST_CASE("naive statistics agree with hand values") {
    std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    std::vector<double> y{2.0, 4.0, 6.0, 8.0};
    CHECK(oracle::pearson_naive(x, y) == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<double> two{1.0, 3.0};
    CHECK(oracle::population_std(two) == doctest::Approx(1.0));
    std::vector<double> flat{5.0, 5.0, 5.0};
    CHECK(oracle::population_std(flat) == doctest::Approx(0.0));
}

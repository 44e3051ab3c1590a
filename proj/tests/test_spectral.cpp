#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bga/errors.hpp"
#include "bga/graph.hpp"
#include "bga/spectral.hpp"

#include "oracles.hpp"

TEST_CASE("laplacian entries") {
  const Eigen::MatrixXd L3 = bga::laplacian(bga::ring(3));
  Eigen::MatrixXd expect(3, 3);
  expect << 2, -1, -1, -1, 2, -1, -1, -1, 2;
  CHECK((L3 - expect).cwiseAbs().maxCoeff() == 0.0);

  const Eigen::MatrixXd L4 = bga::laplacian(bga::complete(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(L4(i, j) == (i == j ? 3.0 : -1.0));

  const Eigen::MatrixXd Ldb = bga::laplacian(bga::de_bruijn(2, 2));
  CHECK(Ldb(0, 0) == 1.0);
  CHECK(Ldb(0, 1) == -1.0);
  CHECK(Ldb(0, 2) == 0.0);
  CHECK(Ldb(0, 3) == 0.0);
}

TEST_CASE("laplacian structure") {
  for (const bga::Graph& g : oracles::balanced_pool()) {
    const Eigen::MatrixXd L = bga::laplacian(g);
    for (int v = 0; v < g.n; ++v) CHECK(L.row(v).sum() == 0.0);
    if (bga::is_symmetric(g)) CHECK(L.isApprox(L.transpose()));
  }
}

TEST_CASE("spectral gap closed forms") {
  for (int n : {4, 16, 64}) {
    const bga::SpectralSummary s = bga::spectral_gap(bga::complete(n));
    CHECK(std::abs(s.lambda1 - n) <= 1e-9 * n);
    CHECK(s.multiplicity_zero == 1);
  }
  for (int n : {4, 8, 32}) {
    const double expect = oracles::cycle_lambda1(n);
    CHECK(bga::spectral_gap(bga::ring(n)).lambda1 ==
          doctest::Approx(expect).epsilon(1e-9));
  }
  for (int d = 2; d <= 6; ++d)
    CHECK(bga::spectral_gap(bga::hypercube(d)).lambda1 ==
          doctest::Approx(2.0).epsilon(1e-9));
  for (int side : {3, 4, 5}) {
    const double expect = 2.0 - 2.0 * std::cos(2.0 * oracles::kPi / side);
    CHECK(bga::spectral_gap(bga::torus_lattice(2, side)).lambda1 ==
          doctest::Approx(expect).epsilon(1e-9));
  }
  // side = 3 torus gap equals 3
  CHECK(bga::spectral_gap(bga::torus_lattice(2, 3)).lambda1 ==
        doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("zero multiplicity reports components") {
  const bga::Graph two_triangles = bga::graph_from_edges(
      6, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 2}, {2, 0},
          {3, 4}, {4, 3}, {4, 5}, {5, 4}, {3, 5}, {5, 3}});
  const bga::SpectralSummary s = bga::spectral_gap(two_triangles);
  CHECK(s.multiplicity_zero == 2);
  CHECK(s.lambda1 == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("spectral bounds and errors") {
  for (const bga::Graph& g : oracles::balanced_pool()) {
    if (!bga::is_symmetric(g)) {
      CHECK_THROWS_AS(bga::spectral_gap(g), bga::UnsupportedGraph);
      continue;
    }
    const bga::SpectralSummary s = bga::spectral_gap(g);
    const int deg_max = bga::degree_stats(g).deg_max;
    CHECK(s.lambda1 > 0.0);
    CHECK(s.lambda1 <= s.lambda_max);
    CHECK(s.lambda_max <= 2.0 * deg_max + 1e-9);
  }
}

TEST_CASE("rate bound") {
  CHECK(bga::rate_bound(bga::complete(16), 0.5) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(bga::rate_bound(bga::ring(4), 0.5) ==
        doctest::Approx(0.75).epsilon(1e-12));
  CHECK(bga::rate_bound(bga::ring(8), 1e-9) > 1.0 - 1e-6);  // q -> 0: no contraction

  for (double q : {0.2, 0.5, 0.8}) {
    const double r = bga::rate_bound(bga::hypercube(4), q);
    CHECK(r > 0.0);
    CHECK(r < 1.0);
  }

  CHECK_THROWS_AS(bga::rate_bound(bga::ring(8), 0.0), bga::InvalidParameter);
  CHECK_THROWS_AS(bga::rate_bound(bga::ring(8), 1.0), bga::InvalidParameter);
  CHECK_THROWS_AS(bga::rate_bound(bga::ring(8), -0.3), bga::InvalidParameter);
  CHECK_THROWS_AS(bga::rate_bound(bga::de_bruijn(2, 3), 0.5),
                  bga::UnsupportedGraph);
}

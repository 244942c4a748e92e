#include <cmath>
#include <random>

#include "doctest.h"
#include "slbm/errors.hpp"
#include "slbm/lattice.hpp"

using namespace slbm;

namespace {

const LatticeKind kinds[] = {LatticeKind::D1Q3, LatticeKind::D2Q5, LatticeKind::D2Q9};

DistributionField random_field(const LatticeDescriptor& lat, int nx, int ny, unsigned seed) {
  DistributionField f(lat, nx, ny);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& v : f.raw()) v = dist(rng);
  return f;
}

} // namespace

TEST_CASE("stencil weight identities") {
  for (auto kind : kinds) {
    const auto lat = make_lattice(kind);
    CAPTURE(static_cast<int>(kind));
    REQUIRE(lat.q == static_cast<int>(lat.velocities.size()));
    REQUIRE(lat.q == static_cast<int>(lat.weights.size()));

    double wsum = 0;
    double e1[2] = {0, 0};
    double e2[4] = {0, 0, 0, 0};
    for (int i = 0; i < lat.q; ++i) {
      wsum += lat.weights[i];
      for (int a = 0; a < 2; ++a) e1[a] += lat.weights[i] * lat.velocities[i][a];
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          e2[2 * a + b] += lat.weights[i] * lat.velocities[i][a] * lat.velocities[i][b];
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(e1[0]) < 1e-15);
    CHECK(std::abs(e1[1]) < 1e-15);
    for (int a = 0; a < lat.dim; ++a)
      for (int b = 0; b < lat.dim; ++b)
        CHECK(e2[2 * a + b] == doctest::Approx(a == b ? 1.0 / 3.0 : 0.0).epsilon(1e-15));
  }
}

TEST_CASE("opposite map is an involution matching -e") {
  for (auto kind : kinds) {
    const auto lat = make_lattice(kind);
    for (int i = 0; i < lat.q; ++i) {
      const int o = lat.opposite[i];
      CHECK(lat.opposite[o] == i);
      CHECK(lat.velocities[o][0] == -lat.velocities[i][0]);
      CHECK(lat.velocities[o][1] == -lat.velocities[i][1]);
    }
  }
}

TEST_CASE("stencil weights take their isotropy-fixed values") {
  const auto d1 = make_lattice(LatticeKind::D1Q3);
  CHECK(d1.weights[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-16));
  CHECK(d1.weights[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-16));
  CHECK(d1.weights[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-16));

  const auto d5 = make_lattice(LatticeKind::D2Q5);
  CHECK(d5.weights[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
  for (int i = 1; i < 5; ++i) CHECK(d5.weights[i] == doctest::Approx(1.0 / 6.0).epsilon(1e-16));

  const auto d9 = make_lattice(LatticeKind::D2Q9);
  CHECK(d9.weights[0] == doctest::Approx(4.0 / 9.0).epsilon(1e-16));
  for (int i = 1; i < 5; ++i) CHECK(d9.weights[i] == doctest::Approx(1.0 / 9.0).epsilon(1e-16));
  for (int i = 5; i < 9; ++i) CHECK(d9.weights[i] == doctest::Approx(1.0 / 36.0).epsilon(1e-16));
}

TEST_CASE("moments of the weight field") {
  for (auto kind : kinds) {
    const auto lat = make_lattice(kind);
    const int nx = lat.dim == 1 ? 7 : 5;
    const int ny = lat.dim == 1 ? 1 : 4;
    DistributionField f(lat, nx, ny);
    for (int i = 0; i < lat.q; ++i)
      for (long j = 0; j < f.nodes(); ++j) f(i, j) = lat.weights[i];

    const auto m0 = moment(f, 0);
    const auto m1 = moment(f, 1);
    const auto m2 = moment(f, 2);
    for (long j = 0; j < f.nodes(); ++j) {
      CHECK(m0.at(0, j) == doctest::Approx(1.0).epsilon(1e-15));
      for (int c = 0; c < m1.components; ++c) CHECK(std::abs(m1.at(c, j)) < 1e-15);
      for (int a = 0; a < lat.dim; ++a)
        for (int b = 0; b < lat.dim; ++b)
          CHECK(m2.at(a * lat.dim + b, j) ==
                doctest::Approx(a == b ? 1.0 / 3.0 : 0.0).epsilon(1e-15));
    }
  }
}

TEST_CASE("moments of the zero field vanish") {
  const auto lat = make_lattice(LatticeKind::D2Q9);
  DistributionField f(lat, 4, 4);
  for (int k = 0; k <= 2; ++k) {
    const auto m = moment(f, k);
    for (double v : m.data) CHECK(v == 0.0);
  }
}

TEST_CASE("single-population moments on d2q5") {
  const auto lat = make_lattice(LatticeKind::D2Q5);
  DistributionField f(lat, 3, 3);
  const long node = f.node_index(1, 1);
  f(1, node) = 1.0; // e_1 = (1,0)

  const auto m1 = moment(f, 1);
  const auto m2 = moment(f, 2);
  CHECK(m1.at(0, node) == 1.0);
  CHECK(m1.at(1, node) == 0.0);
  CHECK(m2.at(0, node) == 1.0); // xx
  CHECK(m2.at(1, node) == 0.0); // xy
  CHECK(m2.at(2, node) == 0.0); // yx
  CHECK(m2.at(3, node) == 0.0); // yy
}

TEST_CASE("moment rejects unsupported order") {
  const auto lat = make_lattice(LatticeKind::D1Q3);
  DistributionField f(lat, 4);
  CHECK_THROWS_AS((void)moment(f, 3), Error);
}

TEST_CASE("moment is linear") {
  for (auto kind : kinds) {
    const auto lat = make_lattice(kind);
    const int nx = 6;
    const int ny = lat.dim == 1 ? 1 : 5;
    const auto f = random_field(lat, nx, ny, 11);
    const auto g = random_field(lat, nx, ny, 23);
    const double a = 0.37, b = -1.25;

    DistributionField h(lat, nx, ny);
    for (int i = 0; i < lat.q; ++i)
      for (long j = 0; j < h.nodes(); ++j) h(i, j) = a * f(i, j) + b * g(i, j);

    for (int k = 0; k <= 2; ++k) {
      const auto mf = moment(f, k);
      const auto mg = moment(g, k);
      const auto mh = moment(h, k);
      for (size_t v = 0; v < mh.data.size(); ++v)
        CHECK(mh.data[v] == doctest::Approx(a * mf.data[v] + b * mg.data[v]).epsilon(1e-13));
    }
  }
}

TEST_CASE("periodic streaming followed by reverse streaming is the identity") {
  for (auto kind : kinds) {
    const auto lat = make_lattice(kind);
    const int nx = 6;
    const int ny = lat.dim == 1 ? 1 : 4;
    const auto f = random_field(lat, nx, ny, 5);
    DistributionField fwd(lat, nx, ny), back(lat, nx, ny);
    stream(f, fwd, {AxisWrap::Periodic, AxisWrap::Periodic});
    stream(fwd, back, {AxisWrap::Periodic, AxisWrap::Periodic}, /*reverse=*/true);
    for (int i = 0; i < lat.q; ++i)
      for (long j = 0; j < f.nodes(); ++j) CHECK(back(i, j) == f(i, j)); // bit-for-bit
  }
}

TEST_CASE("open-axis streaming leaves NaN exactly in the inflow slots") {
  const auto lat = make_lattice(LatticeKind::D1Q3);
  DistributionField f(lat, 5);
  for (int i = 0; i < lat.q; ++i)
    for (long j = 0; j < 5; ++j) f(i, j) = 10.0 * i + j;
  DistributionField q(lat, 5);
  stream(f, q, {AxisWrap::Open, AxisWrap::Open});

  for (long j = 0; j < 5; ++j) CHECK(q(0, j) == f(0, j));
  CHECK(std::isnan(q(1, 0))); // e=+1 pulls from the left of the grid
  for (long j = 1; j < 5; ++j) CHECK(q(1, j) == f(1, j - 1));
  CHECK(std::isnan(q(2, 4))); // e=-1 pulls from the right of the grid
  for (long j = 0; j < 4; ++j) CHECK(q(2, j) == f(2, j + 1));
  CHECK_FALSE(q.all_finite());
}

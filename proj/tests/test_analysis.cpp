#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tipi/analysis/behavior.hpp"
#include "tipi/analysis/cluster.hpp"
#include "tipi/analysis/pca.hpp"
#include "tipi/analysis/potential.hpp"

using namespace tipi;
using namespace tipi::analysis;

TEST_SUITE_BEGIN("analysis");

TEST_CASE("hysteresis_potential: value and symmetry") {
  CHECK(hysteresis_potential(0.0, 1.7, 0.3) == 0.0);
  for (double z = 0.1; z < 3.0; z += 0.3)
    CHECK(std::abs(hysteresis_potential(z, 1.2, 0.0) -
                   hysteresis_potential(-z, 1.2, 0.0)) < 1e-12);
}

TEST_CASE("hysteresis_potential: -dU/dz equals the map increment") {
  // frozen reference: 1.2*tanh(1) - 1
  const double fd = -oracles::central_diff(
      [](double z) { return hysteresis_potential(z, 1.2, 0.0); }, 1.0, 1e-6);
  CHECK(fd == doctest::Approx(-0.086087012853082179).epsilon(1e-8));

  GaussianRng rng(61);
  for (int i = 0; i < 20; ++i) {
    const double z = rng.uniform(-2.5, 2.5);
    const double c = rng.uniform(0.5, 2.0);
    const double h = rng.uniform(-0.5, 0.5);
    const double drift = c * std::tanh(z) + h - z;
    const double fd2 = -oracles::central_diff(
        [&](double zz) { return hysteresis_potential(zz, c, h); }, z, 1e-6);
    CHECK(std::abs(fd2 - drift) < 1e-8);
  }
}

TEST_CASE("saddle_node_threshold: frozen values and the C->1 limit") {
  CHECK(saddle_node_threshold(1.2) ==
        doctest::Approx(0.056390585311353048).epsilon(1e-12));
  CHECK(saddle_node_threshold(2.0) ==
        doctest::Approx(0.53283997535355199).epsilon(1e-12));
  CHECK(saddle_node_threshold(1.0001) < 1e-6);
  CHECK_THROWS_AS(saddle_node_threshold(1.0), ContractError);
  CHECK_THROWS_AS(saddle_node_threshold(0.7), ContractError);
}

TEST_CASE("saddle_node_threshold agrees with the fixed-point-count scan") {
  for (double c : {1.2, 1.5, 2.0}) {
    const double scanned = oracles::saddle_node_scan(c);
    CHECK(std::abs(saddle_node_threshold(c) - scanned) < 1e-4);
  }
}

TEST_CASE("effective_dimension: rank-1 data needs at most one component") {
  GaussianRng rng(62);
  const VectorXd dir = rng.gaussian_vector(5).normalized();
  MatrixXd chunk(40, 5);
  for (int i = 0; i < 40; ++i) chunk.row(i) = rng.gaussian() * dir.transpose();
  CHECK(effective_dimension(chunk) <= 1.0 + 1e-9);
}

TEST_CASE("effective_dimension: isotropic noise approaches 0.95 n") {
  GaussianRng rng(63);
  const int n = 17;
  MatrixXd chunk(6000, n);
  for (int i = 0; i < chunk.rows(); ++i)
    chunk.row(i) = rng.gaussian_vector(n).transpose();
  const double dim = effective_dimension(chunk);
  CHECK(std::abs(dim - 16.15) < 0.3);
}

TEST_CASE("effective_dimension: conventions and errors") {
  CHECK(effective_dimension(MatrixXd::Constant(10, 3, 0.7)) == 0.0);
  CHECK_THROWS_AS(effective_dimension(MatrixXd::Zero(1, 3)), ContractError);
}

TEST_CASE("effective_dimension: invariant under rotation and scaling") {
  GaussianRng rng(64);
  MatrixXd chunk(200, 4);
  for (int i = 0; i < chunk.rows(); ++i) {
    const double t = 0.1 * i;
    chunk.row(i) << std::sin(t), std::cos(1.7 * t), 0.3 * std::sin(2.9 * t),
        rng.gaussian() * 0.1;
  }
  const double base = effective_dimension(chunk);
  const MatrixXd q = oracles::random_orthogonal(rng, 4);
  CHECK(std::abs(effective_dimension(chunk * q) - base) < 1e-9);
  CHECK(std::abs(effective_dimension(3.7 * chunk) - base) < 1e-9);
}

TEST_CASE("chunk_overlap: identical, orthogonal and rotated chunks") {
  GaussianRng rng(65);
  const int n = 12, rows = 80;
  MatrixXd a = MatrixXd::Zero(rows, n), b = MatrixXd::Zero(rows, n);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < 6; ++j) a(i, j) = rng.gaussian();
    for (int j = 6; j < 12; ++j) b(i, j) = rng.gaussian();
  }
  CHECK(chunk_overlap(a, a) <= 1e-12);
  CHECK(chunk_overlap(a, b) == doctest::Approx(1.0).epsilon(1e-12));

  MatrixXd c = a + 0.3 * b; // full-rank-ish second chunk
  const double base = chunk_overlap(a, c);
  const MatrixXd q = oracles::random_orthogonal(rng, n);
  CHECK(std::abs(chunk_overlap(a * q, c * q) - base) < 1e-10);
}

TEST_CASE("chunk_overlap: exactly symmetric") {
  GaussianRng rng(66);
  const MatrixXd a = oracles::random_matrix(rng, 30, 7);
  const MatrixXd b = oracles::random_matrix(rng, 30, 7);
  CHECK(chunk_overlap(a, b) == chunk_overlap(b, a));
}

TEST_CASE("param_distance: sign-blind squared norm") {
  GaussianRng rng(67);
  const MatrixXd c1 = oracles::random_matrix(rng, 3, 4);
  CHECK(param_distance(c1, c1) == 0.0);
  CHECK(param_distance(c1, -c1) == 0.0);

  MatrixXd a(1, 2), b(1, 2);
  a << 1.0, 0.0;
  b << 0.0, 1.0;
  CHECK(param_distance(a, b) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(param_distance(a, MatrixXd::Zero(2, 2)), ContractError);
}

TEST_CASE("hierarchical_cluster: two separated groups merge last") {
  GaussianRng rng(68);
  // 6 points, two tight groups far apart
  std::vector<VectorXd> pts;
  for (int i = 0; i < 3; ++i)
    pts.push_back(VectorXd::Constant(2, 0.0) + 0.01 * rng.gaussian_vector(2));
  for (int i = 0; i < 3; ++i)
    pts.push_back(VectorXd::Constant(2, 10.0) + 0.01 * rng.gaussian_vector(2));
  MatrixXd d = MatrixXd::Zero(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (i != j) d(i, j) = (pts[i] - pts[j]).norm();
  const Dendrogram dg = hierarchical_cluster(d);
  const auto two = dg.cut(2);
  CHECK(same_partition(two, {0, 0, 0, 1, 1, 1}));
  // final merge joins the two groups at roughly the inter-group distance
  CHECK(dg.merges.back().height > 9.0);
}

TEST_CASE("hierarchical_cluster: singleton input has no merges") {
  const Dendrogram dg = hierarchical_cluster(MatrixXd::Zero(1, 1));
  CHECK(dg.merges.empty());
  CHECK(dg.cut(1) == std::vector<int>{0});
}

TEST_CASE("hierarchical_cluster: hand-worked average-linkage heights") {
  // points on a line at 0, 1, 5, 7
  const std::vector<double> pts{0.0, 1.0, 5.0, 7.0};
  MatrixXd d(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d(i, j) = std::abs(pts[i] - pts[j]);
  const Dendrogram dg = hierarchical_cluster(d);
  REQUIRE(dg.merges.size() == 3);
  CHECK(dg.merges[0].left == 0);
  CHECK(dg.merges[0].right == 1);
  CHECK(dg.merges[0].height == doctest::Approx(1.0));
  CHECK(dg.merges[1].left == 2);
  CHECK(dg.merges[1].right == 3);
  CHECK(dg.merges[1].height == doctest::Approx(2.0));
  // average of {5,7,4,6}
  CHECK(dg.merges[2].height == doctest::Approx(5.5));
}

TEST_CASE("hierarchical_cluster: merge heights are non-decreasing (average "
          "linkage)") {
  GaussianRng rng(69);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 8;
    std::vector<VectorXd> pts;
    for (int i = 0; i < n; ++i) pts.push_back(rng.gaussian_vector(3));
    MatrixXd d = MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) d(i, j) = (pts[i] - pts[j]).norm();
    const Dendrogram dg = hierarchical_cluster(d);
    for (std::size_t k = 1; k < dg.merges.size(); ++k)
      CHECK(dg.merges[k].height >= dg.merges[k - 1].height - 1e-12);
  }
}

TEST_CASE("hierarchical_cluster: asymmetric input is rejected") {
  MatrixXd d = MatrixXd::Zero(3, 3);
  d(0, 1) = 1.0; // missing mirror entry
  CHECK_THROWS_AS(hierarchical_cluster(d), ContractError);
}

TEST_CASE("dendrogram: newick string is parenthesized with heights") {
  MatrixXd d(3, 3);
  d << 0, 1, 4, 1, 0, 4.5, 4, 4.5, 0;
  const Dendrogram dg =
      hierarchical_cluster(d, Linkage::average, {"a", "b", "c"});
  CHECK(dg.to_newick() == "(c,(a,b):1):4.25;");
}

TEST_CASE("dimension_curve: a single-frequency signal needs ~2 components") {
  const int rows = 2400, n = 6;
  MatrixXd series(rows, n);
  for (int t = 0; t < rows; ++t)
    for (int j = 0; j < n; ++j)
      series(t, j) = std::sin(2.0 * M_PI * t / 120.0 - 0.9 * j);
  const auto curve = dimension_curve(series, {120, 240, 600});
  for (const auto& p : curve) {
    CHECK(p.mean_dimension > 1.5);
    CHECK(p.mean_dimension < 2.1);
  }
}

TEST_CASE("dimension_curve: insufficient data is an error") {
  const MatrixXd series = MatrixXd::Zero(100, 3);
  CHECK_THROWS_AS(dimension_curve(series, {50}), ContractError);
}

TEST_CASE("BehaviorLog: arity checks and prefixed column extraction") {
  BehaviorLog log({"t", "s_0", "s_1", "tipi"});
  log.append({0.0, 1.0, 2.0, 0.5});
  log.append({1.0, 3.0, 4.0, 0.6});
  CHECK_THROWS_AS(log.append({1.0, 2.0}), ContractError);
  const MatrixXd s = log.columns_with_prefix("s");
  CHECK(s.rows() == 2);
  CHECK(s.cols() == 2);
  CHECK(s(1, 1) == 4.0);
  CHECK(log.column("tipi")[0] == 0.5);
  CHECK_THROWS_AS(log.column("nope"), ContractError);
}

TEST_SUITE_END();

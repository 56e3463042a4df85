#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "alns/dense.hpp"
#include "alns/direct.hpp"
#include "alns/errors.hpp"
#include "alns/krylov.hpp"
#include "alns/sparse.hpp"

using namespace alns;

namespace {

CsrMatrix dense_to_csr(const Eigen::MatrixXd& a) {
  std::vector<std::vector<int>> cols(a.rows());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      if (a(r, c) != 0.0) cols[r].push_back(c);
  CsrMatrix m = CsrMatrix::from_pattern(static_cast<int>(a.rows()), static_cast<int>(a.cols()), cols);
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      if (a(r, c) != 0.0) m.set(r, c, a(r, c));
  return m;
}

Eigen::MatrixXd random_matrix(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = dist(rng);
  return a;
}

Eigen::VectorXd random_vector(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

}  // namespace

TEST_CASE("csr matvec matches dense on random instances") {
  for (unsigned seed : {1u, 2u, 3u}) {
    Eigen::MatrixXd a = random_matrix(23, seed);
    // sparsify
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j)
        if (std::abs(a(i, j)) < 0.5) a(i, j) = 0.0;
    CsrMatrix m = dense_to_csr(a);
    const Eigen::VectorXd x = random_vector(23, seed + 10);
    CHECK((m.apply(x) - a * x).norm() < 1e-13);
    CHECK((m.apply_transpose(x) - a.transpose() * x).norm() < 1e-13);
  }
}

TEST_CASE("csr symmetric elimination") {
  Eigen::MatrixXd a = random_matrix(6, 7);
  CsrMatrix m = dense_to_csr(a);
  m.eliminate_symmetric({1, 4});
  const Eigen::MatrixXd d = m.to_dense();
  for (int j = 0; j < 6; ++j) {
    CHECK(d(1, j) == (j == 1 ? 1.0 : 0.0));
    CHECK(d(j, 4) == (j == 4 ? 1.0 : 0.0));
  }
  CHECK(d(0, 2) == a(0, 2));
}

TEST_CASE("dense factor reconstructs P A = L U") {
  for (int n : {1, 5, 20}) {
    const Eigen::MatrixXd a = random_matrix(n, 100 + n) + 3.0 * Eigen::MatrixXd::Identity(n, n);
    DenseFactor f(a);
    REQUIRE(!f.singular());
    CHECK((f.reconstruct() - a).norm() <= 1e-10 * a.norm());
    const Eigen::VectorXd b = random_vector(n, 5);
    CHECK((a * f.solve(b) - b).norm() <= 1e-10 * b.norm());
  }
}

TEST_CASE("dense factor flags singular matrices") {
  Eigen::MatrixXd a(3, 3);
  a << 1, 2, 3, 2, 4, 6, 0, 1, 1;  // row 2 = 2 x row 1
  DenseFactor f(a);
  CHECK(f.singular());
  CHECK_THROWS_AS(f.solve(Eigen::VectorXd::Ones(3)), SingularMatrixError);
}

TEST_CASE("gmres: identity operator converges in one iteration") {
  const Eigen::VectorXd b = random_vector(17, 3);
  KrylovConfig cfg;
  LinearOp op = [](const Eigen::VectorXd& x) { return x; };
  const KrylovResult r = gmres(op, nullptr, b, Eigen::VectorXd::Zero(17), cfg);
  CHECK(r.converged);
  CHECK(r.iterations == 1);
  CHECK((r.x - b).norm() < 1e-12);
}

TEST_CASE("gmres: zero rhs returns zero in zero iterations") {
  KrylovConfig cfg;
  LinearOp op = [](const Eigen::VectorXd& x) { return x; };
  const KrylovResult r = gmres(op, nullptr, Eigen::VectorXd::Zero(9), Eigen::VectorXd::Zero(9), cfg);
  CHECK(r.converged);
  CHECK(r.iterations == 0);
  CHECK(r.x.norm() == 0.0);
}

TEST_CASE("gmres: spd tridiagonal matches dense solve") {
  const int n = 10;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = 2.0;
    if (i) a(i, i - 1) = a(i - 1, i) = -1.0;
  }
  CsrMatrix m = dense_to_csr(a);
  const Eigen::VectorXd b = random_vector(n, 11);
  KrylovConfig cfg;
  cfg.rtol = 1e-12;
  cfg.atol = 0;
  LinearOp op = [&](const Eigen::VectorXd& x) { return m.apply(x); };
  const KrylovResult r = gmres(op, nullptr, b, Eigen::VectorXd::Zero(n), cfg);
  CHECK(r.converged);
  CHECK(r.iterations <= 10);
  CHECK((r.x - a.lu().solve(b)).norm() < 1e-10 * b.norm());
}

TEST_CASE("gmres: exact-inverse preconditioner converges in one iteration") {
  const Eigen::MatrixXd a = random_matrix(12, 21) + 4.0 * Eigen::MatrixXd::Identity(12, 12);
  const Eigen::MatrixXd ainv = a.inverse();
  KrylovConfig cfg;
  cfg.rtol = 1e-8;
  LinearOp op = [&](const Eigen::VectorXd& x) { return Eigen::VectorXd(a * x); };
  LinearOp prec = [&](const Eigen::VectorXd& x) { return Eigen::VectorXd(ainv * x); };
  const Eigen::VectorXd b = random_vector(12, 9);
  const KrylovResult r = gmres(op, &prec, b, Eigen::VectorXd::Zero(12), cfg);
  CHECK(r.converged);
  CHECK(r.iterations == 1);
}

TEST_CASE("gmres: residual history is non-increasing within a cycle") {
  const Eigen::MatrixXd a = random_matrix(30, 4) + 6.0 * Eigen::MatrixXd::Identity(30, 30);
  KrylovConfig cfg;
  cfg.rtol = 1e-10;
  cfg.restart = 100;
  LinearOp op = [&](const Eigen::VectorXd& x) { return Eigen::VectorXd(a * x); };
  const KrylovResult r = gmres(op, nullptr, random_vector(30, 6), Eigen::VectorXd::Zero(30), cfg);
  for (std::size_t i = 1; i < r.residual_history.size(); ++i)
    CHECK(r.residual_history[i] <= r.residual_history[i - 1] * (1 + 1e-12));
}

TEST_CASE("flexible gmres with an iteration-varying preconditioner still reduces the residual") {
  const Eigen::MatrixXd a = random_matrix(25, 8) + 5.0 * Eigen::MatrixXd::Identity(25, 25);
  int call = 0;
  KrylovConfig cfg;
  cfg.rtol = 1e-10;
  cfg.flexible = true;
  LinearOp op = [&](const Eigen::VectorXd& x) { return Eigen::VectorXd(a * x); };
  LinearOp prec = [&](const Eigen::VectorXd& x) {
    ++call;
    return Eigen::VectorXd(x / (1.0 + 0.3 * (call % 4)));  // varies per application
  };
  const KrylovResult r = gmres(op, &prec, random_vector(25, 2), Eigen::VectorXd::Zero(25), cfg);
  CHECK(r.converged);
  for (std::size_t i = 1; i < r.residual_history.size(); ++i)
    CHECK(r.residual_history[i] <= r.residual_history[i - 1] * (1 + 1e-12));
}

TEST_CASE("gmres: fixed-work mode runs exactly k iterations") {
  const Eigen::MatrixXd a = random_matrix(40, 5) + 8.0 * Eigen::MatrixXd::Identity(40, 40);
  KrylovConfig cfg;
  cfg.max_iterations = 4;
  cfg.restart = 4;
  cfg.atol = cfg.rtol = 0.0;
  LinearOp op = [&](const Eigen::VectorXd& x) { return Eigen::VectorXd(a * x); };
  const KrylovResult r = gmres(op, nullptr, random_vector(40, 13), Eigen::VectorXd::Zero(40), cfg);
  CHECK(r.iterations == 4);
}

TEST_CASE("gmres: bit-identical across repeated runs") {
  const Eigen::MatrixXd a = random_matrix(20, 14) + 5.0 * Eigen::MatrixXd::Identity(20, 20);
  const Eigen::VectorXd b = random_vector(20, 15);
  KrylovConfig cfg;
  cfg.rtol = 1e-9;
  LinearOp op = [&](const Eigen::VectorXd& x) { return Eigen::VectorXd(a * x); };
  const KrylovResult r1 = gmres(op, nullptr, b, Eigen::VectorXd::Zero(20), cfg);
  const KrylovResult r2 = gmres(op, nullptr, b, Eigen::VectorXd::Zero(20), cfg);
  REQUIRE(r1.x.size() == r2.x.size());
  for (int i = 0; i < r1.x.size(); ++i) CHECK(r1.x[i] == r2.x[i]);
}

TEST_CASE("gmres: nullspace projection keeps the iterate mean-free") {
  // operator acting on the complement of constants
  const int n = 12;
  Eigen::MatrixXd a = random_matrix(n, 31) + 5.0 * Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd pi = Eigen::MatrixXd::Identity(n, n) -
                       Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  a = pi * a * pi;
  MeanProjector proj;
  proj.offset = 0;
  proj.weights = Eigen::VectorXd::Ones(n);
  KrylovConfig cfg;
  cfg.rtol = 1e-10;
  cfg.nullspace = &proj;
  Eigen::VectorXd b = pi * random_vector(n, 44);
  LinearOp op = [&](const Eigen::VectorXd& x) { return Eigen::VectorXd(a * x); };
  const KrylovResult r = gmres(op, nullptr, b, Eigen::VectorXd::Zero(n), cfg);
  CHECK(r.converged);
  CHECK(std::abs(r.x.sum()) < 1e-10);
}

TEST_CASE("sparse lu: diagonal and laplacian solves") {
  {
    Eigen::MatrixXd d = Eigen::VectorXd::LinSpaced(6, 1.0, 6.0).asDiagonal();
    SparseLu lu;
    lu.factorize(dense_to_csr(d));
    const Eigen::VectorXd b = random_vector(6, 3);
    const Eigen::VectorXd x = lu.solve(b);
    for (int i = 0; i < 6; ++i) CHECK(x[i] == doctest::Approx(b[i] / (i + 1.0)).epsilon(1e-14));
  }
  {
    // 2D five-point laplacian on a 5x5 grid
    const int m = 5, n = m * m;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const int k = i * m + j;
        a(k, k) = 4;
        if (i) a(k, k - m) = -1;
        if (i + 1 < m) a(k, k + m) = -1;
        if (j) a(k, k - 1) = -1;
        if (j + 1 < m) a(k, k + 1) = -1;
      }
    SparseLu lu;
    lu.factorize(dense_to_csr(a));
    const Eigen::VectorXd b = random_vector(n, 8);
    CHECK((lu.solve(b) - a.lu().solve(b)).norm() < 1e-12 * b.norm());
  }
}

TEST_CASE("sparse lu: duplicate row raises a singularity error") {
  Eigen::MatrixXd a(3, 3);
  a << 1, 2, 0, 1, 2, 0, 0, 1, 3;
  SparseLu lu;
  CHECK_THROWS_AS(lu.factorize(dense_to_csr(a)), SingularMatrixError);
}

TEST_CASE("matrix market export writes a parsable header") {
  Eigen::MatrixXd a(2, 2);
  a << 1.5, 0, 0, -2.5;
  write_matrix_market(dense_to_csr(a), "/tmp/alns_test_mm.mtx");
  const std::string text = [] {
    FILE* f = std::fopen("/tmp/alns_test_mm.mtx", "r");
    REQUIRE(f != nullptr);
    char buf[256];
    std::string out;
    while (std::fgets(buf, sizeof buf, f)) out += buf;
    std::fclose(f);
    return out;
  }();
  CHECK(text.find("MatrixMarket") != std::string::npos);
  CHECK(text.find("2 2 2") != std::string::npos);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "deco/denote.hpp"
#include "deco/domains/linalg.hpp"
#include "deco/incrementalize.hpp"
#include "deco/oracle/gen.hpp"
#include "support.hpp"

using namespace deco;
using namespace deco::test;

namespace {

using Rng = std::mt19937_64;
using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd random_matrix(Rng& r, Eigen::Index n, Eigen::Index m) {
  std::uniform_real_distribution<double> u(-1, 1);
  MatrixXd a(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) a(i, j) = u(r);
  }
  return a;
}

VectorXd random_vector(Rng& r, Eigen::Index n) { return random_matrix(r, n, 1).col(0); }

Value from_vector(const VectorXd& v) {
  return vec(std::vector<double>(v.data(), v.data() + v.size()));
}

Value from_matrix(const MatrixXd& a) {
  std::vector<std::vector<double>> rows(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) rows[i].push_back(a(i, j));
  }
  return mat(rows);
}

VectorXd to_vector(const Value& v, Eigen::Index n) {
  VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = at(v, i);
  return out;
}

MatrixXd to_matrix(const Value& v, Eigen::Index n, Eigen::Index m) {
  MatrixXd out(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Value* row = v.find(Index(static_cast<std::int64_t>(i)));
    for (Eigen::Index j = 0; j < m; ++j) out(i, j) = row ? at(*row, j) : 0.0;
  }
  return out;
}

bool close(const MatrixXd& a, const MatrixXd& b) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      double s = std::max({1.0, std::abs(a(i, j)), std::abs(b(i, j))});
      if (std::abs(a(i, j) - b(i, j)) > 1e-9 * s) return false;
    }
  }
  return true;
}

Eigen::Index dim(Rng& r) { return std::uniform_int_distribution<Eigen::Index>(1, 8)(r); }

}  // namespace

TEST_CASE("vector and matrix programs match Eigen") {
  auto reg = register_linalg();
  Type real = reg->parse_type("real");
  Rng rng(51);
  for (int k = 0; k < 60; ++k) {
    Eigen::Index n = dim(rng), m = dim(rng), p = dim(rng);
    Type vn = real_array(*reg, n), mnm = real_matrix(*reg, n, m);
    VectorXd x = random_vector(rng, n), y = random_vector(rng, n);
    MatrixXd a = random_matrix(rng, n, m), b = random_matrix(rng, n, m);
    MatrixXd c = random_matrix(rng, m, p);
    VectorXd v = random_vector(rng, m);
    double s = random_vector(rng, 1)(0);
    Value xv = from_vector(x), yv = from_vector(y);

    auto run = [&](const std::string& name, const Type& arg, const Value& in) {
      return denote(build_program(*reg, name, arg), in);
    };
    CHECK(close(to_vector(run("vadd", Type::product(vn, vn), Value::pair(xv, yv)), n), x + y));
    CHECK(close(to_vector(run("hadamard", Type::product(vn, vn), Value::pair(xv, yv)), n),
                x.cwiseProduct(y)));
    CHECK(close(MatrixXd::Constant(1, 1, run("dot", Type::product(vn, vn), Value::pair(xv, yv))
                                             .as_scalar()
                                             .as_real()),
                MatrixXd::Constant(1, 1, x.dot(y))));
    CHECK(close(to_vector(run("svmul", Type::product(real, vn), Value::pair(Value::real(s), xv)),
                          n),
                s * x));
    CHECK(close(to_matrix(run("madd", Type::product(mnm, mnm),
                              Value::pair(from_matrix(a), from_matrix(b))),
                          n, m),
                a + b));
    CHECK(close(to_vector(run("mvmul", Type::product(mnm, real_array(*reg, m)),
                              Value::pair(from_matrix(a), from_vector(v))),
                          n),
                a * v));
    CHECK(close(to_matrix(run("mmmul", Type::product(mnm, real_matrix(*reg, m, p)),
                              Value::pair(from_matrix(a), from_matrix(c))),
                          n, p),
                a * c));
  }
}

TEST_CASE("dense layer matches Eigen, batch and incremental") {
  auto reg = register_linalg();
  Rng rng(52);
  GenConfig cfg;
  cfg.seed = 52;
  Generator g(reg, cfg);
  for (int k = 0; k < 30; ++k) {
    Eigen::Index n = dim(rng), m = dim(rng);
    MatrixXd w = random_matrix(rng, n, m);
    VectorXd b = random_vector(rng, n);
    Term t = dense_layer(*reg, from_matrix(w), from_vector(b), n, m);
    auto oracle = [&](const VectorXd& x) { return VectorXd((w * x + b).cwiseMax(0.0)); };
    VectorXd x = random_vector(rng, m);
    Value xv = from_vector(x);
    CHECK(close(to_vector(denote(t, xv), n), oracle(x)));

    MachinePtr mach = incrementalize(t);
    auto [y, c] = mach->initialize(xv);
    for (int s = 0; s < 5; ++s) {
      Change d = g.gen_change(t.input(), xv);
      y = apply_change(t.output(), y, mach->step(d, c));
      xv = apply_change(t.input(), xv, d);
      CHECK(close(to_vector(y, n), oracle(to_vector(xv, m))));
    }
  }
}

TEST_CASE("incremental mvmul under matrix and vector changes matches Eigen") {
  auto reg = register_linalg();
  Rng rng(53);
  GenConfig cfg;
  cfg.seed = 53;
  Generator g(reg, cfg);
  for (int k = 0; k < 30; ++k) {
    Eigen::Index n = dim(rng), m = dim(rng);
    Type arg = Type::product(real_matrix(*reg, n, m), real_array(*reg, m));
    Term t = build_program(*reg, "mvmul", arg);
    Value x = Value::pair(from_matrix(random_matrix(rng, n, m)), from_vector(random_vector(rng, m)));
    MachinePtr mach = incrementalize(t);
    auto [y, c] = mach->initialize(x);
    for (int s = 0; s < 5; ++s) {
      Change d = g.gen_change(arg, x);
      y = apply_change(t.output(), y, mach->step(d, c));
      x = apply_change(arg, x, d);
      VectorXd want = to_matrix(x.first(), n, m) * to_vector(x.second(), m);
      CHECK(close(to_vector(y, n), want));
    }
  }
}

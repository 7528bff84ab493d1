/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "gradcheck.hpp"
#include "nn/adam.hpp"
#include "nn/checkpoint.hpp"
#include "nn/mlp.hpp"

using namespace xdiff;
using nn::Act;
using nn::MatF;
using nn::Mlp;

namespace {

MatF random_batch(int rows, int cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<float> u(-1.0f, 1.0f);
  MatF m(rows, cols);
  for (auto& v : m.d) v = u(rng);
  return m;
}

}  // namespace

TEST_CASE("mish matches the scalar oracle x*tanh(softplus(x))") {
  // Independent evaluation of x*tanh(log(1+e^x)).
  auto oracle = [](double x) { return x * std::tanh(std::log1p(std::exp(x))); };
  CHECK(nn::mish(0.0f) == doctest::Approx(0.0));
  CHECK(nn::mish(1.0f) == doctest::Approx(0.865098).epsilon(1e-5));
  for (float x : {-3.0f, -0.7f, 0.3f, 2.5f, 8.0f})
    CHECK(nn::mish(x) == doctest::Approx(oracle(x)).epsilon(1e-5));
}

TEST_CASE("zero network maps anything to zero") {
  std::mt19937_64 rng(1);
  Mlp net({4, 8, 3}, Act::mish, Act::identity, rng);
  for (auto& t : net.params())
    for (size_t j = 0; j < t.n; ++j) t.p[j] = 0.0f;
  const MatF x = random_batch(5, 4, rng);
  const MatF y = net.forward(x);
  for (float v : y.d) CHECK(v == 0.0f);
}

TEST_CASE("identity single layer passes input through") {
  std::mt19937_64 rng(2);
  Mlp net({3, 3}, Act::identity, Act::identity, rng);
  auto params = net.params();
  for (size_t j = 0; j < params[0].n; ++j) params[0].p[j] = 0.0f;
  for (int i = 0; i < 3; ++i) params[0].p[i * 3 + i] = 1.0f;
  for (size_t j = 0; j < params[1].n; ++j) params[1].p[j] = 0.0f;
  const MatF x = random_batch(4, 3, rng);
  const MatF y = net.forward(x);
  for (size_t i = 0; i < x.size(); ++i) CHECK(y.d[i] == doctest::Approx(x.d[i]));
}

TEST_CASE("linear layer weight gradient is the outer product") {
  std::mt19937_64 rng(3);
  Mlp net({2, 3}, Act::identity, Act::identity, rng);
  MatF x(1, 2);
  x.d = {0.5f, -1.5f};
  nn::MlpCache cache;
  net.forward(x, cache);
  MatF dy(1, 3);
  dy.d = {1.0f, 2.0f, -0.5f};
  nn::MlpGrads g = net.make_grads();
  net.backward(cache, dy, g);
  for (int i = 0; i < 2; ++i)
    for (int o = 0; o < 3; ++o)
      CHECK(g.dw[0].at(i, o) == doctest::Approx(x.d[i] * dy.d[o]));
  for (int o = 0; o < 3; ++o) CHECK(g.db[0][o] == doctest::Approx(dy.d[o]));
}

TEST_CASE("analytic gradients match central finite differences") {
  std::mt19937_64 rng(4);
  for (auto acts : {Act::mish, Act::tanh_}) {
    Mlp net({5, 7, 6, 2}, acts, Act::identity, rng);
    const MatF x = random_batch(3, 5, rng);
    const MatF target = random_batch(3, 2, rng);

    // Double-precision oracle of the same squared-error functional.
    auto loss_of = [&]() {
      double l = 0.0;
      for (int r = 0; r < x.rows; ++r) {
        std::vector<double> in(x.row(r), x.row(r) + x.cols);
        const auto y = test::mlp_forward_double(net, in);
        for (size_t i = 0; i < y.size(); ++i) {
          const double e = y[i] - target.at(r, static_cast<int>(i));
          l += e * e;
        }
      }
      return l;
    };

    nn::MlpCache cache;
    const MatF y = net.forward(x, cache);
    MatF dy(3, 2);
    for (size_t i = 0; i < y.size(); ++i) dy.d[i] = 2.0f * (y.d[i] - target.d[i]);
    nn::MlpGrads g = net.make_grads();
    net.backward(cache, dy, g);

    const auto res = test::finite_diff_check(net.params(), test::flatten_grads(g),
                                             loss_of, 1e-3f);
    CHECK(res.rel_l2 < 1e-4);
  }
}

TEST_CASE("input gradient of a constant-output network is zero") {
  std::mt19937_64 rng(5);
  Mlp net({4, 6, 3}, Act::mish, Act::identity, rng);
  auto params = net.params();
  // Zero the final layer: output is the constant bias.
  for (size_t j = 0; j < params[2].n; ++j) params[2].p[j] = 0.0f;
  const MatF x = random_batch(2, 4, rng);
  nn::MlpCache cache;
  net.forward(x, cache);
  MatF dy(2, 3);
  dy.fill(1.0f);
  nn::MlpGrads g = net.make_grads();
  const MatF dx = net.backward(cache, dy, g);
  for (float v : dx.d) CHECK(v == 0.0f);
}

TEST_CASE("adam: zero gradient leaves parameters unchanged") {
  std::mt19937_64 rng(6);
  Mlp net({3, 4, 2}, Act::mish, Act::identity, rng);
  std::vector<float> before;
  for (auto& t : net.params()) before.insert(before.end(), t.p, t.p + t.n);
  nn::Adam opt(net.param_count(), 1e-2f);
  nn::MlpGrads g = net.make_grads();
  opt.step(net.params(), g.tensors());
  std::vector<float> after;
  for (auto& t : net.params()) after.insert(after.end(), t.p, t.p + t.n);
  CHECK(before == after);
}

TEST_CASE("adam: constant gradient step magnitude approaches lr*sign(g)") {
  // Scalar simulation oracle: one parameter, constant gradient.
  const float lr = 1e-3f;
  nn::Adam opt(1, lr);
  float p = 0.0f;
  float g = 0.37f;
  float prev = p;
  float step = 0.0f;
  for (int t = 0; t < 500; ++t) {
    nn::TensorView pv{&p, 1}, gv{&g, 1};
    opt.step({pv}, {gv});
    step = prev - p;
    prev = p;
  }
  CHECK(step == doctest::Approx(lr).epsilon(0.01));

  nn::Adam opt2(1, lr);
  float q = 0.0f;
  float gn = -2.2f;
  float prev2 = q, step2 = 0.0f;
  for (int t = 0; t < 500; ++t) {
    nn::TensorView pv{&q, 1}, gv{&gn, 1};
    opt2.step({pv}, {gv});
    step2 = q - prev2;
    prev2 = q;
  }
  CHECK(step2 == doctest::Approx(lr).epsilon(0.01));
}

TEST_CASE("adam: identical nets and grads produce identical updates") {
  std::mt19937_64 rng(7);
  Mlp a({3, 5, 2}, Act::mish, Act::identity, rng);
  Mlp b = a;
  nn::Adam oa(a.param_count(), 3e-4f), ob(b.param_count(), 3e-4f);
  const MatF x = random_batch(4, 3, rng);
  MatF dy(4, 2);
  dy.fill(0.3f);
  for (int iter = 0; iter < 3; ++iter) {
    nn::MlpCache ca, cb;
    a.forward(x, ca);
    b.forward(x, cb);
    nn::MlpGrads ga = a.make_grads(), gb = b.make_grads();
    a.backward(ca, dy, ga);
    b.backward(cb, dy, gb);
    oa.step(a.params(), ga.tensors());
    ob.step(b.params(), gb.tensors());
  }
  auto pa = a.params(), pb = b.params();
  for (size_t i = 0; i < pa.size(); ++i)
    for (size_t j = 0; j < pa[i].n; ++j) CHECK(pa[i].p[j] == pb[i].p[j]);
}

TEST_CASE("timestep embedding basics") {
  const auto e0 = nn::timestep_embedding(0, 16);
  double norm2 = 0.0;
  for (int i = 0; i < 16; i += 2) {
    CHECK(e0[i] == 0.0f);       // sin parts
    CHECK(e0[i + 1] == 1.0f);   // cos parts
  }
  for (float v : e0) norm2 += static_cast<double>(v) * v;
  CHECK(std::sqrt(norm2) == doctest::Approx(std::sqrt(8.0)));  // sqrt(dim/2)

  const auto e1 = nn::timestep_embedding(1, 16);
  const auto e2 = nn::timestep_embedding(2, 16);
  bool differ = false;
  for (int i = 0; i < 16; ++i)
    if (e1[i] != e2[i]) differ = true;
  CHECK(differ);
  CHECK_THROWS_AS(nn::timestep_embedding(1, 3), std::invalid_argument);
}

TEST_CASE("ema update blends toward online parameters") {
  std::mt19937_64 rng(8);
  Mlp online({2, 3, 1}, Act::mish, Act::identity, rng);
  Mlp target({2, 3, 1}, Act::mish, Act::identity, rng);

  Mlp t1 = target;
  Mlp::ema_update(t1, online, 1.0f);
  auto p1 = t1.params(), po = online.params();
  for (size_t i = 0; i < p1.size(); ++i)
    for (size_t j = 0; j < p1[i].n; ++j)
      CHECK(p1[i].p[j] == doctest::Approx(po[i].p[j]));

  Mlp t0 = target;
  Mlp::ema_update(t0, online, 0.0f);
  auto q0 = t0.params(), pt = target.params();
  for (size_t i = 0; i < q0.size(); ++i)
    for (size_t j = 0; j < q0[i].n; ++j) CHECK(q0[i].p[j] == pt[i].p[j]);

  // Geometric convergence with ratio (1 - rho): scalar recurrence oracle.
  const float rho = 0.25f;
  float online_v = 1.0f, target_v = 0.0f;
  Mlp to = target;
  auto set_all = [](Mlp& m, float v) {
    for (auto& t : m.params())
      for (size_t j = 0; j < t.n; ++j) t.p[j] = v;
  };
  set_all(to, 0.0f);
  Mlp on = online;
  set_all(on, 1.0f);
  for (int it = 0; it < 20; ++it) {
    Mlp::ema_update(to, on, rho);
    target_v = rho * online_v + (1 - rho) * target_v;
    CHECK(to.params()[0].p[0] == doctest::Approx(target_v).epsilon(1e-5));
  }
}

TEST_CASE("checkpoint round trip restores parameters exactly") {
  std::mt19937_64 rng(9);
  Mlp net({4, 6, 2}, Act::mish, Act::identity, rng);
  nn::TensorBundle b;
  append_mlp(b, net);
  const std::string path =
      (std::filesystem::temp_directory_path() / "xdnn_test.bin").string();
  b.save(path);

  Mlp other({4, 6, 2}, Act::mish, Act::identity, rng);
  const nn::TensorBundle loaded = nn::TensorBundle::load(path);
  restore_mlp(loaded, 0, other);
  auto pa = net.params(), pb = other.params();
  for (size_t i = 0; i < pa.size(); ++i)
    for (size_t j = 0; j < pa[i].n; ++j) CHECK(pa[i].p[j] == pb[i].p[j]);
  std::filesystem::remove(path);
}

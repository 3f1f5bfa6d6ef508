#include "walker/geometry/curvature.hpp"

namespace walker::geo {

using sym::kDim;
using sym::kT;
using sym::kX;
using sym::kY;

namespace {

const std::vector<Slot> kConnection{Slot::Up, Slot::Down, Slot::Down};
const std::vector<Slot> kCurvature{Slot::Up, Slot::Down, Slot::Down, Slot::Down};
const std::vector<Slot> kNablaCurvature{Slot::Up, Slot::Down, Slot::Down, Slot::Down, Slot::Down};

Tensor simplified(const WalkerManifold& w, const Tensor& t) {
  return t.map([&](const Expr& c) { return w.simplify(c); });
}

Tensor riemann_from(const WalkerManifold& w, const Tensor& gamma) {
  // Derivatives of the connection, d_i Gamma^k_jl.
  Tensor dgamma({Slot::Down, Slot::Up, Slot::Down, Slot::Down});
  dgamma.for_each_index([&](const Tensor::Index& ix) {
    dgamma.at(ix) = sym::diff(gamma(ix[1], ix[2], ix[3]), ix[0]);
  });
  Tensor r(kCurvature);
  r.for_each_index([&](const Tensor::Index& ix) {
    const int k = ix[0], i = ix[1], j = ix[2], l = ix[3];
    Expr v = dgamma(i, k, j, l) - dgamma(j, k, i, l);
    for (int m = 0; m < kDim; ++m) {
      v = v + gamma(m, j, l) * gamma(k, i, m) - gamma(m, i, l) * gamma(k, j, m);
    }
    r.at(ix) = w.simplify(v);
  });
  return r;
}

Tensor nabla_of_curvature(const WalkerManifold& w, const Tensor& gamma, const Tensor& r) {
  Tensor out(kNablaCurvature);
  out.for_each_index([&](const Tensor::Index& ix) {
    const int k = ix[0], i = ix[1], j = ix[2], l = ix[3], m = ix[4];
    Expr v = sym::diff(r(k, i, j, l), m);
    for (int p = 0; p < kDim; ++p) {
      v = v + gamma(k, m, p) * r(p, i, j, l) - gamma(p, m, i) * r(k, p, j, l) - gamma(p, m, j) * r(k, i, p, l) -
          gamma(p, m, l) * r(k, i, j, p);
    }
    out.at(ix) = w.simplify(v);
  });
  return out;
}

CurvatureSet curvature_from(const WalkerManifold& w, const Tensor& gamma) {
  CurvatureSet out;
  out.riemann = riemann_from(w, gamma);
  out.nabla_riemann = nabla_of_curvature(w, gamma, out.riemann);
  const Expr fxx = w.f_d(2, 0);
  out.omega_guard = fxx;
  out.omega = Tensor::covariant(1);
  out.omega(kX) = w.simplify(w.f_d(3, 0) / fxx);
  out.omega(kY) = w.simplify(w.f_d(2, 1) / fxx);
  return out;
}

RicciPair ricci_from(const WalkerManifold& w, const MetricPair& mp, const Tensor& r) {
  RicciPair out;
  out.ricci = Tensor::covariant(2);
  out.ricci.for_each_index([&](const Tensor::Index& ix) {
    Expr v;
    for (int k = 0; k < kDim; ++k) v = v + r(k, k, ix[0], ix[1]);
    out.ricci.at(ix) = w.simplify(v);
  });
  Expr tau;
  for (int j = 0; j < kDim; ++j) {
    for (int l = 0; l < kDim; ++l) tau = tau + mp.inverse(j, l) * out.ricci(j, l);
  }
  out.scalar = w.simplify(tau);
  return out;
}

}  // namespace

Tensor invert(const Tensor& g) {
  if (g.rank() != 2) throw std::invalid_argument("invert: rank-2 tensor required");
  auto c = [&](int i, int j) { return g(i, j); };
  auto minor = [&](int i, int j) {
    int r0 = i == 0 ? 1 : 0, r1 = i == 2 ? 1 : 2;
    int c0 = j == 0 ? 1 : 0, c1 = j == 2 ? 1 : 2;
    return c(r0, c0) * c(r1, c1) - c(r0, c1) * c(r1, c0);
  };
  Expr det;
  for (int j = 0; j < kDim; ++j) {
    Expr term = c(0, j) * minor(0, j);
    det = (j % 2 == 0) ? det + term : det - term;
  }
  det = sym::normalize(det);
  if (det.is_zero_literal()) throw std::domain_error("invert: singular metric");
  Tensor inv({Slot::Up, Slot::Up});
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      Expr cof = minor(j, i);
      if ((i + j) % 2) cof = -cof;
      inv(i, j) = sym::normalize(cof / det);
    }
  }
  return inv;
}

MetricPair metric_and_inverse(const WalkerManifold& w) {
  Tensor g = Tensor::covariant(2);
  g(kT, kY) = Expr(1);
  g(kY, kT) = Expr(1);
  g(kX, kX) = Expr(1);
  g(kY, kY) = w.f();
  Tensor inv = simplified(w, invert(g));
  return {g, inv};
}

Tensor christoffel(const WalkerManifold& w) {
  const MetricPair mp = metric_and_inverse(w);
  Tensor dg = Tensor::covariant(3);  // dg(l, i, j) = d_l g_ij
  dg.for_each_index([&](const Tensor::Index& ix) { dg.at(ix) = sym::diff(mp.metric(ix[1], ix[2]), ix[0]); });
  Tensor gamma(kConnection);
  gamma.for_each_index([&](const Tensor::Index& ix) {
    const int k = ix[0], i = ix[1], j = ix[2];
    Expr v;
    for (int l = 0; l < kDim; ++l) {
      v = v + mp.inverse(k, l) * (dg(i, j, l) + dg(j, i, l) - dg(l, i, j));
    }
    gamma.at(ix) = w.simplify(v / Expr(2));
  });
  return gamma;
}

CurvatureSet curvature_tensors(const WalkerManifold& w) { return curvature_from(w, christoffel(w)); }

RicciPair ricci_and_scalar(const WalkerManifold& w) {
  return ricci_from(w, metric_and_inverse(w), riemann_from(w, christoffel(w)));
}

Trilean is_conformally_flat(const WalkerManifold& w) { return w.is_zero(w.f_d(3, 0)); }

Tensor nabla_metric(const WalkerManifold& w) {
  const MetricPair mp = metric_and_inverse(w);
  const Tensor gamma = christoffel(w);
  Tensor out = Tensor::covariant(3);
  out.for_each_index([&](const Tensor::Index& ix) {
    const int i = ix[0], j = ix[1], m = ix[2];
    Expr v = sym::diff(mp.metric(i, j), m);
    for (int p = 0; p < kDim; ++p) v = v - gamma(p, m, i) * mp.metric(p, j) - gamma(p, m, j) * mp.metric(i, p);
    out.at(ix) = w.simplify(v);
  });
  return out;
}

namespace closed_form {

Tensor christoffel(const WalkerManifold& w) {
  Tensor gamma(kConnection);
  const Expr half_fx = w.simplify(w.f_d(1, 0) / Expr(2));
  const Expr half_fy = w.simplify(w.f_d(0, 1) / Expr(2));
  gamma(kT, kX, kY) = half_fx;
  gamma(kT, kY, kX) = half_fx;
  gamma(kT, kY, kY) = half_fy;
  gamma(kX, kY, kY) = w.simplify(-half_fx);
  return gamma;
}

Tensor riemann(const WalkerManifold& w) {
  Tensor r(kCurvature);
  const Expr h = w.simplify(w.f_d(2, 0) / Expr(2));
  r(kT, kX, kY, kX) = h;
  r(kT, kY, kX, kX) = w.simplify(-h);
  r(kX, kX, kY, kY) = w.simplify(-h);
  r(kX, kY, kX, kY) = h;
  return r;
}

Tensor nabla_riemann(const WalkerManifold& w) {
  Tensor out(kNablaCurvature);
  const Expr hx = w.simplify(w.f_d(3, 0) / Expr(2));
  const Expr hy = w.simplify(w.f_d(2, 1) / Expr(2));
  for (auto [m, v] : {std::pair{kX, hx}, std::pair{kY, hy}}) {
    out(kT, kX, kY, kX, m) = v;
    out(kT, kY, kX, kX, m) = w.simplify(-v);
    out(kX, kX, kY, kY, m) = w.simplify(-v);
    out(kX, kY, kX, kY, m) = v;
  }
  return out;
}

Tensor ricci(const WalkerManifold& w) {
  Tensor rho = Tensor::covariant(2);
  rho(kY, kY) = w.simplify(-w.f_d(2, 0) / Expr(2));
  return rho;
}

}  // namespace closed_form

Geometry Geometry::build(const WalkerManifold& w) {
  Geometry out;
  out.g = metric_and_inverse(w);
  out.gamma = christoffel(w);
  out.curvature = curvature_from(w, out.gamma);
  out.ricci = ricci_from(w, out.g, out.curvature.riemann);
  return out;
}

}  // namespace walker::geo

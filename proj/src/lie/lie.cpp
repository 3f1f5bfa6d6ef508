#include "walker/lie/lie.hpp"

#include "walker/symexpr/calculus.hpp"
#include "walker/symexpr/parse.hpp"

namespace walker::lie {

using geo::Slot;
using sym::kDim;

VectorField VectorField::parse(std::string_view x1, std::string_view x2, std::string_view x3) {
  return VectorField{{sym::parse(x1), sym::parse(x2), sym::parse(x3)}}.normalized();
}

VectorField VectorField::normalized() const {
  return VectorField{{sym::normalize(c[0]), sym::normalize(c[1]), sym::normalize(c[2])}};
}

std::string VectorField::str() const {
  return "(" + sym::to_string(c[0]) + ", " + sym::to_string(c[1]) + ", " + sym::to_string(c[2]) + ")";
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  return VectorField{{a[0] + b[0], a[1] + b[1], a[2] + b[2]}}.normalized();
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  return VectorField{{a[0] - b[0], a[1] - b[1], a[2] - b[2]}}.normalized();
}

VectorField operator*(const Expr& s, const VectorField& a) {
  return VectorField{{s * a[0], s * a[1], s * a[2]}}.normalized();
}

VectorField bracket(const VectorField& x, const VectorField& y) {
  VectorField out;
  for (int k = 0; k < kDim; ++k) {
    Expr v;
    for (int m = 0; m < kDim; ++m) v = v + x[m] * sym::diff(y[k], m) - y[m] * sym::diff(x[k], m);
    out[k] = sym::normalize(v);
  }
  return out;
}

namespace {

// dx(a, m) = d_m X^a.
using Jacobian = std::array<std::array<Expr, kDim>, kDim>;

Jacobian jacobian(const VectorField& x) {
  Jacobian j;
  for (int a = 0; a < kDim; ++a) {
    for (int m = 0; m < kDim; ++m) j[a][m] = sym::diff(x[a], m);
  }
  return j;
}

Tensor lie_with(const WalkerManifold& w, const Tensor& t, const VectorField& x, const Jacobian& dx) {
  Tensor out(t.signature());
  const auto& sig = t.signature();
  out.for_each_index([&](const Tensor::Index& ix) {
    Expr v;
    for (int m = 0; m < kDim; ++m) v = v + x[m] * sym::diff(t.at(ix), m);
    Tensor::Index jx = ix;
    for (std::size_t s = 0; s < ix.size(); ++s) {
      for (int m = 0; m < kDim; ++m) {
        jx[s] = m;
        const Expr& tc = t.at(jx);
        if (tc.is_zero_literal()) continue;
        if (sig[s] == Slot::Up) {
          v = v - tc * dx[ix[s]][m];
        } else {
          v = v + tc * dx[m][ix[s]];
        }
      }
      jx[s] = ix[s];
    }
    out.at(ix) = w.simplify(v);
  });
  return out;
}

}  // namespace

Tensor lie_tensor(const WalkerManifold& w, const Tensor& t, const VectorField& x) {
  return lie_with(w, t, x, jacobian(x));
}

Tensor lie_metric(const WalkerManifold& w, const Geometry& geo, const VectorField& x) {
  return lie_tensor(w, geo.g.metric, x);
}

Tensor lie_connection(const WalkerManifold& w, const Geometry& geo, const VectorField& x) {
  const Jacobian dx = jacobian(x);
  Tensor out = lie_with(w, geo.gamma, x, dx);
  out.for_each_index([&](const Tensor::Index& ix) {
    const int k = ix[0], i = ix[1], j = ix[2];
    out.at(ix) = w.simplify(out.at(ix) + sym::diff(dx[k][i], j));
  });
  return out;
}

Tensor lie_riemann(const WalkerManifold& w, const Geometry& geo, const VectorField& x) {
  return lie_tensor(w, geo.curvature.riemann, x);
}

Tensor lie_ricci(const WalkerManifold& w, const Geometry& geo, const VectorField& x) {
  return lie_tensor(w, geo.ricci.ricci, x);
}

Tensor lie_metric(const WalkerManifold& w, const VectorField& x) { return lie_metric(w, Geometry::build(w), x); }

Tensor lie_connection(const WalkerManifold& w, const VectorField& x) {
  return lie_connection(w, Geometry::build(w), x);
}

Tensor lie_riemann(const WalkerManifold& w, const VectorField& x) { return lie_riemann(w, Geometry::build(w), x); }

Tensor lie_ricci(const WalkerManifold& w, const VectorField& x) { return lie_ricci(w, Geometry::build(w), x); }

}  // namespace walker::lie

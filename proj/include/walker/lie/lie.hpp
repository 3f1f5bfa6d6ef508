#pragma once

#include <array>
#include <string>
#include <string_view>

#include "walker/geometry/curvature.hpp"
#include "walker/geometry/manifold.hpp"
#include "walker/geometry/tensor.hpp"

namespace walker::lie {

using geo::Expr;
using geo::Geometry;
using geo::Tensor;
using geo::WalkerManifold;

/// X = X1 d_t + X2 d_x + X3 d_y.
struct VectorField {
  std::array<Expr, 3> c;

  const Expr& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  Expr& operator[](int i) { return c[static_cast<std::size_t>(i)]; }

  static VectorField parse(std::string_view x1, std::string_view x2, std::string_view x3);
  VectorField normalized() const;
  std::string str() const;
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(const Expr& s, const VectorField& a);

/// Lie bracket [X, Y].
VectorField bracket(const VectorField& x, const VectorField& y);

/// Lie derivative of an arbitrary tensor field along X, simplified on w.
Tensor lie_tensor(const WalkerManifold& w, const Tensor& t, const VectorField& x);

/// (L_X g)_ij.
Tensor lie_metric(const WalkerManifold& w, const VectorField& x);
Tensor lie_metric(const WalkerManifold& w, const Geometry& geo, const VectorField& x);

/// (L_X nabla)^k_ij, symmetric in i, j.
Tensor lie_connection(const WalkerManifold& w, const VectorField& x);
Tensor lie_connection(const WalkerManifold& w, const Geometry& geo, const VectorField& x);

/// (L_X R)^k_lij with the slot order of the curvature tensor.
Tensor lie_riemann(const WalkerManifold& w, const VectorField& x);
Tensor lie_riemann(const WalkerManifold& w, const Geometry& geo, const VectorField& x);

/// (L_X rho)_ij. Also the matter-collineation residual, since T = rho here.
Tensor lie_ricci(const WalkerManifold& w, const VectorField& x);
Tensor lie_ricci(const WalkerManifold& w, const Geometry& geo, const VectorField& x);

}  // namespace walker::lie

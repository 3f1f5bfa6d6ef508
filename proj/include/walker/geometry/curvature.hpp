#pragma once

#include <utility>

#include "walker/geometry/manifold.hpp"
#include "walker/geometry/tensor.hpp"

namespace walker::geo {

struct MetricPair {
  Tensor metric;   // g_ij
  Tensor inverse;  // g^ij
};

struct CurvatureSet {
  /// riemann(k, i, j, l): component k of R(d_i, d_j) d_l.
  Tensor riemann;
  /// nabla_riemann(k, i, j, l, m): component k of (nabla_{d_m} R)(d_i, d_j) d_l.
  Tensor nabla_riemann;
  /// Recurrence one-form with nabla R = omega (x) R, valid where f_xx != 0.
  Tensor omega;
  /// The recurrence form is defined only where this expression is nonzero.
  Expr omega_guard;
};

struct RicciPair {
  Tensor ricci;  // rho_jl = R^k_kjl
  Expr scalar;   // tau = g^jl rho_jl
};

MetricPair metric_and_inverse(const WalkerManifold& w);

/// Levi-Civita connection from the coordinate formula.
Tensor christoffel(const WalkerManifold& w);

CurvatureSet curvature_tensors(const WalkerManifold& w);

RicciPair ricci_and_scalar(const WalkerManifold& w);

/// Zero iff f_xxx vanishes identically.
Trilean is_conformally_flat(const WalkerManifold& w);

/// (nabla g)(i, j, m) = (nabla_{d_m} g)(d_i, d_j); identically zero for the
/// Levi-Civita connection.
Tensor nabla_metric(const WalkerManifold& w);

/// Symbolic inverse of a 3x3 (0,2) tensor by cofactors.
Tensor invert(const Tensor& g);

/// Known component formulas in terms of the partials of f, used to check the
/// generic computations.
namespace closed_form {
Tensor christoffel(const WalkerManifold& w);
Tensor riemann(const WalkerManifold& w);
Tensor nabla_riemann(const WalkerManifold& w);
Tensor ricci(const WalkerManifold& w);
}  // namespace closed_form

/// All curvature objects computed once; immutable afterwards and safe to share
/// between threads.
struct Geometry {
  MetricPair g;
  Tensor gamma;
  CurvatureSet curvature;
  RicciPair ricci;

  static Geometry build(const WalkerManifold& w);
};

}  // namespace walker::geo

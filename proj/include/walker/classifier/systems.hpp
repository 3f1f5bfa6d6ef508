#pragma once

#include <string>
#include <vector>

#include "walker/lie/lie.hpp"

namespace walker::cls {

/// One equation of a PDE system, in residual form (lhs - rhs), and
/// the Lie-derivative tensor component it corresponds to.
struct Residual {
  std::string name;
  geo::Expr value;
  /// Component label such as "(L_X g - eta g)_ty".
  std::string component;
  /// scale * component, simplified.
  geo::Expr tensor_side;
};

struct ResidualSystem {
  std::string name;
  std::vector<Residual> equations;
};

struct ResidualSystems {
  /// L_X g = eta g, six equations.
  ResidualSystem homothety;
  /// L_X nabla = 0, eighteen second-order equations.
  ResidualSystem affine;
  /// L_X rho = 0, three equations.
  ResidualSystem ricci;
  /// Third Ricci equation once X3 depends on y alone.
  ResidualSystem ricci_reduced;

  std::vector<const ResidualSystem*> all() const { return {&homothety, &affine, &ricci, &ricci_reduced}; }
};

/// Residuals of the written-out systems for X on w. `eta` is the homothety
/// factor used in the first system (pass 0 for the Killing system).
ResidualSystems residual_systems(const geo::WalkerManifold& w, const lie::VectorField& x, const geo::Expr& eta);
ResidualSystems residual_systems(const geo::WalkerManifold& w, const geo::Geometry& geo, const lie::VectorField& x,
                                 const geo::Expr& eta);

}  // namespace walker::cls

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "walker/geometry/curvature.hpp"
#include "walker/lie/lie.hpp"
#include "walker/symexpr/eval.hpp"

namespace walker::oracle {

/// Working precision of the difference quotients. Nested central differences
/// lose about eps/h^3, so double is not enough for curvature derivatives.
using Real = __float128;
using Point = std::array<double, 3>;
using RPoint = std::array<Real, 3>;
using Matrix = std::array<std::array<Real, 3>, 3>;

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense numeric tensor, flat order identical to geo::Tensor.
struct NumTensor {
  std::vector<geo::Slot> signature;
  std::vector<double> data;

  std::size_t size() const { return data.size(); }
  double max_abs() const;
};

/// Numeric stand-ins for the symbols of a manifold and its vector fields,
/// shared by the symbolic and difference paths.
struct Realized {
  geo::WalkerManifold w;
  sym::Realizations realizations;
  std::map<std::string, double> params;
  /// Expressions that must stay positive at accepted sample points.
  std::vector<geo::Expr> guards;

  sym::EvalContext<double> context(const Point& p) const;
  sym::EvalContext<Real> qcontext(const RPoint& p) const;
};

/// Draws realizations (seeded) for every free symbol of f and of `fields`;
/// `fixed` bodies take precedence. Rewrite rules of w are checked against the
/// realizations at sample time (see SamplePlan).
Realized realize(const geo::WalkerManifold& w, const std::vector<lie::VectorField>& fields, std::uint64_t seed,
                 const std::map<std::string, geo::Expr>& fixed = {});

struct SamplePlan {
  std::uint64_t seed = 1;
  int count = 100;
  /// Half-width of the coordinate box.
  double box = 2.0;
  /// Points with |f_xx| below this are excluded.
  double fxx_min = 0.1;

  /// Deterministic accepted points: inside the box, |f_xx| >= fxx_min, every
  /// guard positive, every rewrite rule satisfied by the realizations, and
  /// every expression in `probe` finite. Throws OracleError when too few
  /// points qualify.
  std::vector<Point> generate(const Realized& r, const std::vector<geo::Expr>& probe = {}) const;
};

using MetricFn = std::function<Matrix(const RPoint&)>;
MetricFn metric_evaluator(const Realized& r);

struct FdTensors {
  NumTensor christoffel;  // ^k_ij
  NumTensor riemann;      // ^k_ijl
  NumTensor ricci;        // _jl
  double scalar = 0;
};

/// Default relative step: h_c = scale * (1 + |c|).
inline constexpr double kStep = 1e-5;

/// Curvature from metric values only, by nested central differences.
/// Throws OracleError when |det g| < 1e-12.
FdTensors fd_tensors(const MetricFn& g, const Point& p, double scale = kStep);

enum class LieKind { Metric, Connection, Riemann, Ricci };
const char* lie_kind_key(LieKind kind);  // g, nabla, R, rho

/// Lie derivative from differenced tensor components and differenced X.
NumTensor fd_lie(LieKind kind, const Realized& r, const lie::VectorField& x, const Point& p, double scale = kStep);

/// Symbolic tensor evaluated at p with the same realizations.
NumTensor evaluate(const geo::Tensor& t, const Realized& r, const Point& p);

/// max |a - b| / (1 + max |b|).
double relative_gap(const NumTensor& a, const NumTensor& b);

struct FlowOptions {
  double s = 1e-2;
  int steps = 8;
  /// Homothety factor; the pulled-back metric is scaled by exp(-eta s).
  double eta = 0;
  /// Points whose flow leaves [-box, box]^3 are rejected.
  double box = 4.0;
};

/// max |exp(-eta s) phi_s^* g - g| at p, phi_s the RK4 flow of X. Throws
/// OracleError when the trajectory leaves the box.
double flow_pullback_check(const Realized& r, const lie::VectorField& x, const Point& p,
                           const FlowOptions& options = {});

}  // namespace walker::oracle

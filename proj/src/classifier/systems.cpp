#include "walker/classifier/systems.hpp"

#include "walker/symexpr/calculus.hpp"

namespace walker::cls {

using geo::Expr;
using geo::Tensor;
using sym::kT;
using sym::kX;
using sym::kY;

namespace {

struct Field {
  const lie::VectorField& x;

  // d_a X_k (k = 1, 2, 3 as in the component names X1, X2, X3).
  Expr d(int k, int a) const { return sym::diff(x[k - 1], a); }
  Expr dd(int k, int a, int b) const { return sym::diff(sym::diff(x[k - 1], a), b); }
  const Expr& operator()(int k) const { return x[k - 1]; }
};

void add(ResidualSystem& s, const geo::WalkerManifold& w, const std::string& name, const Expr& value,
         const Tensor& t, const std::string& tensor_name, const geo::Tensor::Index& idx, const Expr& scale) {
  s.equations.push_back(
      Residual{name, w.simplify(value), tensor_name + t.label(idx), w.simplify(scale * t.at(idx))});
}

}  // namespace

ResidualSystems residual_systems(const geo::WalkerManifold& w, const geo::Geometry& geo, const lie::VectorField& vf,
                                 const Expr& eta) {
  const Field X{vf};
  const Expr f = w.f();
  const Expr fx = w.f_d(1, 0), fy = w.f_d(0, 1);
  const Expr fxx = w.f_d(2, 0), fxy = w.f_d(1, 1), fyy = w.f_d(0, 2);
  const Expr fxxx = w.f_d(3, 0), fxxy = w.f_d(2, 1);
  const Expr half = Expr(sym::Rational(1, 2));
  const Expr two = Expr(2);

  ResidualSystems out;

  {
    ResidualSystem& s = out.homothety;
    s.name = "homothety";
    const Tensor lg = lie::lie_metric(w, geo, vf);
    const Tensor h = lg - eta * geo.g.metric;
    const std::string tn = "(L_X g - eta g)";
    add(s, w, "h1", X.d(3, kT), h, tn, {kT, kT}, half);
    add(s, w, "h2", X.d(2, kX) - half * eta, h, tn, {kX, kX}, half);
    add(s, w, "h3", X.d(3, kX) + X.d(2, kT), h, tn, {kT, kX}, 1);
    add(s, w, "h4", X.d(3, kY) + X.d(3, kT) * f + X.d(1, kT) - eta, h, tn, {kT, kY}, 1);
    add(s, w, "h5", f * X.d(3, kX) + X.d(1, kX) + X.d(2, kY), h, tn, {kX, kY}, 1);
    add(s, w, "h6", two * X.d(3, kY) * f + two * X.d(1, kY) + X(2) * fx + X(3) * fy - eta * f, h, tn, {kY, kY}, 1);
  }

  {
    ResidualSystem& s = out.affine;
    s.name = "affine";
    const Tensor a = lie::lie_connection(w, geo, vf);
    const std::string tn = "(L_X nabla)";
    add(s, w, "a1", X.dd(1, kT, kT), a, tn, {kT, kT, kT}, 1);
    add(s, w, "a2", X.dd(2, kT, kT), a, tn, {kX, kT, kT}, 1);
    add(s, w, "a3", X.dd(2, kX, kX), a, tn, {kX, kX, kX}, 1);
    add(s, w, "a4", X.dd(2, kT, kX), a, tn, {kX, kT, kX}, 1);
    add(s, w, "a5", X.dd(3, kT, kT), a, tn, {kY, kT, kT}, 1);
    add(s, w, "a6", X.dd(3, kX, kX), a, tn, {kY, kX, kX}, 1);
    add(s, w, "a7", X.dd(3, kT, kX), a, tn, {kY, kT, kX}, 1);
    add(s, w, "a8", X.dd(3, kT, kY), a, tn, {kY, kT, kY}, 1);
    add(s, w, "a9", X.dd(1, kX, kX) + X.d(3, kX) * fx, a, tn, {kT, kX, kX}, 1);
    add(s, w, "a10", two * X.dd(1, kT, kX) + X.d(3, kT) * fx, a, tn, {kT, kT, kX}, 2);
    add(s, w, "a11", two * X.dd(2, kT, kY) - X.d(3, kT) * fx, a, tn, {kX, kT, kY}, 2);
    add(s, w, "a12", two * X.dd(3, kX, kY) - X.d(3, kT) * fx, a, tn, {kY, kX, kY}, 2);
    add(s, w, "a13", two * X.dd(1, kT, kY) + X.d(3, kT) * fy + X.d(2, kT) * fx, a, tn, {kT, kT, kY}, 2);
    add(s, w, "a14", two * X.dd(2, kX, kY) - X.d(3, kX) * fx - X.d(2, kT) * fx, a, tn, {kX, kX, kY}, 2);
    add(s, w, "a15", two * X.dd(3, kY, kY) + X.d(3, kX) * fx - X.d(3, kT) * fy, a, tn, {kY, kY, kY}, 2);
    add(s, w, "a16",
        two * X.d(3, kY) * fx - two * X.dd(2, kY, kY) - X.d(2, kX) * fx + X.d(2, kT) * fy + X(2) * fxx +
            X(3) * fxy,
        a, tn, {kX, kY, kY}, -2);
    add(s, w, "a17",
        X.d(3, kY) * fx + two * X.dd(1, kX, kY) + X.d(3, kX) * fy + X.d(2, kX) * fx - X.d(1, kT) * fx +
            X(2) * fxx + X(3) * fxy,
        a, tn, {kT, kX, kY}, 2);
    add(s, w, "a18",
        two * X.d(3, kY) * fy + two * X.dd(1, kY, kY) + X.d(1, kX) * fx + two * X.d(2, kY) * fx -
            X.d(1, kT) * fy + X(2) * fxy + X(3) * fyy,
        a, tn, {kT, kY, kY}, 2);
  }

  const Tensor lr = lie::lie_ricci(w, geo, vf);
  const std::string rn = "(L_X rho)";
  {
    ResidualSystem& s = out.ricci;
    s.name = "ricci";
    add(s, w, "r1", fxx * X.d(3, kT), lr, rn, {kT, kY}, -2);
    add(s, w, "r2", fxx * X.d(3, kX), lr, rn, {kX, kY}, -2);
    add(s, w, "r3", two * fxx * X.d(3, kY) + fxxx * X(2) + fxxy * X(3), lr, rn, {kY, kY}, -2);
  }
  {
    ResidualSystem& s = out.ricci_reduced;
    s.name = "ricci_reduced";
    add(s, w, "r", two * fxx * X.d(3, kY) + fxxx * X(2) + fxxy * X(3), lr, rn, {kY, kY}, -2);
  }
  return out;
}

ResidualSystems residual_systems(const geo::WalkerManifold& w, const lie::VectorField& x, const Expr& eta) {
  return residual_systems(w, geo::Geometry::build(w), x, eta);
}

}  // namespace walker::cls

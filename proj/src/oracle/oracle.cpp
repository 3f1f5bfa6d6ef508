#include "walker/oracle/oracle.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>

#include "walker/symexpr/realize.hpp"

namespace walker::sym {

template <>
struct Math<oracle::Real> {
  using R = oracle::Real;
  static R exp(R v) { return expq(v); }
  static R sin(R v) { return sinq(v); }
  static R cos(R v) { return cosq(v); }
  static R sqrt(R v) { return sqrtq(v); }
  static R fabs(R v) { return fabsq(v); }
  static R pow(R b, R e) { return powq(b, e); }
  static bool finite(R v) { return !isinfq(v) && !isnanq(v); }
};

}  // namespace walker::sym

namespace walker::oracle {

using geo::Expr;
using geo::Slot;
using lie::VectorField;

double NumTensor::max_abs() const {
  double m = 0;
  for (double v : data) m = std::max(m, std::fabs(v));
  return m;
}

sym::EvalContext<double> Realized::context(const Point& p) const {
  sym::EvalContext<double> ctx;
  ctx.point = p;
  ctx.params = params;
  ctx.realizations = &realizations;
  return ctx;
}

sym::EvalContext<Real> Realized::qcontext(const RPoint& p) const {
  sym::EvalContext<Real> ctx;
  ctx.point = p;
  for (const auto& [k, v] : params) ctx.params[k] = v;
  ctx.realizations = &realizations;
  return ctx;
}

Realized realize(const geo::WalkerManifold& w, const std::vector<VectorField>& fields, std::uint64_t seed,
                 const std::map<std::string, Expr>& fixed) {
  Realized r{w, {}, {}, {}};
  for (const auto& [name, body] : fixed) r.realizations.set(name, body);
  sym::SymbolSet symbols = sym::symbols_of(w.bind(w.f()));
  for (const auto& rule : w.rules()) {
    symbols.merge(sym::symbols_of(rule.replacement));
    symbols.merge(sym::symbols_of(Expr::func(rule.symbol, rule.args, rule.orders)));
  }
  for (const auto& x : fields) {
    for (int i = 0; i < 3; ++i) symbols.merge(sym::symbols_of(w.bind(x[i])));
  }
  sym::Rng rng = sym::Rng::stream(seed, 0x0fac1e);
  sym::draw_symbols(symbols, w.positive(), rng, &r.realizations, &r.params);
  for (const auto& name : w.positive()) {
    if (r.realizations.has(name)) r.guards.push_back(r.realizations.body(name));
  }
  return r;
}

namespace {

RPoint to_r(const Point& p) { return {p[0], p[1], p[2]}; }

Real eval_q(const Expr& e, const Realized& r, const RPoint& p) { return sym::eval(e, r.qcontext(p)); }

bool rules_hold(const Realized& r, const Point& p) {
  for (const auto& rule : r.w.rules()) {
    const Expr lhs = Expr::func(rule.symbol, rule.args, rule.orders);
    const double a = sym::eval(lhs, r.context(p));
    const double b = sym::eval(r.w.bind(rule.replacement), r.context(p));
    if (std::fabs(a - b) > 1e-8 * (1 + std::fabs(a))) return false;
  }
  return true;
}

}  // namespace

std::vector<Point> SamplePlan::generate(const Realized& r, const std::vector<Expr>& probe) const {
  const Expr fxx = r.w.bind(r.w.f_d(2, 0));
  std::vector<Point> out;
  const int budget = 200 * std::max(count, 1);
  for (int i = 0; i < budget && static_cast<int>(out.size()) < count; ++i) {
    sym::Rng rng = sym::Rng::stream(seed, static_cast<std::uint64_t>(i));
    Point p{rng.uniform(-box, box), rng.uniform(-box, box), rng.uniform(-box, box)};
    try {
      if (std::fabs(sym::eval(fxx, r.context(p))) < fxx_min) continue;
      bool ok = true;
      for (const auto& g : r.guards) ok = ok && sym::eval(g, r.context(p)) > 0;
      for (const auto& e : probe) {
        if (!ok) break;
        ok = std::isfinite(sym::eval(e, r.context(p)));
      }
      if (!ok) continue;
      if (!rules_hold(r, p)) {
        throw OracleError("function-symbol realizations violate a rewrite rule; fix the realization");
      }
    } catch (const sym::EvalError&) {
      continue;
    }
    out.push_back(p);
  }
  if (static_cast<int>(out.size()) < count) {
    throw OracleError("sample plan: only " + std::to_string(out.size()) + " of " + std::to_string(count) +
                      " points satisfy the exclusion predicate");
  }
  return out;
}

MetricFn metric_evaluator(const Realized& r) {
  const Expr f = r.w.bind(r.w.f());
  return [f, &r](const RPoint& p) {
    Matrix g{};
    g[0][2] = g[2][0] = 1;
    g[1][1] = 1;
    g[2][2] = eval_q(f, r, p);
    return g;
  };
}

namespace {

// Flat component storage over a signature of `rank` slots.
using Flat = std::vector<Real>;

std::size_t pow3(int rank) {
  std::size_t n = 1;
  for (int i = 0; i < rank; ++i) n *= 3;
  return n;
}

using Steps = std::array<Real, 3>;

Steps steps_at(const Point& p, double scale) {
  return {scale * (1 + std::fabs(p[0])), scale * (1 + std::fabs(p[1])), scale * (1 + std::fabs(p[2]))};
}

RPoint shift(RPoint p, int m, Real d) {
  p[m] += d;
  return p;
}

template <class Fn>
std::array<Flat, 3> partials(const Fn& fn, const RPoint& p, const Steps& h) {
  std::array<Flat, 3> out;
  for (int m = 0; m < 3; ++m) {
    Flat a = fn(shift(p, m, h[m]));
    const Flat b = fn(shift(p, m, -h[m]));
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = (a[i] - b[i]) / (2 * h[m]);
    out[m] = std::move(a);
  }
  return out;
}

Matrix inverse(const Matrix& g) {
  const Real det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
                   g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
                   g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
  if (fabsq(det) < 1e-12) throw OracleError("singular numeric metric");
  Matrix inv{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int a = (j + 1) % 3, b = (j + 2) % 3, c = (i + 1) % 3, d = (i + 2) % 3;
      inv[i][j] = (g[a][c] * g[b][d] - g[a][d] * g[b][c]) / det;
    }
  }
  return inv;
}

Flat flat_metric(const Matrix& g) {
  Flat out(9);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[i * 3 + j] = g[i][j];
  }
  return out;
}

struct Curv {
  const MetricFn& g;
  Steps h;

  Flat metric(const RPoint& p) const { return flat_metric(g(p)); }

  // ^k_ij at index k*9 + i*3 + j.
  Flat gamma(const RPoint& p) const {
    const Matrix inv = inverse(g(p));
    const auto dg = partials([&](const RPoint& q) { return metric(q); }, p, h);
    Flat out(27, 0);
    for (int k = 0; k < 3; ++k) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          Real acc = 0;
          for (int l = 0; l < 3; ++l) acc += inv[k][l] * (dg[i][l * 3 + j] + dg[j][i * 3 + l] - dg[l][i * 3 + j]);
          out[k * 9 + i * 3 + j] = acc / 2;
        }
      }
    }
    return out;
  }

  // ^k_ijl: component k of R(d_i, d_j) d_l.
  Flat riemann(const RPoint& p) const {
    const Flat G = gamma(p);
    const auto dG = partials([&](const RPoint& q) { return gamma(q); }, p, h);
    auto at = [&](int k, int i, int j) { return G[k * 9 + i * 3 + j]; };
    Flat out(81, 0);
    for (int k = 0; k < 3; ++k) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          for (int l = 0; l < 3; ++l) {
            Real v = dG[i][k * 9 + j * 3 + l] - dG[j][k * 9 + i * 3 + l];
            for (int m = 0; m < 3; ++m) v += at(m, j, l) * at(k, i, m) - at(m, i, l) * at(k, j, m);
            out[((k * 3 + i) * 3 + j) * 3 + l] = v;
          }
        }
      }
    }
    return out;
  }

  Flat ricci(const RPoint& p) const {
    const Flat R = riemann(p);
    Flat out(9, 0);
    for (int j = 0; j < 3; ++j) {
      for (int l = 0; l < 3; ++l) {
        for (int k = 0; k < 3; ++k) out[j * 3 + l] += R[((k * 3 + k) * 3 + j) * 3 + l];
      }
    }
    return out;
  }
};

NumTensor to_num(std::vector<Slot> sig, const Flat& v) {
  NumTensor t{std::move(sig), {}};
  t.data.reserve(v.size());
  for (Real c : v) t.data.push_back(static_cast<double>(c));
  return t;
}

std::vector<Slot> slots(const char* pattern) {
  std::vector<Slot> out;
  for (const char* c = pattern; *c; ++c) out.push_back(*c == 'u' ? Slot::Up : Slot::Down);
  return out;
}

}  // namespace

FdTensors fd_tensors(const MetricFn& g, const Point& p, double scale) {
  const Curv c{g, steps_at(p, scale)};
  const RPoint q = to_r(p);
  FdTensors out;
  out.christoffel = to_num(slots("udd"), c.gamma(q));
  const Flat R = c.riemann(q);
  out.riemann = to_num(slots("uddd"), R);
  Flat rho(9, 0);
  for (int j = 0; j < 3; ++j) {
    for (int l = 0; l < 3; ++l) {
      for (int k = 0; k < 3; ++k) rho[j * 3 + l] += R[((k * 3 + k) * 3 + j) * 3 + l];
    }
  }
  out.ricci = to_num(slots("dd"), rho);
  const Matrix inv = inverse(g(q));
  Real tau = 0;
  for (int j = 0; j < 3; ++j) {
    for (int l = 0; l < 3; ++l) tau += inv[j][l] * rho[j * 3 + l];
  }
  out.scalar = static_cast<double>(tau);
  return out;
}

const char* lie_kind_key(LieKind kind) {
  switch (kind) {
    case LieKind::Metric:
      return "g";
    case LieKind::Connection:
      return "nabla";
    case LieKind::Riemann:
      return "R";
    case LieKind::Ricci:
      return "rho";
  }
  return "?";
}

NumTensor fd_lie(LieKind kind, const Realized& r, const VectorField& x, const Point& p, double scale) {
  const MetricFn g = metric_evaluator(r);
  const Steps h = steps_at(p, scale);
  const Curv c{g, h};
  const RPoint q = to_r(p);

  std::array<Expr, 3> xe;
  for (int a = 0; a < 3; ++a) xe[a] = r.w.bind(x[a]);
  auto xv = [&](const RPoint& pt) {
    Flat v(3);
    for (int a = 0; a < 3; ++a) v[a] = eval_q(xe[a], r, pt);
    return v;
  };
  const Flat X = xv(q);
  const auto dX = partials(xv, q, h);  // dX[m][a] = d_m X^a

  std::vector<Slot> sig;
  std::function<Flat(const RPoint&)> field;
  switch (kind) {
    case LieKind::Metric:
      sig = slots("dd");
      field = [&](const RPoint& pt) { return c.metric(pt); };
      break;
    case LieKind::Connection:
      sig = slots("udd");
      field = [&](const RPoint& pt) { return c.gamma(pt); };
      break;
    case LieKind::Riemann:
      sig = slots("uddd");
      field = [&](const RPoint& pt) { return c.riemann(pt); };
      break;
    case LieKind::Ricci:
      sig = slots("dd");
      field = [&](const RPoint& pt) { return c.ricci(pt); };
      break;
  }
  const Flat T = field(q);
  const auto dT = partials(field, q, h);
  const int rank = static_cast<int>(sig.size());
  const std::size_t n = pow3(rank);

  Flat out(n, 0);
  std::vector<int> idx(rank);
  for (std::size_t f = 0; f < n; ++f) {
    std::size_t rest = f;
    for (int s = rank - 1; s >= 0; --s) {
      idx[s] = static_cast<int>(rest % 3);
      rest /= 3;
    }
    auto flat_of = [&](const std::vector<int>& id) {
      std::size_t k = 0;
      for (int v : id) k = k * 3 + static_cast<std::size_t>(v);
      return k;
    };
    Real v = 0;
    for (int m = 0; m < 3; ++m) v += X[m] * dT[m][f];
    for (int s = 0; s < rank; ++s) {
      std::vector<int> id = idx;
      for (int m = 0; m < 3; ++m) {
        id[s] = m;
        if (sig[s] == Slot::Up) {
          v -= T[flat_of(id)] * dX[m][idx[s]];
        } else {
          v += T[flat_of(id)] * dX[idx[s]][m];
        }
      }
    }
    out[f] = v;
  }

  if (kind == LieKind::Connection) {
    // Second partials d_i d_j X^k.
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        Flat dd(3);
        if (i == j) {
          const Flat a = xv(shift(q, i, h[i])), b = xv(shift(q, i, -h[i]));
          for (int k = 0; k < 3; ++k) dd[k] = (a[k] - 2 * X[k] + b[k]) / (h[i] * h[i]);
        } else {
          const Flat pp = xv(shift(shift(q, i, h[i]), j, h[j])), pm = xv(shift(shift(q, i, h[i]), j, -h[j]));
          const Flat mp = xv(shift(shift(q, i, -h[i]), j, h[j])), mm = xv(shift(shift(q, i, -h[i]), j, -h[j]));
          for (int k = 0; k < 3; ++k) dd[k] = (pp[k] - pm[k] - mp[k] + mm[k]) / (4 * h[i] * h[j]);
        }
        for (int k = 0; k < 3; ++k) out[k * 9 + i * 3 + j] += dd[k];
      }
    }
  }
  return to_num(sig, out);
}

NumTensor evaluate(const geo::Tensor& t, const Realized& r, const Point& p) {
  NumTensor out{t.signature(), {}};
  out.data.reserve(t.size());
  const auto ctx = r.qcontext(to_r(p));
  for (std::size_t i = 0; i < t.size(); ++i) {
    out.data.push_back(static_cast<double>(sym::eval(r.w.bind(t.component(i)), ctx)));
  }
  return out;
}

double relative_gap(const NumTensor& a, const NumTensor& b) {
  if (a.size() != b.size()) throw OracleError("tensor shapes differ");
  double gap = 0;
  for (std::size_t i = 0; i < a.size(); ++i) gap = std::max(gap, std::fabs(a.data[i] - b.data[i]));
  return gap / (1 + b.max_abs());
}

double flow_pullback_check(const Realized& r, const VectorField& x, const Point& p, const FlowOptions& o) {
  std::array<Expr, 3> xe;
  for (int a = 0; a < 3; ++a) xe[a] = r.w.bind(x[a]);
  auto rhs = [&](const RPoint& pt) {
    for (int a = 0; a < 3; ++a) {
      if (fabsq(pt[a]) > o.box) throw OracleError("flow leaves the sample box");
    }
    RPoint v;
    for (int a = 0; a < 3; ++a) v[a] = eval_q(xe[a], r, pt);
    return v;
  };
  auto flow = [&](RPoint pt) {
    const Real dt = Real(o.s) / o.steps;
    for (int n = 0; n < o.steps; ++n) {
      const RPoint k1 = rhs(pt);
      RPoint t2, t3, t4;
      for (int a = 0; a < 3; ++a) t2[a] = pt[a] + dt / 2 * k1[a];
      const RPoint k2 = rhs(t2);
      for (int a = 0; a < 3; ++a) t3[a] = pt[a] + dt / 2 * k2[a];
      const RPoint k3 = rhs(t3);
      for (int a = 0; a < 3; ++a) t4[a] = pt[a] + dt * k3[a];
      const RPoint k4 = rhs(t4);
      for (int a = 0; a < 3; ++a) pt[a] += dt / 6 * (k1[a] + 2 * k2[a] + 2 * k3[a] + k4[a]);
    }
    return pt;
  };

  const RPoint q = to_r(p);
  const MetricFn g = metric_evaluator(r);
  const Matrix g0 = g(q);
  const Matrix g1 = g(flow(q));
  // J[a][i] = d phi^a / d p^i.
  Matrix J{};
  for (int i = 0; i < 3; ++i) {
    const Real d = Real(1e-6) * (1 + fabsq(q[i]));
    const RPoint a = flow(shift(q, i, d)), b = flow(shift(q, i, -d));
    for (int k = 0; k < 3; ++k) J[k][i] = (a[k] - b[k]) / (2 * d);
  }
  const Real scale = expq(Real(-o.eta * o.s));
  Real defect = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Real v = 0;
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) v += g1[a][b] * J[a][i] * J[b][j];
      }
      defect = std::max(defect, fabsq(scale * v - g0[i][j]));
    }
  }
  return static_cast<double>(defect);
}

}  // namespace walker::oracle

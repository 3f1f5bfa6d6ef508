#include "walker/geometry/manifold.hpp"

#include "walker/symexpr/parse.hpp"

namespace walker::geo {

Expr WalkerManifold::f_d(int nx, int ny) const {
  Expr d = f_;
  if (nx) d = sym::diff(d, sym::kX, nx);
  if (ny) d = sym::diff(d, sym::kY, ny);
  return simplify(d);
}

Expr WalkerManifold::bind(const Expr& e) const {
  if (params_.empty()) return e;
  sym::Bindings b;
  for (const auto& [name, value] : params_) b.emplace(name, Expr(value));
  return sym::substitute(e, b);
}

Expr WalkerManifold::simplify(const Expr& e) const {
  return sym::apply_rules(sym::assume_positive(bind(e), positive_), rules_);
}

sym::ZeroTestResult WalkerManifold::zero_test(const Expr& e) const { return sym::zero_test(bind(e), rules_, zero_); }

WalkerManifold WalkerManifold::with_assumptions(const sym::RuleSet& rules, const std::set<std::string>& positive) const {
  WalkerManifold out = *this;
  out.rules_.insert(out.rules_.end(), rules.begin(), rules.end());
  out.positive_.insert(positive.begin(), positive.end());
  out.zero_.positive.insert(positive.begin(), positive.end());
  return out;
}

WalkerManifold WalkerManifold::with_seed(std::uint64_t seed) const {
  WalkerManifold out = *this;
  out.zero_.seed = seed;
  return out;
}

WalkerManifold WalkerManifold::with_tolerance(double tolerance) const {
  WalkerManifold out = *this;
  out.zero_.tolerance = tolerance;
  return out;
}

WalkerManifold build_manifold(const Expr& f, const ManifoldOptions& options) {
  WalkerManifold w;
  w.params_ = options.params;
  w.positive_ = options.positive;
  w.rules_ = options.rules;
  w.zero_ = options.zero;
  w.zero_.positive.insert(options.positive.begin(), options.positive.end());
  for (const auto& [name, value] : options.params) {
    if (sgn(value) <= 0) w.zero_.positive.erase(name);
  }
  w.f_ = w.simplify(f);
  if (sym::depends_on(w.f_, sym::kT)) {
    throw ManifoldError("defining function depends on t; strictly Walker metrics need f = f(x,y)");
  }
  w.fxx_status_ = w.is_zero(w.f_d(2, 0));
  switch (w.fxx_status_) {
    case Trilean::Zero:
      throw ManifoldError("flat manifold rejected: f_xx vanishes identically");
    case Trilean::Unknown:
      w.warnings_.push_back("could not decide f_xx != 0; curvature domain guard unverified");
      break;
    case Trilean::NonZero:
      break;
  }
  return w;
}

WalkerManifold build_manifold(std::string_view f_text, const ManifoldOptions& options) {
  return build_manifold(sym::parse(f_text), options);
}

}  // namespace walker::geo

#include "walker/symexpr/eval.hpp"

#include <functional>

namespace walker::sym {

void Realizations::set(const std::string& name, const Expr& body) {
  bodies_[name] = normalize(body);
  std::erase_if(cache_, [&](const auto& kv) { return std::get<0>(kv.first) == name; });
}

const Expr& Realizations::body(const std::string& name) const {
  auto it = bodies_.find(name);
  if (it == bodies_.end()) throw std::out_of_range("no realization for '" + name + "'");
  return it->second;
}

void Realizations::prepare(const SymbolSet& symbols) {
  for (const auto& [sig, max_orders] : symbols.funcs) {
    if (!has(sig.name)) continue;
    // Enumerate every multi-order dominated by the maximum.
    std::vector<int> orders(max_orders.size(), 0);
    std::function<void(std::size_t)> walk = [&](std::size_t slot) {
      if (slot == orders.size()) {
        Key key{sig.name, sig.args, orders};
        if (!cache_.count(key)) cache_.emplace(key, diff_orders(body(sig.name), sig.args, orders));
        return;
      }
      for (int o = 0; o <= max_orders[slot]; ++o) {
        orders[slot] = o;
        walk(slot + 1);
      }
      orders[slot] = 0;
    };
    walk(0);
  }
}

Expr Realizations::derivative(const std::string& name, const std::vector<int>& args,
                              const std::vector<int>& orders) const {
  auto it = cache_.find(Key{name, args, orders});
  if (it != cache_.end()) return it->second;
  const Expr& b = body(name);
  for (int c = 0; c < kDim; ++c) {
    if (depends_on(b, c) && std::find(args.begin(), args.end(), c) == args.end()) {
      throw EvalError("realization depends on a coordinate outside the argument list", name);
    }
  }
  return diff_orders(b, args, orders);
}

double eval_numeric(const Expr& e, const std::array<double, kDim>& point, const std::map<std::string, double>& params,
                    const Realizations* realizations) {
  EvalContext<double> ctx;
  ctx.point = point;
  ctx.params = params;
  ctx.realizations = realizations;
  return eval(e, ctx);
}

}  // namespace walker::sym

#include "walker/symexpr/realize.hpp"

#include <cmath>

namespace walker::sym {

namespace {

std::uint64_t splitmix(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Exponent vectors of total degree <= max_degree in `n` variables.
void monomials(std::size_t n, int max_degree, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (cur.size() == n) {
    out.push_back(cur);
    return;
  }
  int used = 0;
  for (int d : cur) used += d;
  for (int d = 0; d + used <= max_degree; ++d) {
    cur.push_back(d);
    monomials(n, max_degree, cur, out);
    cur.pop_back();
  }
}

}  // namespace

Rng Rng::stream(std::uint64_t root, std::uint64_t index) {
  std::uint64_t s = root ^ (0xd1b54a32d192ed03ULL * (index + 1));
  return Rng(splitmix(s));
}

std::uint64_t Rng::next() { return splitmix(state_); }

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Rational Rng::grid(int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>((hi - lo) * 64 + 1);
  const long k = static_cast<long>(next() % span) + lo * 64L;
  Rational q(k, 64);
  q.canonicalize();
  return q;
}

Expr random_realization(const std::vector<int>& args, Rng& rng, bool positive) {
  std::vector<std::vector<int>> exps;
  std::vector<int> cur;
  monomials(args.size(), 4, cur, exps);
  Expr body;
  for (const auto& ex : exps) {
    Expr term(rng.grid(-2, 2));
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (ex[i]) term = term * pow(Expr::coord(args[i]), ex[i]);
    }
    body = body + term;
  }
  Expr phase(rng.grid(-2, 2));
  for (int a : args) {
    Rational w = rng.grid(1, 2);
    if (rng.next() & 1) w = -w;
    phase = phase + Expr(w) * Expr::coord(a);
  }
  body = body + Expr(rng.grid(-2, 2)) * sin(phase);
  body = normalize(body);
  return positive ? normalize(exp(body / Expr(4))) : body;
}

void draw_symbols(const SymbolSet& symbols, const std::set<std::string>& positive, Rng& rng,
                  Realizations* realizations, std::map<std::string, double>* params) {
  if (realizations) {
    for (const auto& [sig, orders] : symbols.funcs) {
      if (realizations->has(sig.name)) continue;
      realizations->set(sig.name, random_realization(sig.args, rng, positive.count(sig.name) > 0));
    }
    realizations->prepare(symbols);
  }
  if (params) {
    for (const auto& p : symbols.params) {
      if (params->count(p)) continue;
      double v = rng.uniform(0.5, 2.0);
      if (!positive.count(p) && (rng.next() & 1)) v = -v;
      (*params)[p] = v;
    }
  }
}

}  // namespace walker::sym

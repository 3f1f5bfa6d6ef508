#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "walker/symexpr/eval.hpp"
#include "walker/symexpr/expr.hpp"

namespace walker::sym {

/// Small deterministic generator. Streams are derived from a root seed and an
/// index so that parallel probes never share state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  static Rng stream(std::uint64_t root, std::uint64_t index);

  std::uint64_t next();
  /// Uniform in [0, 1).
  double unit();
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  /// Exact rational with denominator 64, uniform on the grid in [lo, hi].
  Rational grid(int lo, int hi);

 private:
  std::uint64_t state_;
};

/// Random smooth stand-in for a function symbol: a polynomial of total degree
/// at most 4 in the symbol's arguments plus one sinusoid, coefficients in
/// [-2, 2]. Positive symbols are realized as exp of a quarter of such a body.
Expr random_realization(const std::vector<int>& args, Rng& rng, bool positive);

struct ParamDraw {
  std::map<std::string, double> values;
};

/// Realizations for every function symbol in `symbols` and values for every
/// free parameter (magnitude in [0.5, 2], random sign unless positive).
void draw_symbols(const SymbolSet& symbols, const std::set<std::string>& positive, Rng& rng,
                  Realizations* realizations, std::map<std::string, double>* params);

}  // namespace walker::sym

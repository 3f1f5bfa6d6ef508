#include <sstream>

#include "walker/symexpr/expr.hpp"

namespace walker::sym {

namespace {

enum Prec { kSum = 1, kProduct = 2, kPower = 3, kAtom = 4 };

std::string rational_str(const Rational& r) { return r.get_str(); }

struct Rendered {
  std::string text;
  int prec;
};

Rendered render(const Expr& e);

std::string wrap(const Rendered& r, int min_prec) {
  if (r.prec < min_prec) return "(" + r.text + ")";
  return r.text;
}

std::string func_text(const Node& n) {
  std::string out = n.name;
  int total = 0;
  for (int o : n.orders) total += o;
  if (total > 0) {
    if (n.args.size() == 1) {
      out.append(static_cast<std::size_t>(total), '\'');
    } else {
      out += "_{";
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        for (int k = 0; k < n.orders[i]; ++k) out += coord_name(n.args[i]);
      }
      out += "}";
    }
  }
  out += "(";
  for (std::size_t i = 0; i < n.args.size(); ++i) {
    if (i) out += ",";
    out += coord_name(n.args[i]);
  }
  out += ")";
  return out;
}

// A product is rendered as  [-]coef*num1*num2/(den1*den2).
Rendered render_product(const std::vector<Expr>& factors) {
  Rational coef = 1;
  std::vector<std::string> num, den;
  for (const auto& f : factors) {
    if (f.is_number()) {
      coef *= f.value();
      continue;
    }
    if (f.kind() == Kind::Pow && f.value().get_den() == 1 && sgn(f.value()) < 0) {
      Rational k = -f.value();
      std::string base = wrap(render(f.children()[0]), kAtom);
      den.push_back(k == 1 ? base : base + "^" + rational_str(k));
      continue;
    }
    num.push_back(wrap(render(f), kProduct + 1));
  }
  const bool negative = sgn(coef) < 0;
  if (negative) coef = -coef;
  mpz_class cn = coef.get_num(), cd = coef.get_den();
  if (cn != 1 || num.empty()) num.insert(num.begin(), cn.get_str());
  if (cd != 1) den.insert(den.begin(), cd.get_str());

  std::string text;
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (i) text += "*";
    text += num[i];
  }
  if (!den.empty()) {
    text += "/";
    if (den.size() == 1) {
      text += den[0];
    } else {
      text += "(";
      for (std::size_t i = 0; i < den.size(); ++i) {
        if (i) text += "*";
        text += den[i];
      }
      text += ")";
    }
  }
  if (negative) text = "-" + text;
  return {text, kProduct};
}

Rendered render(const Expr& e) {
  const Node& n = e.node();
  switch (n.kind) {
    case Kind::Number: {
      if (n.value.get_den() != 1) {
        std::string s = rational_str(n.value);
        return {s, kProduct};
      }
      if (sgn(n.value) < 0) return {rational_str(n.value), kProduct};
      return {rational_str(n.value), kAtom};
    }
    case Kind::Coord:
      return {coord_name(n.coord), kAtom};
    case Kind::Param:
      return {n.name, kAtom};
    case Kind::Func:
      return {func_text(n), kAtom};
    case Kind::Add: {
      std::string text;
      bool first = true;
      for (const auto& c : n.children) {
        Rendered r = render(c);
        std::string s = r.prec < kSum + 1 ? "(" + r.text + ")" : r.text;
        if (first) {
          text = s;
          first = false;
        } else if (!s.empty() && s[0] == '-') {
          text += " - " + s.substr(1);
        } else {
          text += " + " + s;
        }
      }
      return {text, kSum};
    }
    case Kind::Mul:
      return render_product(n.children);
    case Kind::Pow: {
      if (n.value.get_den() == 1 && sgn(n.value) < 0) return render_product({e});
      std::string base = wrap(render(n.children[0]), kAtom);
      std::string ex = n.value.get_den() == 1 && sgn(n.value) > 0 ? rational_str(n.value)
                                                                : "(" + rational_str(n.value) + ")";
      return {base + "^" + ex, kPower};
    }
    case Kind::Exp:
      return {"exp(" + render(n.children[0]).text + ")", kAtom};
    case Kind::Sin:
      return {"sin(" + render(n.children[0]).text + ")", kAtom};
    case Kind::Cos:
      return {"cos(" + render(n.children[0]).text + ")", kAtom};
    case Kind::Sqrt:
      return {"sqrt(" + render(n.children[0]).text + ")", kAtom};
    case Kind::Abs:
      return {"abs(" + render(n.children[0]).text + ")", kAtom};
  }
  return {"?", kAtom};
}

}  // namespace

std::string to_string(const Expr& e) { return render(e).text; }

}  // namespace walker::sym

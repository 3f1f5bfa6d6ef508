#pragma once

#include <functional>
#include <string>
#include <vector>

#include "walker/symexpr/expr.hpp"

namespace walker::geo {

using sym::Expr;

enum class Slot : unsigned char { Up, Down };

/// Dense component array over the coordinates (t, x, y), one entry of
/// `signature` per index slot.
class Tensor {
 public:
  using Index = std::vector<int>;

  Tensor() = default;
  explicit Tensor(std::vector<Slot> signature);

  static Tensor covariant(int rank) { return Tensor(std::vector<Slot>(static_cast<std::size_t>(rank), Slot::Down)); }

  int rank() const { return static_cast<int>(signature_.size()); }
  const std::vector<Slot>& signature() const { return signature_; }
  std::size_t size() const { return components_.size(); }

  const Expr& at(const Index& idx) const { return components_[flat(idx)]; }
  Expr& at(const Index& idx) { return components_[flat(idx)]; }

  template <class... I>
  const Expr& operator()(I... i) const {
    return at(Index{static_cast<int>(i)...});
  }
  template <class... I>
  Expr& operator()(I... i) {
    return at(Index{static_cast<int>(i)...});
  }

  const Expr& component(std::size_t flat_index) const { return components_[flat_index]; }
  Expr& component(std::size_t flat_index) { return components_[flat_index]; }
  Index unflatten(std::size_t flat_index) const;

  /// Calls fn(index) for every index in lexicographic order.
  void for_each_index(const std::function<void(const Index&)>& fn) const;

  Tensor map(const std::function<Expr(const Expr&)>& fn) const;

  bool all_zero_literals() const;

  /// Index label such as "^t_xyx" for this tensor's signature.
  std::string label(const Index& idx) const;

  /// One line per structurally nonzero component, "name^t_xy = value", in
  /// index order.
  std::vector<std::string> render(const std::string& name) const;

 private:
  std::size_t flat(const Index& idx) const;

  std::vector<Slot> signature_;
  std::vector<Expr> components_;
};

Tensor operator-(const Tensor& a, const Tensor& b);
Tensor operator+(const Tensor& a, const Tensor& b);
Tensor operator*(const Expr& s, const Tensor& a);

}  // namespace walker::geo

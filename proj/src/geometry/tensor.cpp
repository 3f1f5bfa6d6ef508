#include "walker/geometry/tensor.hpp"

#include <stdexcept>

namespace walker::geo {

Tensor::Tensor(std::vector<Slot> signature) : signature_(std::move(signature)) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < signature_.size(); ++i) n *= sym::kDim;
  components_.assign(n, Expr());
}

std::size_t Tensor::flat(const Index& idx) const {
  if (idx.size() != signature_.size()) throw std::out_of_range("tensor index depth mismatch");
  std::size_t f = 0;
  for (int i : idx) {
    if (i < 0 || i >= sym::kDim) throw std::out_of_range("tensor index out of range");
    f = f * sym::kDim + static_cast<std::size_t>(i);
  }
  return f;
}

Tensor::Index Tensor::unflatten(std::size_t flat_index) const {
  Index idx(signature_.size());
  for (std::size_t k = idx.size(); k-- > 0;) {
    idx[k] = static_cast<int>(flat_index % sym::kDim);
    flat_index /= sym::kDim;
  }
  return idx;
}

void Tensor::for_each_index(const std::function<void(const Index&)>& fn) const {
  for (std::size_t i = 0; i < components_.size(); ++i) fn(unflatten(i));
}

Tensor Tensor::map(const std::function<Expr(const Expr&)>& fn) const {
  Tensor out(signature_);
  for (std::size_t i = 0; i < components_.size(); ++i) out.components_[i] = fn(components_[i]);
  return out;
}

bool Tensor::all_zero_literals() const {
  for (const auto& c : components_) {
    if (!c.is_zero_literal()) return false;
  }
  return true;
}

std::string Tensor::label(const Index& idx) const {
  std::string up, down;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    (signature_[k] == Slot::Up ? up : down) += sym::coord_name(idx[k]);
  }
  std::string out;
  if (!up.empty()) out += "^" + up;
  if (!down.empty()) out += "_" + down;
  return out;
}

std::vector<std::string> Tensor::render(const std::string& name) const {
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].is_zero_literal()) continue;
    lines.push_back(name + label(unflatten(i)) + " = " + sym::to_string(components_[i]));
  }
  return lines;
}

namespace {

void check_same(const Tensor& a, const Tensor& b) {
  if (a.signature() != b.signature()) throw std::invalid_argument("tensor signature mismatch");
}

}  // namespace

Tensor operator-(const Tensor& a, const Tensor& b) {
  check_same(a, b);
  Tensor out(a.signature());
  for (std::size_t i = 0; i < a.size(); ++i) out.component(i) = a.component(i) - b.component(i);
  return out;
}

Tensor operator+(const Tensor& a, const Tensor& b) {
  check_same(a, b);
  Tensor out(a.signature());
  for (std::size_t i = 0; i < a.size(); ++i) out.component(i) = a.component(i) + b.component(i);
  return out;
}

Tensor operator*(const Expr& s, const Tensor& a) {
  return a.map([&](const Expr& c) { return s * c; });
}

}  // namespace walker::geo

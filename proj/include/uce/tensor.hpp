#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace uce {

/// Lexicographic indexing of the basis of V^{⊗order} for dim V = base:
/// (i_0, ..., i_{order-1}) -> ((i_0 * base + i_1) * base + ...).
class TensorShape {
 public:
  TensorShape(std::size_t base, std::size_t order) : base_(base), order_(order) {
    size_ = 1;
    for (std::size_t k = 0; k < order; ++k) {
      if (base != 0 && size_ > (std::size_t{1} << 32) / base) throw std::length_error("tensor power too large");
      size_ *= base;
    }
  }

  std::size_t base() const { return base_; }
  std::size_t order() const { return order_; }
  std::size_t size() const { return size_; }

  std::uint32_t index(std::span<const std::uint32_t> digits) const {
    std::size_t idx = 0;
    for (const auto d : digits) idx = idx * base_ + d;
    return static_cast<std::uint32_t>(idx);
  }

  std::vector<std::uint32_t> digits(std::size_t idx) const {
    std::vector<std::uint32_t> out(order_);
    for (std::size_t k = order_; k-- > 0;) {
      out[k] = static_cast<std::uint32_t>(idx % base_);
      idx /= base_;
    }
    return out;
  }

 private:
  std::size_t base_;
  std::size_t order_;
  std::size_t size_;
};

}  // namespace uce

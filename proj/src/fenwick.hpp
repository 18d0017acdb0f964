#pragma once

#include <cstddef>
#include <vector>

namespace socnet::detail {

// Binary indexed tree over non-negative weights. Supports point updates,
// prefix totals and inverse-CDF search in O(log n).
template <typename T>
class Fenwick {
 public:
  explicit Fenwick(std::size_t size) : tree_(size + 1, T{}), values_(size, T{}) {
    high_bit_ = 1;
    while (high_bit_ * 2 <= size) high_bit_ *= 2;
  }

  std::size_t size() const { return values_.size(); }
  T total() const { return total_; }
  T value(std::size_t i) const { return values_[i]; }

  void add(std::size_t i, T delta) {
    values_[i] += delta;
    total_ += delta;
    for (std::size_t k = i + 1; k < tree_.size(); k += k & (~k + 1)) tree_[k] += delta;
  }

  void set(std::size_t i, T value) { add(i, value - values_[i]); }

  // Sum of entries [0, end).
  T prefix(std::size_t end) const {
    T sum{};
    for (std::size_t k = end; k > 0; k -= k & (~k + 1)) sum += tree_[k];
    return sum;
  }

  // Smallest index whose inclusive prefix total exceeds x. Values of x at or
  // beyond the total (rounding at the upper edge) map to the last positive entry.
  std::size_t find(double x) const {
    std::size_t pos = 0;
    for (std::size_t step = high_bit_; step > 0; step /= 2) {
      const std::size_t next = pos + step;
      if (next < tree_.size() && static_cast<double>(tree_[next]) <= x) {
        pos = next;
        x -= static_cast<double>(tree_[next]);
      }
    }
    if (pos >= values_.size()) {
      pos = values_.size();
      while (pos > 0 && !(values_[pos - 1] > T{})) --pos;
      return pos == 0 ? 0 : pos - 1;
    }
    return pos;
  }

 private:
  std::vector<T> tree_;
  std::vector<T> values_;
  T total_{};
  std::size_t high_bit_ = 1;
};

}  // namespace socnet::detail

#pragma once

#include "genturan/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace genturan {

/// Vertex partition V0 + V1..Vk with |V1| = ... = |Vk| and |V0| < k.
/// classes()[0] is the exceptional class V0, stored even when empty.
class Partition {
 public:
  Partition() = default;

  Partition(std::size_t n, std::vector<std::vector<Vertex>> classes) : classes_(std::move(classes)) {
    if (classes_.size() < 2) throw std::invalid_argument("partition needs V0 and at least one class");
    std::size_t k = classes_.size() - 1;
    std::size_t class_size = classes_[1].size();
    if (class_size == 0) throw std::invalid_argument("partition classes must be nonempty");
    owner_.assign(n, -1);
    for (std::size_t i = 0; i < classes_.size(); ++i) {
      auto& cls = classes_[i];
      std::sort(cls.begin(), cls.end());
      if (i > 0 && cls.size() != class_size)
        throw std::invalid_argument("partition classes have unequal sizes");
      for (Vertex v : cls) {
        if (v >= n) throw std::invalid_argument("partition vertex out of range");
        if (owner_[v] != -1) throw std::invalid_argument("vertex " + std::to_string(v) + " in two classes");
        owner_[v] = static_cast<int>(i);
      }
    }
    if (std::find(owner_.begin(), owner_.end(), -1) != owner_.end())
      throw std::invalid_argument("partition does not cover every vertex");
    if (classes_[0].size() >= k) throw std::invalid_argument("exceptional class must have fewer than k vertices");
  }

  /// k classes of floor(n/k) consecutive vertices; the remainder goes to V0.
  static Partition equitable(std::size_t n, std::size_t k) {
    if (k == 0 || n < k) throw std::invalid_argument("equitable partition needs 1 <= k <= n");
    std::size_t size = n / k;
    std::vector<std::vector<Vertex>> classes(k + 1);
    Vertex v = 0;
    for (std::size_t i = 1; i <= k; ++i)
      for (std::size_t j = 0; j < size; ++j) classes[i].push_back(v++);
    for (; v < n; ++v) classes[0].push_back(v);
    return Partition(n, std::move(classes));
  }

  std::size_t order() const { return owner_.size(); }
  std::size_t class_count() const { return classes_.size() - 1; }
  std::size_t class_size() const { return classes_[1].size(); }
  const std::vector<Vertex>& exceptional() const { return classes_[0]; }
  /// Class i for 1 <= i <= k; 0 is V0.
  const std::vector<Vertex>& cls(std::size_t i) const { return classes_[i]; }
  const std::vector<std::vector<Vertex>>& classes() const { return classes_; }
  /// Index of the class holding v (0 for V0).
  std::size_t class_of(Vertex v) const { return static_cast<std::size_t>(owner_[v]); }

  friend bool operator==(const Partition& a, const Partition& b) { return a.classes_ == b.classes_; }

 private:
  std::vector<std::vector<Vertex>> classes_;
  std::vector<int> owner_;
};

}  // namespace genturan

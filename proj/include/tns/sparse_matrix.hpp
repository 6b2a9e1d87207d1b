#pragma once

#include <cmath>
#include <map>

#include "tns/types.hpp"

namespace tns {

/// Sparse symmetric matrix with zero diagonal, stored once per unordered
/// vertex pair. Absent entries are zero.
class SymmetricMatrix {
 public:
  using Storage = std::map<EdgeKey, double>;

  double at(const EdgeKey& k) const {
    auto it = entries_.find(k);
    return it == entries_.end() ? 0.0 : it->second;
  }
  double at(VertexId a, VertexId b) const { return a == b ? 0.0 : at(EdgeKey(a, b)); }

  void set(const EdgeKey& k, double v) { entries_[k] = v; }
  void add(const EdgeKey& k, double v) { entries_[k] += v; }
  void scale(double s) {
    for (auto& [k, v] : entries_) v *= s;
  }

  std::size_t nnz() const noexcept { return entries_.size(); }
  const Storage& entries() const noexcept { return entries_; }

  /// Frobenius norm over the full (both triangles) matrix.
  double frobenius() const {
    double s = 0.0;
    for (const auto& [k, v] : entries_) s += 2.0 * v * v;
    return std::sqrt(s);
  }

 private:
  Storage entries_;
};

}  // namespace tns

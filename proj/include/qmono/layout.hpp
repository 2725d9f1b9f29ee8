#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmono {

/// Ordered list of subsystem dimensions of a tensor-product Hilbert space.
/// Subsystem 0 is the most significant factor of the flattened basis index.
struct SystemLayout {
  std::vector<int> dims;
  std::vector<std::string> labels;  // optional, empty or one per subsystem

  SystemLayout() = default;
  explicit SystemLayout(std::vector<int> d, std::vector<std::string> l = {})
      : dims(std::move(d)), labels(std::move(l)) {
    for (int dim : dims)
      if (dim < 2) throw std::invalid_argument("SystemLayout: every dimension must be >= 2");
    if (!labels.empty() && labels.size() != dims.size())
      throw std::invalid_argument("SystemLayout: labels must be empty or match dims");
  }

  int subsystem_count() const { return static_cast<int>(dims.size()); }

  long total_dim() const {
    long d = 1;
    for (int dim : dims) d *= dim;
    return d;
  }

  void check_index(int s) const {
    if (s < 0 || s >= subsystem_count())
      throw std::out_of_range("subsystem index " + std::to_string(s) + " out of range");
  }

  /// Flat-index stride of subsystem s (first subsystem most significant).
  long stride(int s) const {
    check_index(s);
    long st = 1;
    for (int i = s + 1; i < subsystem_count(); ++i) st *= dims[i];
    return st;
  }

  /// Digit of subsystem s in the flat basis index.
  int digit(long flat, int s) const { return static_cast<int>(flat / stride(s)) % dims[s]; }

  friend bool operator==(const SystemLayout& a, const SystemLayout& b) { return a.dims == b.dims; }
};

inline SystemLayout concat(const SystemLayout& a, const SystemLayout& b) {
  std::vector<int> dims = a.dims;
  dims.insert(dims.end(), b.dims.begin(), b.dims.end());
  std::vector<std::string> labels;
  if (!a.labels.empty() || !b.labels.empty()) {
    labels = a.labels.empty() ? std::vector<std::string>(a.dims.size()) : a.labels;
    auto bl = b.labels.empty() ? std::vector<std::string>(b.dims.size()) : b.labels;
    labels.insert(labels.end(), bl.begin(), bl.end());
  }
  return SystemLayout(std::move(dims), std::move(labels));
}

}  // namespace qmono

#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace lpot {

/// Multi-index in n variables (n = 2 or 3), indexing mixed partial
/// derivatives and monomials. order() is |b|, factorial() is b!.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::initializer_list<int> entries);
  explicit MultiIndex(const std::vector<int>& entries);

  int dim() const { return dim_; }
  int order() const;
  std::int64_t factorial() const;
  int operator[](int j) const { return e_[static_cast<std::size_t>(j)]; }

  /// this + e_j
  MultiIndex bumped(int j) const;

  /// x^b; x must have dim() coordinates.
  double monomial(const double* x) const;
  /// d/dx_j of x^b, evaluated at x.
  double monomial_derivative(const double* x, int j) const;

  bool operator==(const MultiIndex& o) const {
    return dim_ == o.dim_ && e_ == o.e_;
  }
  std::string str() const;

  /// All b with |b| = k in lexicographic order; count is k+1 for n = 2.
  static std::vector<MultiIndex> all_of_order(int dim, int k);

 private:
  int dim_ = 0;
  std::array<int, 3> e_{{0, 0, 0}};
};

}  // namespace lpot

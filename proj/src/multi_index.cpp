#include "lpot/multi_index.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lpot {

namespace {

void check_entry(int e) {
  if (e < 0) throw std::invalid_argument("multi-index entries must be >= 0");
}

}  // namespace

MultiIndex::MultiIndex(std::initializer_list<int> entries) {
  if (entries.size() != 2 && entries.size() != 3)
    throw std::invalid_argument("multi-index dimension must be 2 or 3");
  dim_ = static_cast<int>(entries.size());
  int j = 0;
  for (int e : entries) {
    check_entry(e);
    e_[static_cast<std::size_t>(j++)] = e;
  }
}

MultiIndex::MultiIndex(const std::vector<int>& entries) {
  if (entries.size() != 2 && entries.size() != 3)
    throw std::invalid_argument("multi-index dimension must be 2 or 3");
  dim_ = static_cast<int>(entries.size());
  for (int j = 0; j < dim_; ++j) {
    check_entry(entries[static_cast<std::size_t>(j)]);
    e_[static_cast<std::size_t>(j)] = entries[static_cast<std::size_t>(j)];
  }
}

int MultiIndex::order() const {
  int s = 0;
  for (int j = 0; j < dim_; ++j) s += e_[static_cast<std::size_t>(j)];
  return s;
}

std::int64_t MultiIndex::factorial() const {
  std::int64_t f = 1;
  for (int j = 0; j < dim_; ++j)
    for (int m = 2; m <= e_[static_cast<std::size_t>(j)]; ++m) f *= m;
  return f;
}

MultiIndex MultiIndex::bumped(int j) const {
  MultiIndex b = *this;
  b.e_[static_cast<std::size_t>(j)] += 1;
  return b;
}

double MultiIndex::monomial(const double* x) const {
  double v = 1.0;
  for (int j = 0; j < dim_; ++j) {
    const int p = e_[static_cast<std::size_t>(j)];
    for (int m = 0; m < p; ++m) v *= x[j];
  }
  return v;
}

double MultiIndex::monomial_derivative(const double* x, int j) const {
  const int p = e_[static_cast<std::size_t>(j)];
  if (p == 0) return 0.0;
  double v = static_cast<double>(p);
  for (int m = 0; m < p - 1; ++m) v *= x[j];
  for (int i = 0; i < dim_; ++i) {
    if (i == j) continue;
    const int q = e_[static_cast<std::size_t>(i)];
    for (int m = 0; m < q; ++m) v *= x[i];
  }
  return v;
}

std::string MultiIndex::str() const {
  std::ostringstream os;
  os << '(';
  for (int j = 0; j < dim_; ++j) {
    if (j) os << ',';
    os << e_[static_cast<std::size_t>(j)];
  }
  os << ')';
  return os.str();
}

std::vector<MultiIndex> MultiIndex::all_of_order(int dim, int k) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("dim must be 2 or 3");
  if (k < 0) throw std::invalid_argument("order must be >= 0");
  std::vector<MultiIndex> out;
  if (dim == 2) {
    out.reserve(static_cast<std::size_t>(k) + 1);
    for (int a = 0; a <= k; ++a) out.push_back(MultiIndex{a, k - a});
  } else {
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k - a; ++b) out.push_back(MultiIndex{a, b, k - a - b});
  }
  return out;
}

}  // namespace lpot

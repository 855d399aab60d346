#pragma once

#include <cstddef>
#include <vector>

#include "rse/lattice.hpp"
#include "rse/rational.hpp"

namespace rse {

/// Dense square rational matrix; used for exact operator identities.
class RationalMatrix {
 public:
  explicit RationalMatrix(std::size_t n) : n_(n), data_(n * n, Rational(0)) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  Rational& at(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  Element apply(const Element& f) const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<Rational> data_;
};

/// Matrix whose column j is op(d_j).
template <typename Op>
RationalMatrix matrix_of(std::size_t n, Op&& op) {
  RationalMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Element col = op(Element::basis(n, j));
    for (std::size_t i = 0; i < n; ++i) m.at(i, j) = col[i];
  }
  return m;
}

}  // namespace rse

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rse/rational.hpp"

// Finite-dimensional Riesz space model: R^n with the coordinatewise order and
// weak order unit e = (1, ..., 1). Every element is e-bounded, so the
// f-algebra E_e is the whole space and its product is coordinatewise.

namespace rse {

struct SpaceDescriptor {
  std::size_t dimension = 1;
  friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;
};

class Element {
 public:
  /// Throws std::invalid_argument on an empty coordinate list.
  explicit Element(std::vector<Rational> coords);

  static Element zero(std::size_t n);
  static Element unit(std::size_t n);
  static Element basis(std::size_t n, std::size_t index);

  SpaceDescriptor space() const { return {coords_.size()}; }
  std::size_t dimension() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Rational> coords() const { return coords_; }

  bool is_zero() const;
  bool is_positive() const;  // every coordinate >= 0

  friend bool operator==(const Element&, const Element&) = default;

 private:
  std::vector<Rational> coords_;
};

/// Component of e: a 0/1 vector. Band projections act as multiplication by it.
class Component {
 public:
  explicit Component(std::vector<std::uint8_t> bits);

  static Component zero(std::size_t n);
  static Component unit(std::size_t n);
  static Component basis(std::size_t n, std::size_t index);
  /// Bit i of `mask` becomes coordinate i. Requires n <= 64.
  static Component from_mask(std::size_t n, std::uint64_t mask);
  /// Throws NotAComponent unless every coordinate is 0 or 1.
  static Component from_element(const Element& x);

  SpaceDescriptor space() const { return {bits_.size()}; }
  std::size_t dimension() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  std::span<const std::uint8_t> bits() const { return bits_; }
  std::size_t count() const;
  bool is_zero() const { return count() == 0; }

  Element to_element() const;

  friend bool operator==(const Component&, const Component&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

Element meet(const Element& a, const Element& b);
Element join(const Element& a, const Element& b);
Element abs(const Element& a);
Element add(const Element& a, const Element& b);
Element sub(const Element& a, const Element& b);
Element scale(const Rational& c, const Element& a);
Element negate(const Element& a);

/// a <= b in the coordinatewise order.
bool leq(const Element& a, const Element& b);

/// Multiplication in the f-algebra E_e. On components it coincides with meet.
Element f_product(const Element& a, const Element& b);

bool is_component(const Element& a);

Element band_project(const Component& p, const Element& f);

/// Component generating the band of x >= 0. Throws NegativeInput otherwise.
Component component_of_band(const Element& x);

Component meet(const Component& p, const Component& q);
Component join(const Component& p, const Component& q);
Component complement(const Component& p);  // e - p

/// Sup-norm, used by prefix diagnostics.
Rational sup_norm(const Element& a);

}  // namespace rse

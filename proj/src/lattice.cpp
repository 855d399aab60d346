#include "rse/lattice.hpp"

#include <algorithm>
#include <stdexcept>

#include "rse/errors.hpp"

namespace rse {

namespace {

void require_same(std::size_t a, std::size_t b) {
  if (a != b) throw DimensionMismatch(a, b);
}

template <typename Op>
Element zip(const Element& a, const Element& b, Op op) {
  require_same(a.dimension(), b.dimension());
  std::vector<Rational> out;
  out.reserve(a.dimension());
  for (std::size_t i = 0; i < a.dimension(); ++i) out.push_back(op(a[i], b[i]));
  return Element(std::move(out));
}

template <typename Op>
Element map(const Element& a, Op op) {
  std::vector<Rational> out;
  out.reserve(a.dimension());
  for (const auto& x : a.coords()) out.push_back(op(x));
  return Element(std::move(out));
}

}  // namespace

Element::Element(std::vector<Rational> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("element must have dimension >= 1");
}

Element Element::zero(std::size_t n) { return Element(std::vector<Rational>(n, Rational(0))); }

Element Element::unit(std::size_t n) { return Element(std::vector<Rational>(n, Rational(1))); }

Element Element::basis(std::size_t n, std::size_t index) {
  if (index >= n) throw std::out_of_range("basis index out of range");
  std::vector<Rational> c(n, Rational(0));
  c[index] = 1;
  return Element(std::move(c));
}

bool Element::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& x) { return x == 0; });
}

bool Element::is_positive() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& x) { return x >= 0; });
}

Component::Component(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw std::invalid_argument("component must have dimension >= 1");
  for (auto b : bits_) {
    if (b > 1) throw NotAComponent("component bits must be 0 or 1");
  }
}

Component Component::zero(std::size_t n) { return Component(std::vector<std::uint8_t>(n, 0)); }

Component Component::unit(std::size_t n) { return Component(std::vector<std::uint8_t>(n, 1)); }

Component Component::basis(std::size_t n, std::size_t index) {
  if (index >= n) throw std::out_of_range("basis index out of range");
  std::vector<std::uint8_t> b(n, 0);
  b[index] = 1;
  return Component(std::move(b));
}

Component Component::from_mask(std::size_t n, std::uint64_t mask) {
  if (n > 64) throw std::invalid_argument("from_mask supports n <= 64");
  std::vector<std::uint8_t> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<std::uint8_t>((mask >> i) & 1U);
  return Component(std::move(b));
}

Component Component::from_element(const Element& x) {
  if (!is_component(x)) throw NotAComponent("element is not a component of e");
  std::vector<std::uint8_t> b(x.dimension());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = x[i] == 1 ? 1 : 0;
  return Component(std::move(b));
}

std::size_t Component::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

Element Component::to_element() const {
  std::vector<Rational> c;
  c.reserve(bits_.size());
  for (auto b : bits_) c.emplace_back(b);
  return Element(std::move(c));
}

Element meet(const Element& a, const Element& b) {
  return zip(a, b, [](const Rational& x, const Rational& y) { return x < y ? x : y; });
}

Element join(const Element& a, const Element& b) {
  return zip(a, b, [](const Rational& x, const Rational& y) { return x < y ? y : x; });
}

Element abs(const Element& a) {
  return map(a, [](const Rational& x) { return Rational(::abs(x)); });
}

Element add(const Element& a, const Element& b) {
  return zip(a, b, [](const Rational& x, const Rational& y) { return Rational(x + y); });
}

Element sub(const Element& a, const Element& b) {
  return zip(a, b, [](const Rational& x, const Rational& y) { return Rational(x - y); });
}

Element scale(const Rational& c, const Element& a) {
  return map(a, [&c](const Rational& x) { return Rational(c * x); });
}

Element negate(const Element& a) {
  return map(a, [](const Rational& x) { return Rational(-x); });
}

bool leq(const Element& a, const Element& b) {
  require_same(a.dimension(), b.dimension());
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Element f_product(const Element& a, const Element& b) {
  return zip(a, b, [](const Rational& x, const Rational& y) { return Rational(x * y); });
}

bool is_component(const Element& a) {
  return std::all_of(a.coords().begin(), a.coords().end(),
                     [](const Rational& x) { return x == 0 || x == 1; });
}

Element band_project(const Component& p, const Element& f) {
  require_same(p.dimension(), f.dimension());
  std::vector<Rational> out(f.dimension(), Rational(0));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (p[i]) out[i] = f[i];
  }
  return Element(std::move(out));
}

Component component_of_band(const Element& x) {
  std::vector<std::uint8_t> b(x.dimension());
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (x[i] < 0) throw NegativeInput("component_of_band requires x >= 0");
    b[i] = x[i] > 0 ? 1 : 0;
  }
  return Component(std::move(b));
}

Component meet(const Component& p, const Component& q) {
  require_same(p.dimension(), q.dimension());
  std::vector<std::uint8_t> b(p.dimension());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = p.bits()[i] & q.bits()[i];
  return Component(std::move(b));
}

Component join(const Component& p, const Component& q) {
  require_same(p.dimension(), q.dimension());
  std::vector<std::uint8_t> b(p.dimension());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = p.bits()[i] | q.bits()[i];
  return Component(std::move(b));
}

Component complement(const Component& p) {
  std::vector<std::uint8_t> b(p.dimension());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = p.bits()[i] ^ 1U;
  return Component(std::move(b));
}

Rational sup_norm(const Element& a) {
  Rational best = 0;
  for (const auto& x : a.coords()) {
    Rational ax = ::abs(x);
    if (ax > best) best = ax;
  }
  return best;
}

}  // namespace rse

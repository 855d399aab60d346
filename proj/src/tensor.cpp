#include "rse/tensor.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "rse/errors.hpp"

namespace rse {

namespace {

using Bits = std::vector<std::uint64_t>;

Bits make_bits(std::size_t n) { return Bits((n + 63) / 64, 0); }
void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }
bool test_bit(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1U; }

bool is_subset(const Bits& a, const Bits& b) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    if (a[w] & ~b[w]) return false;
  }
  return true;
}

bool is_empty(const Bits& a) {
  return std::all_of(a.begin(), a.end(), [](std::uint64_t w) { return w == 0; });
}

Component to_component(const Bits& b, std::size_t n) {
  std::vector<std::uint8_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = test_bit(b, i) ? 1 : 0;
  return Component(std::move(out));
}

// Bit strings compared index 0 first, so {0} sorts before {1}.
bool bit_string_less(const Component& a, const Component& b) {
  return std::lexicographical_compare(a.bits().begin(), a.bits().end(), b.bits().begin(),
                                      b.bits().end(), std::greater<>());
}

std::uint64_t lcm_checked(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t g = std::gcd(a, b);
  if (a / g > UINT64_MAX / b) throw std::overflow_error("period lcm overflows");
  return a / g * b;
}

}  // namespace

Element tensor_elements(const Element& f, const Element& g) {
  std::vector<Rational> out;
  out.reserve(f.dimension() * g.dimension());
  for (const auto& x : f.coords()) {
    for (const auto& y : g.coords()) out.emplace_back(x * y);
  }
  return Element(std::move(out));
}

Component tensor_component(const Component& p, const Component& q) {
  std::vector<std::uint8_t> out;
  out.reserve(p.dimension() * q.dimension());
  for (auto x : p.bits()) {
    for (auto y : q.bits()) out.push_back(static_cast<std::uint8_t>(x & y));
  }
  return Component(std::move(out));
}

RectangleCover component_decompose(const TensorSpace& space, const Component& u) {
  if (u.dimension() != space.dimension()) throw DimensionMismatch(space.dimension(), u.dimension());
  const std::size_t n = space.left;
  const std::size_t m = space.right;

  // Maximal rectangles are the closed pairs (R, C): C is the common support of
  // the rows R, and R is every row whose support contains C. The closed
  // column sets are exactly the nonempty intersections of row supports.
  std::vector<Bits> row_support(n, make_bits(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (u[space.index(i, j)]) set_bit(row_support[i], j);
    }
  }
  std::vector<Bits> closed;
  for (const auto& row : row_support) {
    if (is_empty(row)) continue;
    std::vector<Bits> fresh{row};
    for (const auto& c : closed) {
      Bits meet = c;
      for (std::size_t w = 0; w < meet.size(); ++w) meet[w] &= row[w];
      if (!is_empty(meet)) fresh.push_back(std::move(meet));
    }
    for (auto& f : fresh) {
      if (std::find(closed.begin(), closed.end(), f) == closed.end()) closed.push_back(std::move(f));
    }
  }

  RectangleCover cover;
  for (const auto& cols : closed) {
    Bits rows = make_bits(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (is_subset(cols, row_support[i])) set_bit(rows, i);
    }
    cover.rectangles.emplace_back(to_component(rows, n), to_component(cols, m));
  }
  std::sort(cover.rectangles.begin(), cover.rectangles.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return bit_string_less(a.first, b.first);
    return bit_string_less(a.second, b.second);
  });

  Component joined = Component::zero(space.dimension());
  bool below = true;
  for (const auto& [p, q] : cover.rectangles) {
    const Component r = tensor_component(p, q);
    below = below && meet(r, u) == r;
    joined = join(joined, r);
  }
  cover.reconstructs = below && joined == u;
  return cover;
}

RectangleCover component_decompose(const TensorSpace& space, const Element& u) {
  return component_decompose(space, Component::from_element(u));
}

ConditionalExpectationOp tensor_T(const ConditionalExpectationOp& t1,
                                  const ConditionalExpectationOp& t2) {
  const TensorSpace space{t1.dimension(), t2.dimension()};
  std::vector<std::vector<std::size_t>> blocks;
  for (const auto& b : t1.blocks()) {
    for (const auto& c : t2.blocks()) {
      std::vector<std::size_t> cell;
      for (auto i : b) {
        for (auto j : c) cell.push_back(space.index(i, j));
      }
      blocks.push_back(std::move(cell));
    }
  }
  std::vector<Rational> weights;
  weights.reserve(space.dimension());
  for (const auto& w1 : t1.weights()) {
    for (const auto& w2 : t2.weights()) weights.emplace_back(w1 * w2);
  }
  return ConditionalExpectationOp(std::move(blocks), std::move(weights));
}

RieszHomMap tensor_S(const RieszHomMap& s1, const RieszHomMap& s2) {
  const TensorSpace space{s1.dimension(), s2.dimension()};
  std::vector<std::size_t> sigma(space.dimension());
  for (std::size_t i = 0; i < space.left; ++i) {
    for (std::size_t j = 0; j < space.right; ++j) sigma[space.index(i, j)] = space.index(s1(i), s2(j));
  }
  return RieszHomMap(std::move(sigma));
}

CEPS tensor_ceps(const CEPS& a, const CEPS& b) {
  try {
    return validate_ceps(tensor_T(a.T(), b.T()), tensor_S(a.S(), b.S()));
  } catch (const NotMeasurePreserving& e) {
    throw std::logic_error(std::string("tensor product failed validation: ") + e.what());
  }
}

Element j_multiply(const TensorSpace& space, const Element& m) {
  if (space.left != space.right) {
    throw std::invalid_argument("j_multiply needs a square tensor space");
  }
  if (m.dimension() != space.dimension()) throw DimensionMismatch(space.dimension(), m.dimension());
  std::vector<Rational> out;
  out.reserve(space.left);
  for (std::size_t i = 0; i < space.left; ++i) out.push_back(m[space.index(i, i)]);
  return Element(std::move(out));
}

std::vector<Component> tensor_density_zero(const std::vector<Component>& pseq,
                                           const std::vector<Component>& qseq) {
  const std::size_t len = std::min(pseq.size(), qseq.size());
  std::vector<Component> out;
  out.reserve(len);
  for (std::size_t k = 0; k < len; ++k) out.push_back(tensor_component(pseq[k], qseq[k]));
  return out;
}

EventuallyPeriodicSeq tensor_sequences(const EventuallyPeriodicSeq& a,
                                       const EventuallyPeriodicSeq& b) {
  const std::uint64_t pre = std::max(a.preperiod().size(), b.preperiod().size());
  const std::uint64_t per = lcm_checked(a.period().size(), b.period().size());
  std::vector<Element> head;
  std::vector<Element> block;
  for (std::uint64_t k = 0; k < pre + per; ++k) {
    (k < pre ? head : block).push_back(tensor_elements(a.value(k), b.value(k)));
  }
  return EventuallyPeriodicSeq(std::move(head), std::move(block));
}

EventuallyPeriodicSeq tensor_density_zero(const EventuallyPeriodicSeq& pseq,
                                          const EventuallyPeriodicSeq& qseq) {
  auto check = [](const EventuallyPeriodicSeq& s) {
    for (const auto& v : s.preperiod()) Component::from_element(v);
    for (const auto& v : s.period()) Component::from_element(v);
  };
  check(pseq);
  check(qseq);
  return tensor_sequences(pseq, qseq);
}

}  // namespace rse

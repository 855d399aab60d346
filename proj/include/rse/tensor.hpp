#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rse/dynamics.hpp"
#include "rse/lattice.hpp"
#include "rse/operators.hpp"

namespace rse {

/// E (dim n) tensor F (dim m), realized as R^{n*m} with cell (i, j) stored at
/// index i*m + j. The completed Fremlin tensor product of two finite
/// coordinate spaces is this matrix space.
struct TensorSpace {
  std::size_t left = 1;
  std::size_t right = 1;

  std::size_t dimension() const { return left * right; }
  std::size_t index(std::size_t i, std::size_t j) const { return i * right + j; }
  SpaceDescriptor space() const { return {dimension()}; }
  friend bool operator==(const TensorSpace&, const TensorSpace&) = default;
};

Element tensor_elements(const Element& f, const Element& g);
Component tensor_component(const Component& p, const Component& q);

/// A family of rectangles p (x) q <= u together with the check that their
/// join reproduces u.
struct RectangleCover {
  std::vector<std::pair<Component, Component>> rectangles;
  bool reconstructs = false;
};

/// Inclusion-maximal rectangles contained in the component u of e (x) e'.
/// Rectangles are ordered by row set, then column set, each compared as a
/// bit string read from index 0 with 1 ranking before 0. Throws NotAComponent or DimensionMismatch.
RectangleCover component_decompose(const TensorSpace& space, const Component& u);
RectangleCover component_decompose(const TensorSpace& space, const Element& u);

/// Product partition {B x C} with weights w1_i * w2_j.
ConditionalExpectationOp tensor_T(const ConditionalExpectationOp& t1,
                                  const ConditionalExpectationOp& t2);
/// (i, j) -> (sigma1(i), sigma2(j)).
RieszHomMap tensor_S(const RieszHomMap& s1, const RieszHomMap& s2);

/// The product system, passed through validate_ceps. A validation failure
/// here is a library defect and is reported as std::logic_error.
CEPS tensor_ceps(const CEPS& a, const CEPS& b);

/// Multiplication map induced by (f, g) -> f g on a square tensor space:
/// the diagonal of M. Throws std::invalid_argument for left != right.
Element j_multiply(const TensorSpace& space, const Element& m);

/// r_k = p_k (x) q_k termwise for finite prefixes (length = shorter input).
std::vector<Component> tensor_density_zero(const std::vector<Component>& pseq,
                                           const std::vector<Component>& qseq);
/// Exact version: preperiod and period of the result cover both inputs.
EventuallyPeriodicSeq tensor_density_zero(const EventuallyPeriodicSeq& pseq,
                                          const EventuallyPeriodicSeq& qseq);

/// Termwise tensor of two eventually periodic sequences.
EventuallyPeriodicSeq tensor_sequences(const EventuallyPeriodicSeq& a,
                                       const EventuallyPeriodicSeq& b);

}  // namespace rse

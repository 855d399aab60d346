#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rse/lattice.hpp"
#include "rse/matrix.hpp"
#include "rse/operators.hpp"

namespace rse {

/// Cycle structure of a self-map sigma of {0..n-1}.
///
/// Every orbit enters exactly one cycle after `depth(i)` steps. With
/// K = max depth and d = lcm of cycle lengths, sigma^{k+d}(i) = sigma^k(i)
/// for all k >= K.
class FunctionalGraph {
 public:
  explicit FunctionalGraph(const RieszHomMap& map);

  std::size_t size() const { return sigma_.size(); }
  std::size_t depth(std::size_t i) const { return depth_[i]; }
  std::size_t cycle_of(std::size_t i) const { return cycle_of_[i]; }
  /// Cycles in sigma order, each starting at its smallest index; sorted by it.
  const std::vector<std::vector<std::size_t>>& cycles() const { return cycles_; }
  std::size_t preperiod() const { return max_depth_; }  // K
  /// d; throws std::overflow_error if the lcm does not fit in 64 bits.
  std::uint64_t period() const;
  /// sigma^k(i).
  std::size_t iterate(std::size_t i, std::uint64_t k) const;

 private:
  std::vector<std::size_t> sigma_;
  std::vector<std::size_t> depth_;
  std::vector<std::size_t> cycle_of_;
  std::vector<std::vector<std::size_t>> cycles_;
  std::size_t max_depth_ = 0;
};

/// Exact representation of k -> value(k): the preperiod is listed, then the
/// period block repeats forever.
class EventuallyPeriodicSeq {
 public:
  /// Throws std::invalid_argument on an empty period, DimensionMismatch on
  /// mixed dimensions.
  EventuallyPeriodicSeq(std::vector<Element> preperiod, std::vector<Element> period);

  const std::vector<Element>& preperiod() const { return preperiod_; }
  const std::vector<Element>& period() const { return period_; }
  std::size_t dimension() const { return period_.front().dimension(); }
  const Element& value(std::uint64_t k) const;

  friend bool operator==(const EventuallyPeriodicSeq&, const EventuallyPeriodicSeq&) = default;

 private:
  std::vector<Element> preperiod_;
  std::vector<Element> period_;
};

/// S_n f = (1/n) sum_{k<n} S^k f. n must be >= 1.
Element cesaro_prefix(const CEPS& sys, const Element& f, std::uint64_t n);
Element cesaro_prefix(const RieszHomMap& map, const Element& f, std::uint64_t n);

/// L_S f: coordinate i is the unweighted mean of f over the cycle reached from i.
Element ergodic_limit(const RieszHomMap& map, const Element& f);
RationalMatrix ergodic_limit_matrix(const RieszHomMap& map);

/// Basis of I_S = {f : Sf = f}: indicators of the connected components of the
/// functional graph (one per cycle).
std::vector<Component> invariant_basis(const RieszHomMap& map);

/// k -> T((S^k p) . q), preperiod length K and period d of the map's graph.
EventuallyPeriodicSeq seq_T_SkP_q(const CEPS& sys, const Component& p, const Component& q);

/// Order limit of the Cesaro averages: the mean of the period block.
Element cesaro_limit(const EventuallyPeriodicSeq& seq);

/// Cesaro limit of |value(k) - target|.
Element cesaro_limit_abs_dev(const EventuallyPeriodicSeq& seq, const Element& target);

/// (1/n) sum_{k<n} value(k), evaluated term by term.
Element prefix_average(const EventuallyPeriodicSeq& seq, std::uint64_t n);

}  // namespace rse

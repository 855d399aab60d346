#include "rse/mixing.hpp"

#include <algorithm>

#include "rse/errors.hpp"

namespace rse {

namespace {

// Columns of T and of L_S are both constant on their support, so a column is
// compared as (support, value).
struct FlatColumn {
  const std::vector<std::size_t>* support = nullptr;
  Rational value;
};

bool same_column(const FlatColumn& a, const FlatColumn& b) {
  const bool a_empty = a.support == nullptr || a.support->empty();
  const bool b_empty = b.support == nullptr || b.support->empty();
  if (a_empty || b_empty) return a_empty == b_empty;
  return *a.support == *b.support && a.value == b.value;
}

// Shared per-system data for the basis-pair routes.
struct BasisView {
  explicit BasisView(const CEPS& sys) : sys(sys), graph(sys.S()) {
    const auto& T = sys.T();
    const std::size_t n = sys.dimension();
    column_value.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      column_value.push_back(T.weights()[j] / T.block_weight(T.block_of(j)));
    }
    basin.resize(graph.cycles().size());
    for (std::size_t i = 0; i < n; ++i) basin[graph.cycle_of(i)].push_back(i);
  }

  bool on_cycle_of(std::size_t i, std::size_t j) const {
    return graph.depth(i) == 0 && graph.cycle_of(i) == graph.cycle_of(j);
  }
  std::size_t cycle_length(std::size_t j) const { return graph.cycles()[graph.cycle_of(j)].size(); }

  // T d_i . T d_j is w_i w_j / W^2 on the common block, zero across blocks.
  Rational target_value(std::size_t i, std::size_t j) const {
    const auto& T = sys.T();
    if (T.block_of(i) != T.block_of(j)) return 0;
    return column_value[i] * column_value[j];
  }

  Element block_constant(std::size_t j, const Rational& value) const {
    std::vector<Rational> out(sys.dimension(), Rational(0));
    for (auto x : sys.T().blocks()[sys.T().block_of(j)]) out[x] = value;
    return Element(std::move(out));
  }

  // a_k = T((S^k d_i) . d_j) = [sigma^k(j) = i] T d_j.
  Element term(std::size_t i, std::size_t j, std::uint64_t k) const {
    return graph.iterate(j, k) == i ? sys.T().column(j) : Element::zero(sys.dimension());
  }

  // Pair sequence with preperiod K and the cycle length of j as period.
  EventuallyPeriodicSeq pair_sequence(std::size_t i, std::size_t j) const {
    std::vector<Element> head;
    std::vector<Element> block;
    const std::uint64_t pre = graph.preperiod();
    for (std::uint64_t k = 0; k < pre; ++k) head.push_back(term(i, j, k));
    for (std::uint64_t k = pre; k < pre + cycle_length(j); ++k) block.push_back(term(i, j, k));
    return EventuallyPeriodicSeq(std::move(head), std::move(block));
  }

  const CEPS& sys;
  FunctionalGraph graph;
  std::vector<Rational> column_value;
  std::vector<std::vector<std::size_t>> basin;  // indices draining into each cycle
};

bool operator_equality_route(const BasisView& view) {
  const auto& T = view.sys.T();
  for (std::size_t j = 0; j < view.sys.dimension(); ++j) {
    const FlatColumn t_col{&T.blocks()[T.block_of(j)], view.column_value[j]};
    FlatColumn l_col;
    if (view.graph.depth(j) == 0) {
      l_col.support = &view.basin[view.graph.cycle_of(j)];
      l_col.value = Rational(1, static_cast<unsigned long>(view.cycle_length(j)));
    }
    if (!same_column(t_col, l_col)) return false;
  }
  return true;
}

}  // namespace

ErgodicityDecision is_ergodic(const CEPS& sys) {
  const BasisView view(sys);
  ErgodicityDecision out;
  out.operator_equality = operator_equality_route(view);

  // Cesaro limit of a_k for the pair (i, j) is (1/L) T d_j when i lies on the
  // cycle of j (length L), else 0. Both it and the target live on block(j).
  out.component_limits = true;
  const std::size_t n = sys.dimension();
  for (std::size_t i = 0; i < n && out.component_limits; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational share = view.on_cycle_of(i, j)
                                 ? Rational(1, static_cast<unsigned long>(view.cycle_length(j)))
                                 : Rational(0);
      const Rational limit_value = share * view.column_value[j];
      const Rational target_value = view.target_value(i, j);
      if (limit_value == target_value) continue;
      out.component_limits = false;
      ErgodicWitness w{i, j, view.block_constant(j, limit_value),
                       view.block_constant(j, target_value), Element::zero(n)};
      w.gap = sub(w.limit, w.target);
      out.witness = std::move(w);
      break;
    }
  }
  out.ergodic = out.operator_equality;
  return out;
}

WeakMixingDecision is_weak_mixing(const CEPS& sys) {
  const BasisView view(sys);
  const std::size_t n = sys.dimension();
  const std::uint64_t pre = view.graph.preperiod();
  WeakMixingDecision out;
  out.weak_mixing = true;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // On the tail a_k is either T d_j (when sigma^k(j) = i) or 0.
      const Rational target_value = view.target_value(i, j);
      const std::uint64_t len = view.cycle_length(j);
      for (std::uint64_t k = pre; k < pre + len; ++k) {
        const bool hit = view.graph.iterate(j, k) == i;
        const Rational value = hit ? view.column_value[j] : Rational(0);
        if (value == target_value) continue;
        Element value_elem = view.block_constant(j, value);
        Element target_elem = view.block_constant(j, target_value);
        Element deviation = abs(sub(value_elem, target_elem));
        Element residual = cesaro_limit_abs_dev(view.pair_sequence(i, j), target_elem);
        out.witness = MixingWitness{i, j, k, std::move(value_elem), std::move(target_elem),
                                    std::move(deviation), std::move(residual)};
        out.weak_mixing = false;
        return out;
      }
    }
  }
  return out;
}

MixingReport analyze(const CEPS& sys) {
  auto ergodic = is_ergodic(sys);
  auto mixing = is_weak_mixing(sys);
  if (mixing.weak_mixing && !ergodic.ergodic) {
    throw InternalDefect("weak mixing system reported as non-ergodic");
  }
  MixingReport r;
  r.ergodic = ergodic.ergodic;
  r.weak_mixing = mixing.weak_mixing;
  r.operator_equality = ergodic.operator_equality;
  r.component_limits = ergodic.component_limits;
  r.route_agreement = ergodic.routes_agree();
  r.ergodic_witness = std::move(ergodic.witness);
  r.mixing_witness = std::move(mixing.witness);
  return r;
}

ExhaustiveDecision exhaustive_component_decisions(const CEPS& sys) {
  const std::size_t n = sys.dimension();
  if (n > kExhaustiveMaxDim) {
    throw std::invalid_argument("exhaustive component oracle limited to n <= " +
                                std::to_string(kExhaustiveMaxDim));
  }
  ExhaustiveDecision out{true, true};
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t pm = 0; pm < count; ++pm) {
    const Component p = Component::from_mask(n, pm);
    const Element tp = sys.T().apply(p.to_element());
    for (std::uint64_t qm = 0; qm < count; ++qm) {
      const Component q = Component::from_mask(n, qm);
      const Element target = f_product(tp, sys.T().apply(q.to_element()));
      const auto seq = seq_T_SkP_q(sys, p, q);
      if (out.ergodic && cesaro_limit(seq) != target) out.ergodic = false;
      if (out.weak_mixing && !cesaro_limit_abs_dev(seq, target).is_zero()) out.weak_mixing = false;
      if (!out.ergodic && !out.weak_mixing) return out;
    }
  }
  return out;
}

}  // namespace rse

#include "rse/dynamics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "rse/errors.hpp"

namespace rse {

namespace {

void require_same(std::size_t a, std::size_t b) {
  if (a != b) throw DimensionMismatch(a, b);
}

Element mean_of(const std::vector<Element>& values) {
  std::vector<Rational> acc(values.front().dimension(), Rational(0));
  for (const auto& v : values) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
  }
  const Rational len(static_cast<unsigned long>(values.size()));
  for (auto& x : acc) x /= len;
  return Element(std::move(acc));
}

}  // namespace

FunctionalGraph::FunctionalGraph(const RieszHomMap& map)
    : sigma_(map.sigma()), depth_(map.dimension(), 0), cycle_of_(map.dimension(), 0) {
  const std::size_t n = sigma_.size();
  enum : char { kFresh, kOnPath, kDone };
  std::vector<char> state(n, kFresh);
  std::vector<std::size_t> path;

  for (std::size_t start = 0; start < n; ++start) {
    if (state[start] != kFresh) continue;
    path.clear();
    std::size_t x = start;
    while (state[x] == kFresh) {
      state[x] = kOnPath;
      path.push_back(x);
      x = sigma_[x];
    }
    std::size_t tail_end = path.size();
    if (state[x] == kOnPath) {
      // New cycle: path from the first occurrence of x onwards.
      const auto pos = static_cast<std::size_t>(std::find(path.begin(), path.end(), x) - path.begin());
      std::vector<std::size_t> cycle(path.begin() + static_cast<std::ptrdiff_t>(pos), path.end());
      std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
      const std::size_t id = cycles_.size();
      for (auto c : cycle) {
        depth_[c] = 0;
        cycle_of_[c] = id;
        state[c] = kDone;
      }
      cycles_.push_back(std::move(cycle));
      tail_end = pos;
    }
    for (std::size_t k = tail_end; k-- > 0;) {
      const std::size_t v = path[k];
      depth_[v] = depth_[sigma_[v]] + 1;
      cycle_of_[v] = cycle_of_[sigma_[v]];
      state[v] = kDone;
    }
  }

  // Renumber cycles by smallest member so ids do not depend on discovery order.
  std::vector<std::size_t> order(cycles_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return cycles_[a].front() < cycles_[b].front(); });
  std::vector<std::size_t> new_id(cycles_.size());
  std::vector<std::vector<std::size_t>> sorted;
  for (std::size_t k = 0; k < order.size(); ++k) {
    new_id[order[k]] = k;
    sorted.push_back(std::move(cycles_[order[k]]));
  }
  cycles_ = std::move(sorted);
  for (auto& c : cycle_of_) c = new_id[c];
  max_depth_ = n == 0 ? 0 : *std::max_element(depth_.begin(), depth_.end());
}

std::uint64_t FunctionalGraph::period() const {
  std::uint64_t d = 1;
  for (const auto& c : cycles_) {
    const std::uint64_t len = c.size();
    const std::uint64_t g = std::gcd(d, len);
    if (d / g > UINT64_MAX / len) throw std::overflow_error("period of functional graph overflows");
    d = d / g * len;
  }
  return d;
}

std::size_t FunctionalGraph::iterate(std::size_t i, std::uint64_t k) const {
  while (k > 0 && depth_[i] > 0) {
    i = sigma_[i];
    --k;
  }
  if (k == 0) return i;
  // On the cycle: jump by the remaining steps modulo the cycle length.
  const auto& cycle = cycles_[cycle_of_[i]];
  const auto pos = static_cast<std::uint64_t>(std::find(cycle.begin(), cycle.end(), i) - cycle.begin());
  return cycle[(pos + k) % cycle.size()];
}

EventuallyPeriodicSeq::EventuallyPeriodicSeq(std::vector<Element> preperiod,
                                             std::vector<Element> period)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
  if (period_.empty()) throw std::invalid_argument("eventually periodic sequence needs a period");
  const std::size_t n = period_.front().dimension();
  for (const auto& v : preperiod_) require_same(n, v.dimension());
  for (const auto& v : period_) require_same(n, v.dimension());
}

const Element& EventuallyPeriodicSeq::value(std::uint64_t k) const {
  if (k < preperiod_.size()) return preperiod_[k];
  return period_[(k - preperiod_.size()) % period_.size()];
}

Element cesaro_prefix(const RieszHomMap& map, const Element& f, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("cesaro_prefix needs n >= 1");
  require_same(map.dimension(), f.dimension());
  std::vector<Rational> acc(f.dimension(), Rational(0));
  Element term = f;
  for (std::uint64_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += term[i];
    if (k + 1 < n) term = map.apply(term);
  }
  const Rational len(mpz_class(std::to_string(n)));
  for (auto& x : acc) x /= len;
  return Element(std::move(acc));
}

Element cesaro_prefix(const CEPS& sys, const Element& f, std::uint64_t n) {
  return cesaro_prefix(sys.S(), f, n);
}

Element ergodic_limit(const RieszHomMap& map, const Element& f) {
  require_same(map.dimension(), f.dimension());
  const FunctionalGraph graph(map);
  std::vector<Rational> cycle_mean;
  cycle_mean.reserve(graph.cycles().size());
  for (const auto& cycle : graph.cycles()) {
    Rational acc = 0;
    for (auto x : cycle) acc += f[x];
    cycle_mean.push_back(acc / Rational(static_cast<unsigned long>(cycle.size())));
  }
  std::vector<Rational> out(f.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = cycle_mean[graph.cycle_of(i)];
  return Element(std::move(out));
}

RationalMatrix ergodic_limit_matrix(const RieszHomMap& map) {
  const FunctionalGraph graph(map);
  RationalMatrix m(map.dimension());
  for (std::size_t i = 0; i < map.dimension(); ++i) {
    const auto& cycle = graph.cycles()[graph.cycle_of(i)];
    const Rational share(1, static_cast<unsigned long>(cycle.size()));
    for (auto x : cycle) m.at(i, x) = share;
  }
  return m;
}

std::vector<Component> invariant_basis(const RieszHomMap& map) {
  const FunctionalGraph graph(map);
  std::vector<std::vector<std::uint8_t>> bits(graph.cycles().size(),
                                               std::vector<std::uint8_t>(map.dimension(), 0));
  for (std::size_t i = 0; i < map.dimension(); ++i) bits[graph.cycle_of(i)][i] = 1;
  std::vector<Component> out;
  out.reserve(bits.size());
  for (auto& b : bits) out.emplace_back(std::move(b));
  return out;
}

EventuallyPeriodicSeq seq_T_SkP_q(const CEPS& sys, const Component& p, const Component& q) {
  require_same(sys.dimension(), p.dimension());
  require_same(sys.dimension(), q.dimension());
  const FunctionalGraph graph(sys.S());
  const std::uint64_t pre = graph.preperiod();
  const std::uint64_t per = graph.period();
  const Element q_elem = q.to_element();

  std::vector<Element> head;
  std::vector<Element> block;
  Component power = p;  // S^k p
  for (std::uint64_t k = 0; k < pre + per; ++k) {
    Element value = sys.T().apply(band_project(power, q_elem));
    (k < pre ? head : block).push_back(std::move(value));
    power = sys.S().apply(power);
  }
  return EventuallyPeriodicSeq(std::move(head), std::move(block));
}

Element cesaro_limit(const EventuallyPeriodicSeq& seq) { return mean_of(seq.period()); }

Element cesaro_limit_abs_dev(const EventuallyPeriodicSeq& seq, const Element& target) {
  require_same(seq.dimension(), target.dimension());
  std::vector<Element> devs;
  devs.reserve(seq.period().size());
  for (const auto& v : seq.period()) devs.push_back(abs(sub(v, target)));
  return mean_of(devs);
}

Element prefix_average(const EventuallyPeriodicSeq& seq, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("prefix_average needs n >= 1");
  std::vector<Rational> acc(seq.dimension(), Rational(0));
  for (std::uint64_t k = 0; k < n; ++k) {
    const Element& v = seq.value(k);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
  }
  const Rational len(mpz_class(std::to_string(n)));
  for (auto& x : acc) x /= len;
  return Element(std::move(acc));
}

}  // namespace rse

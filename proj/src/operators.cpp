#include "rse/operators.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include "rse/errors.hpp"

namespace rse {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Element RationalMatrix::apply(const Element& f) const {
  if (f.dimension() != n_) throw DimensionMismatch(n_, f.dimension());
  std::vector<Rational> out(n_, Rational(0));
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t c = 0; c < n_; ++c) {
      if (at(r, c) != 0) out[r] += at(r, c) * f[c];
    }
  }
  return Element(std::move(out));
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.n_ != b.n_) throw DimensionMismatch(a.n_, b.n_);
  const std::size_t n = a.n_;
  RationalMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Rational& aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b.at(k, j) != 0) out.at(i, j) += aik * b.at(k, j);
      }
    }
  }
  return out;
}

ConditionalExpectationOp::ConditionalExpectationOp(std::vector<std::vector<std::size_t>> blocks,
                                                   std::vector<Rational> weights)
    : blocks_(std::move(blocks)), weights_(std::move(weights)) {
  const std::size_t n = weights_.size();
  if (n == 0) throw std::invalid_argument("conditional expectation needs dimension >= 1");
  for (std::size_t i = 0; i < n; ++i) {
    if (weights_[i] <= 0) {
      throw std::invalid_argument("weight " + std::to_string(i) + " is not strictly positive");
    }
  }
  std::vector<int> seen(n, 0);
  for (auto& block : blocks_) {
    if (block.empty()) throw std::invalid_argument("partition contains an empty block");
    std::sort(block.begin(), block.end());
    for (auto i : block) {
      if (i >= n) throw std::invalid_argument("partition index " + std::to_string(i) + " out of range");
      if (seen[i]++) throw std::invalid_argument("partition index " + std::to_string(i) + " repeated");
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw std::invalid_argument("partition does not cover every index");
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  block_of_.resize(n);
  block_weight_.assign(blocks_.size(), Rational(0));
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (auto i : blocks_[b]) {
      block_of_[i] = b;
      block_weight_[b] += weights_[i];
    }
  }
}

ConditionalExpectationOp ConditionalExpectationOp::identity(std::size_t n) {
  std::vector<std::vector<std::size_t>> blocks(n);
  for (std::size_t i = 0; i < n; ++i) blocks[i] = {i};
  return {std::move(blocks), std::vector<Rational>(n, Rational(1))};
}

ConditionalExpectationOp ConditionalExpectationOp::global_mean(std::size_t n) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return {{std::move(all)}, std::vector<Rational>(n, Rational(1, static_cast<unsigned long>(n)))};
}

Element ConditionalExpectationOp::apply(const Element& f) const {
  if (f.dimension() != dimension()) throw DimensionMismatch(dimension(), f.dimension());
  std::vector<Rational> out(dimension());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    Rational acc = 0;
    for (auto j : blocks_[b]) acc += weights_[j] * f[j];
    acc /= block_weight_[b];
    for (auto i : blocks_[b]) out[i] = acc;
  }
  return Element(std::move(out));
}

Element ConditionalExpectationOp::column(std::size_t j) const {
  std::vector<Rational> out(dimension(), Rational(0));
  const std::size_t b = block_of_.at(j);
  const Rational value = weights_[j] / block_weight_[b];
  for (auto i : blocks_[b]) out[i] = value;
  return Element(std::move(out));
}

RationalMatrix ConditionalExpectationOp::matrix() const {
  RationalMatrix m(dimension());
  for (std::size_t j = 0; j < dimension(); ++j) {
    const std::size_t b = block_of_[j];
    const Rational value = weights_[j] / block_weight_[b];
    for (auto i : blocks_[b]) m.at(i, j) = value;
  }
  return m;
}

RieszHomMap::RieszHomMap(std::vector<std::size_t> sigma) : sigma_(std::move(sigma)) {
  if (sigma_.empty()) throw std::invalid_argument("map needs dimension >= 1");
  for (std::size_t i = 0; i < sigma_.size(); ++i) {
    if (sigma_[i] >= sigma_.size()) {
      throw std::invalid_argument("map value at " + std::to_string(i) + " out of range");
    }
  }
}

RieszHomMap RieszHomMap::identity(std::size_t n) {
  std::vector<std::size_t> s(n);
  std::iota(s.begin(), s.end(), std::size_t{0});
  return RieszHomMap(std::move(s));
}

RieszHomMap RieszHomMap::rotation(std::size_t n) {
  std::vector<std::size_t> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = (i + 1) % n;
  return RieszHomMap(std::move(s));
}

Element RieszHomMap::apply(const Element& f) const {
  if (f.dimension() != dimension()) throw DimensionMismatch(dimension(), f.dimension());
  std::vector<Rational> out;
  out.reserve(dimension());
  for (auto s : sigma_) out.push_back(f[s]);
  return Element(std::move(out));
}

Component RieszHomMap::apply(const Component& p) const {
  if (p.dimension() != dimension()) throw DimensionMismatch(dimension(), p.dimension());
  std::vector<std::uint8_t> out;
  out.reserve(dimension());
  for (auto s : sigma_) out.push_back(p.bits()[s]);
  return Component(std::move(out));
}

RationalMatrix RieszHomMap::matrix() const {
  RationalMatrix m(dimension());
  for (std::size_t i = 0; i < dimension(); ++i) m.at(i, sigma_[i]) = 1;
  return m;
}

Element apply_T(const ConditionalExpectationOp& T, const Element& f) { return T.apply(f); }

Element apply_S(const RieszHomMap& S, const Element& f) { return S.apply(f); }

CEPS validate_ceps(const ConditionalExpectationOp& T, const RieszHomMap& S) {
  const std::size_t n = T.dimension();
  if (S.dimension() != n) throw DimensionMismatch(n, S.dimension());

  // S d_j is the indicator of sigma^{-1}(j); T of it is, per block B, the
  // preimage weight inside B over the weight of B. T d_j is w_j / W_B on the
  // block of j and zero elsewhere, so the two agree exactly when the whole
  // preimage sits in block(j) and carries weight w_j.
  std::vector<std::vector<std::size_t>> preimage(n);
  for (std::size_t i = 0; i < n; ++i) preimage[S(i)].push_back(i);

  // Witness: the first j that loses mass (preimage weight < w_j), else the
  // first failing j. Total mass is conserved, so any failure has a lossy j
  // unless mass only moved between blocks.
  std::optional<std::size_t> first_failure;
  std::optional<std::size_t> first_loss;
  std::string loss_detail;
  std::string failure_detail;
  for (std::size_t j = 0; j < n && !first_loss; ++j) {
    Rational total = 0;
    bool leaves_block = false;
    for (auto i : preimage[j]) {
      leaves_block = leaves_block || T.block_of(i) != T.block_of(j);
      total += T.weights()[i];
    }
    if (!leaves_block && total == T.weights()[j]) continue;
    const std::string detail = "preimage weight " + format_rational(total) + " vs w_j = " +
                               format_rational(T.weights()[j]) +
                               (leaves_block ? " (preimage leaves the block)" : "");
    if (!first_failure) {
      first_failure = j;
      failure_detail = detail;
    }
    if (total < T.weights()[j]) {
      first_loss = j;
      loss_detail = detail;
    }
  }
  if (first_loss) throw NotMeasurePreserving(*first_loss, loss_detail);
  if (first_failure) throw NotMeasurePreserving(*first_failure, failure_detail);
  return CEPS(T, S);
}

}  // namespace rse

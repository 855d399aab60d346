#include "rse/mixing.hpp"

#include <algorithm>
#include <limits>

#include "rse/errors.hpp"

namespace rse {

namespace {

constexpr std::uint64_t kNoLevel = std::numeric_limits<std::uint64_t>::max();

Rational ratio(const mpz_class& num, std::uint64_t den) {
  Rational r(num, mpz_class(std::to_string(den)));
  r.canonicalize();
  return r;
}

Element average_at(const std::vector<Element>& seq, std::uint64_t n) {
  std::vector<Rational> acc(seq.front().dimension(), Rational(0));
  for (std::uint64_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += seq[k][i];
  }
  const Rational len(mpz_class(std::to_string(n)));
  for (auto& a : acc) a /= len;
  return Element(std::move(acc));
}

// First coordinate whose average at n is nonzero and above half its average
// at floor(n/10); none when n < 10 and every average at n is zero.
std::optional<std::size_t> stalled_coordinate(const Element& earlier, const Element& at_horizon) {
  for (std::size_t i = 0; i < at_horizon.dimension(); ++i) {
    if (at_horizon[i] == 0) continue;
    if (2 * at_horizon[i] > earlier[i]) return i;
  }
  return std::nullopt;
}

bool fits_small(const Rational& r) {
  return r.get_num().fits_slong_p() && r.get_den().fits_slong_p() &&
         abs(r.get_num()) < (mpz_class(1) << 31) && r.get_den() < (mpz_class(1) << 31);
}

// count / n < theta, exactly.
bool density_below(std::uint64_t count, std::uint64_t n, const Rational& theta, bool small) {
  if (small) {
    const auto num = static_cast<__int128>(theta.get_num().get_si());
    const auto den = static_cast<__int128>(theta.get_den().get_si());
    return static_cast<__int128>(count) * den < num * static_cast<__int128>(n);
  }
  Rational density(mpz_class(std::to_string(count)), mpz_class(std::to_string(n)));
  density.canonicalize();
  return density < theta;
}

}  // namespace

std::vector<std::uint64_t> checkpoint_schedule(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = 10; c < n; c *= 10) {
    out.push_back(c);
    if (c > std::numeric_limits<std::uint64_t>::max() / 10) break;
  }
  out.push_back(n);
  return out;
}

DensityCertificate density_zero_check(const EventuallyPeriodicSeq& seq) {
  for (const auto& v : seq.preperiod()) Component::from_element(v);
  for (const auto& v : seq.period()) Component::from_element(v);
  DensityCertificate cert;
  cert.mode = DensityMode::Exact;
  cert.limit = cesaro_limit(seq);
  cert.density_zero = cert.limit->is_zero();
  cert.horizon = seq.preperiod().size() + seq.period().size();
  return cert;
}

DensityCertificate density_zero_check(const std::vector<Component>& prefix, std::uint64_t horizon) {
  if (prefix.empty()) throw std::invalid_argument("density check on an empty sequence");
  if (horizon == 0 || horizon > prefix.size()) {
    throw std::invalid_argument("horizon must lie in [1, sequence length]");
  }
  const std::size_t dim = prefix.front().dimension();
  for (const auto& p : prefix) {
    if (p.dimension() != dim) throw DimensionMismatch(dim, p.dimension());
  }

  DensityCertificate cert;
  cert.mode = DensityMode::Prefix;
  cert.horizon = horizon;

  // Integer counts; averages materialized only at checkpoints.
  const auto schedule = checkpoint_schedule(horizon);
  std::vector<std::uint64_t> counts(dim, 0);
  std::vector<std::uint64_t> counts_at_tenth(dim, 0);
  const std::uint64_t tenth = horizon / 10;
  std::uint64_t k = 0;
  for (auto n : schedule) {
    for (; k < n; ++k) {
      if (k == tenth) counts_at_tenth = counts;
      for (std::size_t i = 0; i < dim; ++i) counts[i] += prefix[k].bits()[i];
    }
    std::vector<Rational> avg;
    avg.reserve(dim);
    for (auto c : counts) avg.push_back(ratio(mpz_class(std::to_string(c)), n));
    cert.checkpoints.push_back({n, Element(std::move(avg))});
  }
  if (tenth == horizon) counts_at_tenth = counts;

  cert.density_zero = true;
  for (std::size_t i = 0; i < dim; ++i) {
    if (counts[i] == 0) continue;
    // counts/N <= (1/2) counts_at_tenth/tenth
    if (tenth == 0 ||
        mpz_class(2) * counts[i] * tenth > mpz_class(counts_at_tenth[i]) * horizon) {
      cert.density_zero = false;
    }
  }
  return cert;
}

std::vector<Rational> default_thresholds(std::size_t levels) {
  std::vector<Rational> out;
  out.reserve(levels);
  for (std::size_t m = 1; m <= levels; ++m) out.emplace_back(1, static_cast<unsigned long>(m));
  return out;
}

std::size_t KvnResult::level(std::size_t coordinate, std::uint64_t k) const {
  const auto& sw = switch_points.at(coordinate);
  return static_cast<std::size_t>(std::upper_bound(sw.begin(), sw.end(), k) - sw.begin()) + 1;
}

Rational KvnResult::threshold(std::size_t coordinate, std::uint64_t k) const {
  return thresholds.at(level(coordinate, k) - 1);
}

KvnResult kvn_extract(const std::vector<Element>& fseq, std::uint64_t horizon,
                      std::vector<Rational> thresholds) {
  if (horizon < 100) throw std::invalid_argument("kvn_extract needs horizon >= 100");
  if (horizon > fseq.size()) throw std::invalid_argument("horizon exceeds the sequence length");
  const std::size_t dim = fseq.front().dimension();
  for (std::uint64_t k = 0; k < horizon; ++k) {
    if (fseq[k].dimension() != dim) throw DimensionMismatch(dim, fseq[k].dimension());
    if (!fseq[k].is_positive()) {
      throw NegativeInput("kvn_extract term " + std::to_string(k) + " has a negative coordinate");
    }
  }
  if (thresholds.empty()) thresholds = default_thresholds(horizon);
  for (std::size_t m = 0; m < thresholds.size(); ++m) {
    if (thresholds[m] <= 0 || (m > 0 && thresholds[m] >= thresholds[m - 1])) {
      throw std::invalid_argument("thresholds must be positive and strictly decreasing");
    }
  }

  // Precondition: Cesaro averages must be on their way to zero.
  {
    const Element late = average_at(fseq, horizon);
    const Element early = average_at(fseq, horizon / 10);
    if (auto i = stalled_coordinate(early, late)) {
      throw CesaroNotVanishing(horizon, *i, format_rational(late[*i]));
    }
  }

  const std::size_t levels = thresholds.size();
  std::vector<bool> small(levels);
  for (std::size_t m = 0; m < levels; ++m) small[m] = fits_small(thresholds[m]);

  KvnResult out;
  out.thresholds = thresholds;
  out.switch_points.resize(dim);
  std::vector<std::vector<std::uint8_t>> bits(horizon, std::vector<std::uint8_t>(dim, 0));

  std::vector<std::uint64_t> entry(horizon);  // first level m with f_k >= threshold_m
  std::vector<std::uint64_t> hits(horizon + 1);
  for (std::size_t i = 0; i < dim; ++i) {
    std::uint64_t finite_entries = 0;
    for (std::uint64_t k = 0; k < horizon; ++k) {
      const Rational& v = fseq[k][i];
      // thresholds decrease, so {m : v >= threshold_m} is a tail of levels.
      const auto it = std::partition_point(thresholds.begin(), thresholds.end(),
                                           [&v](const Rational& t) { return v < t; });
      entry[k] = it == thresholds.end() ? kNoLevel
                                        : static_cast<std::uint64_t>(it - thresholds.begin()) + 1;
      finite_entries += entry[k] != kNoLevel;
    }

    auto& sw = out.switch_points[i];
    std::uint64_t previous = 0;
    for (std::uint64_t next = 2; next <= levels; ++next) {
      std::uint64_t start;
      if (finite_entries == 0) {
        start = previous + 1;
      } else {
        // hits[n] = |J_next ∩ [0, n)|
        hits[0] = 0;
        for (std::uint64_t k = 0; k < horizon; ++k) hits[k + 1] = hits[k] + (entry[k] <= next);
        std::uint64_t last_violation = previous;
        for (std::uint64_t n = horizon; n > previous; --n) {
          if (!density_below(hits[n], n, thresholds[next - 1], small[next - 1])) {
            last_violation = n;
            break;
          }
        }
        start = last_violation + 1;
      }
      if (start > horizon) break;
      sw.push_back(start);
      previous = start;
    }

    std::size_t level = 1;
    for (std::uint64_t k = 0; k < horizon; ++k) {
      while (level - 1 < sw.size() && sw[level - 1] <= k) ++level;
      bits[k][i] = entry[k] <= level ? 1 : 0;
    }
  }

  out.components.reserve(horizon);
  for (auto& b : bits) out.components.emplace_back(std::move(b));
  out.certificate = density_zero_check(out.components, horizon);
  return out;
}

KvnMixingResult weak_mixing_via_kvn(const CEPS& sys, const Component& p, const Component& q,
                                    std::uint64_t horizon) {
  const auto seq = seq_T_SkP_q(sys, p, q);
  const Element target = f_product(sys.T().apply(p.to_element()), sys.T().apply(q.to_element()));
  std::vector<Element> deviations;
  deviations.reserve(horizon);
  for (std::uint64_t k = 0; k < horizon; ++k) deviations.push_back(abs(sub(seq.value(k), target)));

  KvnMixingResult out;
  out.extraction = kvn_extract(deviations, horizon);
  out.masked_tail = 0;
  for (std::uint64_t k = horizon / 10; k < horizon; ++k) {
    const Element masked = band_project(complement(out.extraction.components[k]), deviations[k]);
    out.masked_tail = std::max(out.masked_tail, sup_norm(masked));
  }
  out.weak_mixing = out.masked_tail == 0;
  return out;
}

}  // namespace rse

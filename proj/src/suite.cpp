#include "rse/suite.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <stdexcept>
#include <mutex>
#include <thread>

#include "rse/dynamics.hpp"
#include "rse/errors.hpp"
#include "rse/mixing.hpp"
#include "rse/tensor.hpp"

namespace rse {

namespace {

// Salts separating the random streams used by different checks.
constexpr std::uint64_t kSaltProducts = 0x70726f64ULL;
constexpr std::uint64_t kSaltPartners = 0x70617274ULL;
constexpr std::uint64_t kSaltRectangles = 0x72656374ULL;
constexpr std::uint64_t kSaltDensity = 0x64656e73ULL;

struct Outcome {
  std::vector<std::pair<std::string, bool>> checks;
  std::vector<Defect> defects;
  bool ergodic = false;
  bool weak_mixing = false;

  void record(const std::string& name, bool ok, const std::function<Json()>& detail) {
    checks.emplace_back(name, ok);
    if (!ok) defects.push_back({name, detail()});
  }
};

Element random_element(Rng& rng, std::size_t n) {
  std::vector<Rational> c;
  c.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long num = static_cast<long>(rng.below(9)) - 4;
    c.emplace_back(num, static_cast<unsigned long>(rng.between(1, 4)));
    c.back().canonicalize();
  }
  return Element(std::move(c));
}

Component random_component(Rng& rng, std::size_t n) {
  std::vector<std::uint8_t> b(n);
  for (auto& x : b) x = rng.coin() ? 1 : 0;
  return Component(std::move(b));
}

Json pair_detail(const CEPS& a, const CEPS& b) {
  return Json{{"left", system_to_json(a)}, {"right", system_to_json(b)}};
}

// Limit operator identities and the conditional-expectation properties of L_S.
bool birkhoff_identities(const CEPS& sys) {
  const auto L = ergodic_limit_matrix(sys.S());
  const auto S = sys.S().matrix();
  const auto T = sys.T().matrix();
  if (!(L * L == L) || !(S * L == L) || !(L * S == L) || !(T * L == T)) return false;
  const std::size_t n = sys.dimension();
  Rational trace = 0;
  for (std::size_t i = 0; i < n; ++i) {
    trace += L.at(i, i);
    for (std::size_t j = 0; j < n; ++j) {
      if (L.at(i, j) < 0) return false;
    }
  }
  if (!(L.apply(Element::unit(n)) == Element::unit(n))) return false;
  const auto basis = invariant_basis(sys.S());
  if (trace != static_cast<long>(basis.size())) return false;
  for (const auto& p : basis) {
    const Element v = p.to_element();
    if (!(L.apply(v) == v) || !(sys.S().apply(v) == v)) return false;
  }
  return true;
}

bool kronecker_identity(const CEPS& a, const CEPS& b, const CEPS& ab, Rng& rng) {
  const Element f = random_element(rng, a.dimension());
  const Element g = random_element(rng, b.dimension());
  const Element fg = tensor_elements(f, g);
  return ab.T().apply(fg) == tensor_elements(a.T().apply(f), b.T().apply(g)) &&
         ab.S().apply(fg) == tensor_elements(a.S().apply(f), b.S().apply(g));
}

// Limits of the product sequence T1((S1^k p1).q1) (x) T2((S2^k p2).q2) when
// the product system is ergodic.
bool product_limits(const CEPS& a, const CEPS& b, const CEPS& ab, Rng& rng) {
  const Component p1 = random_component(rng, a.dimension());
  const Component q1 = random_component(rng, a.dimension());
  const Component p2 = random_component(rng, b.dimension());
  const Component q2 = random_component(rng, b.dimension());
  const Element expected =
      tensor_elements(f_product(a.T().apply(p1.to_element()), a.T().apply(q1.to_element())),
                      f_product(b.T().apply(p2.to_element()), b.T().apply(q2.to_element())));
  const auto termwise = tensor_sequences(seq_T_SkP_q(a, p1, q1), seq_T_SkP_q(b, p2, q2));
  const auto direct = seq_T_SkP_q(ab, tensor_component(p1, p2), tensor_component(q1, q2));
  return cesaro_limit(termwise) == expected && cesaro_limit(direct) == expected;
}

Outcome examine(const SuiteConfig& config, std::size_t index) {
  Outcome out;
  const CEPS sys = corpus_system(config, index);
  const std::size_t n = sys.dimension();
  auto solo = [&] { return Json{{"system_index", index}, {"system", system_to_json(sys)}}; };

  const MixingReport report = [&] {
    try {
      return analyze(sys);
    } catch (const InternalDefect&) {
      MixingReport r;
      r.weak_mixing = true;  // the only way analyze throws
      r.ergodic = false;
      return r;
    }
  }();
  out.ergodic = report.ergodic;
  out.weak_mixing = report.weak_mixing;
  out.record("weak_mixing_implies_ergodic", !(report.weak_mixing && !report.ergodic), solo);
  out.record("ergodicity_routes_agree", report.route_agreement, [&] {
    Json d = solo();
    d["report"] = report_to_json(report);
    return d;
  });
  if (n <= 4) {
    const auto brute = exhaustive_component_decisions(sys);
    out.record("component_pair_oracle",
               brute.ergodic == report.component_limits && brute.ergodic == report.ergodic &&
                   brute.weak_mixing == report.weak_mixing,
               solo);
  }
  out.record("birkhoff_identities", birkhoff_identities(sys), solo);

  Rng rng = Rng::derive(config.seed ^ kSaltProducts, index);

  // Self product.
  {
    std::optional<CEPS> self;
    try {
      self = tensor_ceps(sys, sys);
    } catch (const std::logic_error&) {
    }
    out.record("tensor_is_ceps", self.has_value(), solo);
    if (self) {
      const auto self_ergodic = is_ergodic(*self);
      out.record("weak_mixing_iff_self_product_ergodic",
                 self_ergodic.ergodic == report.weak_mixing, solo);
      out.record("product_routes_agree", self_ergodic.routes_agree(), solo);
      out.record("kronecker_identity", kronecker_identity(sys, sys, *self, rng), solo);
    }
  }

  // Product with the next corpus system.
  {
    const CEPS partner = corpus_system(config, (index + 1) % config.count);
    auto detail = [&] {
      Json d = pair_detail(sys, partner);
      d["system_index"] = index;
      return d;
    };
    std::optional<CEPS> prod;
    try {
      prod = tensor_ceps(sys, partner);
    } catch (const std::logic_error&) {
    }
    out.record("tensor_is_ceps", prod.has_value(), detail);
    if (prod) {
      const auto partner_report = analyze(partner);
      const auto prod_report = analyze(*prod);
      out.record("product_routes_agree", prod_report.route_agreement, detail);
      out.record("product_ergodic_implies_factors_ergodic",
                 !prod_report.ergodic || (report.ergodic && partner_report.ergodic), detail);
      out.record("product_weak_mixing_implies_factors_weak_mixing",
                 !prod_report.weak_mixing || (report.weak_mixing && partner_report.weak_mixing),
                 detail);
      out.record("kronecker_identity", kronecker_identity(sys, partner, *prod, rng), detail);
      if (prod_report.ergodic) {
        out.record("product_sequence_limits", product_limits(sys, partner, *prod, rng), detail);
      }
    }
  }

  // Koopman-von Neumann route for one basis pair.
  {
    std::size_t i = 0;
    std::size_t j = n - 1;
    if (report.mixing_witness) {
      i = report.mixing_witness->i;
      j = report.mixing_witness->j;
    }
    bool agrees = false;
    bool tail_clear = true;
    try {
      const auto kvn = weak_mixing_via_kvn(sys, Component::basis(n, i), Component::basis(n, j),
                                           config.horizon);
      agrees = kvn.weak_mixing == report.weak_mixing;
      const std::uint64_t pre = FunctionalGraph(sys.S()).preperiod();
      for (std::uint64_t k = pre; k < kvn.extraction.components.size(); ++k) {
        tail_clear = tail_clear && kvn.extraction.components[k].is_zero();
      }
    } catch (const CesaroNotVanishing&) {
      agrees = !report.weak_mixing;
    }
    out.record("kvn_agrees_with_weak_mixing", agrees, solo);
    if (report.weak_mixing) out.record("kvn_zero_beyond_preperiod", tail_clear, solo);
  }
  return out;
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void tally(SuiteReport& report, const std::string& name, bool ok) {
  auto& t = report.checks[name];
  (ok ? t.passed : t.failed) += 1;
}

void component_checks(const SuiteConfig& config, SuiteReport& report) {
  // Products of components are components, exhaustively for n, m <= 3.
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t m = 1; m <= 3; ++m) {
      for (std::uint64_t pm = 0; pm < (1U << n); ++pm) {
        for (std::uint64_t qm = 0; qm < (1U << m); ++qm) {
          const Component p = Component::from_mask(n, pm);
          const Component q = Component::from_mask(m, qm);
          const Element r = tensor_component(p, q).to_element();
          const bool ok = is_component(r) && r == tensor_elements(p.to_element(), q.to_element());
          tally(report, "tensor_of_components_is_component", ok);
          if (!ok) {
            report.defects.push_back({"tensor_of_components_is_component",
                                      Json{{"p", component_to_json(p)}, {"q", component_to_json(q)}}});
          }
        }
      }
    }
  }

  auto check_join = [&](const std::string& name, const TensorSpace& space, const Component& u) {
    const auto cover = component_decompose(space, u);
    tally(report, name, cover.reconstructs);
    if (!cover.reconstructs) {
      report.defects.push_back(
          {name, Json{{"left", space.left}, {"right", space.right}, {"u", component_to_json(u)}}});
    }
  };

  // Rectangle joins rebuild every component, exhaustively for n*m <= 12.
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::size_t m = 1; n * m <= 12; ++m) {
      const TensorSpace space{n, m};
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * m)); ++mask) {
        check_join("rectangle_join_exhaustive", space, Component::from_mask(n * m, mask));
      }
    }
  }
  Rng rng = Rng::derive(config.seed ^ kSaltRectangles, 0);
  for (std::size_t t = 0; t < config.random_components; ++t) {
    const std::size_t n = rng.between(1, 64);
    const std::size_t m = rng.between(1, 64 / n);
    const TensorSpace space{n, m};
    check_join("rectangle_join_random", space, random_component(rng, space.dimension()));
  }
}

void density_checks(const SuiteConfig& config, SuiteReport& report) {
  Rng rng = Rng::derive(config.seed ^ kSaltDensity, 0);
  for (std::size_t t = 0; t < 100; ++t) {
    const std::size_t n = rng.between(1, 4);
    const std::size_t m = rng.between(1, 4);
    auto random_seq = [&](std::size_t dim, bool vanishing) {
      std::vector<Element> head;
      std::vector<Element> block;
      const std::size_t pre = rng.below(4);
      const std::size_t per = rng.between(1, 4);
      for (std::size_t k = 0; k < pre; ++k) head.push_back(random_component(rng, dim).to_element());
      for (std::size_t k = 0; k < per; ++k) {
        block.push_back(vanishing ? Element::zero(dim) : random_component(rng, dim).to_element());
      }
      return EventuallyPeriodicSeq(std::move(head), std::move(block));
    };
    const bool left_vanishes = rng.coin();
    const auto pseq = random_seq(n, left_vanishes);
    const auto qseq = random_seq(m, !left_vanishes);
    const auto cert = density_zero_check(tensor_density_zero(pseq, qseq));
    tally(report, "tensor_density_zero", cert.density_zero);
    if (!cert.density_zero) {
      report.defects.push_back({"tensor_density_zero", Json{{"p", sequence_to_json(pseq)},
                                                            {"q", sequence_to_json(qseq)}}});
    }
  }

  // Squares against arbitrary components, prefix mode.
  const std::uint64_t horizon = config.horizon;
  std::vector<Component> squares;
  std::vector<Component> others;
  std::uint64_t root = 0;
  for (std::uint64_t k = 0; k < horizon; ++k) {
    while ((root + 1) * (root + 1) <= k) ++root;
    squares.push_back(root * root == k ? Component::unit(2) : Component::zero(2));
    others.push_back(random_component(rng, 3));
  }
  const auto cert = density_zero_check(tensor_density_zero(squares, others), horizon);
  tally(report, "tensor_density_zero_prefix", cert.density_zero);
  if (!cert.density_zero) report.defects.push_back({"tensor_density_zero_prefix", Json{{"horizon", horizon}}});
}

void kvn_squares_check(const SuiteConfig& config, SuiteReport& report) {
  const std::uint64_t horizon = config.horizon;
  const auto terms = sequence_terms_from_json(Json{{"generator", "squares"}, {"dimension", 1}}, horizon);
  const auto kvn = kvn_extract(terms, horizon);
  const std::uint64_t first_switch =
      kvn.switch_points[0].empty() ? horizon : kvn.switch_points[0].front();
  bool ok = true;
  std::uint64_t squares_below = 0;
  for (std::uint64_t k = 0; k < horizon; ++k) {
    const bool square = terms[k][0] == 1;
    squares_below += square;
    if (k >= first_switch) {
      ok = ok && kvn.components[k][0] == square;
      ok = ok && band_project(complement(kvn.components[k]), terms[k]).is_zero();
    }
  }
  const Element& final_density = kvn.certificate.checkpoints.back().average;
  Rational expected(mpz_class(std::to_string(squares_below)), mpz_class(std::to_string(horizon)));
  expected.canonicalize();
  ok = ok && final_density[0] == expected;
  ok = ok && kvn.certificate.density_zero;
  tally(report, "kvn_squares", ok);
  if (!ok) report.defects.push_back({"kvn_squares", Json{{"horizon", horizon}}});
}

}  // namespace

void SuiteConfig::validate() const {
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  if (max_dim < 1) throw std::invalid_argument("max_dim must be >= 1");
  if (horizon < 100) throw std::invalid_argument("horizon must be >= 100");
  if (profiles.empty()) throw std::invalid_argument("at least one profile is required");
}

CEPS corpus_system(const SuiteConfig& config, std::size_t index) {
  Rng rng = Rng::derive(config.seed, index);
  const std::size_t n = rng.between(1, config.max_dim);
  return generate_ceps(rng, n, config.profiles[index % config.profiles.size()]);
}

SuiteReport run_suite(const SuiteConfig& config) {
  config.validate();
  SuiteReport report;
  report.config = config;

  std::vector<Outcome> outcomes(config.count);
  parallel_for(config.count, config.threads,
               [&](std::size_t i) { outcomes[i] = examine(config, i); });

  std::vector<std::size_t> ergodic;
  std::vector<std::size_t> mixing;
  for (std::size_t i = 0; i < config.count; ++i) {
    const auto& o = outcomes[i];
    for (const auto& [name, ok] : o.checks) tally(report, name, ok);
    for (const auto& d : o.defects) report.defects.push_back(d);
    if (o.weak_mixing) {
      ++report.weak_mixing;
      mixing.push_back(i);
    } else if (o.ergodic) {
      ++report.ergodic_only;
    } else {
      ++report.neither;
    }
    if (o.ergodic) ergodic.push_back(i);
  }

  // Weak mixing A against a sample of ergodic B: A (x) B must be ergodic.
  {
    Rng rng = Rng::derive(config.seed ^ kSaltPartners, 0);
    for (std::size_t k = ergodic.size(); k > 1; --k) std::swap(ergodic[k - 1], ergodic[rng.below(k)]);
    if (ergodic.size() > config.ergodic_samples) ergodic.resize(config.ergodic_samples);
    std::sort(ergodic.begin(), ergodic.end());
    report.ergodic_partners_used = ergodic.size();

    std::vector<CEPS> partners;
    for (auto b : ergodic) partners.push_back(corpus_system(config, b));
    std::vector<Outcome> pair_outcomes(mixing.size());
    parallel_for(mixing.size(), config.threads, [&](std::size_t t) {
      const CEPS a = corpus_system(config, mixing[t]);
      for (std::size_t s = 0; s < partners.size(); ++s) {
        const bool ok = is_ergodic(tensor_ceps(a, partners[s])).ergodic;
        pair_outcomes[t].record("weak_mixing_times_ergodic_is_ergodic", ok, [&] {
          Json d = pair_detail(a, partners[s]);
          d["system_index"] = mixing[t];
          d["partner_index"] = ergodic[s];
          return d;
        });
      }
    });
    for (const auto& o : pair_outcomes) {
      for (const auto& [name, ok] : o.checks) tally(report, name, ok);
      for (const auto& d : o.defects) report.defects.push_back(d);
    }
  }

  component_checks(config, report);
  density_checks(config, report);
  kvn_squares_check(config, report);
  return report;
}

Json suite_report_to_json(const SuiteReport& report) {
  Json profiles = Json::array();
  for (auto p : report.config.profiles) profiles.push_back(std::string(profile_name(p)));
  Json checks = Json::object();
  for (const auto& [name, t] : report.checks) {
    checks[name] = {{"passed", t.passed}, {"failed", t.failed}};
  }
  Json defects = Json::array();
  for (const auto& d : report.defects) defects.push_back({{"check", d.check}, {"detail", d.detail}});
  return Json{{"seed", report.config.seed},
              {"count", report.config.count},
              {"max_dim", report.config.max_dim},
              {"horizon", report.config.horizon},
              {"profiles", std::move(profiles)},
              {"ergodic_partners", report.ergodic_partners_used},
              {"strata",
               {{"ergodic_only", report.ergodic_only},
                {"weak_mixing", report.weak_mixing},
                {"neither", report.neither}}},
              {"checks", std::move(checks)},
              {"defects", std::move(defects)},
              {"violations", report.defects.size()}};
}

}  // namespace rse

#include "rse/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include <CLI11.hpp>

#include "rse/errors.hpp"
#include "rse/generator.hpp"
#include "rse/io.hpp"
#include "rse/mixing.hpp"
#include "rse/suite.hpp"
#include "rse/tensor.hpp"

namespace rse {

namespace {

constexpr std::size_t kDefaultTensorCap = 4096;

std::size_t tensor_cap() {
  if (const char* env = std::getenv("RSE_MAX_TENSOR_DIM")) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
      // Malformed override: keep the default.
    }
  }
  return kDefaultTensorCap;
}

Json error_json(const std::string& kind, const std::string& message) {
  return Json{{"valid", false}, {"error", kind}, {"message", message}};
}

// Loads and validates a system file, or prints the machine-readable error.
std::optional<SystemDocument> load_system(const std::string& path, std::ostream& out) {
  try {
    return document_from_json(read_json_file(path));
  } catch (const NotMeasurePreserving& e) {
    Json j = error_json("not_measure_preserving", e.what());
    j["witness"] = e.witness;
    out << dump(j);
  } catch (const std::invalid_argument& e) {
    out << dump(error_json("schema", e.what()));
  }
  return std::nullopt;
}

std::string element_text(const Element& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.dimension(); ++i) {
    if (i) s += ", ";
    s += format_rational(e[i]);
  }
  return s + ")";
}

void print_report_text(const MixingReport& r, std::ostream& out) {
  out << "ergodic: " << (r.ergodic ? "true" : "false") << "\n";
  out << "weak_mixing: " << (r.weak_mixing ? "true" : "false") << "\n";
  out << "routes: operator_equality=" << (r.operator_equality ? "true" : "false")
      << " component_limits=" << (r.component_limits ? "true" : "false") << "\n";
  if (r.ergodic_witness) {
    const auto& w = *r.ergodic_witness;
    out << "ergodicity witness: i=" << w.i << " j=" << w.j << " gap=" << element_text(w.gap) << "\n";
  }
  if (r.mixing_witness) {
    const auto& w = *r.mixing_witness;
    out << "weak mixing witness: i=" << w.i << " j=" << w.j << " k=" << w.k
        << " residual=" << element_text(w.residual) << "\n";
  }
}

int cmd_validate(const std::string& path, std::ostream& out) {
  auto doc = load_system(path, out);
  if (!doc) return kExitInvalidInput;
  out << dump(Json{{"valid", true}, {"dimension", doc->system.dimension()}});
  return kExitOk;
}

int cmd_analyze(const std::string& path, const std::string& format, std::ostream& out) {
  auto doc = load_system(path, out);
  if (!doc) return kExitInvalidInput;
  const MixingReport report = analyze(doc->system);
  if (format == "text") {
    print_report_text(report, out);
  } else {
    out << dump(report_to_json(report));
  }
  return kExitOk;
}

int cmd_tensor(const std::string& a, const std::string& b, const std::string& target,
               std::ostream& out) {
  auto left = load_system(a, out);
  if (!left) return kExitInvalidInput;
  auto right = load_system(b, out);
  if (!right) return kExitInvalidInput;
  const std::size_t cap = tensor_cap();
  const std::size_t n = left->system.dimension();
  const std::size_t m = right->system.dimension();
  if (n > cap / m) {
    out << dump(error_json("tensor_too_large", "tensor dimension " + std::to_string(n) + "*" +
                                                   std::to_string(m) + " exceeds cap " +
                                                   std::to_string(cap)));
    return kExitInvalidInput;
  }
  write_text_file(target, dump(document_to_json(tensor_document(*left, *right))));
  return kExitOk;
}

int cmd_generate(std::size_t dim, const std::string& profile, std::uint64_t seed,
                 const std::string& target, std::ostream& out) {
  Profile p;
  try {
    p = parse_profile(profile);
  } catch (const std::invalid_argument& e) {
    out << dump(error_json("schema", e.what()));
    return kExitInvalidInput;
  }
  Rng rng(seed);
  const SystemDocument doc{generate_ceps(rng, dim, p), {}};
  write_text_file(target, dump(document_to_json(doc)));
  return kExitOk;
}

int cmd_kvn(const std::string& path, std::uint64_t horizon, std::ostream& out) {
  std::vector<Element> terms;
  try {
    terms = sequence_terms_from_json(read_json_file(path), horizon);
  } catch (const std::invalid_argument& e) {
    out << dump(error_json("schema", e.what()));
    return kExitInvalidInput;
  }
  try {
    out << dump(kvn_to_json(kvn_extract(terms, horizon)));
  } catch (const CesaroNotVanishing& e) {
    out << dump(Json{{"error", "cesaro_not_vanishing"},
                     {"checkpoint", e.checkpoint},
                     {"coordinate", e.coordinate},
                     {"average", e.stalled_average},
                     {"message", e.what()}});
    return kExitPrecondition;
  } catch (const std::invalid_argument& e) {
    out << dump(error_json("schema", e.what()));
    return kExitInvalidInput;
  }
  return kExitOk;
}

int cmd_suite(SuiteConfig config, const std::string& profiles, const std::string& target,
              std::ostream& out) {
  try {
    if (!profiles.empty()) {
      config.profiles.clear();
      std::stringstream ss(profiles);
      std::string name;
      while (std::getline(ss, name, ',')) config.profiles.push_back(parse_profile(name));
    }
    config.validate();
  } catch (const std::invalid_argument& e) {
    out << dump(error_json("schema", e.what()));
    return kExitInvalidInput;
  }
  const SuiteReport report = run_suite(config);
  const std::string text = dump(suite_report_to_json(report));
  if (target.empty()) {
    out << text;
  } else {
    write_text_file(target, text);
  }
  return report.clean() ? kExitOk : kExitDefect;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact ergodicity and weak-mixing analysis of conditional expectation preserving systems", "rse"};
  app.require_subcommand(1);

  std::string path;
  std::string path_b;
  std::string target;
  std::string format = "json";
  std::string profile = "block-permutation";
  std::string profiles;
  std::size_t dim = 4;
  std::uint64_t seed = 0;
  std::uint64_t horizon = 10000;
  SuiteConfig suite;

  auto* validate = app.add_subcommand("validate", "Check that a system file satisfies T S = T");
  validate->add_option("file", path, "System JSON")->required();

  auto* analyze_cmd = app.add_subcommand("analyze", "Decide ergodicity and conditional weak mixing");
  analyze_cmd->add_option("file", path, "System JSON")->required();
  analyze_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto* tensor = app.add_subcommand("tensor", "Write the tensor product of two systems");
  tensor->add_option("a", path, "Left system")->required();
  tensor->add_option("b", path_b, "Right system")->required();
  tensor->add_option("-o,--output", target, "Output file")->required();

  auto* suite_cmd = app.add_subcommand("suite", "Run the randomized property suite");
  suite_cmd->add_option("--seed", suite.seed, "RNG seed");
  suite_cmd->add_option("--count", suite.count, "Number of generated systems");
  suite_cmd->add_option("--max-dim", suite.max_dim, "Largest system dimension");
  suite_cmd->add_option("--horizon", suite.horizon, "Prefix horizon for diagnostics");
  suite_cmd->add_option("--profiles", profiles, "Comma-separated generator profiles");
  suite_cmd->add_option("--partners", suite.ergodic_samples, "Ergodic partners per weak-mixing system");
  suite_cmd->add_option("--random-components", suite.random_components,
                        "Random rectangle-join checks");
  suite_cmd->add_option("--threads", suite.threads, "Worker threads");
  suite_cmd->add_option("-o,--output", target, "Write the report here instead of stdout");

  auto* kvn = app.add_subcommand("kvn", "Koopman-von Neumann density-zero extraction");
  kvn->add_option("seq", path, "Sequence JSON")->required();
  kvn->add_option("--horizon", horizon, "Prefix horizon")->required();

  auto* generate = app.add_subcommand("generate", "Write a random valid system");
  generate->add_option("--dim", dim, "Dimension")->required();
  generate->add_option("--profile", profile, "block-permutation, global or identity");
  generate->add_option("--seed", seed, "RNG seed");
  generate->add_option("-o,--output", target, "Output file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(path, out);
    if (*analyze_cmd) return cmd_analyze(path, format, out);
    if (*tensor) return cmd_tensor(path, path_b, target, out);
    if (*suite_cmd) return cmd_suite(suite, profiles, target, out);
    if (*kvn) return cmd_kvn(path, horizon, out);
    if (*generate) return cmd_generate(dim, profile, seed, target, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::logic_error& e) {
    err << "internal defect: " << e.what() << "\n";
    return kExitDefect;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitUsage;
}

}  // namespace rse

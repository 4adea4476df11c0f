#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "amalgam/classify.hpp"
#include "amalgam/corpus.hpp"
#include "amalgam/density.hpp"
#include "amalgam/feasibility.hpp"
#include "amalgam/io.hpp"
#include "amalgam/numlab.hpp"
#include "amalgam/reduction.hpp"
#include "amalgam/structure.hpp"

namespace amalgam::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kReportDirEnv = "AMALGAM_REPORT_DIR";

struct Loaded {
  std::string name;
  AmalgamInstance instance;
};

Loaded load_instance(const std::string& where) {
  if (fs::exists(where)) return {fs::path(where).stem().string(), instance_from_json(load_json_file(where))};
  if (const CorpusEntry* e = find_corpus_entry(where)) return {e->name, e->instance};
  throw IoError("no such file or bundled instance: " + where);
}

std::string list(const std::vector<Int>& v) { return to_string(std::span<const Int>(v)); }

template <class T>
std::string list_of(const std::vector<T>& v, const std::function<std::string(const T&)>& f) {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + f(v[k]);
  return s + "]";
}

// Human-readable output numbers blocks and rows from 1; JSON reports from 0.
std::string index_list(const std::vector<std::size_t>& v) {
  return list_of<std::size_t>(v, [](const std::size_t& x) { return std::to_string(x + 1); });
}

class Session {
 public:
  Session(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

  /// Writes doc to the explicit report path, or under $AMALGAM_REPORT_DIR
  /// as <default_name>.json when no path was given.
  void report(const std::string& explicit_path, const std::string& default_name, const json& doc) {
    const char* dir = std::getenv(kReportDirEnv);
    fs::path target;
    if (!explicit_path.empty()) {
      target = explicit_path;
      if (target.is_relative() && dir && *dir) target = fs::path(dir) / target;
    } else if (dir && *dir) {
      target = fs::path(dir) / (default_name + ".json");
    } else {
      return;
    }
    write_json_file(target, doc);
    out_ << "report written to " << target.string() << "\n";
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
};

void print_violations(Session& s, const std::string& name, const std::vector<Violation>& vs) {
  s.out() << name << ": invalid (" << vs.size() << " violation" << (vs.size() == 1 ? "" : "s") << ")\n";
  for (const auto& v : vs) s.out() << "  " << to_string(v.kind) << ": " << v.message << "\n";
}

int cmd_validate(Session& s, const std::string& path, const std::string& report) {
  const auto [name, inst] = load_instance(path);
  const auto violations = validate(inst);
  json doc{{"instance", name}, {"valid", violations.empty()}, {"violations", json::array()}};
  for (const auto& v : violations) doc["violations"].push_back(to_json(v));
  if (violations.empty())
    s.out() << name << ": valid (D = " << list(inst.base.blocks()) << ", A1 = " << list(inst.a1.blocks())
            << ", A2 = " << list(inst.a2.blocks()) << ")\n";
  else
    print_violations(s, name, violations);
  s.report(report, "validate-" + name, doc);
  return violations.empty() ? kOk : kInvalid;
}

void print_verdict(Session& s, const std::string& name, const Verdict& v) {
  s.out() << name << ": " << v.summary << "\n";
  s.out() << "  rule: " << to_string(v.rule) << "\n";
  const auto& e = v.evidence;
  if (!e.isomorphism.empty()) s.out() << "  isomorphic to: " << e.isomorphism << "\n";
  if (e.rfd_witness)
    s.out() << "  RFD witness: p1 = " << list(e.rfd_witness->p1) << ", p2 = " << list(e.rfd_witness->p2) << "\n";
  if (e.components && e.components->count() > 1) {
    s.out() << "  components:";
    for (const auto& c : e.components->columns) s.out() << " " << index_list(c);
    s.out() << "\n";
  }
  if (e.link) s.out() << "  linked order: " << index_list(e.link->order) << "\n";
  for (const auto& d : e.rank_one)
    s.out() << "  " << d.name << ": " << (d.holds ? "holds" : "fails")
            << (d.value ? " (value " + to_string(*d.value) + ")" : "") << "\n";
  if (e.multiplicity_search && e.multiplicity_search->witness)
    s.out() << "  half-column witness: p1 = " << list(e.multiplicity_search->witness->p1)
            << ", p2 = " << list(e.multiplicity_search->witness->p2) << "\n";
  if (!e.corroborating.empty())
    s.out() << "  corroborating: "
            << list_of<Rule>(e.corroborating, [](const Rule& r) { return to_string(r); }) << "\n";
  for (const auto& n : e.notes) s.out() << "  note: " << n << "\n";
}

Verdict checked_classify(const AmalgamInstance& inst, const ClassifyOptions& options) {
  Verdict v = classify(inst, options);
  const auto check = check_verdict(inst, v);
  if (!check.ok) throw InvariantBreach("verdict failed re-validation: " + check.reason);
  return v;
}

int cmd_classify(Session& s, const std::string& path, const ClassifyOptions& options, const std::string& report) {
  const auto [name, inst] = load_instance(path);
  const Verdict v = checked_classify(inst, options);
  print_verdict(s, name, v);
  s.report(report, "classify-" + name, {{"instance", name}, {"input", to_json(inst)}, {"verdict", to_json(v)}});
  return kOk;
}

int cmd_rfd(Session& s, const std::string& path, const std::string& report) {
  const auto [name, inst] = load_instance(path);
  const auto w = rfd_decide(inst);
  json doc{{"instance", name}, {"rfd", w.has_value()}};
  if (!w) {
    s.out() << name << ": not RFD (mu1^T p1 = mu2^T p2 has no strictly positive solution)\n";
  } else {
    const auto tw = trace_weights(inst, *w);
    auto rationals = [](const std::vector<Rational>& v) {
      return list_of<Rational>(v, [](const Rational& q) { return to_string(q); });
    };
    s.out() << name << ": RFD\n  p1 = " << list(w->p1) << ", p2 = " << list(w->p2) << ", d = " << list(w->d) << "\n"
            << "  trace weights: alpha1 = " << rationals(tw.alpha1) << ", alpha2 = " << rationals(tw.alpha2) << "\n";
    doc["witness"] = to_json(*w);
    doc["traces_agree"] = traces_agree_on_base(inst, tw);
  }
  s.report(report, "rfd-" + name, doc);
  return kOk;
}

int cmd_lp(Session& s, const std::string& path, std::size_t limit, const std::string& report) {
  const auto [name, inst] = load_instance(path);
  const auto comps = column_components(inst);
  const auto literal = lp_literal(inst);
  const auto order = lp_order_search(inst, limit);
  s.out() << name << ": " << comps.count() << " column component" << (comps.count() == 1 ? "" : "s") << ":";
  for (const auto& c : comps.columns) s.out() << " " << index_list(c);
  s.out() << "\n";
  if (literal.certificate)
    s.out() << "  linked in the given order\n";
  else
    s.out() << "  not linked in the given order: blocks " << literal.first_unlinked + 1 << " and "
            << literal.first_unlinked + 2 << " share no row\n";
  if (order) {
    s.out() << "  linked order " << index_list(order->order) << " via";
    for (const auto& l : order->links) s.out() << " (mu" << l.side << " row " << l.row + 1 << ")";
    s.out() << "\n";
  } else {
    s.out() << "  no order of the base blocks is linked\n";
  }
  json doc{{"instance", name}, {"components", to_json(comps)}, {"literal", nullptr}, {"order", nullptr}};
  if (literal.certificate) doc["literal"] = to_json(*literal.certificate);
  else doc["first_unlinked"] = literal.first_unlinked;
  if (order) doc["order"] = to_json(*order);
  s.report(report, "lp-" + name, doc);
  return kOk;
}

int cmd_density_scene(Session& s, const std::string& path, const std::string& report) {
  const DensityScene scene = scene_from_json(load_json_file(path));
  if (auto e = check_scene(scene)) {
    s.out() << path << ": invalid scene: " << *e << "\n";
    return kInvalid;
  }
  const auto general = general_position_check(scene);
  const auto two = multiplicity_two_check(scene);
  auto show = [&](const char* what, const DensityCheck& c) {
    s.out() << "  " << what << ": " << (c.dense ? "Dense" : "HypothesisFails");
    for (auto h : c.failed) s.out() << " " << to_string(h);
    s.out() << "\n";
  };
  s.out() << to_string(scene) << "\n";
  show("general position (dimension inequality, blocks <= N/2)", general);
  show("multiplicities >= 2", two);
  s.report(report, "density-scene", {{"scene", to_json(scene)}, {"general_position", to_json(general)},
                                     {"multiplicity_two", to_json(two)}});
  return kOk;
}

int cmd_density_verify(Session& s, Int n_max, bool two_column, std::size_t max_blocks, std::size_t threads,
                       const std::string& report) {
  const auto start = std::chrono::steady_clock::now();
  const ExhaustiveReport r = two_column ? verify_two_column_bound(n_max, max_blocks, threads)
                                        : verify_general_position_exhaustive(n_max, max_blocks, threads);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::size_t counterexamples =
      r.bound_counterexamples + r.monotonicity_counterexamples + r.merge_identity_failures;
  s.out() << counterexamples << " counterexamples / " << r.scenes_total << " scenes / " << r.profiles_checked
          << " profiles\n"
          << "  N <= " << n_max << (two_column ? ", two-column profiles only" : "") << "; " << r.scenes_checked
          << " scenes satisfy the hypotheses, " << r.scenes_skipped << " skipped\n"
          << "  merge identity checks: " << r.merge_identity_checks << ", failures: " << r.merge_identity_failures
          << "\n  d >= N^2: " << r.bound_counterexamples << ", no nonnegative merge: "
          << r.monotonicity_counterexamples << "\n";
  for (const auto& f : r.failures) s.out() << "  failure: " << f << "\n";
  s.out() << "  elapsed " << secs << " s\n";
  s.report(report, std::string(two_column ? "density-two-column-" : "density-verify-") + std::to_string(n_max),
           to_json(r));
  return r.clean() ? kOk : kInvariantBreach;
}

int cmd_numlab(Session& s, const std::string& path, const DpiOptions& options, const std::string& report) {
  const auto [name, inst] = load_instance(path);
  require_valid(inst);
  const DpiReport r = dpi_experiment(inst, options);
  const std::size_t trivial =
      static_cast<std::size_t>(std::count_if(r.trials.begin(), r.trials.end(), [](const DpiTrial& t) { return t.dimension == 1; }));
  s.out() << name << ": representation q1 = " << list(r.rep.q1) << ", q2 = " << list(r.rep.q2) << " (N = " << r.N
          << ", d = " << list(r.d) << ", " << r.completion_method << ")\n"
          << "  dim B1 + dim B2 = " << r.commutant_dimension_sum << " vs dim B0 = " << r.base_commutant_dimension
          << ": strict inequality " << (r.strict_dimension_inequality ? "holds" : "fails") << "\n"
          << "  dim(B1 ∩ B2) at u = I (exact): " << r.exact_identity_dimension << "\n"
          << "  trivial intersections: " << trivial << " / " << r.trials.size() << " (fraction "
          << r.fraction_trivial << "), unstable: " << r.unstable_count << "\n"
          << "  heuristic only: samples do not certify density\n";
  s.report(report, "numlab-" + name, to_json(r));
  return kOk;
}

int cmd_corpus(Session& s, const ClassifyOptions& options, const std::string& report) {
  std::size_t matched = 0;
  json entries = json::array();
  for (const auto& e : corpus()) {
    const Verdict v = checked_classify(e.instance, options);
    const bool ok = v.label == e.expected && (!e.expected_rule || v.rule == *e.expected_rule);
    matched += ok;
    s.out() << (ok ? "ok   " : "FAIL ") << e.name << ": expected " << to_string(e.expected) << ", got "
            << to_string(v.label) << " via " << to_string(v.rule) << "\n";
    entries.push_back({{"name", e.name}, {"expected", to_string(e.expected)}, {"label", to_string(v.label)},
                       {"rule", to_string(v.rule)}, {"match", ok}});
  }
  s.out() << matched << " / " << corpus().size() << " match\n";
  s.report(report, "corpus", {{"entries", entries}, {"matched", matched}, {"total", corpus().size()}});
  return matched == corpus().size() ? kOk : kInvariantBreach;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Primitivity of amalgamated free products of finite-dimensional C*-algebras"};
  app.require_subcommand(1);
  Session session(out, err);

  std::string path, report;
  auto add_report = [&](CLI::App* sub) {
    sub->add_option("--report", report, "Write a JSON report (relative paths resolve under $" +
                                            std::string(kReportDirEnv) + ")");
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check the unitality and injectivity constraints");
  validate_cmd->add_option("instance", path, "Instance JSON file or bundled instance name")->required();
  add_report(validate_cmd);

  ClassifyOptions classify_options;
  auto* classify_cmd = app.add_subcommand("classify", "Decide primitivity where a known criterion applies");
  classify_cmd->add_option("instance", path, "Instance JSON file or bundled instance name")->required();
  classify_cmd->add_option("--search-bound", classify_options.search_bound, "Bound on witness entries")
      ->check(CLI::PositiveNumber)->capture_default_str();
  classify_cmd->add_option("--order-limit", classify_options.order_search_limit, "Largest l0 for the order search")
      ->check(CLI::Range(1, 30))->capture_default_str();
  add_report(classify_cmd);

  auto* rfd_cmd = app.add_subcommand("rfd", "Decide residual finite-dimensionality and print a witness");
  rfd_cmd->add_option("instance", path, "Instance JSON file or bundled instance name")->required();
  add_report(rfd_cmd);

  std::size_t order_limit = kDefaultOrderSearchLimit;
  auto* lp_cmd = app.add_subcommand("lp", "Column components and linked orders of the base blocks");
  lp_cmd->add_option("instance", path, "Instance JSON file or bundled instance name")->required();
  lp_cmd->add_option("--order-limit", order_limit, "Largest l0 for the order search")
      ->check(CLI::Range(1, 30))->capture_default_str();
  add_report(lp_cmd);

  std::string scene_path;
  Int verify_nmax = 0;
  bool two_column = false;
  std::size_t max_blocks = 3, threads = 0;
  auto* density_cmd = app.add_subcommand("density", "Density criteria for a scene, or exhaustive verification");
  auto* scene_opt = density_cmd->add_option("--scene", scene_path, "Scene JSON file");
  auto* verify_opt = density_cmd->add_option("--verify-nmax", verify_nmax, "Verify every scene with N <= K")
                         ->check(CLI::Range(2, 12));
  scene_opt->excludes(verify_opt);
  density_cmd->add_flag("--two-column", two_column, "With --verify-nmax: only two-column profiles");
  density_cmd->add_option("--max-blocks", max_blocks, "Blocks per side in enumerated scenes")
      ->check(CLI::Range(1, 4))->capture_default_str();
  density_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
  add_report(density_cmd);

  DpiOptions dpi;
  std::string mode = "near_identity";
  auto* numlab_cmd = app.add_subcommand("numlab", "Sample base unitaries and measure B1 ∩ Ad u(B2)");
  numlab_cmd->add_option("instance", path, "Instance JSON file or bundled instance name")->required();
  numlab_cmd->add_option("--trials", dpi.trials, "Number of sampled unitaries")->capture_default_str();
  numlab_cmd->add_option("--epsilon", dpi.epsilon, "Perturbation size for near-identity sampling")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  numlab_cmd->add_option("--seed", dpi.seed, "Base seed")->capture_default_str();
  numlab_cmd->add_option("--tol", dpi.tol, "Relative singular-value threshold")
      ->check(CLI::PositiveNumber)->capture_default_str();
  numlab_cmd->add_option("--mode", mode, "near_identity or haar")
      ->check(CLI::IsMember({"near_identity", "haar"}))->capture_default_str();
  numlab_cmd->add_option("--threads", dpi.threads, "Worker threads (0 = all cores)")->capture_default_str();
  add_report(numlab_cmd);

  auto* corpus_cmd = app.add_subcommand("corpus", "Classify every bundled instance against its expected label");
  corpus_cmd->add_option("--search-bound", classify_options.search_bound, "Bound on witness entries")
      ->check(CLI::PositiveNumber)->capture_default_str();
  add_report(corpus_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(session, path, report);
    if (classify_cmd->parsed()) return cmd_classify(session, path, classify_options, report);
    if (rfd_cmd->parsed()) return cmd_rfd(session, path, report);
    if (lp_cmd->parsed()) return cmd_lp(session, path, order_limit, report);
    if (density_cmd->parsed()) {
      if (!scene_path.empty()) return cmd_density_scene(session, scene_path, report);
      if (verify_nmax != 0) return cmd_density_verify(session, verify_nmax, two_column, max_blocks, threads, report);
      err << "density: one of --scene or --verify-nmax is required\n";
      return kUsage;
    }
    if (numlab_cmd->parsed()) {
      dpi.mode = mode == "haar" ? SamplingMode::Haar : SamplingMode::NearIdentity;
      return cmd_numlab(session, path, dpi, report);
    }
    if (corpus_cmd->parsed()) return cmd_corpus(session, classify_options, report);
  } catch (const InvalidInstance& e) {
    print_violations(session, path, e.violations());
    return kInvalid;
  } catch (const InvariantBreach& e) {
    err << "internal invariant breach: " << e.what() << "\n";
    return kInvariantBreach;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::overflow_error& e) {
    err << "error: arithmetic overflow: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace amalgam::cli

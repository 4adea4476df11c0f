#include "amalgam/io.hpp"

#include <fstream>
#include <sstream>

namespace amalgam {

namespace {

[[noreturn]] void schema_fail(const std::string& where, const std::string& what) {
  throw SchemaError(where + ": " + what);
}

const json& member(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) schema_fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_fail(where, "missing field \"" + key + "\"");
  return *it;
}

Int integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) schema_fail(where, "expected an integer, found " + std::string(v.type_name()));
  return v.get<Int>();
}

std::vector<Int> int_array(const json& v, const std::string& where) {
  if (!v.is_array()) schema_fail(where, "expected an array");
  std::vector<Int> out;
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back(integer(v[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

IntMatrix matrix(const json& v, const std::string& where) {
  if (!v.is_array()) schema_fail(where, "expected an array of rows");
  std::vector<std::vector<Int>> rows;
  for (std::size_t r = 0; r < v.size(); ++r) {
    rows.push_back(int_array(v[r], where + "[" + std::to_string(r) + "]"));
    if (r > 0 && rows[r].size() != rows[0].size())
      schema_fail(where + "[" + std::to_string(r) + "]", "row length differs from row 0");
  }
  return IntMatrix::from_rows(rows);
}

BlockAlgebra algebra(const json& doc, const std::string& key) {
  return BlockAlgebra(int_array(member(member(doc, key, "$"), "blocks", "$." + key), "$." + key + ".blocks"));
}

json matrix_json(const IntMatrix& m) { return m.to_rows(); }

std::string rational(const Rational& q) { return to_string(q); }

}  // namespace

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

AmalgamInstance instance_from_json(const json& doc) {
  if (!doc.is_object()) schema_fail("$", "expected an object");
  AmalgamInstance inst;
  inst.base = algebra(doc, "D");
  inst.a1 = algebra(doc, "A1");
  inst.a2 = algebra(doc, "A2");
  inst.mu1 = matrix(member(doc, "mu1", "$"), "$.mu1");
  inst.mu2 = matrix(member(doc, "mu2", "$"), "$.mu2");
  return inst;
}

json to_json(const AmalgamInstance& inst) {
  return {{"D", {{"blocks", inst.base.blocks()}}},
          {"A1", {{"blocks", inst.a1.blocks()}}},
          {"A2", {{"blocks", inst.a2.blocks()}}},
          {"mu1", matrix_json(inst.mu1)},
          {"mu2", matrix_json(inst.mu2)}};
}

DensityScene scene_from_json(const json& doc) {
  if (!doc.is_object()) schema_fail("$", "expected an object");
  DensityScene s;
  s.N = integer(member(doc, "N", "$"), "$.N");
  s.p1 = int_array(member(doc, "p1", "$"), "$.p1");
  s.m1 = int_array(member(doc, "m1", "$"), "$.m1");
  s.p2 = int_array(member(doc, "p2", "$"), "$.p2");
  s.m2 = int_array(member(doc, "m2", "$"), "$.m2");
  return s;
}

json to_json(const DensityScene& s) {
  return {{"N", s.N}, {"p1", s.p1}, {"m1", s.m1}, {"p2", s.p2}, {"m2", s.m2}};
}

json to_json(const Violation& v) {
  return {{"kind", to_string(v.kind)}, {"side", v.side}, {"row", v.row}, {"col", v.col}, {"message", v.message}};
}

json to_json(const WitnessPair& w) { return {{"p1", w.p1}, {"p2", w.p2}, {"d", w.d}}; }

json to_json(const LinkCertificate& cert) {
  json links = json::array();
  for (const auto& l : cert.links) links.push_back({{"row", l.row}, {"side", l.side}});
  return {{"order", cert.order}, {"links", links}};
}

json to_json(const ColumnComponents& c) {
  return {{"columns", c.columns}, {"rows1", c.rows1}, {"rows2", c.rows2}};
}

json to_json(const MultiplicitySearch& s) {
  json out{{"method", s.method}, {"cone_feasible", s.cone_feasible}, {"witness", nullptr}};
  if (s.witness) out["witness"] = to_json(*s.witness);
  return out;
}

json to_json(const RankOneDiagnostic& d) {
  json out{{"name", d.name}, {"holds", d.holds}, {"detail", d.detail}, {"value", nullptr}};
  if (d.value) out["value"] = rational(*d.value);
  return out;
}

json to_json(const Verdict& v) {
  const Evidence& e = v.evidence;
  json ev{{"compressed", to_json(e.compressed)}};
  if (e.rfd_witness) ev["rfd_witness"] = to_json(*e.rfd_witness);
  if (e.components) ev["components"] = to_json(*e.components);
  if (e.link) ev["link"] = to_json(*e.link);
  if (e.multiplicity_search) ev["multiplicity_search"] = to_json(*e.multiplicity_search);
  if (!e.rank_one.empty()) {
    ev["rank_one"] = json::array();
    for (const auto& d : e.rank_one) ev["rank_one"].push_back(to_json(d));
  }
  if (e.family_shape) ev["family_shape"] = {e.family_shape->first, e.family_shape->second};
  if (!e.isomorphism.empty()) ev["isomorphism"] = e.isomorphism;
  json corroborating = json::array();
  for (Rule r : e.corroborating) corroborating.push_back(to_string(r));
  ev["corroborating"] = corroborating;
  ev["notes"] = e.notes;
  return {{"label", to_string(v.label)}, {"rule", to_string(v.rule)}, {"summary", v.summary}, {"evidence", ev}};
}

json to_json(const DensityCheck& c) {
  json failed = json::array();
  for (auto h : c.failed) failed.push_back(to_string(h));
  return {{"dense", c.dense}, {"failed", failed}};
}

json to_json(const ExhaustiveReport& r) {
  return {{"n_max", r.n_max},
          {"scenes_total", r.scenes_total},
          {"scenes_checked", r.scenes_checked},
          {"scenes_skipped", r.scenes_skipped},
          {"profiles_checked", r.profiles_checked},
          {"merge_identity_checks", r.merge_identity_checks},
          {"merge_identity_failures", r.merge_identity_failures},
          {"bound_counterexamples", r.bound_counterexamples},
          {"monotonicity_counterexamples", r.monotonicity_counterexamples},
          {"failures", r.failures}};
}

json to_json(const CompletionPlan& p) {
  json out{{"method", p.method}, {"target", p.target}, {"hat_q1", p.hat_q1}, {"hat_q2", p.hat_q2}};
  if (p.method == "rank_one") out["k"] = p.k;
  else out.update({{"Q", p.Q}, {"lcm", p.lcm}, {"levels", p.levels}, {"p_hat", p.p_hat}});
  return out;
}

json to_json(const DpiReport& r) {
  json trials = json::array();
  for (const auto& t : r.trials) trials.push_back({{"trial", t.index}, {"dimension", t.dimension}, {"unstable", t.unstable}});
  json general = json::array(), two = json::array();
  for (const auto& c : r.block_general_position) general.push_back(to_json(c));
  for (const auto& c : r.block_multiplicity_two) two.push_back(to_json(c));
  return {{"inputs",
           {{"instance", to_json(r.rep.instance)},
            {"trials", r.options.trials},
            {"epsilon", r.options.epsilon},
            {"seed", r.options.seed},
            {"tol", r.options.tol},
            {"mode", r.options.mode == SamplingMode::Haar ? "haar" : "near_identity"}}},
          {"start", {{"q1", r.start.q1}, {"q2", r.start.q2}}},
          {"representation", {{"q1", r.rep.q1}, {"q2", r.rep.q2}, {"N", r.N}, {"d", r.d}}},
          {"completion_method", r.completion_method},
          {"exact_identity_dimension", r.exact_identity_dimension},
          {"commutant_dimension_sum", r.commutant_dimension_sum},
          {"base_commutant_dimension", r.base_commutant_dimension},
          {"strict_dimension_inequality", r.strict_dimension_inequality},
          {"block_general_position", general},
          {"block_multiplicity_two", two},
          {"fraction_trivial", r.fraction_trivial},
          {"unstable_count", r.unstable_count},
          {"per_trial", trials}};
}

}  // namespace amalgam

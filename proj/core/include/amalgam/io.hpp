#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "amalgam/classify.hpp"
#include "amalgam/density.hpp"
#include "amalgam/numlab.hpp"

namespace amalgam {

using nlohmann::json;

/// Malformed JSON or a document not matching the expected schema. The
/// message names the offending location.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

json load_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& doc);

/// {"D":{"blocks":[...]},"A1":{"blocks":[...]},"A2":{"blocks":[...]},"mu1":[[...]],"mu2":[[...]]}
/// Checks structure only; use validate() for the algebraic constraints.
AmalgamInstance instance_from_json(const json& doc);
json to_json(const AmalgamInstance& instance);

/// {"N":int,"p1":[...],"m1":[...],"p2":[...],"m2":[...]}
DensityScene scene_from_json(const json& doc);
json to_json(const DensityScene& scene);

json to_json(const Violation& v);
json to_json(const WitnessPair& w);
json to_json(const LinkCertificate& cert);
json to_json(const ColumnComponents& comps);
json to_json(const MultiplicitySearch& search);
json to_json(const RankOneDiagnostic& d);
json to_json(const Verdict& verdict);
json to_json(const DensityCheck& check);
json to_json(const ExhaustiveReport& report);
json to_json(const CompletionPlan& plan);
json to_json(const DpiReport& report);

}  // namespace amalgam

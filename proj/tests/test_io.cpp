#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "amalgam/corpus.hpp"
#include "amalgam/io.hpp"

using namespace amalgam;
using json = nlohmann::json;

namespace {

json valid_doc() {
  return json::parse(R"({"D": {"blocks": [1, 1]}, "A1": {"blocks": [2]}, "A2": {"blocks": [2]},
                         "mu1": [[1, 1]], "mu2": [[1, 1]]})");
}

std::string schema_message(const json& doc) {
  try {
    instance_from_json(doc);
  } catch (const SchemaError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(InstanceJson, RoundTripsEveryCorpusEntry) {
  for (const auto& e : corpus()) {
    const auto doc = to_json(e.instance);
    EXPECT_EQ(instance_from_json(doc), e.instance) << e.name;
    EXPECT_EQ(instance_from_json(json::parse(doc.dump())), e.instance) << e.name;
  }
}

TEST(InstanceJson, SchemaErrorsNameThePath) {
  auto doc = valid_doc();
  doc["mu1"][0][1] = "x";
  EXPECT_NE(schema_message(doc).find("$.mu1[0][1]"), std::string::npos) << schema_message(doc);

  doc = valid_doc();
  doc.erase("A2");
  EXPECT_NE(schema_message(doc).find("A2"), std::string::npos);

  doc = valid_doc();
  doc["mu2"] = json::array({json::array({1, 1}), json::array({1})});
  EXPECT_NE(schema_message(doc).find("$.mu2"), std::string::npos);

  EXPECT_FALSE(schema_message(json::array()).empty());
  doc = valid_doc();
  doc["D"]["blocks"] = json::array({1.5});
  EXPECT_FALSE(schema_message(doc).empty());
}

TEST(InstanceJson, StructureOnlyNotAlgebra) {
  auto doc = valid_doc();
  doc["A1"]["blocks"] = json::array({3});
  const auto inst = instance_from_json(doc);
  EXPECT_FALSE(validate(inst).empty());
}

TEST(SceneJson, RoundTrip) {
  const DensityScene s{6, {2, 1}, {2, 2}, {3}, {2}};
  EXPECT_EQ(scene_from_json(to_json(s)), s);
  auto doc = to_json(s);
  doc.erase("m2");
  EXPECT_THROW(scene_from_json(doc), SchemaError);
}

TEST(Files, WriteAndLoad) {
  const auto dir = std::filesystem::temp_directory_path() / "amalgam_io_test";
  std::filesystem::remove_all(dir);
  const auto path = dir / "nested" / "x.json";
  write_json_file(path, valid_doc());
  EXPECT_EQ(load_json_file(path), valid_doc());
  std::ofstream(dir / "bad.json") << "{not json";
  EXPECT_THROW(load_json_file(dir / "bad.json"), SchemaError);
  EXPECT_THROW(load_json_file(dir / "missing.json"), IoError);
  std::filesystem::remove_all(dir);
}

TEST(Reports, VerdictFields) {
  const auto v = classify(find_corpus_entry("m4_c2_m2m2")->instance);
  const auto doc = to_json(v);
  EXPECT_EQ(doc["label"], "Primitive");
  EXPECT_EQ(doc["rule"], "rank_one_characterization");
  EXPECT_TRUE(doc.contains("evidence"));
  EXPECT_TRUE(doc.dump().find("3/4") != std::string::npos);
}

TEST(Reports, WitnessIsZeroBased) {
  const auto doc = to_json(LinkCertificate{{1, 0, 2}, {{0, 2}, {0, 1}}});
  EXPECT_EQ(doc["order"], json::array({1, 0, 2}));
}

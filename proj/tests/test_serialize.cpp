#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "heavytail/samplers.hpp"
#include "heavytail/serialize.hpp"

using namespace heavytail;
using namespace heavytail::serialize;

namespace {

samplers::SampleBatch tiny_batch() {
  return samplers::sample("ML_VIA_K_EXP", FamilySpec::mittag_leffler(0.6), 5,
                          7, 2);
}

}  // namespace

TEST_CASE("CSV carries provenance comments, a header, and 17-digit values") {
  const auto batch = tiny_batch();
  const std::string csv = to_csv(batch);

  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> comments, data;
  bool seen_header = false;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) {
      comments.push_back(line);
    } else if (!seen_header) {
      CHECK(line == "value");
      seen_header = true;
    } else {
      data.push_back(line);
    }
  }
  REQUIRE(seen_header);
  REQUIRE(data.size() == batch.values.size());

  bool recipe_comment = false, seed_comment = false;
  for (const auto& c : comments) {
    recipe_comment = recipe_comment || c.find("ML_VIA_K_EXP") != std::string::npos;
    seed_comment = seed_comment || c.find("seed=7") != std::string::npos;
  }
  CHECK(recipe_comment);
  CHECK(seed_comment);

  // 17 significant digits: values survive a text round-trip bit-exactly.
  for (std::size_t i = 0; i < data.size(); ++i) {
    CHECK(std::strtod(data[i].c_str(), nullptr) == batch.values[i]);
  }
}

TEST_CASE("JSON envelope carries the version tag and exact values") {
  const auto batch = tiny_batch();
  const auto doc = nlohmann::json::parse(to_json(batch, /*include_values=*/true));
  CHECK(doc.at("schema") == kSchemaVersion);
  CHECK(doc.at("kind") == "samples");
  CHECK(doc.at("family") == "mittag-leffler");
  CHECK(doc.at("params").at("delta") == 0.6);
  CHECK(doc.at("recipe") == "ML_VIA_K_EXP");
  CHECK(doc.at("seed") == 7);
  CHECK(doc.at("stream") == 2);
  CHECK(doc.at("n") == 5);
  REQUIRE(doc.at("values").size() == batch.values.size());
  for (std::size_t i = 0; i < batch.values.size(); ++i) {
    CHECK(doc.at("values")[i].get<double>() == batch.values[i]);
  }

  const auto summary_doc = nlohmann::json::parse(to_json(batch, false));
  CHECK(!summary_doc.contains("values"));
  CHECK(summary_doc.at("summary").at("count") == 5);
  CHECK(summary_doc.at("summary").contains("mean"));
  CHECK(summary_doc.at("summary").contains("stdev"));
  CHECK(summary_doc.at("summary").contains("min"));
  CHECK(summary_doc.at("summary").contains("max"));
}

TEST_CASE("params_json spells every parameter by name") {
  CHECK(nlohmann::json::parse(params_json(FamilySpec::mittag_leffler(0.5))) ==
        nlohmann::json({{"delta", 0.5}}));
  CHECK(nlohmann::json::parse(params_json(FamilySpec::linnik(1.4))) ==
        nlohmann::json({{"alpha", 1.4}}));
  CHECK(nlohmann::json::parse(params_json(FamilySpec::ratio_q(1.0, 2.0))) ==
        nlohmann::json({{"alpha", 1.0}, {"alpha_prime", 2.0}}));
  CHECK(nlohmann::json::parse(params_json(FamilySpec::exponential())) ==
        nlohmann::json::object());
}

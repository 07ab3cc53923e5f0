#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>

#include "euq/errors.h"
#include "euq/io.h"

using namespace euq;
namespace fs = std::filesystem;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_predictions(text, "f.jsonl");
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("prediction file parsing") {
  SUBCASE("happy path") {
    const auto f = parse_predictions(
        "{\"id\":\"a\",\"label\":0,\"probs\":[[0.9,0.1],[0.5,0.5]]}\n"
        "\n"
        "{\"id\":\"b\",\"label\":1,\"probs\":[[0.2,0.8],[0.4,0.6]]}\n",
        "f.jsonl");
    CHECK(f.num_classes == 2);
    REQUIRE(f.rows.size() == 2);
    CHECK(f.rows[1].id == "b");
    CHECK(f.rows[1].label == 1);
    CHECK(f.rows[0].set.num_members() == 2);
    CHECK(f.warnings.empty());
  }
  SUBCASE("small sum deviation is renormalized") {
    const auto f =
        parse_predictions("{\"id\":\"a\",\"label\":0,\"probs\":[[0.50005,0.5]]}", "f.jsonl");
    CHECK(f.rows[0].set.prob(0, 0) + f.rows[0].set.prob(0, 1) ==
          doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("errors cite the line and row") {
    const auto bad_sum = error_of(
        "{\"id\":\"a\",\"label\":0,\"probs\":[[0.5,0.5]]}\n"
        "{\"id\":\"row-7\",\"label\":0,\"probs\":[[0.5,0.4]]}\n");
    CHECK(bad_sum.find("f.jsonl:2:") == 0);
    CHECK(bad_sum.find("row-7") != std::string::npos);
    CHECK(error_of("{\"id\":\"a\",\"label\":0,\"probs\":[[0.5,0.5]]}\nnot json\n")
              .find("f.jsonl:2:") == 0);
    CHECK(error_of("{\"id\":\"a\",\"label\":0,\"probs\":[[0.5,0.5]]}\n"
                   "{\"id\":\"b\",\"label\":0,\"probs\":[[0.2,0.3,0.5]]}\n")
              .find("classes") != std::string::npos);
    CHECK(!error_of("{\"id\":\"a\",\"label\":2,\"probs\":[[0.5,0.5]]}").empty());
    CHECK(!error_of("{\"id\":\"a\",\"probs\":[[0.5,0.5]]}").empty());
    CHECK(!error_of("{\"id\":\"a\",\"label\":0,\"probs\":[]}").empty());
    CHECK(!error_of("").empty());
  }
  SUBCASE("varying member counts warn") {
    const auto f = parse_predictions(
        "{\"id\":\"a\",\"label\":0,\"probs\":[[0.9,0.1],[0.5,0.5]]}\n"
        "{\"id\":\"b\",\"label\":1,\"probs\":[[0.2,0.8]]}\n",
        "f.jsonl");
    CHECK(f.warnings.size() == 1);
  }
}

TEST_CASE("synthetic data") {
  SynthSpec spec;
  spec.num_classes = 4;
  spec.num_members = 6;
  spec.num_samples = 300;
  spec.seed = 9;
  const auto a = synth_generate(spec);
  const auto b = synth_generate(spec);
  CHECK(format_predictions(a) == format_predictions(b));
  CHECK(a.rows.size() == 300);

  SUBCASE("serialize and load round trip") {
    const auto back = parse_predictions(format_predictions(a), "mem");
    REQUIRE(back.rows.size() == a.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(back.rows[i].id == a.rows[i].id);
      CHECK(back.rows[i].label == a.rows[i].label);
      CHECK(back.rows[i].set.members() == a.rows[i].set.members());
    }
  }
  SUBCASE("error rate zero means every label is the mean argmax") {
    spec.error_rate = 0.0;
    for (const auto& row : synth_generate(spec).rows) {
      CHECK(row.label == mean_prediction(row.set).argmax_class);
    }
  }
  SUBCASE("invalid specs") {
    for (auto mutate : std::vector<void (*)(SynthSpec&)>{
             [](SynthSpec& s) { s.num_classes = 1; }, [](SynthSpec& s) { s.num_members = 0; },
             [](SynthSpec& s) { s.num_samples = 0; }, [](SynthSpec& s) { s.error_rate = 1.5; },
             [](SynthSpec& s) { s.separation = -1.0; }}) {
      SynthSpec bad;
      mutate(bad);
      CHECK_THROWS_AS(synth_generate(bad), InputError);
    }
  }
}

TEST_CASE("score files") {
  const std::vector<ScoreLine> lines = {{"a", MeasureId::kMI, 0.1},
                                        {"a", MeasureId::kGH, 1.0 / 3.0}};
  const auto text = format_scores(lines);
  CHECK(text.rfind("sample_id,measure,score\n", 0) == 0);
  const auto back = parse_scores(text);
  REQUIRE(back.size() == 2);
  CHECK(back[1].score == 1.0 / 3.0);
  CHECK(back[1].measure == MeasureId::kGH);
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("manifests and hashing") {
  const fs::path dir = fs::temp_directory_path() / "euq_io_test";
  fs::remove_all(dir);
  const fs::path result = dir / "r.json";
  write_text(result, "abc");
  CHECK(sha256_file(result) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");

  CHECK_THROWS_AS(read_manifest(result), InputError);
  RunManifest m;
  m.command = "eval selective";
  m.dataset = "syn";
  m.model = "de";
  m.task = "selective";
  m.run = 3;
  m.measures = {"mi", "wd"};
  m.betas = {0.0, 0.1};
  m.seed = 42;
  m.inputs = {{"x.jsonl", "00"}};
  write_manifest(result, m);
  CHECK(fs::exists(manifest_path(result)));
  const auto back = read_manifest(result);
  CHECK(back.model == "de");
  CHECK(back.run == 3);
  CHECK(back.measures == m.measures);
  CHECK(back.betas == m.betas);
  CHECK(back.seed == 42);
  CHECK(back.tool_version == kToolVersion);
  CHECK(back.inputs.size() == 1);
  fs::remove_all(dir);
}

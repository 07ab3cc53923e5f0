/// @file io.h
/// Prediction files, synthetic data, score files and run manifests.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "euq/core.h"
#include "euq/measures.h"

namespace euq {

inline constexpr const char* kToolVersion = "0.1.0";

struct PredictionRow {
  std::string id;
  std::size_t label = 0;
  PredictionSet set;
};

/// One JSON object per line:
///   {"id":"s0","label":1,"probs":[[0.9,0.1],[0.5,0.5]]}
/// where probs holds M rows of K probabilities.
struct PredictionFile {
  std::string path;
  std::size_t num_classes = 0;
  std::vector<PredictionRow> rows;
  std::vector<std::string> warnings;
};

/// Parses and validates a prediction file, preserving row order. Errors
/// name the 1-based line and, for probability violations, the row id.
PredictionFile load_predictions(const std::filesystem::path& path);

/// Parses prediction records from an in-memory buffer; `source` only labels
/// error messages.
PredictionFile parse_predictions(const std::string& text, const std::string& source);

/// Serializes rows with shortest round-trip number formatting.
std::string format_predictions(const PredictionFile& file);
void write_predictions(const PredictionFile& file, const std::filesystem::path& path);

struct SynthSpec {
  int num_classes = 2;
  int num_members = 5;
  int num_samples = 1000;
  double error_rate = 0.2;
  double separation = 3.0;
  std::uint64_t seed = 0;
};

/// Deterministic synthetic prediction sets with a known ranking signal.
///
/// Each sample mixes two classes (a leading class and a runner-up) plus a
/// small fixed residual on the remaining classes. Correct samples come in
/// three dispersion shapes: tight clusters, members jittered near a simplex
/// vertex, and tight clusters with one displaced member. A misclassified
/// sample is "hard" with probability 1 - exp(-separation); hard samples
/// spread their members around the two-class boundary with a half-width that
/// also grows with separation and, for K > 2, disagree on the residual
/// classes as well. Non-hard errors reuse the correct-sample
/// shapes, so separation = 0 carries no signal. Labels are assigned after
/// the members: the argmax of the mean for correct samples, another class
/// for errors.
PredictionFile synth_generate(const SynthSpec& spec);

/// Header `sample_id,measure,score`, scores printed with 17 significant
/// digits.
struct ScoreLine {
  std::string sample_id;
  MeasureId measure;
  double score;
};
std::string format_scores(const std::vector<ScoreLine>& lines);
std::vector<ScoreLine> parse_scores(const std::string& text);

/// %.17g formatting.
std::string format_double(double v);

struct ManifestInput {
  std::string path;
  std::string sha256;
};

/// Reproducibility envelope written next to every result file.
struct RunManifest {
  std::string command;
  std::string dataset = "unknown";
  std::string model = "unknown";
  std::string task;
  int run = 0;
  std::vector<std::string> measures;
  std::vector<double> betas;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  std::vector<ManifestInput> inputs;
};

/// `<result>.manifest.json`.
std::filesystem::path manifest_path(const std::filesystem::path& result);
void write_manifest(const std::filesystem::path& result, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& result);

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace euq

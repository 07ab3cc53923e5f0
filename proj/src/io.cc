#include "euq/io.h"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "euq/errors.h"
#include "json.hpp"

namespace euq {

using nlohmann::json;

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

namespace {

[[noreturn]] void fail_line(const std::string& source, std::size_t line,
                            const std::string& what) {
  std::ostringstream msg;
  msg << source << ":" << line << ": " << what;
  throw InputError(msg.str());
}

}  // namespace

PredictionFile parse_predictions(const std::string& text, const std::string& source) {
  PredictionFile file;
  file.path = source;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::size_t first_members = 0;
  bool warned_members = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      fail_line(source, line_no, std::string("malformed record: ") + e.what());
    }
    if (!record.is_object() || !record.contains("id") || !record.contains("label") ||
        !record.contains("probs")) {
      fail_line(source, line_no, "record needs fields id, label and probs");
    }
    if (!record["id"].is_string()) fail_line(source, line_no, "id must be a string");
    if (!record["label"].is_number_integer() || record["label"].get<long long>() < 0) {
      fail_line(source, line_no, "label must be a nonnegative integer");
    }
    const auto& probs = record["probs"];
    if (!probs.is_array() || probs.empty()) {
      fail_line(source, line_no, "probs must be a nonempty array of rows");
    }

    const std::string id = record["id"].get<std::string>();
    std::vector<ProbabilityVector> members;
    for (const auto& row : probs) {
      if (!row.is_array()) fail_line(source, line_no, "each probs entry must be an array");
      std::vector<double> values;
      for (const auto& v : row) {
        if (!v.is_number()) fail_line(source, line_no, "probabilities must be numbers");
        values.push_back(v.get<double>());
      }
      try {
        members.push_back(ProbabilityVector::FromRaw(std::move(values)));
      } catch (const InputError& e) {
        fail_line(source, line_no, "row '" + id + "': " + e.what());
      }
    }

    const std::size_t k = members.front().size();
    if (file.rows.empty()) {
      file.num_classes = k;
      first_members = members.size();
    }
    for (const auto& p : members) {
      if (p.size() != file.num_classes) {
        std::ostringstream what;
        what << "row '" << id << "' has " << p.size() << " classes, expected "
             << file.num_classes;
        fail_line(source, line_no, what.str());
      }
    }
    if (members.size() != first_members && !warned_members) {
      file.warnings.push_back(source + ": member count varies across rows");
      warned_members = true;
    }
    const auto label = record["label"].get<std::size_t>();
    if (label >= file.num_classes) {
      fail_line(source, line_no, "row '" + id + "' has label outside 0..K-1");
    }
    file.rows.push_back({id, label, PredictionSet(std::move(members))});
  }
  if (file.rows.empty()) throw InputError(source + ": no prediction records");
  return file;
}

PredictionFile load_predictions(const std::filesystem::path& path) {
  return parse_predictions(read_text(path), path.string());
}

std::string format_predictions(const PredictionFile& file) {
  std::string out;
  for (const auto& row : file.rows) {
    json probs = json::array();
    for (const auto& p : row.set.members()) {
      probs.push_back(json(std::vector<double>(p.values().begin(), p.values().end())));
    }
    json record = {{"id", row.id}, {"label", row.label}, {"probs", std::move(probs)}};
    out += record.dump();
    out += '\n';
  }
  return out;
}

void write_predictions(const PredictionFile& file, const std::filesystem::path& path) {
  write_text(path, format_predictions(file));
}

std::string format_double(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::string format_scores(const std::vector<ScoreLine>& lines) {
  std::string out = "sample_id,measure,score\n";
  for (const auto& line : lines) {
    out += line.sample_id;
    out += ',';
    out += measure_name(line.measure);
    out += ',';
    out += format_double(line.score);
    out += '\n';
  }
  return out;
}

std::vector<ScoreLine> parse_scores(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "sample_id,measure,score") {
    throw InputError("score file must start with 'sample_id,measure,score'");
  }
  std::vector<ScoreLine> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto last = line.rfind(',');
    const auto middle = line.rfind(',', last - 1);
    if (last == std::string::npos || middle == std::string::npos) {
      throw InputError("malformed score line '" + line + "'");
    }
    out.push_back({line.substr(0, middle),
                   parse_measure(line.substr(middle + 1, last - middle - 1)),
                   std::stod(line.substr(last + 1))});
  }
  return out;
}

std::filesystem::path manifest_path(const std::filesystem::path& result) {
  return std::filesystem::path(result.string() + ".manifest.json");
}

void write_manifest(const std::filesystem::path& result, const RunManifest& m) {
  json inputs = json::array();
  for (const auto& in : m.inputs) inputs.push_back({{"path", in.path}, {"sha256", in.sha256}});
  const json doc = {{"command", m.command},   {"dataset", m.dataset},
                    {"model", m.model},       {"task", m.task},
                    {"run", m.run},           {"measures", m.measures},
                    {"betas", m.betas},       {"alpha", m.alpha},
                    {"seed", m.seed},         {"tool_version", m.tool_version},
                    {"inputs", inputs},       {"result", result.filename().string()}};
  write_text(manifest_path(result), doc.dump(2) + "\n");
}

RunManifest read_manifest(const std::filesystem::path& result) {
  const auto path = manifest_path(result);
  if (!std::filesystem::exists(path)) {
    throw InputError("result '" + result.string() + "' has no manifest");
  }
  json doc;
  try {
    doc = json::parse(read_text(path));
    RunManifest m;
    m.command = doc.at("command").get<std::string>();
    m.dataset = doc.at("dataset").get<std::string>();
    m.model = doc.at("model").get<std::string>();
    m.task = doc.at("task").get<std::string>();
    m.run = doc.at("run").get<int>();
    m.measures = doc.at("measures").get<std::vector<std::string>>();
    m.betas = doc.at("betas").get<std::vector<double>>();
    m.alpha = doc.at("alpha").get<double>();
    m.seed = doc.at("seed").get<std::uint64_t>();
    m.tool_version = doc.at("tool_version").get<std::string>();
    for (const auto& in : doc.at("inputs")) {
      m.inputs.push_back({in.at("path").get<std::string>(), in.at("sha256").get<std::string>()});
    }
    return m;
  } catch (const json::exception& e) {
    throw InputError("invalid manifest '" + path.string() + "': " + e.what());
  }
}

std::string sha256_file(const std::filesystem::path& path) {
  const std::string bytes = read_text(path);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw NumericalError("SHA-256 computation failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

}  // namespace euq

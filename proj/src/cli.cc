#include "euq/cli.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <filesystem>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "euq/credal_measures.h"
#include "euq/dist_measures.h"
#include "euq/errors.h"
#include "euq/reference.h"
#include "euq/stats.h"
#include "json.hpp"

namespace euq {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<EvaluationRecord> evaluate_file(const PredictionFile& file,
                                            const std::vector<MeasureId>& measures,
                                            const MeasureOptions& options, int workers) {
  const std::size_t n = file.rows.size();
  std::vector<EvaluationRecord> records(n);
  std::vector<std::exception_ptr> failures(n);
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < n; i += step) {
      try {
        const auto& row = file.rows[i];
        EvaluationRecord r;
        r.sample_id = row.id;
        r.true_label = row.label;
        r.predicted_label = mean_prediction(row.set).argmax_class;
        for (MeasureId m : measures) r.scores[m] = quantify(row.set, m, options).value;
        records[i] = std::move(r);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1, std::max<std::size_t>(n, 1));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (failures[i]) {
      try {
        std::rethrow_exception(failures[i]);
      } catch (const Error& e) {
        // Keep the error type (and so the exit code), prefix the row id.
        const std::string msg = "row '" + file.rows[i].id + "': " + e.what();
        if (dynamic_cast<const EnumerationLimitError*>(&e)) throw EnumerationLimitError(msg);
        if (dynamic_cast<const InputError*>(&e)) throw InputError(msg);
        throw NumericalError(msg);
      }
    }
  }
  return records;
}

namespace {

double literal_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

void expect_close(double fast, double oracle, double tol, const std::string& what) {
  if (std::abs(fast - oracle) > tol) {
    std::ostringstream msg;
    msg << "oracle mismatch for " << what << ": fast path " << format_double(fast)
        << ", oracle " << format_double(oracle) << ", tolerance " << tol;
    throw NumericalError(msg.str());
  }
}

}  // namespace

int oracle_check(const PredictionSet& set, const std::vector<MeasureId>& measures,
                 const MeasureOptions& options) {
  const int k_count = static_cast<int>(set.num_classes());
  const int m_count = static_cast<int>(set.num_members());
  if (k_count > 3 || m_count > 5) return 0;
  int checks = 0;
  const ProbabilityIntervals iv = build_intervals(set);
  const auto grid = reference::SimplexGrid::Default(k_count);

  for (MeasureId measure : measures) {
    const double fast = quantify(set, measure, options).value;
    switch (measure) {
      case MeasureId::kMI: {
        std::vector<double> mean(k_count, 0.0);
        double expected = 0.0;
        for (const auto& p : set.members()) {
          for (int k = 0; k < k_count; ++k) mean[k] += p[k] / m_count;
          expected += literal_entropy(p.values()) / m_count;
        }
        expect_close(fast, std::max(literal_entropy(mean) - expected, 0.0), 1e-9, "mi");
        break;
      }
      case MeasureId::kLWV: {
        std::vector<double> mean(k_count, 0.0);
        double expected = 0.0;
        for (const auto& p : set.members()) {
          for (int k = 0; k < k_count; ++k) {
            mean[k] += p[k] / m_count;
            expected += p[k] * (1.0 - p[k]) / m_count;
          }
        }
        double total = 0.0;
        for (double v : mean) total += v * (1.0 - v);
        expect_close(fast, std::max(total - expected, 0.0), 1e-9, "lwv");
        break;
      }
      case MeasureId::kWD: {
        const double scale = options.wd_prefactor == WdPrefactor::kHalfL1 ? 0.5 : 1.0;
        auto objective = [&](std::span<const double> q) {
          double total = 0.0;
          for (const auto& p : set.members()) {
            for (int k = 0; k < k_count; ++k) total += std::abs(p[k] - q[k]);
          }
          return scale * total;
        };
        const auto best = reference::grid_minimize(objective, grid);
        const double bound = scale * m_count * k_count * grid.step;
        if (fast > best.value + 1e-12 || best.value - fast > bound) {
          expect_close(fast, best.value, bound, "wd");
        }
        break;
      }
      case MeasureId::kHDiff: {
        try {
          auto neg_entropy = [](std::span<const double> q) { return -literal_entropy(q); };
          auto entropy = [](std::span<const double> q) { return literal_entropy(q); };
          const auto top = reference::grid_minimize(neg_entropy, grid, iv);
          const auto bottom = reference::grid_minimize(entropy, grid, iv);
          const double hi = max_entropy(iv);
          const double lo = min_entropy(iv, options.vertex_cap);
          const double hi_bound = top.resolution_bound() + 1e-9;
          const double lo_bound = bottom.resolution_bound() + 1e-9;
          if (hi < -top.value - 1e-12 || hi + top.value > hi_bound) {
            expect_close(hi, -top.value, hi_bound, "max entropy");
          }
          if (lo > bottom.value + 1e-12 || bottom.value - lo > lo_bound) {
            expect_close(lo, bottom.value, lo_bound, "min entropy");
          }
        } catch (const OracleError&) {
          // Credal set thinner than the lattice; nothing to compare.
          continue;
        }
        break;
      }
      case MeasureId::kGH:
        expect_close(fast, std::max(reference::generalized_hartley_direct(iv), 0.0), 1e-12,
                     "gh");
        break;
      case MeasureId::kMMI: {
        double best = 0.0;
        const auto full = ClassSubset::Full(k_count);
        for (std::uint64_t a = 0; a <= full.mask; ++a) {
          const ClassSubset s{a, k_count};
          best = std::max(best, upper_probability(iv, s) - lower_probability(iv, s));
        }
        expect_close(fast, best, 1e-12, "mmi");
        break;
      }
    }
    ++checks;
  }
  return checks;
}

namespace {

std::vector<ManifestInput> hash_inputs(const std::vector<std::string>& paths) {
  std::vector<ManifestInput> inputs;
  for (const auto& p : paths) inputs.push_back({p, sha256_file(p)});
  return inputs;
}

std::vector<std::string> measure_names(const std::vector<MeasureId>& measures) {
  std::vector<std::string> names;
  for (MeasureId m : measures) names.emplace_back(measure_name(m));
  return names;
}

WdPrefactor parse_prefactor(const std::string& name) {
  if (name == "eq8") return WdPrefactor::kHalfL1;
  if (name == "eq9") return WdPrefactor::kFullL1;
  throw InputError("unknown Wasserstein prefactor '" + name + "' (expected eq8 or eq9)");
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << "\n";
}

struct QuantifyArgs {
  std::string input;
  std::string measures;
  std::string output;
  bool oracle = false;
  std::string prefactor = "eq8";
  int workers = 1;
  int vertex_cap = kDefaultVertexCap;
  int subset_cap = kDefaultSubsetCap;
};

void run_quantify(const QuantifyArgs& args, std::ostream& out, std::ostream& err) {
  const auto measures = parse_measure_list(args.measures);
  MeasureOptions options;
  options.wd_prefactor = parse_prefactor(args.prefactor);
  options.vertex_cap = args.vertex_cap;
  options.subset_cap = args.subset_cap;

  const PredictionFile file = load_predictions(args.input);
  print_warnings(file.warnings, err);
  const auto records = evaluate_file(file, measures, options, args.workers);

  std::vector<ScoreLine> lines;
  for (const auto& r : records) {
    for (MeasureId m : measures) lines.push_back({r.sample_id, m, r.scores.at(m)});
  }
  write_text(args.output, format_scores(lines));

  if (args.oracle) {
    int checks = 0;
    std::size_t skipped = 0;
    for (const auto& row : file.rows) {
      const int c = oracle_check(row.set, measures, options);
      checks += c;
      if (c == 0) ++skipped;
    }
    err << "oracle: " << checks << " checks passed, " << skipped
        << " rows too large for the oracles\n";
  }

  RunManifest manifest;
  manifest.command = "quantify";
  manifest.task = "quantify";
  manifest.measures = measure_names(measures);
  manifest.inputs = hash_inputs({args.input});
  write_manifest(args.output, manifest);
  out << "wrote " << lines.size() << " scores to " << args.output << "\n";
}

struct EvalArgs {
  std::string input;
  std::string id_input;
  std::string ood_input;
  std::string measures;
  std::string betas = "default";
  std::string output;
  std::string dataset = "unknown";
  std::string model = "unknown";
  int run = 0;
  int workers = 1;
  std::string prefactor = "eq8";
};

MeasureOptions eval_options(const EvalArgs& args) {
  MeasureOptions options;
  options.wd_prefactor = parse_prefactor(args.prefactor);
  return options;
}

void run_eval_selective(const EvalArgs& args, std::ostream& out, std::ostream& err) {
  const auto measures = parse_measure_list(args.measures);
  const auto betas = parse_betas(args.betas);
  const PredictionFile file = load_predictions(args.input);
  print_warnings(file.warnings, err);
  const auto records = evaluate_file(file, measures, eval_options(args), args.workers);

  json curves = json::array();
  for (MeasureId m : measures) {
    const auto curve = selective_prediction(records, m, betas);
    print_warnings(curve.warnings, err);
    json points = json::array();
    for (const auto& p : curve.points) {
      points.push_back({{"beta", p.rejection_rate},
                        {"accuracy", p.accuracy},
                        {"retained", p.retained}});
    }
    curves.push_back({{"measure", measure_name(m)},
                      {"auarc", curve.auarc},
                      {"beta_min", curve.beta_min},
                      {"beta_max", curve.beta_max},
                      {"points", std::move(points)}});
    out << measure_name(m) << " auarc " << format_double(curve.auarc) << "\n";
  }
  const json doc = {{"task", "selective"}, {"n", records.size()}, {"curves", curves}};
  write_text(args.output, doc.dump(2) + "\n");

  RunManifest manifest;
  manifest.command = "eval selective";
  manifest.dataset = args.dataset;
  manifest.model = args.model;
  manifest.task = "selective";
  manifest.run = args.run;
  manifest.measures = measure_names(measures);
  manifest.betas = betas;
  manifest.inputs = hash_inputs({args.input});
  write_manifest(args.output, manifest);
}

void run_eval_ood(const EvalArgs& args, std::ostream& out, std::ostream& err) {
  const auto measures = parse_measure_list(args.measures);
  const PredictionFile id_file = load_predictions(args.id_input);
  const PredictionFile ood_file = load_predictions(args.ood_input);
  print_warnings(id_file.warnings, err);
  print_warnings(ood_file.warnings, err);
  if (id_file.num_classes != ood_file.num_classes) {
    throw InputError("ID and OOD files disagree on the class count");
  }
  const auto options = eval_options(args);
  const auto id_records = evaluate_file(id_file, measures, options, args.workers);
  const auto ood_records = evaluate_file(ood_file, measures, options, args.workers);

  json results = json::array();
  std::size_t n_id = 0;
  std::size_t n_ood = 0;
  for (MeasureId m : measures) {
    std::vector<double> id_scores;
    std::vector<double> ood_scores;
    for (const auto& r : id_records) id_scores.push_back(r.scores.at(m));
    for (const auto& r : ood_records) ood_scores.push_back(r.scores.at(m));
    const auto detection = ood_detection(id_scores, ood_scores);
    n_id = detection.n_id;
    n_ood = detection.n_ood;
    results.push_back({{"measure", measure_name(m)}, {"auroc", detection.auroc}});
    out << measure_name(m) << " auroc " << format_double(detection.auroc) << "\n";
  }
  const json doc = {{"task", "ood"}, {"n_id", n_id}, {"n_ood", n_ood}, {"results", results}};
  write_text(args.output, doc.dump(2) + "\n");

  RunManifest manifest;
  manifest.command = "eval ood";
  manifest.dataset = args.dataset;
  manifest.model = args.model;
  manifest.task = "ood";
  manifest.run = args.run;
  manifest.measures = measure_names(measures);
  manifest.inputs = hash_inputs({args.id_input, args.ood_input});
  write_manifest(args.output, manifest);
}

// Performance score per measure from an eval result file.
std::map<MeasureId, double> read_performance(const fs::path& path, std::string& task) {
  json doc;
  try {
    doc = json::parse(read_text(path));
    task = doc.at("task").get<std::string>();
    std::map<MeasureId, double> perf;
    if (task == "selective") {
      for (const auto& c : doc.at("curves")) {
        perf[parse_measure(c.at("measure").get<std::string>())] = c.at("auarc").get<double>();
      }
    } else if (task == "ood") {
      for (const auto& r : doc.at("results")) {
        perf[parse_measure(r.at("measure").get<std::string>())] = r.at("auroc").get<double>();
      }
    } else {
      throw InputError("result '" + path.string() + "' has unknown task '" + task + "'");
    }
    return perf;
  } catch (const json::exception& e) {
    throw InputError("invalid result file '" + path.string() + "': " + e.what());
  }
}

json table_to_json(const NetWinTable& t) {
  json wins = json::object();
  json losses = json::object();
  json net = json::object();
  json p_values = json::array();
  json significant = json::array();
  for (MeasureId a : t.measures) {
    const std::string name(measure_name(a));
    wins[name] = t.wins.at(a);
    losses[name] = t.losses.at(a);
    net[name] = t.net.at(a);
    if (t.p_values.empty()) continue;
    json p_row = json::array();
    json s_row = json::array();
    for (MeasureId b : t.measures) {
      if (a == b) {
        p_row.push_back(nullptr);
        s_row.push_back(false);
      } else {
        p_row.push_back(t.p_values.at({a, b}));
        s_row.push_back(t.significant.at({a, b}));
      }
    }
    p_values.push_back(std::move(p_row));
    significant.push_back(std::move(s_row));
  }
  json doc = {{"wins", wins}, {"losses", losses}, {"net", net}};
  if (!t.p_values.empty()) {
    doc["p_values"] = std::move(p_values);
    doc["significant"] = std::move(significant);
  }
  return doc;
}

struct RankArgs {
  std::string runs;
  std::string scope = "inter";
  double alpha = 0.05;
  std::string output;
  std::string zeros = "drop";
};

void run_rank(const RankArgs& args, std::ostream& out, std::ostream&) {
  const Scope scope = parse_scope(args.scope);
  const auto measures = scope_measures(scope);
  if (!(args.alpha > 0.0 && args.alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
  WilcoxonOptions options;
  if (args.zeros == "pratt") {
    options.zeros = ZeroHandling::kPratt;
  } else if (args.zeros != "drop") {
    throw InputError("unknown zero handling '" + args.zeros + "' (expected drop or pratt)");
  }
  if (!fs::is_directory(args.runs)) throw InputError("'" + args.runs + "' is not a directory");

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(args.runs)) {
    const std::string name = entry.path().filename().string();
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    if (name.size() >= 14 && name.ends_with(".manifest.json")) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InputError("no result files in '" + args.runs + "'");

  std::string dataset;
  std::string task;
  // model -> run index -> performance per measure
  std::map<std::string, std::map<int, std::map<MeasureId, double>>> runs;
  for (const auto& path : files) {
    const RunManifest manifest = read_manifest(path);
    std::string file_task;
    const auto perf = read_performance(path, file_task);
    if (dataset.empty() && task.empty()) {
      dataset = manifest.dataset;
      task = file_task;
    }
    if (manifest.dataset != dataset || file_task != task || manifest.task != task) {
      throw InputError("manifest mismatch: '" + path.string() + "' is " + manifest.dataset +
                       "/" + file_task + ", expected " + dataset + "/" + task);
    }
    auto& model_runs = runs[manifest.model];
    if (model_runs.contains(manifest.run)) {
      std::ostringstream msg;
      msg << "duplicate run " << manifest.run << " for model " << manifest.model;
      throw InputError(msg.str());
    }
    model_runs[manifest.run] = perf;
  }

  std::vector<NetWinTable> tables;
  std::vector<std::string> models;
  json per_model = json::object();
  for (const auto& [model, model_runs] : runs) {
    RunMatrix matrix;
    matrix.dataset = dataset;
    matrix.model = model;
    matrix.task = task;
    for (const auto& [run, perf] : model_runs) {
      for (MeasureId m : measures) {
        const auto it = perf.find(m);
        if (it == perf.end()) {
          std::ostringstream msg;
          msg << "model " << model << " run " << run << " has no "
              << measure_name(m) << " result";
          throw InputError(msg.str());
        }
        matrix.scores[m].push_back(it->second);
      }
    }
    tables.push_back(net_wins(matrix, measures, args.alpha, scope, options));
    models.push_back(model);
    per_model[model] = table_to_json(tables.back());
  }
  const NetWinTable total = aggregate_across_models(tables);

  const json doc = {{"scope", scope_name(scope)},
                    {"alpha", args.alpha},
                    {"dataset", dataset},
                    {"task", task},
                    {"zeros", args.zeros},
                    {"models", models},
                    {"measures", measure_names(measures)},
                    {"per_model", per_model},
                    {"total", table_to_json(total)}};
  write_text(args.output, doc.dump(2) + "\n");

  RunManifest manifest;
  manifest.command = "rank";
  manifest.dataset = dataset;
  manifest.model = "*";
  manifest.task = task;
  manifest.measures = measure_names(measures);
  manifest.alpha = args.alpha;
  std::vector<std::string> inputs;
  for (const auto& f : files) inputs.push_back(f.string());
  manifest.inputs = hash_inputs(inputs);
  write_manifest(args.output, manifest);

  out << "net wins (" << scope_name(scope) << ", alpha " << args.alpha << ")\n";
  out << "measure";
  for (const auto& model : models) out << "\t" << model;
  out << "\ttotal\n";
  for (MeasureId m : measures) {
    out << measure_name(m);
    for (const auto& t : tables) out << "\t" << t.net.at(m);
    out << "\t" << total.net.at(m) << "\n";
  }
}

struct SynthArgs {
  SynthSpec spec;
  std::string output;
};

void run_synth(const SynthArgs& args, std::ostream& out, std::ostream&) {
  const PredictionFile file = synth_generate(args.spec);
  write_predictions(file, args.output);
  RunManifest manifest;
  manifest.command = "synth";
  manifest.task = "synth";
  manifest.seed = args.spec.seed;
  write_manifest(args.output, manifest);
  out << "wrote " << file.rows.size() << " samples to " << args.output << "\n";
}

struct ReportArgs {
  std::vector<std::string> arcs;
  std::vector<std::string> sigs;
  std::string outdir;
};

void run_report(const ReportArgs& args, std::ostream& out, std::ostream&) {
  if (args.arcs.empty() && args.sigs.empty()) {
    throw InputError("report needs --arc or --sig inputs");
  }
  fs::create_directories(args.outdir);
  std::vector<std::string> written;
  try {
    if (!args.arcs.empty()) {
      std::string points = "source,measure,beta,accuracy,retained\n";
      std::string areas = "source,measure,auarc,beta_min,beta_max\n";
      for (const auto& path : args.arcs) {
        const json doc = json::parse(read_text(path));
        if (doc.at("task") != "selective") {
          throw InputError("'" + path + "' is not a selective-prediction result");
        }
        const std::string source = fs::path(path).stem().string();
        for (const auto& c : doc.at("curves")) {
          const std::string m = c.at("measure").get<std::string>();
          for (const auto& p : c.at("points")) {
            points += source + "," + m + "," + format_double(p.at("beta").get<double>()) + "," +
                      format_double(p.at("accuracy").get<double>()) + "," +
                      std::to_string(p.at("retained").get<std::size_t>()) + "\n";
          }
          areas += source + "," + m + "," + format_double(c.at("auarc").get<double>()) + "," +
                   format_double(c.at("beta_min").get<double>()) + "," +
                   format_double(c.at("beta_max").get<double>()) + "\n";
        }
      }
      write_text(fs::path(args.outdir) / "arc_points.csv", points);
      write_text(fs::path(args.outdir) / "auarc.csv", areas);
      written.push_back("arc_points.csv");
      written.push_back("auarc.csv");
    }
    for (const auto& path : args.sigs) {
      const json doc = json::parse(read_text(path));
      const std::string source = fs::path(path).stem().string();
      const auto measures = doc.at("measures").get<std::vector<std::string>>();
      const auto models = doc.at("models").get<std::vector<std::string>>();

      std::string matrix = "model,row_measure,col_measure,p_value,significant\n";
      for (const auto& model : models) {
        const auto& t = doc.at("per_model").at(model);
        for (std::size_t i = 0; i < measures.size(); ++i) {
          for (std::size_t j = 0; j < measures.size(); ++j) {
            if (i == j) continue;
            matrix += model + "," + measures[i] + "," + measures[j] + "," +
                      format_double(t.at("p_values").at(i).at(j).get<double>()) + "," +
                      (t.at("significant").at(i).at(j).get<bool>() ? "1" : "0") + "\n";
          }
        }
      }
      std::string nets = "measure";
      for (const auto& model : models) nets += "," + model;
      nets += ",total\n";
      for (const auto& m : measures) {
        nets += m;
        for (const auto& model : models) {
          nets += "," + std::to_string(doc.at("per_model").at(model).at("net").at(m).get<int>());
        }
        nets += "," + std::to_string(doc.at("total").at("net").at(m).get<int>()) + "\n";
      }
      write_text(fs::path(args.outdir) / ("significance_" + source + ".csv"), matrix);
      write_text(fs::path(args.outdir) / ("net_wins_" + source + ".csv"), nets);
      written.push_back("significance_" + source + ".csv");
      written.push_back("net_wins_" + source + ".csv");
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid report input: ") + e.what());
  }
  for (const auto& w : written) out << "wrote " << (fs::path(args.outdir) / w).string() << "\n";
}

const char* error_kind(const Error& e) {
  if (dynamic_cast<const InputError*>(&e)) return "input";
  if (dynamic_cast<const EnumerationLimitError*>(&e)) return "enumeration-limit";
  return "numerical";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Epistemic uncertainty from prediction sets and credal sets", "euq"};
  app.require_subcommand(1);

  QuantifyArgs quantify_args;
  auto* quantify_cmd = app.add_subcommand("quantify", "score every sample under each measure");
  quantify_cmd->add_option("--input", quantify_args.input, "prediction file")->required();
  quantify_cmd->add_option("--measures", quantify_args.measures, "comma-separated measures")
      ->required();
  quantify_cmd->add_option("--output", quantify_args.output, "score CSV")->required();
  quantify_cmd->add_flag("--oracle", quantify_args.oracle,
                         "cross-check small inputs against brute-force oracles");
  quantify_cmd->add_option("--wd-prefactor", quantify_args.prefactor,
                           "eq8 (half the summed L1 distance) or eq9 (full sum)");
  quantify_cmd->add_option("--workers", quantify_args.workers, "worker threads");
  quantify_cmd->add_option("--vertex-cap", quantify_args.vertex_cap,
                           "class cap for credal vertex enumeration");
  quantify_cmd->add_option("--subset-cap", quantify_args.subset_cap,
                           "class cap for subset enumeration");

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "downstream benchmarks");
  eval_cmd->require_subcommand(1);
  auto* selective_cmd = eval_cmd->add_subcommand("selective", "accuracy-rejection curves");
  selective_cmd->add_option("--input", eval_args.input, "prediction file")->required();
  selective_cmd->add_option("--measure", eval_args.measures, "measure id or list")->required();
  selective_cmd->add_option("--betas", eval_args.betas,
                            "default | comma list | start:stop:step");
  selective_cmd->add_option("--output", eval_args.output, "ARC result file")->required();
  auto* ood_cmd = eval_cmd->add_subcommand("ood", "AUROC of ID vs OOD scores");
  ood_cmd->add_option("--id", eval_args.id_input, "in-distribution prediction file")->required();
  ood_cmd->add_option("--ood", eval_args.ood_input, "OOD prediction file")->required();
  ood_cmd->add_option("--measure", eval_args.measures, "measure id or list")->required();
  ood_cmd->add_option("--output", eval_args.output, "result file")->required();
  for (auto* cmd : {selective_cmd, ood_cmd}) {
    cmd->add_option("--dataset", eval_args.dataset, "dataset id for the manifest");
    cmd->add_option("--model", eval_args.model, "predictive-model id for the manifest");
    cmd->add_option("--run", eval_args.run, "run index for the manifest");
    cmd->add_option("--workers", eval_args.workers, "worker threads");
    cmd->add_option("--wd-prefactor", eval_args.prefactor, "eq8 or eq9");
  }

  RankArgs rank_args;
  auto* rank_cmd = app.add_subcommand("rank", "pairwise Wilcoxon net wins over runs");
  rank_cmd->add_option("--runs", rank_args.runs, "directory of eval results")->required();
  rank_cmd->add_option("--scope", rank_args.scope, "intra-dist | intra-credal | inter");
  rank_cmd->add_option("--alpha", rank_args.alpha, "significance level");
  rank_cmd->add_option("--output", rank_args.output, "net-win table file")->required();
  rank_cmd->add_option("--zeros", rank_args.zeros, "zero differences: drop | pratt");

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synth", "generate synthetic prediction sets");
  synth_cmd->add_option("--k", synth_args.spec.num_classes, "classes")->required();
  synth_cmd->add_option("--m", synth_args.spec.num_members, "members per sample")->required();
  synth_cmd->add_option("--n", synth_args.spec.num_samples, "samples")->required();
  synth_cmd->add_option("--error-rate", synth_args.spec.error_rate, "fraction misclassified");
  synth_cmd->add_option("--separation", synth_args.spec.separation,
                        "strength of the error dispersion signal");
  synth_cmd->add_option("--seed", synth_args.spec.seed, "random seed");
  synth_cmd->add_option("--output", synth_args.output, "prediction file")->required();

  ReportArgs report_args;
  auto* report_cmd = app.add_subcommand("report", "plot-ready CSV from results");
  report_cmd->add_option("--arc", report_args.arcs, "ARC result files");
  report_cmd->add_option("--sig", report_args.sigs, "rank table files");
  report_cmd->add_option("--outdir", report_args.outdir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*quantify_cmd) run_quantify(quantify_args, out, err);
    else if (*selective_cmd) run_eval_selective(eval_args, out, err);
    else if (*ood_cmd) run_eval_ood(eval_args, out, err);
    else if (*rank_cmd) run_rank(rank_args, out, err);
    else if (*synth_cmd) run_synth(synth_args, out, err);
    else if (*report_cmd) run_report(report_args, out, err);
  } catch (const Error& e) {
    err << "error: " << error_kind(e) << ": " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: input: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace euq

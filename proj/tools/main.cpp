// voytop: corpus topic-modeling toolkit for interlinear manuscript
// transcriptions. Subcommands run individual stages; `run` executes a
// whole preset or config-file pipeline.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <json.hpp>

#include "voytop/errors.hpp"
#include "voytop/graph.hpp"
#include "voytop/io.hpp"
#include "voytop/pipeline.hpp"
#include "voytop/svg.hpp"
#include "voytop/vectorize.hpp"

namespace fs = std::filesystem;
using namespace voytop;

namespace {

RunConfig make_config(const std::string& config_path, const std::string& preset,
                      const std::string& transcription, const std::string& metadata,
                      const std::string& out_dir, std::uint64_t seed, bool seed_set) {
  RunConfig cfg;
  if (!config_path.empty()) cfg = load_config(config_path);
  else if (!preset.empty()) cfg = preset_config(preset);
  if (!transcription.empty()) cfg.transcription = transcription;
  if (!metadata.empty()) cfg.metadata = metadata;
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (seed_set) cfg.seed = seed;
  return cfg;
}

DocTopicModel load_model_json(const fs::path& path) {
  auto j = nlohmann::json::parse(io::read_file(path));
  DocTopicModel model;
  const std::string kind = j.at("kind");
  if (kind == "lsa") model.kind = ModelKind::lsa;
  else if (kind == "nmf") model.kind = ModelKind::nmf;
  else if (kind == "lda") model.kind = ModelKind::lda;
  else throw ValidationError("model.json: unknown kind '" + kind + "'");
  model.k = j.at("k");
  model.seed = j.at("seed");
  model.doc_ids = j.at("doc_ids").get<std::vector<std::string>>();
  model.vocab = j.at("vocabulary").get<std::vector<std::string>>();
  const auto& dt = j.at("doc_topic");
  const auto& tt = j.at("topic_term");
  model.doc_topic.resize(static_cast<Eigen::Index>(dt.size()), model.k);
  for (std::size_t i = 0; i < dt.size(); ++i)
    for (int t = 0; t < model.k; ++t)
      model.doc_topic(static_cast<Eigen::Index>(i), t) = dt[i][static_cast<std::size_t>(t)];
  model.topic_term.resize(model.k, static_cast<Eigen::Index>(model.vocab.size()));
  for (int t = 0; t < model.k; ++t)
    for (std::size_t v = 0; v < model.vocab.size(); ++v)
      model.topic_term(t, static_cast<Eigen::Index>(v)) = tt[static_cast<std::size_t>(t)][v];
  return model;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"voytop: manuscript corpus topic-modeling toolkit"};
  app.require_subcommand(1);

  std::string config_path, preset, transcription, metadata, out_dir = "out";
  std::uint64_t seed = 42;
  bool seed_set = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "config file (sectioned key=value)");
    cmd->add_option("--transcription", transcription, "interlinear transcription file");
    cmd->add_option("--metadata", metadata, "page metadata CSV");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--seed", seed, "global seed")->each([&](const std::string&) {
      seed_set = true;
    });
  };

  // tokenize: corpus stage only, emits documents.jsonl
  auto* cmd_tokenize = app.add_subcommand("tokenize", "parse + tokenize + segment the corpus");
  std::string mode = "page";
  int window_n = 40;
  cmd_tokenize->add_option("--mode", mode, "page|folio|paragraph|fixed_window");
  cmd_tokenize->add_option("--window", window_n, "tokens per fixed window");
  add_common(cmd_tokenize);

  // fit: corpus + vectorize + model, emits model.json and reports
  auto* cmd_fit = app.add_subcommand("fit", "fit a topic model (lda|lsa|nmf)");
  std::string model_kind = "nmf";
  int k = 6;
  cmd_fit->add_option("--model", model_kind, "lda|lsa|nmf");
  cmd_fit->add_option("-k,--topics", k, "topic count");
  add_common(cmd_fit);

  auto* cmd_mca = app.add_subcommand("mca", "MCA over categorical page labels");
  std::string mca_vars;
  cmd_mca->add_option("--variables", mca_vars, "comma-separated variable list");
  add_common(cmd_mca);

  auto* cmd_project = app.add_subcommand("project", "2-D projection (pca|tsne)");
  std::string proj_method = "tsne";
  cmd_project->add_option("--method", proj_method, "pca|tsne");
  add_common(cmd_project);

  auto* cmd_graph = app.add_subcommand("graph", "category networks (DOT + GraphML)");
  add_common(cmd_graph);

  auto* cmd_run = app.add_subcommand("run", "run a full preset or config pipeline");
  cmd_run->add_option("target", preset, "preset name or config file path");
  add_common(cmd_run);

  auto* cmd_report = app.add_subcommand("report", "re-emit reports from a model.json");
  std::string model_path = "out/model.json";
  int top_n = 20;
  cmd_report->add_option("--model-json", model_path, "path to an exported model");
  cmd_report->add_option("-n,--top", top_n, "terms per topic");
  add_common(cmd_report);

  auto* cmd_presets = app.add_subcommand("presets", "list preset names");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_presets->parsed()) {
      for (const auto& name : preset_names()) std::cout << name << "\n";
      return 0;
    }

    if (cmd_run->parsed()) {
      RunConfig cfg;
      if (!preset.empty() && fs::exists(preset) && !fs::is_directory(preset)) {
        cfg = load_config(preset);
      } else if (!preset.empty()) {
        cfg = preset_config(preset);
      } else {
        cfg = make_config(config_path, "", transcription, metadata, out_dir, seed, seed_set);
      }
      if (!transcription.empty()) cfg.transcription = transcription;
      if (!metadata.empty()) cfg.metadata = metadata;
      if (out_dir != "out") cfg.out_dir = out_dir;
      if (seed_set) cfg.seed = seed;
      auto result = run_pipeline(cfg);
      std::cout << "wrote " << result.written_files.size() << " files to "
                << cfg.out_dir.string() << "\n";
      return 0;
    }

    RunConfig cfg = make_config(config_path, "", transcription, metadata, out_dir, seed, seed_set);

    if (cmd_tokenize->parsed()) {
      if (mode == "page") cfg.mode = SegmentationMode::page;
      else if (mode == "folio") cfg.mode = SegmentationMode::folio;
      else if (mode == "paragraph") cfg.mode = SegmentationMode::paragraph;
      else if (mode == "fixed_window") cfg.mode = SegmentationMode::fixed_window;
      else throw ArgumentError("unknown mode '" + mode + "'");
      cfg.window_n = window_n;
      const auto rules = cfg.tokenizer_rules();
      auto records = parse_transcription_file(cfg.transcription, rules);
      auto docs = segment_documents(records, rules, cfg.mode, {cfg.window_n, cfg.seed});
      if (!cfg.metadata.empty() && fs::exists(cfg.metadata))
        docs = apply_exclusions(docs, load_metadata(cfg.metadata), cfg.exclusions);
      fs::create_directories(cfg.out_dir);
      io::atomic_write(cfg.out_dir / "documents.jsonl", documents_to_jsonl(docs));
      std::cout << docs.size() << " documents\n";
      return 0;
    }

    if (cmd_fit->parsed()) {
      if (model_kind == "lda") cfg.model = ModelKind::lda;
      else if (model_kind == "lsa") cfg.model = ModelKind::lsa;
      else if (model_kind == "nmf") cfg.model = ModelKind::nmf;
      else throw ArgumentError("unknown model '" + model_kind + "'");
      cfg.k = k;
      run_pipeline(cfg);
      std::cout << "model written to " << (cfg.out_dir / "model.json").string() << "\n";
      return 0;
    }

    if (cmd_mca->parsed() || cmd_project->parsed() || cmd_graph->parsed()) {
      if (cmd_mca->parsed() && !mca_vars.empty()) {
        cfg.mca_variables.clear();
        std::string cur;
        for (char c : mca_vars + ",") {
          if (c == ',') {
            if (!cur.empty()) cfg.mca_variables.push_back(cur);
            cur.clear();
          } else {
            cur += c;
          }
        }
      }
      if (cmd_project->parsed()) {
        if (proj_method == "pca") cfg.projection = ProjectionMethod::pca;
        else if (proj_method == "tsne") cfg.projection = ProjectionMethod::tsne;
        else throw ArgumentError("unknown projection method '" + proj_method + "'");
      }
      run_pipeline(cfg);
      return 0;
    }

    if (cmd_report->parsed()) {
      auto model = load_model_json(model_path);
      auto terms = top_terms(model, top_n);
      std::string tt = "# topic numbers are arbitrary\ntopic,rank,term,weight\n";
      for (std::size_t t = 0; t < terms.size(); ++t)
        for (std::size_t r = 0; r < terms[t].size(); ++r)
          tt += std::to_string(t) + "," + std::to_string(r + 1) + "," + terms[t][r] + "\n";
      fs::create_directories(cfg.out_dir);
      io::atomic_write(cfg.out_dir / "top_terms.csv", tt);
      std::cout << "top_terms.csv written\n";
      return 0;
    }
  } catch (const NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#include "voytop/pipeline.hpp"

#include <chrono>
#include <iostream>
#include <sstream>

#include "voytop/errors.hpp"
#include "voytop/graph.hpp"
#include "voytop/io.hpp"
#include "voytop/svg.hpp"
#include "voytop/vectorize.hpp"

namespace voytop {

TokenizerRules RunConfig::tokenizer_rules() const {
  TokenizerRules rules;
  rules.selected_transcriber = transcriber;
  if (!split_on_comma) rules.word_separators.erase(',');
  return rules;
}

void RunConfig::validate() const {
  if (k < 1) throw ValidationError("config: k must be >= 1");
  if (mode == SegmentationMode::fixed_window && window_n <= 0)
    throw ValidationError("config: window_n must be positive");
  if (!std::filesystem::exists(transcription))
    throw ValidationError("config: transcription file not found: " + transcription.string());
  if (!std::filesystem::exists(metadata))
    throw ValidationError("config: metadata file not found: " + metadata.string());
}

namespace {

std::string to_string(ProjectionMethod m) {
  return m == ProjectionMethod::pca ? "pca" : "tsne";
}

std::string to_string(ExclusionPolicy p) {
  return p == ExclusionPolicy::page_analysis ? "page_analysis" : "fixed_window_analysis";
}

}  // namespace

std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("input.transcription", transcription.string());
  kv.emplace_back("input.metadata", metadata.string());
  kv.emplace_back("tokenizer.transcriber", std::string(1, transcriber));
  kv.emplace_back("tokenizer.split_on_comma", split_on_comma ? "true" : "false");
  kv.emplace_back("corpus.mode", voytop::to_string(mode));
  kv.emplace_back("corpus.window_n", std::to_string(window_n));
  kv.emplace_back("corpus.exclusions", to_string(exclusions));
  kv.emplace_back("vectorize.min_count", std::to_string(min_count));
  kv.emplace_back("vectorize.log_tf", log_tf ? "true" : "false");
  kv.emplace_back("vectorize.normalize", normalize ? "true" : "false");
  kv.emplace_back("model.kind", voytop::to_string(model));
  kv.emplace_back("model.k", std::to_string(k));
  kv.emplace_back("model.seed", std::to_string(seed));
  kv.emplace_back("model.nmf_max_iter", std::to_string(nmf_max_iter));
  kv.emplace_back("model.nmf_tol", io::format_real(nmf_tol));
  kv.emplace_back("model.lda_alpha", io::format_real(lda_alpha));
  kv.emplace_back("model.lda_beta", io::format_real(lda_beta));
  kv.emplace_back("model.lda_iterations", std::to_string(lda_iterations));
  kv.emplace_back("model.lda_burn_in", std::to_string(lda_burn_in));
  kv.emplace_back("projection.method", to_string(projection));
  kv.emplace_back("projection.perplexity", io::format_real(tsne.perplexity));
  kv.emplace_back("projection.iters", std::to_string(tsne.iters));
  kv.emplace_back("projection.learning_rate", io::format_real(tsne.learning_rate));
  kv.emplace_back("projection.early_exaggeration", io::format_real(tsne.early_exaggeration));
  std::string vars;
  for (const auto& v : mca_variables) vars += (vars.empty() ? "" : ",") + v;
  kv.emplace_back("mca.variables", vars);
  kv.emplace_back("mca.dims", std::to_string(mca_dims));
  kv.emplace_back("mca.include_quire", include_quire ? "true" : "false");
  kv.emplace_back("output.dir", out_dir.string());
  return kv;
}

namespace {

void apply_key(RunConfig& cfg, const std::string& section, const std::string& key,
               const std::string& value) {
  const std::string full = section + "." + key;
  auto as_bool = [&] {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ValidationError("config: " + full + " must be true/false, got '" + value + "'");
  };
  if (full == "input.transcription") cfg.transcription = value;
  else if (full == "input.metadata") cfg.metadata = value;
  else if (full == "tokenizer.transcriber") {
    if (value.size() != 1) throw ValidationError("config: transcriber must be one character");
    cfg.transcriber = value[0];
  } else if (full == "tokenizer.split_on_comma") cfg.split_on_comma = as_bool();
  else if (full == "corpus.mode") {
    if (value == "page") cfg.mode = SegmentationMode::page;
    else if (value == "folio") cfg.mode = SegmentationMode::folio;
    else if (value == "paragraph") cfg.mode = SegmentationMode::paragraph;
    else if (value == "fixed_window") cfg.mode = SegmentationMode::fixed_window;
    else throw ValidationError("config: unknown corpus.mode '" + value + "'");
  } else if (full == "corpus.window_n") cfg.window_n = std::stoi(value);
  else if (full == "corpus.exclusions") {
    if (value == "page_analysis") cfg.exclusions = ExclusionPolicy::page_analysis;
    else if (value == "fixed_window_analysis")
      cfg.exclusions = ExclusionPolicy::fixed_window_analysis;
    else throw ValidationError("config: unknown corpus.exclusions '" + value + "'");
  } else if (full == "vectorize.min_count") cfg.min_count = std::stoi(value);
  else if (full == "vectorize.log_tf") cfg.log_tf = as_bool();
  else if (full == "vectorize.normalize") cfg.normalize = as_bool();
  else if (full == "model.kind") {
    if (value == "lda") cfg.model = ModelKind::lda;
    else if (value == "lsa") cfg.model = ModelKind::lsa;
    else if (value == "nmf") cfg.model = ModelKind::nmf;
    else throw ValidationError("config: unknown model.kind '" + value + "'");
  } else if (full == "model.k") cfg.k = std::stoi(value);
  else if (full == "model.seed") cfg.seed = std::stoull(value);
  else if (full == "model.nmf_max_iter") cfg.nmf_max_iter = std::stoi(value);
  else if (full == "model.nmf_tol") cfg.nmf_tol = std::stod(value);
  else if (full == "model.lda_alpha") cfg.lda_alpha = std::stod(value);
  else if (full == "model.lda_beta") cfg.lda_beta = std::stod(value);
  else if (full == "model.lda_iterations") cfg.lda_iterations = std::stoi(value);
  else if (full == "model.lda_burn_in") cfg.lda_burn_in = std::stoi(value);
  else if (full == "projection.method") {
    if (value == "pca") cfg.projection = ProjectionMethod::pca;
    else if (value == "tsne") cfg.projection = ProjectionMethod::tsne;
    else throw ValidationError("config: unknown projection.method '" + value + "'");
  } else if (full == "projection.perplexity") cfg.tsne.perplexity = std::stod(value);
  else if (full == "projection.iters") cfg.tsne.iters = std::stoi(value);
  else if (full == "projection.learning_rate") cfg.tsne.learning_rate = std::stod(value);
  else if (full == "projection.early_exaggeration")
    cfg.tsne.early_exaggeration = std::stod(value);
  else if (full == "mca.variables") {
    cfg.mca_variables.clear();
    std::string cur;
    for (char c : value + ",") {
      if (c == ',') {
        if (!cur.empty()) cfg.mca_variables.push_back(cur);
        cur.clear();
      } else if (c != ' ') {
        cur += c;
      }
    }
  } else if (full == "mca.dims") cfg.mca_dims = std::stoi(value);
  else if (full == "mca.include_quire") cfg.include_quire = as_bool();
  else if (full == "output.dir") cfg.out_dir = value;
  else throw ValidationError("config: unknown key '" + full + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    // strip comments and whitespace
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t");
    line = line.substr(first, last - first + 1);

    if (line.front() == '[' && line.back() == ']') {
      section = line.substr(1, line.size() - 2);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(line_no) + ": expected key = value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    auto trim = [](std::string& s) {
      auto a = s.find_first_not_of(" \t");
      auto b = s.find_last_not_of(" \t");
      s = a == std::string::npos ? "" : s.substr(a, b - a + 1);
    };
    trim(key);
    trim(value);
    if (section.empty())
      throw ParseError("config line " + std::to_string(line_no) + ": key outside any [section]");
    try {
      apply_key(cfg, section, key, value);
    } catch (const std::invalid_argument&) {
      throw ValidationError("config line " + std::to_string(line_no) + ": bad value '" + value +
                            "' for " + section + "." + key);
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  return parse_config(io::read_file(path));
}

std::vector<std::string> preset_names() {
  return {"analysis1", "analysis2", "analysis3", "analysis4a",
          "analysis4b", "analysis5", "analysis6", "networks"};
}

RunConfig preset_config(const std::string& name) {
  RunConfig cfg;
  cfg.preset = name;
  if (name == "analysis1") {
    cfg.model = ModelKind::lda;
    cfg.k = 6;
  } else if (name == "analysis2") {
    cfg.model = ModelKind::lsa;
    cfg.k = 6;
  } else if (name == "analysis3" || name == "networks") {
    cfg.model = ModelKind::nmf;
    cfg.k = 6;
  } else if (name == "analysis4a" || name == "analysis4b") {
    cfg.model = ModelKind::nmf;
    cfg.k = 6;
    cfg.mode = SegmentationMode::fixed_window;
    cfg.window_n = name == "analysis4a" ? 40 : 20;
    cfg.exclusions = ExclusionPolicy::fixed_window_analysis;
  } else if (name == "analysis5") {
    cfg.model = ModelKind::nmf;
    cfg.k = 5;
    cfg.mca_variables = {"topic", "hand"};
  } else if (name == "analysis6") {
    cfg.model = ModelKind::nmf;
    cfg.k = 2;
    cfg.mca_variables = {"topic", "language"};
  } else {
    throw ArgumentError("unknown preset '" + name + "'");
  }
  cfg.out_dir = std::filesystem::path("out") / name;
  return cfg;
}

namespace {

struct Stage {
  explicit Stage(const char* name) : name_(name), start_(std::chrono::steady_clock::now()) {}
  ~Stage() {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start_)
                        .count();
    std::cerr << "[voytop] stage " << name_ << ": " << ms << " ms\n";
  }
  const char* name_;
  std::chrono::steady_clock::time_point start_;
};

std::string json_str(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string build_manifest(const RunConfig& cfg) {
  std::string out = "{\n";
  out += "  \"tool\": \"voytop\",\n";
  out += "  \"version\": " + json_str(kVersion) + ",\n";
  out += "  \"preset\": " + json_str(cfg.preset) + ",\n";
  out += "  \"transcription_checksum\": \"" +
         std::to_string(io::file_checksum(cfg.transcription)) + "\",\n";
  out += "  \"metadata_checksum\": \"" + std::to_string(io::file_checksum(cfg.metadata)) +
         "\",\n";
  out += "  \"config\": {\n";
  auto kv = cfg.resolved();
  for (std::size_t i = 0; i < kv.size(); ++i) {
    out += "    " + json_str(kv[i].first) + ": " + json_str(kv[i].second);
    out += i + 1 < kv.size() ? ",\n" : "\n";
  }
  out += "  }\n}\n";
  return out;
}

std::string metadata_value(const FolioMetadata& m, const std::string& variable) {
  if (variable == "hand") return to_string(m.hand);
  if (variable == "language") return to_string(m.language);
  if (variable == "subject") return to_string(m.subject);
  if (variable == "quire") return std::to_string(m.quire);
  throw ArgumentError("unknown metadata variable '" + variable + "'");
}

CategoryTable build_category_table(const std::vector<Document>& docs, const MetadataTable& meta,
                                   const TopicAssignment& assignment,
                                   const std::vector<std::string>& variables) {
  CategoryTable table;
  table.variables = variables;
  for (const auto& d : docs) {
    auto it = meta.find(d.page);
    if (it == meta.end())
      throw ValidationError("page '" + d.page + "' missing from metadata");
    std::vector<std::string> row;
    for (const auto& v : variables) {
      if (v == "topic") {
        row.push_back(std::to_string(assignment.at(d.id)));
      } else {
        row.push_back(metadata_value(it->second, v));
      }
    }
    table.row_ids.push_back(d.id);
    table.values.push_back(std::move(row));
  }
  return table;
}

}  // namespace

RunResult run_pipeline(const RunConfig& config) {
  config.validate();
  RunResult result;
  std::map<std::string, std::string> outputs;  // filename -> content

  MetadataTable meta;
  {
    Stage stage("corpus");
    const auto rules = config.tokenizer_rules();
    auto records = parse_transcription_file(config.transcription, rules);
    FixedWindow window{config.window_n, config.seed};
    auto docs = segment_documents(records, rules, config.mode, window);
    meta = load_metadata(config.metadata);
    result.documents = apply_exclusions(docs, meta, config.exclusions);
    if (result.documents.empty()) throw ValidationError("corpus stage: no documents survive");
    outputs["documents.jsonl"] = documents_to_jsonl(result.documents);
  }

  CountMatrix counts;
  WeightMatrix weights;
  {
    Stage stage("vectorize");
    auto vocab = build_vocabulary(result.documents, config.min_count);
    std::vector<std::string> warnings;
    counts = bow_matrix(result.documents, vocab, &warnings);
    for (const auto& w : warnings) std::cerr << "[voytop] warning: " << w << "\n";
    weights = tfidf_transform(counts, config.log_tf);
    if (config.normalize) normalize_rows(weights);
  }

  {
    Stage stage("model");
    switch (config.model) {
      case ModelKind::lda: {
        LdaConfig lda;
        lda.k = config.k;
        lda.alpha = config.lda_alpha;
        lda.beta = config.lda_beta;
        lda.iterations = config.lda_iterations;
        lda.burn_in = config.lda_burn_in;
        lda.seed = config.seed;
        result.model = lda_fit(counts, lda);
        break;
      }
      case ModelKind::lsa:
        result.model = lsa_fit(weights, config.k);
        break;
      case ModelKind::nmf: {
        NmfOptions opts;
        opts.seed = config.seed;
        opts.max_iter = config.nmf_max_iter;
        opts.tol = config.nmf_tol;
        result.model = nmf_fit(weights, config.k, opts);
        break;
      }
    }
    result.assignment = assign_topics(result.model);
    outputs["model.json"] = model_to_json(result.model);
  }

  {
    Stage stage("reports");
    // Topic numbers are arbitrary labels; the header repeats that.
    std::string tt = "# topic numbers are arbitrary\ntopic,rank,term,weight\n";
    auto terms = top_terms(result.model, 20);
    const bool use_abs = result.model.kind == ModelKind::lsa;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      for (std::size_t r = 0; r < terms[t].size(); ++r) {
        const auto col = static_cast<Eigen::Index>(std::distance(
            result.model.vocab.begin(),
            std::find(result.model.vocab.begin(), result.model.vocab.end(), terms[t][r])));
        double w = result.model.topic_term(static_cast<Eigen::Index>(t), col);
        if (use_abs) w = std::abs(w);
        tt += std::to_string(t) + "," + std::to_string(r + 1) + "," + terms[t][r] + "," +
              io::format_real(w) + "\n";
      }
    }
    outputs["top_terms.csv"] = tt;

    std::string assignments = "page,topic,hand,language,subject,quire\n";
    for (const auto& d : result.documents) {
      const auto& m = meta.at(d.page);
      assignments += d.id + "," + std::to_string(result.assignment.at(d.id)) + "," +
                     to_string(m.hand) + "," + to_string(m.language) + "," +
                     to_string(m.subject) + "," + std::to_string(m.quire) + "\n";
    }
    outputs["assignments.csv"] = assignments;
  }

  {
    Stage stage("mca");
    auto variables = config.mca_variables;
    if (config.include_quire) variables.push_back("quire");
    auto table = build_category_table(result.documents, meta, result.assignment, variables);
    auto indicator = build_indicator(table);
    result.mca = mca_fit(indicator, config.mca_dims);
    outputs["category_coords.csv"] = category_coords_csv(result.mca);
    outputs["row_coords.csv"] = row_coords_csv(result.mca);
    outputs["inertia.csv"] = inertia_csv(result.mca);

    std::vector<svg::ScatterPoint> points;
    int var_index = 0;
    std::map<std::string, int> var_colors;
    for (std::size_t i = 0; i < result.mca.columns.size(); ++i) {
      const auto& col = result.mca.columns[i];
      if (!var_colors.count(col.variable)) var_colors[col.variable] = var_index++;
      points.push_back({result.mca.category_coords(static_cast<Eigen::Index>(i), 0),
                        result.mca.category_coords(static_cast<Eigen::Index>(i), 1),
                        var_colors[col.variable], col.variable + "=" + col.category});
    }
    std::vector<std::string> legend;
    for (const auto& [v, c] : var_colors) legend.push_back(v);
    outputs["mca.svg"] = svg::scatter(points, legend, "MCA category points");
  }

  {
    Stage stage("projection");
    Projection proj;
    if (config.projection == ProjectionMethod::pca) {
      proj = pca_project(result.model.doc_topic, 2);
    } else {
      TsneOptions opts = config.tsne;
      opts.seed = config.seed;
      // clamp for tiny corpora so presets run on any input
      const double max_perp =
          std::max(2.0, (static_cast<double>(result.model.doc_topic.rows()) - 1.0) / 3.0);
      opts.perplexity = std::min(opts.perplexity, max_perp);
      proj = tsne_project(result.model.doc_topic, 2, opts);
    }
    result.projection = proj;

    std::string csv = "doc_id,x,y,assigned_topic,hand,language,subject\n";
    std::vector<svg::ScatterPoint> points;
    for (std::size_t i = 0; i < result.documents.size(); ++i) {
      const auto& d = result.documents[i];
      const auto& m = meta.at(d.page);
      const double x = proj.coords(static_cast<Eigen::Index>(i), 0);
      const double y = proj.coords(static_cast<Eigen::Index>(i), 1);
      const int topic = result.assignment.at(d.id);
      csv += d.id + "," + io::format_real(x) + "," + io::format_real(y) + "," +
             std::to_string(topic) + "," + to_string(m.hand) + "," + to_string(m.language) +
             "," + to_string(m.subject) + "\n";
      points.push_back({x, y, topic, ""});
    }
    outputs["projection.csv"] = csv;
    std::vector<std::string> legend;
    for (int t = 0; t < result.model.k; ++t) legend.push_back("topic " + std::to_string(t));
    outputs["projection.svg"] =
        svg::scatter(points, legend, "Documents by assigned topic (" +
                                         std::string(config.projection == ProjectionMethod::pca
                                                         ? "PCA"
                                                         : "t-SNE") +
                                         ")");
  }

  {
    Stage stage("graphs");
    auto table = build_category_table(result.documents, meta, result.assignment,
                                      {"topic", "hand", "subject"});
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"hand", "subject"}, {"topic", "subject"}, {"hand", "topic"}};
    for (const auto& [a, b] : pairs) {
      auto g = build_category_graph(table, a, b);
      outputs["graph_" + a + "_" + b + ".dot"] = export_dot(g);
      outputs["graph_" + a + "_" + b + ".graphml"] = export_graphml(g);
    }
    auto composite = build_composite_graph(table, "topic", "subject", "hand");
    outputs["graph_hand_subject_topic.dot"] = export_dot(composite);
    outputs["graph_hand_subject_topic.graphml"] = export_graphml(composite);
  }

  result.manifest_json = build_manifest(config);
  outputs["manifest.json"] = result.manifest_json;

  // All stages succeeded: write everything (atomic per file).
  std::filesystem::create_directories(config.out_dir);
  for (const auto& [name, content] : outputs) {
    const auto path = config.out_dir / name;
    io::atomic_write(path, content);
    result.written_files.push_back(path);
  }
  return result;
}

}  // namespace voytop

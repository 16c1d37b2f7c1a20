#ifndef VOYTOP_PIPELINE_HPP
#define VOYTOP_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "voytop/corpus.hpp"
#include "voytop/factor.hpp"
#include "voytop/lda.hpp"
#include "voytop/mca.hpp"
#include "voytop/project.hpp"

namespace voytop {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  std::string preset;  // empty for config-file runs

  // [input]
  std::filesystem::path transcription = "data/reference_transcription.evt";
  std::filesystem::path metadata = "data/reference_metadata.csv";

  // [tokenizer]
  char transcriber = 'H';
  bool split_on_comma = true;  // ',' marks an uncertain word boundary

  // [corpus]
  SegmentationMode mode = SegmentationMode::page;
  int window_n = 40;
  ExclusionPolicy exclusions = ExclusionPolicy::page_analysis;

  // [vectorize]
  int min_count = 1;
  bool log_tf = false;
  bool normalize = false;

  // [model]
  ModelKind model = ModelKind::nmf;
  int k = 6;
  std::uint64_t seed = 42;
  int nmf_max_iter = 500;
  double nmf_tol = 1e-6;
  double lda_alpha = 0.1;
  double lda_beta = 0.01;
  int lda_iterations = 1000;
  int lda_burn_in = 500;

  // [projection]
  ProjectionMethod projection = ProjectionMethod::tsne;
  TsneOptions tsne;

  // [mca]
  std::vector<std::string> mca_variables = {"topic", "hand", "language", "subject"};
  int mca_dims = 2;
  bool include_quire = false;

  // [output]
  std::filesystem::path out_dir = "out";

  TokenizerRules tokenizer_rules() const;
  void validate() const;

  // Fully-resolved flat key/value view, serialized into the manifest so
  // defaults are never implicit.
  std::vector<std::pair<std::string, std::string>> resolved() const;
};

// Parses the sectioned key-value config format; unknown keys are errors.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

// Named presets for the reference analyses; throws on unknown name.
RunConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

struct RunResult {
  std::vector<Document> documents;
  DocTopicModel model;
  TopicAssignment assignment;
  McaModel mca;
  Projection projection;
  std::string manifest_json;
  std::vector<std::filesystem::path> written_files;
};

// Executes corpus -> vectorize -> model -> reports -> mca -> projection ->
// graphs, then writes every artifact (atomically) into config.out_dir.
// Any stage error aborts with the stage name and cause; nothing is
// written unless the whole pipeline succeeded.
RunResult run_pipeline(const RunConfig& config);

}  // namespace voytop

#endif  // VOYTOP_PIPELINE_HPP

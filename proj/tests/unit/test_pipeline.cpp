#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>

#include "voytop/errors.hpp"
#include "voytop/io.hpp"
#include "voytop/pipeline.hpp"

using namespace voytop;
namespace fs = std::filesystem;

namespace {

// Six pages, two disjoint vocabularies, two hands, two subjects.
const char* kTranscription =
    "# synthetic fixture\n"
    "<f1r.P1.1;H> otol.daiin.chol.otol.dar\n"
    "<f1r.P1.2;H> daiin.chol.chol.otol=\n"
    "<f1v.P1.1;H> otol.dar.daiin.chol.dar=\n"
    "<f2r.P1.1;H> chol.otol.daiin.dar.otol=\n"
    "<f67r.P1.1;H> okeey.oteey.okal.okeey.char\n"
    "<f67r.P1.2;H> oteey.okal.okal.okeey=\n"
    "<f67v.P1.1;H> okeey.char.oteey.okal.char=\n"
    "<f68r.P1.1;H> okal.okeey.oteey.char.okeey=\n";

const char* kMetadata =
    "page,hand,language,subject,quire\n"
    "f1r,1,A,botanical,1\n"
    "f1v,1,A,botanical,1\n"
    "f2r,1,A,botanical,1\n"
    "f67r,4,B,astrological,9\n"
    "f67v,4,B,astrological,9\n"
    "f68r,4,B,astrological,9\n";

struct Fixture {
  fs::path dir;

  Fixture() {
    dir = fs::temp_directory_path() / "voytop_pipeline_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream(dir / "corpus.evt") << kTranscription;
    std::ofstream(dir / "meta.csv") << kMetadata;
  }
  ~Fixture() { fs::remove_all(dir); }

  RunConfig config() const {
    RunConfig cfg;
    cfg.transcription = dir / "corpus.evt";
    cfg.metadata = dir / "meta.csv";
    cfg.model = ModelKind::nmf;
    cfg.k = 2;
    cfg.seed = 7;
    cfg.projection = ProjectionMethod::pca;
    cfg.mca_variables = {"hand", "subject"};
    cfg.out_dir = dir / "out";
    return cfg;
  }
};

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("parse_config applies sections, comments, unknown-key errors") {
  const std::string text =
      "# run setup\n"
      "[model]\n"
      "kind = lda   # trailing comment\n"
      "k = 4\n"
      "seed = 99\n"
      "[corpus]\n"
      "mode = fixed_window\n"
      "window_n = 20\n"
      "exclusions = fixed_window_analysis\n"
      "[mca]\n"
      "variables = topic, language\n";
  auto cfg = parse_config(text);
  CHECK(cfg.model == ModelKind::lda);
  CHECK(cfg.k == 4);
  CHECK(cfg.seed == 99);
  CHECK(cfg.mode == SegmentationMode::fixed_window);
  CHECK(cfg.window_n == 20);
  CHECK(cfg.exclusions == ExclusionPolicy::fixed_window_analysis);
  CHECK(cfg.mca_variables == std::vector<std::string>{"topic", "language"});

  CHECK_THROWS_AS(parse_config("[model]\nbogus = 1\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("k = 4\n"), ParseError);  // key outside a section
  CHECK_THROWS_AS(parse_config("[model]\nno equals sign\n"), ParseError);
  CHECK_THROWS_AS(parse_config("[model]\nk = many\n"), ValidationError);
}

TEST_CASE("config round-trips through its resolved key list") {
  RunConfig cfg;
  cfg.k = 5;
  cfg.model = ModelKind::lsa;
  cfg.seed = 123;
  std::string text;
  std::string section;
  for (const auto& [key, value] : cfg.resolved()) {
    const auto dot = key.find('.');
    const auto sec = key.substr(0, dot);
    if (sec != section) {
      text += "[" + sec + "]\n";
      section = sec;
    }
    text += key.substr(dot + 1) + " = " + value + "\n";
  }
  auto parsed = parse_config(text);
  CHECK(parsed.resolved() == cfg.resolved());
}

TEST_CASE("presets wire the reference analyses") {
  CHECK(preset_config("analysis1").model == ModelKind::lda);
  CHECK(preset_config("analysis1").k == 6);
  CHECK(preset_config("analysis2").model == ModelKind::lsa);
  CHECK(preset_config("analysis3").model == ModelKind::nmf);

  auto a4a = preset_config("analysis4a");
  CHECK(a4a.mode == SegmentationMode::fixed_window);
  CHECK(a4a.window_n == 40);
  CHECK(a4a.exclusions == ExclusionPolicy::fixed_window_analysis);
  CHECK(preset_config("analysis4b").window_n == 20);

  auto a5 = preset_config("analysis5");
  CHECK(a5.k == 5);
  CHECK(a5.mca_variables == std::vector<std::string>{"topic", "hand"});

  auto a6 = preset_config("analysis6");
  CHECK(a6.model == ModelKind::nmf);
  CHECK(a6.k == 2);
  CHECK(a6.mca_variables == std::vector<std::string>{"topic", "language"});

  CHECK_THROWS_AS(preset_config("analysis7"), ArgumentError);
  auto names = preset_names();
  CHECK(std::find(names.begin(), names.end(), "networks") != names.end());
  CHECK(names.size() == 8);
}

TEST_CASE("run_pipeline produces the full artifact set") {
  Fixture fx;
  auto result = run_pipeline(fx.config());

  CHECK(result.documents.size() == 6);
  CHECK(result.written_files.size() == 19);
  const char* expected[] = {"documents.jsonl",
                            "model.json",
                            "top_terms.csv",
                            "assignments.csv",
                            "category_coords.csv",
                            "row_coords.csv",
                            "inertia.csv",
                            "mca.svg",
                            "projection.csv",
                            "projection.svg",
                            "graph_hand_subject.dot",
                            "graph_hand_subject.graphml",
                            "graph_topic_subject.dot",
                            "graph_topic_subject.graphml",
                            "graph_hand_topic.dot",
                            "graph_hand_topic.graphml",
                            "graph_hand_subject_topic.dot",
                            "graph_hand_subject_topic.graphml",
                            "manifest.json"};
  for (const char* name : expected) CHECK(fs::exists(fx.config().out_dir / name));

  // assignments: header plus one row per document
  auto assignments = io::read_file(fx.config().out_dir / "assignments.csv");
  CHECK(count_lines(assignments) == 7);
  CHECK(assignments.rfind("page,topic,hand,language,subject,quire\n", 0) == 0);

  // top terms: comment, header, up to k * 20 data rows (vocab is small)
  auto top = io::read_file(fx.config().out_dir / "top_terms.csv");
  CHECK(top.rfind("#", 0) == 0);
  CHECK(count_lines(top) <= 2 + 2 * 20);
  CHECK(count_lines(top) > 2);

  auto svg = io::read_file(fx.config().out_dir / "projection.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);

  auto manifest = io::read_file(fx.config().out_dir / "manifest.json");
  CHECK(manifest.find("\"model.k\": \"2\"") != std::string::npos);
  CHECK(manifest.find("\"transcription_checksum\"") != std::string::npos);
  CHECK(manifest.find("timing") == std::string::npos);  // timings go to stderr only
  CHECK(manifest.find(" ms") == std::string::npos);
}

TEST_CASE("the two disjoint vocabularies split into the two topics") {
  Fixture fx;
  auto result = run_pipeline(fx.config());
  const int botanical_topic = result.assignment.at("f1r");
  for (const auto& page : {"f1v", "f2r"})
    CHECK(result.assignment.at(page) == botanical_topic);
  for (const auto& page : {"f67r", "f67v", "f68r"})
    CHECK(result.assignment.at(page) == 1 - botanical_topic);
}

TEST_CASE("repeated runs are byte-identical") {
  Fixture fx;
  auto cfg = fx.config();
  run_pipeline(cfg);
  std::map<std::string, std::string> first;
  for (const auto& entry : fs::directory_iterator(cfg.out_dir))
    first[entry.path().filename().string()] = io::read_file(entry.path());
  fs::remove_all(cfg.out_dir);

  run_pipeline(cfg);
  std::size_t seen = 0;
  for (const auto& entry : fs::directory_iterator(cfg.out_dir)) {
    const auto name = entry.path().filename().string();
    CAPTURE(name);
    REQUIRE(first.count(name) == 1);
    CHECK(io::read_file(entry.path()) == first.at(name));
    ++seen;
  }
  CHECK(seen == first.size());
}

TEST_CASE("pipeline aborts without writing when a stage fails") {
  Fixture fx;
  auto cfg = fx.config();
  cfg.mca_variables = {"hand", "bogus"};
  CHECK_THROWS_AS(run_pipeline(cfg), ArgumentError);
  CHECK(!fs::exists(cfg.out_dir));
}

TEST_CASE("missing input files fail validation") {
  RunConfig cfg;
  cfg.transcription = "/nonexistent/corpus.evt";
  cfg.metadata = "/nonexistent/meta.csv";
  CHECK_THROWS_AS(run_pipeline(cfg), ValidationError);
}

#ifndef VOYTOP_CORPUS_HPP
#define VOYTOP_CORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace voytop {

// One transcribed line/region of a page in an interlinear transcription.
struct LocusRecord {
  std::string folio;        // "f1r" (derived from page, numbered suffix stripped)
  std::string page;         // "f90r2" — the atomic analysis unit
  std::string locus_tag;    // "P1.1"
  char transcriber = '\0';
  std::string raw_text;     // may be empty only for placeholder loci
};

enum class SegmentationMode { page, folio, paragraph, fixed_window };

struct Document {
  std::string id;
  std::string page;
  std::vector<std::string> tokens;
  SegmentationMode mode = SegmentationMode::page;
};

std::string to_string(SegmentationMode mode);

enum class Hand : int { h1 = 1, h2 = 2, h3 = 3, h4 = 4, h5 = 5 };
enum class Language { A, B, unknown };
enum class Subject {
  botanical,
  astrological,
  balneological,
  pharmaceutical,
  recipes,
  starred,
  rosette,
  unknown
};

std::string to_string(Hand h);
std::string to_string(Language l);
std::string to_string(Subject s);

struct FolioMetadata {
  std::string page;
  Hand hand = Hand::h1;
  Language language = Language::A;
  Subject subject = Subject::unknown;
  int quire = 1;  // 1..18
};

// page -> metadata, one row per page.
using MetadataTable = std::map<std::string, FolioMetadata>;

struct TokenizerRules {
  std::set<char> word_separators{'.', ',', '-'};
  std::set<char> filler_chars{'!', '%'};
  std::pair<char, char> inline_comment_delimiters{'{', '}'};
  std::set<char> paragraph_end_markers{'='};
  char selected_transcriber = 'H';

  void validate() const;  // throws ArgumentError on overlap / bad transcriber
};

// Line-oriented interlinear format: `#` comments, `<page.locus;T> text`.
// Returns only records whose transcriber matches the rules, in file order.
std::vector<LocusRecord> parse_transcription(std::istream& in, const TokenizerRules& rules);
std::vector<LocusRecord> parse_transcription(const std::string& text, const TokenizerRules& rules);
std::vector<LocusRecord> parse_transcription_file(const std::filesystem::path& path,
                                                  const TokenizerRules& rules);

// Drops inline comments, deletes fillers in place, splits on separators
// and paragraph markers. Empty fragments are dropped; order preserved.
std::vector<std::string> tokenize_locus(const std::string& raw_text, const TokenizerRules& rules);

// Like tokenize_locus, but returns the token runs between paragraph end
// markers; the last run is the (possibly empty) tail of an open paragraph.
std::vector<std::vector<std::string>> tokenize_locus_paragraphs(const std::string& raw_text,
                                                                const TokenizerRules& rules);

struct FixedWindow {
  int n = 40;
  std::uint64_t seed = 0;
};

std::vector<Document> segment_documents(const std::vector<LocusRecord>& records,
                                        const TokenizerRules& rules, SegmentationMode mode,
                                        const FixedWindow& window = {});

// CSV with header `page,hand,language,subject,quire`; closed enums validated.
MetadataTable load_metadata(const std::filesystem::path& path);
MetadataTable load_metadata_text(const std::string& csv_text);

enum class ExclusionPolicy { page_analysis, fixed_window_analysis };

// page_analysis drops only f57v; fixed_window_analysis additionally drops
// all pages on folios f67-f73 and the seven short botanical pages.
std::vector<Document> apply_exclusions(const std::vector<Document>& docs,
                                       const MetadataTable& meta, ExclusionPolicy policy);

// One Document per line: {"id":…,"page":…,"mode":…,"tokens":[…]}
std::string documents_to_jsonl(const std::vector<Document>& docs);

}  // namespace voytop

#endif  // VOYTOP_CORPUS_HPP

#include "voytop/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

#include "voytop/errors.hpp"
#include "voytop/rng.hpp"

namespace voytop {

namespace {

// "f90r2" -> "f90"; pages that do not match the f<num><r|v>[num]
// pattern are their own folio.
std::string folio_of(const std::string& page) {
  if (page.empty() || page[0] != 'f') return page;
  std::size_t i = 1;
  while (i < page.size() && std::isdigit(static_cast<unsigned char>(page[i]))) ++i;
  if (i == 1 || i >= page.size()) return page;
  if (page[i] != 'r' && page[i] != 'v') return page;
  return page.substr(0, i);
}

int folio_number(const std::string& page) {
  if (page.empty() || page[0] != 'f') return -1;
  std::size_t i = 1;
  while (i < page.size() && std::isdigit(static_cast<unsigned char>(page[i]))) ++i;
  if (i == 1) return -1;
  return std::stoi(page.substr(1, i - 1));
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

}  // namespace

std::string to_string(SegmentationMode mode) {
  switch (mode) {
    case SegmentationMode::page: return "page";
    case SegmentationMode::folio: return "folio";
    case SegmentationMode::paragraph: return "paragraph";
    case SegmentationMode::fixed_window: return "fixed_window";
  }
  return "?";
}

std::string to_string(Hand h) { return std::to_string(static_cast<int>(h)); }

std::string to_string(Language l) {
  switch (l) {
    case Language::A: return "A";
    case Language::B: return "B";
    case Language::unknown: return "unknown";
  }
  return "?";
}

std::string to_string(Subject s) {
  switch (s) {
    case Subject::botanical: return "botanical";
    case Subject::astrological: return "astrological";
    case Subject::balneological: return "balneological";
    case Subject::pharmaceutical: return "pharmaceutical";
    case Subject::recipes: return "recipes";
    case Subject::starred: return "starred";
    case Subject::rosette: return "rosette";
    case Subject::unknown: return "unknown";
  }
  return "?";
}

void TokenizerRules::validate() const {
  for (char c : word_separators) {
    if (filler_chars.count(c))
      throw ArgumentError(std::string("tokenizer rules: character '") + c +
                          "' is both separator and filler");
  }
  if (selected_transcriber == '\0')
    throw ArgumentError("tokenizer rules: selected_transcriber must be one character");
}

std::vector<LocusRecord> parse_transcription(std::istream& in, const TokenizerRules& rules) {
  rules.validate();
  std::vector<LocusRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') continue;
    if (line[0] != '<')
      throw ParseError("line " + std::to_string(line_no) + ": expected '<page.locus;T>' tag");
    auto close = line.find('>');
    if (close == std::string::npos)
      throw ParseError("line " + std::to_string(line_no) + ": locus tag has no closing '>'");
    std::string tag = line.substr(1, close - 1);
    auto semi = tag.find(';');
    if (semi == std::string::npos || semi + 2 != tag.size())
      throw ParseError("line " + std::to_string(line_no) +
                       ": locus tag missing single-character ';T' transcriber code");
    char transcriber = tag[semi + 1];
    std::string page_locus = tag.substr(0, semi);
    auto dot = page_locus.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == page_locus.size())
      throw ParseError("line " + std::to_string(line_no) +
                       ": locus tag must be '<page.locus;T>', got '<" + tag + ">'");
    if (transcriber != rules.selected_transcriber) continue;

    LocusRecord rec;
    rec.page = page_locus.substr(0, dot);
    rec.folio = folio_of(rec.page);
    rec.locus_tag = page_locus.substr(dot + 1);
    rec.transcriber = transcriber;
    std::size_t text_start = close + 1;
    if (text_start < line.size() && line[text_start] == ' ') ++text_start;
    rec.raw_text = line.substr(std::min(text_start, line.size()));
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<LocusRecord> parse_transcription(const std::string& text,
                                             const TokenizerRules& rules) {
  std::istringstream in(text);
  return parse_transcription(in, rules);
}

std::vector<LocusRecord> parse_transcription_file(const std::filesystem::path& path,
                                                  const TokenizerRules& rules) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open transcription file: " + path.string());
  return parse_transcription(in, rules);
}

std::vector<std::vector<std::string>> tokenize_locus_paragraphs(const std::string& raw_text,
                                                                const TokenizerRules& rules) {
  std::vector<std::vector<std::string>> runs(1);
  std::string current;
  bool in_comment = false;
  const auto [open_c, close_c] = rules.inline_comment_delimiters;

  auto flush = [&] {
    if (!current.empty()) {
      runs.back().push_back(std::move(current));
      current.clear();
    }
  };

  for (char c : raw_text) {
    if (in_comment) {
      if (c == close_c) in_comment = false;
      continue;
    }
    if (c == open_c) {
      in_comment = true;
      continue;
    }
    if (c == close_c) throw ParseError("unbalanced comment delimiter: stray closer");
    if (rules.filler_chars.count(c)) continue;
    if (rules.word_separators.count(c)) {
      flush();
      continue;
    }
    if (rules.paragraph_end_markers.count(c)) {
      flush();
      runs.emplace_back();
      continue;
    }
    current += c;
  }
  if (in_comment) throw ParseError("unbalanced comment delimiter: missing closer");
  flush();
  return runs;
}

std::vector<std::string> tokenize_locus(const std::string& raw_text,
                                        const TokenizerRules& rules) {
  std::vector<std::string> tokens;
  for (auto& run : tokenize_locus_paragraphs(raw_text, rules))
    for (auto& tok : run) tokens.push_back(std::move(tok));
  return tokens;
}

namespace {

struct PageTokens {
  std::string page;
  std::string folio;
  // One run per paragraph fragment, in locus order. A paragraph boundary
  // exists between run i and i+1 exactly when closed[i] is true.
  std::vector<std::vector<std::string>> runs;
  std::vector<bool> closed;
};

std::vector<PageTokens> collect_pages(const std::vector<LocusRecord>& records,
                                      const TokenizerRules& rules) {
  std::vector<PageTokens> pages;
  for (const auto& rec : records) {
    if (pages.empty() || pages.back().page != rec.page) {
      pages.push_back({rec.page, rec.folio, {}, {}});
    }
    auto& pg = pages.back();
    std::vector<std::vector<std::string>> runs;
    try {
      runs = tokenize_locus_paragraphs(rec.raw_text, rules);
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " (locus " + rec.page + "." + rec.locus_tag + ")");
    }
    for (std::size_t i = 0; i < runs.size(); ++i) {
      pg.runs.push_back(std::move(runs[i]));
      pg.closed.push_back(i + 1 < runs.size());
    }
  }
  return pages;
}

std::vector<std::string> flatten(const PageTokens& pg) {
  std::vector<std::string> tokens;
  for (const auto& run : pg.runs) tokens.insert(tokens.end(), run.begin(), run.end());
  return tokens;
}

}  // namespace

std::vector<Document> segment_documents(const std::vector<LocusRecord>& records,
                                        const TokenizerRules& rules, SegmentationMode mode,
                                        const FixedWindow& window) {
  rules.validate();
  if (mode == SegmentationMode::fixed_window && window.n <= 0)
    throw ArgumentError("fixed_window: n must be positive, got " + std::to_string(window.n));

  auto pages = collect_pages(records, rules);
  std::vector<Document> docs;

  switch (mode) {
    case SegmentationMode::page: {
      for (const auto& pg : pages) {
        Document d{pg.page, pg.page, flatten(pg), mode};
        if (!d.tokens.empty()) docs.push_back(std::move(d));
      }
      break;
    }
    case SegmentationMode::folio: {
      for (const auto& pg : pages) {
        if (docs.empty() || docs.back().id != pg.folio) {
          docs.push_back({pg.folio, pg.folio, {}, mode});
        }
        auto tokens = flatten(pg);
        docs.back().tokens.insert(docs.back().tokens.end(), tokens.begin(), tokens.end());
      }
      std::erase_if(docs, [](const Document& d) { return d.tokens.empty(); });
      break;
    }
    case SegmentationMode::paragraph: {
      for (const auto& pg : pages) {
        std::vector<std::string> para;
        int index = 0;
        auto emit = [&] {
          if (!para.empty()) {
            docs.push_back({pg.page + "#p" + std::to_string(index++), pg.page, para, mode});
            para.clear();
          }
        };
        for (std::size_t i = 0; i < pg.runs.size(); ++i) {
          para.insert(para.end(), pg.runs[i].begin(), pg.runs[i].end());
          if (pg.closed[i]) emit();
        }
        emit();
      }
      break;
    }
    case SegmentationMode::fixed_window: {
      for (const auto& pg : pages) {
        auto tokens = flatten(pg);
        if (static_cast<int>(tokens.size()) < window.n) continue;
        // Partial Fisher-Yates over positions, then restore source order.
        std::vector<std::size_t> pos(tokens.size());
        std::iota(pos.begin(), pos.end(), 0);
        SplitMix64 rng(derive_seed(window.seed, pg.page));
        for (int i = 0; i < window.n; ++i) {
          std::size_t j = i + rng.next_below(pos.size() - i);
          std::swap(pos[i], pos[j]);
        }
        pos.resize(window.n);
        std::sort(pos.begin(), pos.end());
        Document d{pg.page, pg.page, {}, mode};
        d.tokens.reserve(window.n);
        for (auto p : pos) d.tokens.push_back(tokens[p]);
        docs.push_back(std::move(d));
      }
      break;
    }
  }
  return docs;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

Hand parse_hand(const std::string& s, const std::string& where) {
  if (s.size() == 1 && s[0] >= '1' && s[0] <= '5') return static_cast<Hand>(s[0] - '0');
  throw ValidationError(where + ": unknown hand '" + s + "' (allowed: 1,2,3,4,5)");
}

Language parse_language(const std::string& s, const std::string& where) {
  if (s == "A") return Language::A;
  if (s == "B") return Language::B;
  if (s == "unknown") return Language::unknown;
  throw ValidationError(where + ": unknown language '" + s + "' (allowed: A,B,unknown)");
}

Subject parse_subject(const std::string& s, const std::string& where) {
  static const std::map<std::string, Subject> table = {
      {"botanical", Subject::botanical},       {"astrological", Subject::astrological},
      {"balneological", Subject::balneological}, {"pharmaceutical", Subject::pharmaceutical},
      {"recipes", Subject::recipes},           {"starred", Subject::starred},
      {"rosette", Subject::rosette},           {"unknown", Subject::unknown}};
  auto it = table.find(s);
  if (it == table.end())
    throw ValidationError(where + ": unknown subject '" + s +
                          "' (allowed: botanical,astrological,balneological,pharmaceutical,"
                          "recipes,starred,rosette,unknown)");
  return it->second;
}

}  // namespace

MetadataTable load_metadata_text(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("metadata: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "page,hand,language,subject,quire")
    throw ValidationError("metadata: expected header 'page,hand,language,subject,quire', got '" +
                          line + "'");
  MetadataTable table;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    std::string where = "metadata line " + std::to_string(line_no);
    if (fields.size() != 5) throw ValidationError(where + ": expected 5 fields");
    FolioMetadata row;
    row.page = fields[0];
    if (row.page.empty()) throw ValidationError(where + ": empty page id");
    row.hand = parse_hand(fields[1], where);
    row.language = parse_language(fields[2], where);
    row.subject = parse_subject(fields[3], where);
    try {
      row.quire = std::stoi(fields[4]);
    } catch (const std::exception&) {
      throw ValidationError(where + ": quire must be an integer, got '" + fields[4] + "'");
    }
    if (row.quire < 1 || row.quire > 18)
      throw ValidationError(where + ": quire " + fields[4] + " out of range [1,18]");
    if (!table.emplace(row.page, row).second)
      throw ValidationError(where + ": duplicate page '" + row.page + "'");
  }
  return table;
}

MetadataTable load_metadata(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open metadata file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_metadata_text(ss.str());
}

std::vector<Document> apply_exclusions(const std::vector<Document>& docs,
                                       const MetadataTable& meta, ExclusionPolicy policy) {
  std::vector<std::string> orphans;
  for (const auto& d : docs)
    if (!meta.count(d.page)) orphans.push_back(d.page);
  if (!orphans.empty()) {
    std::string msg = "documents reference pages missing from metadata:";
    for (const auto& p : orphans) msg += " " + p;
    throw ValidationError(msg);
  }

  static const std::set<std::string> short_pages = {"f5v",  "f11v", "f25r", "f38r",
                                                    "f65r", "f65v", "f90r2"};
  std::vector<Document> kept;
  for (const auto& d : docs) {
    if (d.page == "f57v") continue;
    if (policy == ExclusionPolicy::fixed_window_analysis) {
      int fn = folio_number(d.page);
      if (fn >= 67 && fn <= 73) continue;
      if (short_pages.count(d.page)) continue;
    }
    kept.push_back(d);
  }
  return kept;
}

std::string documents_to_jsonl(const std::vector<Document>& docs) {
  std::string out;
  for (const auto& d : docs) {
    out += "{\"id\":\"" + json_escape(d.id) + "\",\"page\":\"" + json_escape(d.page) +
           "\",\"mode\":\"" + to_string(d.mode) + "\",\"tokens\":[";
    for (std::size_t i = 0; i < d.tokens.size(); ++i) {
      if (i) out += ',';
      out += '"' + json_escape(d.tokens[i]) + '"';
    }
    out += "]}\n";
  }
  return out;
}

}  // namespace voytop

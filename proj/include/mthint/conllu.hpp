#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mthint/errors.hpp"

namespace mthint {

// One syntactic word of a dependency tree. Multiword ranges (1-2) and empty
// nodes (1.1) never appear here; they are kept aside on the sentence.
struct Token {
  int id = 0;  // 1-based
  std::string form;
  std::string lemma;
  std::string upos;
  std::map<std::string, std::set<std::string>> feats;  // e.g. Gender -> {Fem, Masc}
  int head = 0;  // 0 = root
  std::string deprel;

  bool has_feat(const std::string& name, const std::string& value) const;
  const std::set<std::string>* feat(const std::string& name) const;
};

struct ParsedSentence {
  std::string sentence_id;  // from "# sent_id = ..." when present
  std::vector<Token> tokens;
  std::vector<std::string> comments;        // raw comment lines
  std::vector<std::string> excluded_lines;  // multiword ranges and empty nodes

  // Ids are contiguous from 1, so lookup is positional. 0 and out-of-range
  // return nullptr.
  const Token* find(int id) const {
    if (id < 1 || id > static_cast<int>(tokens.size())) return nullptr;
    return &tokens[id - 1];
  }
  const Token* root() const;
};

// Parses a CoNLL-U v2 document. Enforces per-sentence invariants: contiguous
// ids from 1 (NonContiguousIds), exactly one root (MissingRoot / MalformedLine
// for extras), heads in range and never self-referential (MalformedLine, with
// the offending line number).
std::vector<ParsedSentence> parse_conllu(std::string_view document);
std::vector<ParsedSentence> parse_conllu_file(const std::filesystem::path& path);

}  // namespace mthint

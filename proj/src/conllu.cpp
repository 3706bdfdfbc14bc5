#include "mthint/conllu.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace mthint {

namespace {

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> cols;
  size_t start = 0;
  for (;;) {
    size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.emplace_back(line.substr(start));
      break;
    }
    cols.emplace_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cols;
}

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

int parse_int(std::string_view s, size_t lineno, const char* what) {
  if (!all_digits(s))
    throw MalformedLine("line " + std::to_string(lineno) + ": bad " + what + " '" +
                        std::string(s) + "'");
  return std::stoi(std::string(s));
}

std::map<std::string, std::set<std::string>> parse_feats(std::string_view feats, size_t lineno) {
  std::map<std::string, std::set<std::string>> out;
  if (feats == "_" || feats.empty()) return out;
  size_t start = 0;
  while (start <= feats.size()) {
    size_t bar = feats.find('|', start);
    std::string_view item =
        feats.substr(start, bar == std::string_view::npos ? bar : bar - start);
    size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw MalformedLine("line " + std::to_string(lineno) + ": bad FEATS item '" +
                          std::string(item) + "'");
    std::string name(item.substr(0, eq));
    std::string_view values = item.substr(eq + 1);
    size_t vstart = 0;
    while (vstart <= values.size()) {
      size_t comma = values.find(',', vstart);
      std::string v(values.substr(vstart, comma == std::string_view::npos ? comma : comma - vstart));
      if (!v.empty()) out[name].insert(v);
      if (comma == std::string_view::npos) break;
      vstart = comma + 1;
    }
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return out;
}

struct PendingToken {
  Token token;
  size_t lineno;
};

void finish_sentence(std::vector<PendingToken>& pending, ParsedSentence& sentence,
                     std::vector<ParsedSentence>& out, size_t sentence_start_line) {
  if (pending.empty() && sentence.comments.empty() && sentence.excluded_lines.empty()) return;
  if (pending.empty())
    throw MalformedLine("line " + std::to_string(sentence_start_line) +
                        ": sentence block has no token lines");

  for (size_t i = 0; i < pending.size(); ++i) {
    if (pending[i].token.id != static_cast<int>(i) + 1)
      throw NonContiguousIds("line " + std::to_string(pending[i].lineno) + ": expected id " +
                             std::to_string(i + 1) + ", got " +
                             std::to_string(pending[i].token.id));
  }
  const int n = static_cast<int>(pending.size());
  int roots = 0;
  size_t second_root_line = 0;
  for (const auto& p : pending) {
    if (p.token.head == p.token.id)
      throw MalformedLine("line " + std::to_string(p.lineno) + ": token is its own head");
    if (p.token.head < 0 || p.token.head > n)
      throw MalformedLine("line " + std::to_string(p.lineno) + ": head " +
                          std::to_string(p.token.head) + " points past last token (" +
                          std::to_string(n) + ")");
    if (p.token.head == 0) {
      ++roots;
      if (roots == 2) second_root_line = p.lineno;
    }
  }
  if (roots == 0)
    throw MissingRoot("sentence ending at line " +
                      std::to_string(pending.back().lineno) + " has no root token");
  if (roots > 1)
    throw MalformedLine("line " + std::to_string(second_root_line) + ": multiple root tokens");

  sentence.tokens.reserve(pending.size());
  for (auto& p : pending) sentence.tokens.push_back(std::move(p.token));
  out.push_back(std::move(sentence));
  sentence = ParsedSentence{};
  pending.clear();
}

}  // namespace

bool Token::has_feat(const std::string& name, const std::string& value) const {
  auto it = feats.find(name);
  return it != feats.end() && it->second.count(value) > 0;
}

const std::set<std::string>* Token::feat(const std::string& name) const {
  auto it = feats.find(name);
  return it == feats.end() ? nullptr : &it->second;
}

const Token* ParsedSentence::root() const {
  for (const auto& t : tokens)
    if (t.head == 0) return &t;
  return nullptr;
}

std::vector<ParsedSentence> parse_conllu(std::string_view document) {
  std::vector<ParsedSentence> out;
  ParsedSentence current;
  std::vector<PendingToken> pending;
  size_t sentence_start_line = 1;

  size_t lineno = 0;
  size_t pos = 0;
  while (pos <= document.size()) {
    size_t nl = document.find('\n', pos);
    std::string_view line =
        document.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++lineno;

    if (line.empty()) {
      finish_sentence(pending, current, out, sentence_start_line);
      sentence_start_line = lineno + 1;
    } else if (line.front() == '#') {
      current.comments.emplace_back(line);
      // "# sent_id = X"
      std::string body = trim(line.substr(1));
      if (body.rfind("sent_id", 0) == 0) {
        size_t eq = body.find('=');
        if (eq != std::string::npos) current.sentence_id = trim(body.substr(eq + 1));
      }
    } else {
      auto cols = split_tabs(line);
      if (cols.size() != 10)
        throw MalformedLine("line " + std::to_string(lineno) + ": expected 10 tab-separated " +
                            "columns, got " + std::to_string(cols.size()));
      const std::string& id_col = cols[0];
      if (id_col.find('-') != std::string::npos || id_col.find('.') != std::string::npos) {
        // Multiword range or empty node: excluded from the token list.
        current.excluded_lines.emplace_back(line);
      } else {
        PendingToken p;
        p.lineno = lineno;
        p.token.id = parse_int(id_col, lineno, "token id");
        p.token.form = cols[1];
        p.token.lemma = cols[2];
        p.token.upos = cols[3];
        p.token.feats = parse_feats(cols[5], lineno);
        p.token.head = parse_int(cols[6], lineno, "head");
        p.token.deprel = cols[7];
        pending.push_back(std::move(p));
      }
    }

    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  finish_sentence(pending, current, out, sentence_start_line);
  return out;
}

std::vector<ParsedSentence> parse_conllu_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open CoNLL-U file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_conllu(buffer.str());
  } catch (const NonContiguousIds& e) {
    throw NonContiguousIds(path.string() + ": " + e.what());
  } catch (const MissingRoot& e) {
    throw MissingRoot(path.string() + ": " + e.what());
  } catch (const MalformedLine& e) {
    throw MalformedLine(path.string() + ": " + e.what());
  }
}

}  // namespace mthint

#include "tropetwist/dsl.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace tropetwist {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

struct Token {
  std::string text;
  std::size_t column = 0;
};

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_ident_char(c)) {
      while (i < line.size() && is_ident_char(line[i])) ++i;
    } else if (line.substr(i, 3) == "<->") {
      i += 3;
    } else if (line.substr(i, 2) == "->" || line.substr(i, 2) == "|>") {
      i += 2;
    } else {
      throw ParseError(line_no, start + 1, std::string("unexpected character '") + c + "'");
    }
    out.push_back(Token{std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

bool keyword(const Token& t, std::string_view kw) {
  if (t.text.size() != kw.size()) return false;
  for (std::size_t i = 0; i < kw.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(t.text[i])) != kw[i]) return false;
  }
  return true;
}

bool is_identifier(const Token& t) {
  return !t.text.empty() && is_ident_char(t.text.front());
}

std::optional<EdgeKind> edge_kind(const Token& t) {
  if (t.text == "->") return EdgeKind::Directed;
  if (t.text == "<->") return EdgeKind::Bidirectional;
  if (t.text == "|>") return EdgeKind::Entail;
  return std::nullopt;
}

}  // namespace

NarrativeGraph parse_ng(std::string_view text) {
  std::optional<NarrativeGraph> g;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    const std::vector<Token> tokens = tokenize(line, line_no);
    if (tokens.empty()) continue;
    const Token& head = tokens.front();

    auto expect_count = [&](std::size_t n, std::string_view shape) {
      if (tokens.size() != n) {
        const std::size_t col =
            tokens.size() > n ? tokens[n].column : line.size() + 1;
        throw ParseError(line_no, col, "expected `" + std::string(shape) + "`");
      }
    };

    if (!g) {
      if (!keyword(head, "graph")) {
        throw ParseError(line_no, head.column, "expected `graph <name>` header");
      }
      expect_count(2, "graph <name>");
      if (!is_identifier(tokens[1])) {
        throw ParseError(line_no, tokens[1].column, "invalid graph name");
      }
      g.emplace(tokens[1].text);
      continue;
    }

    if (keyword(head, "node")) {
      expect_count(3, "node <id> <TROPE>");
      if (!is_identifier(tokens[1])) {
        throw ParseError(line_no, tokens[1].column, "invalid node id");
      }
      const auto trope = trope_from_symbol(tokens[2].text);
      if (!trope) {
        throw ParseError(line_no, tokens[2].column,
                         "unknown trope symbol '" + tokens[2].text + "'");
      }
      if (g->find(tokens[1].text)) {
        throw ParseError(line_no, tokens[1].column,
                         "duplicate node id '" + tokens[1].text + "'");
      }
      g->add_node(tokens[1].text, *trope);
    } else if (keyword(head, "edge")) {
      expect_count(4, "edge <a> (->|<->||>) <b>");
      const auto kind = edge_kind(tokens[2]);
      if (!kind) throw ParseError(line_no, tokens[2].column, "expected edge operator");
      const auto a = g->find(tokens[1].text);
      if (!a) {
        throw ParseError(line_no, tokens[1].column,
                         "dangling edge endpoint '" + tokens[1].text + "'");
      }
      const auto b = g->find(tokens[3].text);
      if (!b) {
        throw ParseError(line_no, tokens[3].column,
                         "dangling edge endpoint '" + tokens[3].text + "'");
      }
      if (*a == *b) throw ParseError(line_no, tokens[1].column, "self-loop edge");
      if (!g->try_add_edge(*a, *b, *kind)) {
        throw ParseError(line_no, tokens[1].column, "duplicate edge");
      }
    } else {
      throw ParseError(line_no, head.column, "unknown statement '" + head.text + "'");
    }
  }
  if (!g) throw ParseError(line_no, 1, "missing `graph <name>` header");
  return *std::move(g);
}

std::string serialize_ng(const NarrativeGraph& g) {
  std::ostringstream out;
  out << "graph " << g.name() << '\n';
  for (const Node& n : g.nodes()) out << "node " << n.id << ' ' << symbol(n.trope) << '\n';
  for (const Edge& e : g.edges()) {
    out << "edge " << g.node(e.source).id << ' ' << edge_operator(e.kind) << ' '
        << g.node(e.target).id << '\n';
  }
  return out.str();
}

NarrativeGraph load_ng(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_ng(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path + ": " + e.message());
  }
}

void save_ng(const NarrativeGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << serialize_ng(g);
}

}  // namespace tropetwist

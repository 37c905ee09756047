#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "tropetwist/narrative_graph.hpp"

namespace tropetwist {

// Line-oriented `.ng` text format:
//
//   graph <name>
//   node <id> <TROPE>
//   edge <a> -> <b>      directed
//   edge <a> <-> <b>     bidirectional
//   edge <a> |> <b>      a entails b
//
// `#` starts a comment. Keywords and trope symbols are case-insensitive.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

NarrativeGraph parse_ng(std::string_view text);
std::string serialize_ng(const NarrativeGraph& g);

NarrativeGraph load_ng(const std::string& path);
void save_ng(const NarrativeGraph& g, const std::string& path);

}  // namespace tropetwist

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tcnet/network.hpp"

namespace tcnet {

/// Positioned input error; line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string message, std::string expected = {});

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
  std::string expected_;
};

struct ENewickDocument {
  std::vector<Network> networks;
  // source line of each network
  std::vector<std::size_t> lines;
};

// Parses a single network terminated by ';'. Reticulations are '#H<id>' tags:
// all occurrences of a tag are one node, exactly one occurrence carries the
// subtree below it. A root edge is added above the top-level node. Branch
// lengths and internal labels are read and dropped. `line` only offsets the
// reported positions.
Network parse_enewick(std::string_view text, std::size_t line = 1);

// One network per non-empty line; lines starting with '#' are comments.
ENewickDocument parse_document(std::string_view text);

// Children are written in order of their least descendant leaf label and
// reticulation tags are numbered in order of first visit, so isomorphic
// networks serialize identically.
std::string write_enewick(const Network& n);

}  // namespace tcnet

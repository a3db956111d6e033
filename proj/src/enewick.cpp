#include "tcnet/enewick.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>

namespace tcnet {

ParseError::ParseError(std::size_t line, std::size_t column, std::string message, std::string expected)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message +
                         (expected.empty() ? "" : " (expected " + expected + ")")),
      line_(line),
      column_(column),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

namespace {

bool is_label_char(char c) {
  switch (c) {
    case '(': case ')': case ',': case ':': case ';': case '#':
    case '[': case ']': case '\'':
      return false;
    default:
      return !std::isspace(static_cast<unsigned char>(c));
  }
}

// one parsed occurrence: a group "(...)", a leaf, or a tagged reference
struct Occurrence {
  std::vector<std::size_t> kids;
  bool group = false;
  std::string name;
  std::string tag;
  std::size_t column = 0;
};

class Parser {
 public:
  Parser(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  Network parse() {
    skip_space();
    std::size_t start = column();
    if (at_end()) fail("empty input", "a network");
    std::size_t top = subtree();
    skip_space();
    if (at_end()) fail("missing ';' at end of network", "';'");
    if (peek() != ';') fail("unexpected character '" + std::string(1, peek()) + "'", "',' , ')' or ';'");
    ++pos_;
    skip_space();
    if (!at_end()) fail("trailing characters after ';'", "end of line");
    return build(top, start);
  }

 private:
  [[noreturn]] void fail(const std::string& msg, const std::string& expected = {}) const {
    throw ParseError(line_, column(), msg, expected);
  }
  [[noreturn]] void fail_at(std::size_t col, const std::string& msg, const std::string& expected = {}) const {
    throw ParseError(line_, col, msg, expected);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  std::size_t column() const { return pos_ + 1; }

  void skip_space() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        ++pos_;
      } else if (peek() == '[') {
        std::size_t col = column();
        auto close = text_.find(']', pos_);
        if (close == std::string_view::npos) fail_at(col, "unterminated comment", "']'");
        pos_ = close + 1;
      } else {
        break;
      }
    }
  }

  std::string read_name() {
    std::string out;
    if (!at_end() && peek() == '\'') {
      std::size_t col = column();
      ++pos_;
      while (true) {
        if (at_end()) fail_at(col, "unterminated quoted label", "closing quote");
        char c = text_[pos_++];
        if (c == '\'') {
          if (!at_end() && peek() == '\'') {
            out += '\'';
            ++pos_;
            continue;
          }
          break;
        }
        out += c;
      }
      return out;
    }
    while (!at_end() && is_label_char(peek())) out += text_[pos_++];
    return out;
  }

  std::size_t subtree() {
    skip_space();
    Occurrence occ;
    occ.column = column();
    if (at_end()) fail("unexpected end of input", "'(' or a leaf label");
    if (peek() == '(') {
      ++pos_;
      occ.group = true;
      while (true) {
        occ.kids.push_back(subtree());
        skip_space();
        if (at_end()) fail("unbalanced parentheses", "',' or ')'");
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        if (peek() == ')') {
          ++pos_;
          break;
        }
        fail("unbalanced parentheses", "',' or ')'");
      }
    }
    skip_space();
    occ.name = read_name();
    skip_space();
    if (!at_end() && peek() == '#') {
      std::size_t col = column();
      ++pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
        occ.tag += text_[pos_++];
      if (occ.tag.size() < 2 || occ.tag.front() != 'H')
        fail_at(col, "unsupported reticulation tag '#" + occ.tag + "'", "'#H<id>'");
    }
    skip_space();
    // branch length, support, probability; empty fields are allowed
    while (!at_end() && peek() == ':') {
      ++pos_;
      std::size_t field_col = column();
      std::size_t begin = pos_;
      while (!at_end() && peek() != ',' && peek() != ')' && peek() != ';' && peek() != ':' &&
             peek() != '(' && peek() != '[' && !std::isspace(static_cast<unsigned char>(peek())))
        ++pos_;
      std::string field(text_.substr(begin, pos_ - begin));
      if (!field.empty()) {
        char* end = nullptr;
        std::strtod(field.c_str(), &end);
        if (end != field.c_str() + field.size())
          fail_at(field_col, "invalid branch length '" + field + "'", "a number");
      }
      skip_space();
    }
    if (!occ.group && occ.name.empty() && occ.tag.empty())
      fail_at(occ.column, "missing leaf label", "'(' or a leaf label");
    occurrences_.push_back(std::move(occ));
    return occurrences_.size() - 1;
  }

  Network build(std::size_t top, std::size_t start_col) {
    std::map<std::string, std::vector<std::size_t>> by_tag;
    for (std::size_t i = 0; i < occurrences_.size(); ++i)
      if (!occurrences_[i].tag.empty()) by_tag[occurrences_[i].tag].push_back(i);
    std::map<std::string, std::size_t> bearer;
    for (const auto& [tag, occs] : by_tag) {
      std::vector<std::size_t> bearers;
      for (std::size_t i : occs) {
        if (occurrences_[i].group) {
          bearers.push_back(i);
        } else if (!occurrences_[i].name.empty()) {
          fail_at(occurrences_[i].column, "labeled reticulation reference '" + occurrences_[i].name +
                                              "#" + tag + "'",
                  "'#" + tag + "' or '(...)#" + tag + "'");
        }
      }
      if (bearers.empty())
        fail_at(occurrences_[occs.front()].column, "reticulation #" + tag + " has no subtree", "'(...)#" + tag + "'");
      if (bearers.size() > 1)
        fail_at(occurrences_[bearers[1]].column, "reticulation #" + tag + " carries more than one subtree");
      if (occs.size() < 2)
        fail_at(occurrences_[occs.front()].column, "reticulation #" + tag + " has indegree < 2",
                "a second '#" + tag + "' occurrence");
      bearer[tag] = bearers.front();
    }
    if (!occurrences_[top].tag.empty())
      fail_at(occurrences_[top].column, "the top-level node cannot be a reticulation");

    Network n;
    std::unordered_map<NodeId, std::size_t> columns;
    std::map<std::string, NodeId> reticulations;
    auto make_node = [&](std::size_t col) {
      NodeId v = n.add_node();
      columns[v] = col;
      return v;
    };

    std::function<NodeId(std::size_t)> make = [&](std::size_t i) -> NodeId {
      const Occurrence& occ = occurrences_[i];
      if (!occ.tag.empty()) {
        auto [it, fresh] = reticulations.try_emplace(occ.tag, 0);
        if (fresh) it->second = make_node(occurrences_[bearer.at(occ.tag)].column);
        NodeId r = it->second;
        if (occ.group) {
          NodeId below = r;
          if (occ.kids.size() > 1) {
            below = make_node(occ.column);
            n.add_edge(r, below);
          }
          for (std::size_t k : occ.kids) n.add_edge(below, make(k));
        }
        return r;
      }
      if (occ.group) {
        NodeId v = make_node(occ.column);
        for (std::size_t k : occ.kids) n.add_edge(v, make(k));
        return v;
      }
      if (n.has_leaf(occ.name)) fail_at(occ.column, "duplicate leaf label '" + occ.name + "'");
      NodeId v = n.add_leaf(occ.name);
      columns[v] = occ.column;
      return v;
    };

    NodeId root = make_node(start_col);
    n.add_edge(root, make(top));

    auto diags = validate(n);
    if (!diags.empty()) {
      const Diagnostic& d = diags.front();
      std::size_t col = start_col;
      if (!d.nodes.empty() && columns.contains(d.nodes.front())) col = columns.at(d.nodes.front());
      fail_at(col, "invalid network: " + d.message);
    }
    return n;
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
  std::vector<Occurrence> occurrences_;
};

std::string quote_label(const Taxon& label) {
  if (std::all_of(label.begin(), label.end(), is_label_char)) return label;
  std::string out = "'";
  for (char c : label) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

}  // namespace

Network parse_enewick(std::string_view text, std::size_t line) { return Parser(text, line).parse(); }

ENewickDocument parse_document(std::string_view text) {
  ENewickDocument doc;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    doc.networks.push_back(parse_enewick(line, line_no));
    doc.lines.push_back(line_no);
  }
  return doc;
}

std::string write_enewick(const Network& n) {
  auto r = n.root();
  if (!r || n.outdegree(*r) != 1) throw std::invalid_argument("write_enewick: network has no valid root");
  auto codes = canonical_codes(n);

  std::unordered_map<NodeId, Taxon> least_leaf;
  std::function<const Taxon&(NodeId)> least = [&](NodeId v) -> const Taxon& {
    if (auto it = least_leaf.find(v); it != least_leaf.end()) return it->second;
    Taxon best = n.is_labeled(v) ? n.label(v) : Taxon{};
    for (NodeId c : n.children(v)) {
      const Taxon& t = least(c);
      if (best.empty() || t < best) best = t;
    }
    return least_leaf[v] = best;
  };

  std::unordered_map<NodeId, int> tags;
  std::string out;
  std::function<void(NodeId)> write = [&](NodeId v) {
    if (n.is_labeled(v)) {
      out += quote_label(n.label(v));
      return;
    }
    bool reticulation = n.indegree(v) >= 2;
    if (reticulation) {
      if (auto it = tags.find(v); it != tags.end()) {
        out += "#H" + std::to_string(it->second);
        return;
      }
    }
    int tag = 0;
    if (reticulation) {
      tag = static_cast<int>(tags.size()) + 1;
      tags[v] = tag;
    }
    std::vector<NodeId> kids(n.children(v).begin(), n.children(v).end());
    std::sort(kids.begin(), kids.end(), [&](NodeId a, NodeId b) {
      const Taxon& la = least(a);
      const Taxon& lb = least(b);
      if (la != lb) return la < lb;
      return codes.at(a) < codes.at(b);
    });
    out += '(';
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (i) out += ',';
      write(kids[i]);
    }
    out += ')';
    if (reticulation) out += "#H" + std::to_string(tag);
  };
  write(n.children(*r).front());
  out += ';';
  return out;
}

}  // namespace tcnet

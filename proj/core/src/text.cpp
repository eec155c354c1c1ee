#include "cplkit/text.hpp"

#include <cctype>
#include <sstream>

namespace cplkit {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class PropParser {
 public:
  PropParser(std::string_view text, int line) : text_(text), line_(line) {}

  Prop parse() {
    Prop p = parse_imp();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after proposition");
    return p;
  }

 private:
  Prop parse_imp() {
    Prop left = parse_unary();
    skip_ws();
    if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>') {
      pos_ += 2;
      return imp(std::move(left), parse_imp());
    }
    return left;
  }

  Prop parse_unary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected proposition");
    char c = text_[pos_];
    if (c == '~') {
      ++pos_;
      return neg(parse_unary());
    }
    if (c == '(') {
      ++pos_;
      Prop p = parse_imp();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return p;
    }
    if (!ident_start(c)) fail(std::string("unexpected character '") + c + "'");
    std::string word = take_ident();
    if (word == "bot") return bot();
    if (word == "dia") return dia(parse_unary());
    if (word == "box") return box(parse_unary());
    return atom(std::move(word));
  }

  std::string take_ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, line_, static_cast<int>(pos_) + 1);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
};

// Unary positions (argument of ~/dia/box, left of ->) need parentheses
// around implications that are not printed via the ~ sugar.
void print_unary(const Prop& p, std::string& out);

void print_imp(const Prop& p, std::string& out) {
  if (p->kind() == PropKind::Imp && !is_neg(p)) {
    print_unary(p->left(), out);
    out += " -> ";
    print_imp(p->right(), out);
    return;
  }
  print_unary(p, out);
}

void print_unary(const Prop& p, std::string& out) {
  switch (p->kind()) {
    case PropKind::Atom:
      out += p->atom_name();
      return;
    case PropKind::Bot:
      out += "bot";
      return;
    case PropKind::Dia:
      out += "dia ";
      print_unary(p->left(), out);
      return;
    case PropKind::Box:
      out += "box ";
      print_unary(p->left(), out);
      return;
    case PropKind::Imp:
      if (is_neg(p)) {
        out += '~';
        print_unary(p->left(), out);
        return;
      }
      out += '(';
      print_imp(p, out);
      out += ')';
      return;
  }
}

std::vector<std::pair<int, std::string>> content_lines(std::string_view text) {
  std::vector<std::pair<int, std::string>> out;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view line =
        end == std::string_view::npos ? text.substr(start) : text.substr(start, end - start);
    ++line_no;
    std::string s(line);
    if (auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    if (a != std::string::npos) out.emplace_back(line_no, s.substr(a, b - a + 1));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> words;
  std::istringstream in(s);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

}  // namespace

Prop parse_prop(std::string_view text) { return PropParser(text, 0).parse(); }

std::string print_prop(const Prop& p) {
  std::string out;
  print_imp(p, out);
  return out;
}

Frame parse_frame(std::string_view text) {
  std::vector<std::string> worlds;
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [line_no, line] : content_lines(text)) {
    auto words = split_words(line);
    if (words[0] == "world" && words.size() == 2) {
      worlds.push_back(words[1]);
    } else if (words[0] == "edge" && words.size() == 3) {
      edges.emplace_back(words[1], words[2]);
    } else {
      throw ParseError("expected 'world <name>' or 'edge <from> <to>'", line_no, 1);
    }
  }
  return Frame::build(worlds, edges);
}

std::string print_frame(const Frame& f) {
  std::string out;
  for (WorldId w = 0; w < f.world_count(); ++w) out += "world " + f.name(w) + "\n";
  for (const auto& [a, b] : f.edge_list()) out += "edge " + a + " " + b + "\n";
  return out;
}

namespace {

// Splits "prop @ world" (the '@' must sit outside parentheses; prop text
// cannot contain '@' so a plain rfind is enough).
std::pair<Prop, WorldId> parse_at(const std::string& body, const Frame& frame, int line_no) {
  auto at = body.rfind('@');
  if (at == std::string::npos) throw ParseError("expected '<prop> @ <world>'", line_no, 1);
  Prop p = PropParser(std::string_view(body).substr(0, at), line_no).parse();
  auto words = split_words(body.substr(at + 1));
  if (words.size() != 1) throw ParseError("expected a single world name after '@'", line_no, 1);
  auto w = frame.find(words[0]);
  if (!w) throw ParseError("unknown world '" + words[0] + "'", line_no, 1);
  return {std::move(p), *w};
}

}  // namespace

SequentFile parse_sequent(std::string_view text, const Frame& frame) {
  SequentFile out;
  std::vector<Judgment> hyps;
  bool has_goal = false;
  for (const auto& [line_no, line] : content_lines(text)) {
    std::string_view sv(line);
    if (sv.rfind("hyp ", 0) == 0) {
      auto [p, w] = parse_at(line.substr(4), frame, line_no);
      hyps.push_back({std::move(p), w});
    } else if (sv.rfind("goal ", 0) == 0) {
      if (has_goal) throw ParseError("duplicate goal line", line_no, 1);
      auto [p, w] = parse_at(line.substr(5), frame, line_no);
      out.goal = std::move(p);
      out.goal_world = w;
      has_goal = true;
    } else {
      throw ParseError("expected 'hyp <prop> @ <world>' or 'goal <prop> @ <world>'", line_no, 1);
    }
  }
  if (!has_goal) throw ParseError("sequent file has no goal line", 0, 0);
  out.hyps = Context(std::move(hyps));
  return out;
}

std::string print_sequent(const SequentFile& s, const Frame& frame) {
  std::string out;
  for (const auto& j : s.hyps.items())
    out += "hyp " + print_prop(j.prop) + " @ " + frame.name(j.world) + "\n";
  out += "goal " + print_prop(s.goal) + " @ " + frame.name(s.goal_world) + "\n";
  return out;
}

std::string print_judgment(const Judgment& j, const Frame& frame) {
  return print_prop(j.prop) + " @ " + frame.name(j.world);
}

}  // namespace cplkit

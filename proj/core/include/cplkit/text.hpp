// Concrete syntax.
//
// Propositions:  bot | ident | ~P | dia P | box P | P -> Q | (P)
//   `->` is right-associative and binds loosest; `~P` is sugar for P -> bot;
//   `bot`, `dia`, `box` are reserved. Printing is canonical and round-trips
//   bit-exactly: parse(print(p)) == p and print is idempotent on its output.
//
// Frame files: lines `world <name>` / `edge <from> <to>`, `#` comments.
// Sequent files: lines `hyp <prop> @ <world>` and exactly one
// `goal <prop> @ <world>`, `#` comments.
#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cplkit/context.hpp"
#include "cplkit/frame.hpp"
#include "cplkit/prop.hpp"

namespace cplkit {

Prop parse_prop(std::string_view text);  // throws ParseError
std::string print_prop(const Prop& p);

Frame parse_frame(std::string_view text);  // throws ParseError / CyclicError / UnknownWorldError
std::string print_frame(const Frame& f);

struct SequentFile {
  Context hyps;
  Prop goal;
  WorldId goal_world = kNoWorld;
};

SequentFile parse_sequent(std::string_view text, const Frame& frame);
std::string print_sequent(const SequentFile& s, const Frame& frame);

std::string print_judgment(const Judgment& j, const Frame& frame);

}  // namespace cplkit

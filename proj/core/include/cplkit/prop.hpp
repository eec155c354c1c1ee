// Unpolarized propositions: atoms, bot, implication, dia, box. Nodes are
// immutable and shared; negation is sugar for A -> bot, never a node.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace cplkit {

enum class PropKind : std::uint8_t { Atom, Bot, Imp, Dia, Box };

class PropNode;
using Prop = std::shared_ptr<const PropNode>;

class PropNode {
 public:
  PropKind kind() const { return kind_; }
  const std::string& atom_name() const { return atom_; }
  const Prop& left() const { return left_; }    // Imp antecedent; Dia/Box body
  const Prop& right() const { return right_; }  // Imp consequent
  std::size_t hash() const { return hash_; }
  // Leaves have height 1.
  int height() const { return height_; }

  static Prop make_atom(std::string name);
  static Prop make_bot();
  static Prop make_imp(Prop a, Prop b);
  static Prop make_dia(Prop a);
  static Prop make_box(Prop a);

 protected:
  PropNode() = default;

 private:
  PropKind kind_{};
  std::string atom_;
  Prop left_, right_;
  std::size_t hash_ = 0;
  int height_ = 1;
};

inline Prop atom(std::string name) { return PropNode::make_atom(std::move(name)); }
Prop bot();
inline Prop imp(Prop a, Prop b) { return PropNode::make_imp(std::move(a), std::move(b)); }
inline Prop dia(Prop a) { return PropNode::make_dia(std::move(a)); }
inline Prop box(Prop a) { return PropNode::make_box(std::move(a)); }
inline Prop neg(Prop a) { return imp(std::move(a), bot()); }

bool prop_equal(const Prop& a, const Prop& b);
// Total structural order: kind rank, then atom name / children. 0 iff equal.
int prop_compare(const Prop& a, const Prop& b);

inline bool is_atom(const Prop& p) { return p->kind() == PropKind::Atom; }
inline bool is_bot(const Prop& p) { return p->kind() == PropKind::Bot; }
inline bool is_neg(const Prop& p) {
  return p->kind() == PropKind::Imp && p->right()->kind() == PropKind::Bot;
}

}  // namespace cplkit

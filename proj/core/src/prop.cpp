#include "cplkit/prop.hpp"

#include <algorithm>
#include <functional>

namespace cplkit {

namespace {

std::size_t mix(std::size_t a, std::size_t b) {
  // boost::hash_combine flavor
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

struct Access : PropNode {};  // grants make_shared access to the private ctor

Prop fresh() { return std::make_shared<Access>(); }

PropNode& mut(const Prop& p) { return const_cast<PropNode&>(*p); }

}  // namespace

Prop PropNode::make_atom(std::string name) {
  auto p = fresh();
  auto& n = mut(p);
  n.kind_ = PropKind::Atom;
  n.atom_ = std::move(name);
  n.hash_ = mix(1, std::hash<std::string>{}(n.atom_));
  n.height_ = 1;
  return p;
}

Prop PropNode::make_bot() {
  auto p = fresh();
  auto& n = mut(p);
  n.kind_ = PropKind::Bot;
  n.hash_ = 0x62f4a9c1;
  n.height_ = 1;
  return p;
}

Prop PropNode::make_imp(Prop a, Prop b) {
  auto p = fresh();
  auto& n = mut(p);
  n.kind_ = PropKind::Imp;
  n.hash_ = mix(3, mix(a->hash(), b->hash()));
  n.height_ = 1 + std::max(a->height(), b->height());
  n.left_ = std::move(a);
  n.right_ = std::move(b);
  return p;
}

Prop PropNode::make_dia(Prop a) {
  auto p = fresh();
  auto& n = mut(p);
  n.kind_ = PropKind::Dia;
  n.hash_ = mix(4, a->hash());
  n.height_ = 1 + a->height();
  n.left_ = std::move(a);
  return p;
}

Prop PropNode::make_box(Prop a) {
  auto p = fresh();
  auto& n = mut(p);
  n.kind_ = PropKind::Box;
  n.hash_ = mix(5, a->hash());
  n.height_ = 1 + a->height();
  n.left_ = std::move(a);
  return p;
}

Prop bot() {
  static const Prop b = PropNode::make_bot();
  return b;
}

bool prop_equal(const Prop& a, const Prop& b) {
  if (a.get() == b.get()) return true;
  if (a->hash() != b->hash() || a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case PropKind::Atom:
      return a->atom_name() == b->atom_name();
    case PropKind::Bot:
      return true;
    case PropKind::Imp:
      return prop_equal(a->left(), b->left()) && prop_equal(a->right(), b->right());
    case PropKind::Dia:
    case PropKind::Box:
      return prop_equal(a->left(), b->left());
  }
  return false;
}

int prop_compare(const Prop& a, const Prop& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind() != b->kind())
    return static_cast<int>(a->kind()) < static_cast<int>(b->kind()) ? -1 : 1;
  switch (a->kind()) {
    case PropKind::Atom:
      return a->atom_name().compare(b->atom_name());
    case PropKind::Bot:
      return 0;
    case PropKind::Imp: {
      int c = prop_compare(a->left(), b->left());
      return c != 0 ? c : prop_compare(a->right(), b->right());
    }
    case PropKind::Dia:
    case PropKind::Box:
      return prop_compare(a->left(), b->left());
  }
  return 0;
}

}  // namespace cplkit

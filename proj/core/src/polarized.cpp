#include "cplkit/polarized.hpp"

#include <functional>

namespace cplkit {

namespace {

std::size_t mix(std::size_t a, std::size_t b) {
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

struct Access : PolNode {};

}  // namespace

PolProp PolNode::make(PolKind kind, std::string atom, PolProp a, PolProp b) {
  auto p = std::make_shared<Access>();
  auto& n = const_cast<PolNode&>(static_cast<const PolNode&>(*p));
  n.kind_ = kind;
  n.atom_ = std::move(atom);
  std::size_t h = mix(17 + static_cast<std::size_t>(kind), std::hash<std::string>{}(n.atom_));
  if (a) h = mix(h, a->hash());
  if (b) h = mix(h, b->hash());
  n.hash_ = h;
  n.left_ = std::move(a);
  n.right_ = std::move(b);
  return p;
}

PolProp pos_atom(std::string name) { return PolNode::make(PolKind::PosAtom, std::move(name), nullptr, nullptr); }
PolProp neg_atom(std::string name) { return PolNode::make(PolKind::NegAtom, std::move(name), nullptr, nullptr); }
PolProp down(PolProp a) { return PolNode::make(PolKind::Down, {}, std::move(a), nullptr); }
PolProp pos_bot() { return PolNode::make(PolKind::PosBot, {}, nullptr, nullptr); }
PolProp pos_dia(PolProp a) { return PolNode::make(PolKind::PosDia, {}, std::move(a), nullptr); }
PolProp pos_box(PolProp a) { return PolNode::make(PolKind::PosBox, {}, std::move(a), nullptr); }
PolProp up(PolProp a) { return PolNode::make(PolKind::Up, {}, std::move(a), nullptr); }
PolProp neg_imp(PolProp a, PolProp b) { return PolNode::make(PolKind::NegImp, {}, std::move(a), std::move(b)); }

bool is_positive(const PolProp& p) {
  switch (p->kind()) {
    case PolKind::PosAtom:
    case PolKind::Down:
    case PolKind::PosBot:
    case PolKind::PosDia:
    case PolKind::PosBox:
      return true;
    default:
      return false;
  }
}

bool is_stable(const PolProp& p) {
  switch (p->kind()) {
    case PolKind::PosAtom:
    case PolKind::Down:
    case PolKind::NegAtom:
    case PolKind::Up:
      return true;
    default:
      return false;
  }
}

bool polprop_equal(const PolProp& a, const PolProp& b) {
  if (a.get() == b.get()) return true;
  if (a->hash() != b->hash() || a->kind() != b->kind()) return false;
  if (a->kind() == PolKind::PosAtom || a->kind() == PolKind::NegAtom)
    return a->atom_name() == b->atom_name();
  if (a->left() && !polprop_equal(a->left(), b->left())) return false;
  if (a->right() && !polprop_equal(a->right(), b->right())) return false;
  return true;
}

int polprop_compare(const PolProp& a, const PolProp& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind() != b->kind())
    return static_cast<int>(a->kind()) < static_cast<int>(b->kind()) ? -1 : 1;
  switch (a->kind()) {
    case PolKind::PosAtom:
    case PolKind::NegAtom:
      return a->atom_name().compare(b->atom_name());
    case PolKind::PosBot:
      return 0;
    case PolKind::NegImp: {
      int c = polprop_compare(a->left(), b->left());
      return c != 0 ? c : polprop_compare(a->right(), b->right());
    }
    default:
      return polprop_compare(a->left(), b->left());
  }
}

PolProp polarize(const Prop& p, PolarizeMode mode, const PolarityTable& table) {
  switch (p->kind()) {
    case PropKind::Atom: {
      bool positive = table.of(p->atom_name()) == Polarity::Positive;
      if (mode == PolarizeMode::Pos)
        return positive ? pos_atom(p->atom_name()) : down(neg_atom(p->atom_name()));
      return positive ? up(pos_atom(p->atom_name())) : neg_atom(p->atom_name());
    }
    case PropKind::Bot:
      return mode == PolarizeMode::Pos ? pos_bot() : up(pos_bot());
    case PropKind::Dia: {
      PolProp body = polarize(p->left(), PolarizeMode::Pos, table);
      return mode == PolarizeMode::Pos ? pos_dia(body) : up(pos_dia(body));
    }
    case PropKind::Box: {
      PolProp body = polarize(p->left(), PolarizeMode::Pos, table);
      return mode == PolarizeMode::Pos ? pos_box(body) : up(pos_box(body));
    }
    case PropKind::Imp: {
      PolProp a = polarize(p->left(), PolarizeMode::Pos, table);
      PolProp b = polarize(p->right(), PolarizeMode::Neg, table);
      PolProp impn = neg_imp(std::move(a), std::move(b));
      return mode == PolarizeMode::Pos ? down(std::move(impn)) : impn;
    }
  }
  throw InvariantError("unreachable prop kind");
}

Prop erase(const PolProp& p) {
  switch (p->kind()) {
    case PolKind::PosAtom:
    case PolKind::NegAtom:
      return atom(p->atom_name());
    case PolKind::PosBot:
      return bot();
    case PolKind::Down:
    case PolKind::Up:
      return erase(p->left());
    case PolKind::PosDia:
      return dia(erase(p->left()));
    case PolKind::PosBox:
      return box(erase(p->left()));
    case PolKind::NegImp:
      return imp(erase(p->left()), erase(p->right()));
  }
  throw InvariantError("unreachable polprop kind");
}

void validate_polarities(const PolProp& p, const PolarityTable& table) {
  switch (p->kind()) {
    case PolKind::PosAtom:
      if (table.of(p->atom_name()) != Polarity::Positive)
        throw PolarityClashError("atom '" + p->atom_name() + "' is declared negative but used positively");
      return;
    case PolKind::NegAtom:
      if (table.of(p->atom_name()) != Polarity::Negative)
        throw PolarityClashError("atom '" + p->atom_name() + "' is declared positive but used negatively");
      return;
    case PolKind::PosBot:
      return;
    case PolKind::NegImp:
      validate_polarities(p->left(), table);
      validate_polarities(p->right(), table);
      return;
    default:
      validate_polarities(p->left(), table);
      return;
  }
}

}  // namespace cplkit

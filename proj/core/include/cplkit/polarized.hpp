// Polarized propositions and the polarization translation.
//
//   positive:  Q+ | down(A-) | bot | dia(A+) | box(A+)
//   negative:  Q- | up(A+) | A+ -> B-
//
// Each atom name has exactly one polarity per problem instance, recorded in
// a PolarityTable (default: positive). Stability picks out the shapes that
// need no further inversion.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "cplkit/errors.hpp"
#include "cplkit/prop.hpp"

namespace cplkit {

enum class PolKind : std::uint8_t {
  PosAtom,
  Down,
  PosBot,
  PosDia,
  PosBox,
  NegAtom,
  Up,
  NegImp,
};

class PolNode;
using PolProp = std::shared_ptr<const PolNode>;

class PolNode {
 public:
  PolKind kind() const { return kind_; }
  const std::string& atom_name() const { return atom_; }
  const PolProp& left() const { return left_; }    // Down/PosDia/PosBox/Up body; NegImp antecedent
  const PolProp& right() const { return right_; }  // NegImp consequent
  std::size_t hash() const { return hash_; }

  static PolProp make(PolKind kind, std::string atom, PolProp a, PolProp b);

 protected:
  PolNode() = default;

 private:
  PolKind kind_{};
  std::string atom_;
  PolProp left_, right_;
  std::size_t hash_ = 0;
};

PolProp pos_atom(std::string name);
PolProp neg_atom(std::string name);
PolProp down(PolProp a);
PolProp pos_bot();
PolProp pos_dia(PolProp a);
PolProp pos_box(PolProp a);
PolProp up(PolProp a);
PolProp neg_imp(PolProp a, PolProp b);

bool is_positive(const PolProp& p);
inline bool is_negative(const PolProp& p) { return !is_positive(p); }

// Stable-positive: Q+ and down(A-). Stable-negative: Q- and up(A+).
bool is_stable(const PolProp& p);

bool polprop_equal(const PolProp& a, const PolProp& b);
int polprop_compare(const PolProp& a, const PolProp& b);

enum class Polarity : std::uint8_t { Positive, Negative };

class PolarityTable {
 public:
  Polarity of(std::string_view name) const {
    auto it = decl_.find(std::string(name));
    return it == decl_.end() ? Polarity::Positive : it->second;
  }
  void declare(std::string name, Polarity p) { decl_[std::move(name)] = p; }

 private:
  std::map<std::string, Polarity> decl_;
};

enum class PolarizeMode : std::uint8_t { Pos, Neg };

// The (.)+ / (.)- tables; atoms take the polarity declared in the table.
PolProp polarize(const Prop& p, PolarizeMode mode, const PolarityTable& table = {});

// Deletes shifts, merges atom polarities, maps connectives homomorphically.
// erase(polarize(p, m)) == p for every p and mode.
Prop erase(const PolProp& p);

// Throws PolarityClashError when an atom occurs with a polarity other than
// its declared one.
void validate_polarities(const PolProp& p, const PolarityTable& table);

}  // namespace cplkit

#include "cplkit/context.hpp"

#include <algorithm>

namespace cplkit {

namespace {
std::size_t mix(std::size_t a, std::size_t b) {
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}
}  // namespace

bool judgment_equal(const Judgment& a, const Judgment& b) {
  return a.world == b.world && prop_equal(a.prop, b.prop);
}

int judgment_compare(const Judgment& a, const Judgment& b) {
  if (a.world != b.world) return a.world < b.world ? -1 : 1;
  return prop_compare(a.prop, b.prop);
}

Context::Context(std::vector<Judgment> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end(),
            [](const Judgment& a, const Judgment& b) { return judgment_compare(a, b) < 0; });
  items_.erase(std::unique(items_.begin(), items_.end(),
                           [](const Judgment& a, const Judgment& b) { return judgment_equal(a, b); }),
               items_.end());
  rehash();
}

void Context::rehash() {
  std::size_t h = 0x51ab3e;
  for (const auto& j : items_) h = mix(h, mix(j.prop->hash(), j.world));
  hash_ = h;
}

Context Context::insert(const Judgment& j) const {
  if (contains(j)) return *this;
  Context out;
  out.items_.reserve(items_.size() + 1);
  auto pos = std::lower_bound(items_.begin(), items_.end(), j,
                              [](const Judgment& a, const Judgment& b) { return judgment_compare(a, b) < 0; });
  out.items_.assign(items_.begin(), pos);
  out.items_.push_back(j);
  out.items_.insert(out.items_.end(), pos, items_.end());
  out.rehash();
  return out;
}

Context Context::erase(const Judgment& j) const {
  Context out;
  out.items_.reserve(items_.size());
  for (const auto& it : items_)
    if (!judgment_equal(it, j)) out.items_.push_back(it);
  out.rehash();
  return out;
}

bool Context::contains(const Judgment& j) const { return index_of(j) >= 0; }

int Context::index_of(const Judgment& j) const {
  auto pos = std::lower_bound(items_.begin(), items_.end(), j,
                              [](const Judgment& a, const Judgment& b) { return judgment_compare(a, b) < 0; });
  if (pos != items_.end() && judgment_equal(*pos, j)) return static_cast<int>(pos - items_.begin());
  return -1;
}

Context Context::restrict_to(std::uint64_t world_mask) const {
  Context out;
  for (const auto& j : items_)
    if ((world_mask >> j.world) & 1u) out.items_.push_back(j);
  out.rehash();
  return out;
}

bool Context::operator==(const Context& other) const {
  if (hash_ != other.hash_ || items_.size() != other.items_.size()) return false;
  for (std::size_t i = 0; i < items_.size(); ++i)
    if (!judgment_equal(items_[i], other.items_[i])) return false;
  return true;
}

bool ctx_leq(const Frame& frame, const Context& g, const Context& g2, WorldId w) {
  for (const auto& j : g.items())
    if (frame.reaches_star(w, j.world) && !g2.contains(j)) return false;
  for (const auto& j : g2.items())
    if (frame.reaches_plus(w, j.world) && !g.contains(j)) return false;
  return true;
}

bool pol_judgment_equal(const PolJudgment& a, const PolJudgment& b) {
  return a.world == b.world && polprop_equal(a.prop, b.prop);
}

int pol_judgment_compare(const PolJudgment& a, const PolJudgment& b) {
  if (a.world != b.world) return a.world < b.world ? -1 : 1;
  return polprop_compare(a.prop, b.prop);
}

PolContext::PolContext(std::vector<PolJudgment> items) : items_(std::move(items)) {
  for (const auto& j : items_)
    if (!is_positive(j.prop) || !is_stable(j.prop))
      throw InvariantError("polarized contexts hold stable-positive judgments only");
  std::sort(items_.begin(), items_.end(),
            [](const PolJudgment& a, const PolJudgment& b) { return pol_judgment_compare(a, b) < 0; });
  items_.erase(std::unique(items_.begin(), items_.end(),
                           [](const PolJudgment& a, const PolJudgment& b) { return pol_judgment_equal(a, b); }),
               items_.end());
  rehash();
}

void PolContext::rehash() {
  std::size_t h = 0x77cd01;
  for (const auto& j : items_) h = mix(h, mix(j.prop->hash(), j.world));
  hash_ = h;
}

PolContext PolContext::insert(const PolJudgment& j) const {
  if (!is_positive(j.prop) || !is_stable(j.prop))
    throw InvariantError("polarized contexts hold stable-positive judgments only");
  if (contains(j)) return *this;
  PolContext out;
  auto pos = std::lower_bound(items_.begin(), items_.end(), j,
                              [](const PolJudgment& a, const PolJudgment& b) { return pol_judgment_compare(a, b) < 0; });
  out.items_.assign(items_.begin(), pos);
  out.items_.push_back(j);
  out.items_.insert(out.items_.end(), pos, items_.end());
  out.rehash();
  return out;
}

bool PolContext::contains(const PolJudgment& j) const {
  auto pos = std::lower_bound(items_.begin(), items_.end(), j,
                              [](const PolJudgment& a, const PolJudgment& b) { return pol_judgment_compare(a, b) < 0; });
  return pos != items_.end() && pol_judgment_equal(*pos, j);
}

PolContext PolContext::restrict_to(std::uint64_t world_mask) const {
  PolContext out;
  for (const auto& j : items_)
    if ((world_mask >> j.world) & 1u) out.items_.push_back(j);
  out.rehash();
  return out;
}

bool PolContext::operator==(const PolContext& other) const {
  if (hash_ != other.hash_ || items_.size() != other.items_.size()) return false;
  for (std::size_t i = 0; i < items_.size(); ++i)
    if (!pol_judgment_equal(items_[i], other.items_[i])) return false;
  return true;
}

PolContext polarize_ctx(const Context& g, const PolarityTable& table) {
  std::vector<PolJudgment> items;
  items.reserve(g.size());
  for (const auto& j : g.items()) {
    // Atoms keep their own polarity (down-shifted when negative); everything
    // else is made stable by shifting as needed.
    PolProp p;
    switch (j.prop->kind()) {
      case PropKind::Atom:
        p = table.of(j.prop->atom_name()) == Polarity::Positive
                ? pos_atom(j.prop->atom_name())
                : down(neg_atom(j.prop->atom_name()));
        break;
      case PropKind::Bot:
      case PropKind::Dia:
      case PropKind::Box:
        p = down(up(polarize(j.prop, PolarizeMode::Pos, table)));
        break;
      case PropKind::Imp:
        p = down(polarize(j.prop, PolarizeMode::Neg, table));
        break;
    }
    items.push_back({std::move(p), j.world});
  }
  return PolContext(std::move(items));
}

}  // namespace cplkit

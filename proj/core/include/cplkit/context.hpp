// World-indexed judgments and contexts. Contexts are canonical: sorted by
// (world, proposition) and duplicate-free, so contraction and exchange are
// identities and sequents compare cheaply for memoization.
#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "cplkit/frame.hpp"
#include "cplkit/polarized.hpp"
#include "cplkit/prop.hpp"

namespace cplkit {

struct Judgment {
  Prop prop;
  WorldId world = kNoWorld;
};

bool judgment_equal(const Judgment& a, const Judgment& b);
int judgment_compare(const Judgment& a, const Judgment& b);

class Context {
 public:
  Context() = default;
  explicit Context(std::vector<Judgment> items);  // sorts and dedups
  Context(std::initializer_list<Judgment> items)
      : Context(std::vector<Judgment>(items)) {}

  Context insert(const Judgment& j) const;
  Context erase(const Judgment& j) const;
  bool contains(const Judgment& j) const;
  // Judgments at worlds inside the given reach mask (see Frame::cone).
  Context restrict_to(std::uint64_t world_mask) const;

  const std::vector<Judgment>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::size_t hash() const { return hash_; }
  // Position of j in canonical order, or -1.
  int index_of(const Judgment& j) const;

  bool operator==(const Context& other) const;

 private:
  void rehash();
  std::vector<Judgment> items_;
  std::size_t hash_ = 0;
};

// The world-indexed context order. g <=_w g' holds iff judgments at worlds
// reachable from w (reflexively) are preserved into g', and judgments at
// strictly reachable worlds are exactly preserved; judgments elsewhere are
// unconstrained.
bool ctx_leq(const Frame& frame, const Context& g, const Context& g2, WorldId w);

struct PolJudgment {
  PolProp prop;
  WorldId world = kNoWorld;
};

bool pol_judgment_equal(const PolJudgment& a, const PolJudgment& b);
int pol_judgment_compare(const PolJudgment& a, const PolJudgment& b);

// Polarized contexts hold stable-positive judgments only (positive atoms and
// down-shifted negatives); the constructor enforces it.
class PolContext {
 public:
  PolContext() = default;
  explicit PolContext(std::vector<PolJudgment> items);

  PolContext insert(const PolJudgment& j) const;
  bool contains(const PolJudgment& j) const;
  PolContext restrict_to(std::uint64_t world_mask) const;

  const std::vector<PolJudgment>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::size_t hash() const { return hash_; }

  bool operator==(const PolContext& other) const;

 private:
  void rehash();
  std::vector<PolJudgment> items_;
  std::size_t hash_ = 0;
};

// Point-wise context polarization (the (.)* table).
PolContext polarize_ctx(const Context& g, const PolarityTable& table = {});

}  // namespace cplkit

// Worlds and finite accessibility frames. A frame is an explicitly
// enumerated set of worlds with an acyclic edge relation; acyclicity plus
// finiteness gives converse well-foundedness. Closure tables are computed
// once at construction, after which a frame is immutable and safe to share.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cplkit/errors.hpp"

namespace cplkit {

using WorldId = std::uint32_t;
inline constexpr WorldId kNoWorld = ~WorldId{0};

enum class Closure : std::uint8_t { Star, Plus };

class Frame {
 public:
  // Validates names and rejects cyclic relations (CyclicError names one
  // offending cycle, UnknownWorldError an undeclared edge endpoint).
  // Duplicate world or edge declarations are collapsed; at most 64 worlds.
  static Frame build(const std::vector<std::string>& worlds,
                     const std::vector<std::pair<std::string, std::string>>& edges);

  std::size_t world_count() const { return names_.size(); }

  // Worlds are interned in lexicographic name order, so WorldId order is the
  // canonical world order.
  const std::string& name(WorldId w) const { return names_[w]; }
  std::optional<WorldId> find(std::string_view name) const;
  WorldId id_of(std::string_view name) const;  // throws UnknownWorldError

  const std::vector<WorldId>& successors(WorldId w) const { return succ_[w]; }
  bool edge(WorldId a, WorldId b) const;

  bool reaches(WorldId from, WorldId to, Closure mode) const {
    const auto& bits = (mode == Closure::Star) ? star_ : plus_;
    return (bits[from] >> to) & 1u;
  }
  bool reaches_star(WorldId from, WorldId to) const { return reaches(from, to, Closure::Star); }
  bool reaches_plus(WorldId from, WorldId to) const { return reaches(from, to, Closure::Plus); }

  // Worlds reachable from w via reflexive-transitive closure, as a bitmask.
  std::uint64_t cone(WorldId w) const { return star_[w]; }

  std::vector<std::pair<std::string, std::string>> edge_list() const;

  // Frame over the same worlds with the transitively closed edge relation.
  Frame transitive_closure() const;

  bool operator==(const Frame& other) const {
    return names_ == other.names_ && succ_ == other.succ_;
  }

  Frame() = default;  // empty frame; populate via build()

 private:
  std::vector<std::string> names_;          // sorted
  std::vector<std::vector<WorldId>> succ_;  // ascending per world
  std::vector<std::uint64_t> star_, plus_;  // closure bitmasks
};

}  // namespace cplkit

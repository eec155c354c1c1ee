#include "cplkit/frame.hpp"

#include <algorithm>
#include <set>

namespace cplkit {

namespace {

// DFS cycle search; returns the cycle as world ids (first == last's successor).
std::optional<std::vector<WorldId>> find_cycle(const std::vector<std::vector<WorldId>>& succ) {
  const std::size_t n = succ.size();
  enum : std::uint8_t { White, Grey, Black };
  std::vector<std::uint8_t> color(n, White);
  std::vector<WorldId> path;

  // Iterative DFS keeping the grey path for cycle extraction.
  for (WorldId root = 0; root < n; ++root) {
    if (color[root] != White) continue;
    std::vector<std::pair<WorldId, std::size_t>> stack{{root, 0}};
    path.clear();
    path.push_back(root);
    color[root] = Grey;
    while (!stack.empty()) {
      auto& [w, i] = stack.back();
      if (i < succ[w].size()) {
        WorldId next = succ[w][i++];
        if (color[next] == Grey) {
          auto it = std::find(path.begin(), path.end(), next);
          return std::vector<WorldId>(it, path.end());
        }
        if (color[next] == White) {
          color[next] = Grey;
          path.push_back(next);
          stack.emplace_back(next, 0);
        }
      } else {
        color[w] = Black;
        path.pop_back();
        stack.pop_back();
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Frame Frame::build(const std::vector<std::string>& worlds,
                   const std::vector<std::pair<std::string, std::string>>& edges) {
  Frame f;
  f.names_ = worlds;
  std::sort(f.names_.begin(), f.names_.end());
  f.names_.erase(std::unique(f.names_.begin(), f.names_.end()), f.names_.end());
  if (f.names_.size() > 64) throw InvariantError("frames are limited to 64 worlds");

  const std::size_t n = f.names_.size();
  std::vector<std::set<WorldId>> succ_sets(n);
  for (const auto& [a, b] : edges) {
    WorldId ia = f.id_of(a);
    WorldId ib = f.id_of(b);
    succ_sets[ia].insert(ib);
  }
  f.succ_.resize(n);
  for (std::size_t w = 0; w < n; ++w) f.succ_[w].assign(succ_sets[w].begin(), succ_sets[w].end());

  if (auto cycle = find_cycle(f.succ_)) {
    std::vector<std::string> names;
    std::string msg = "accessibility relation has a cycle: ";
    for (WorldId w : *cycle) {
      names.push_back(f.names_[w]);
      msg += f.names_[w] + " -> ";
    }
    msg += f.names_[(*cycle)[0]];
    throw CyclicError(msg, std::move(names));
  }

  // plus = transitive closure; star adds the diagonal. Iterate to fixpoint;
  // fine at <= 64 worlds.
  f.plus_.assign(n, 0);
  for (std::size_t w = 0; w < n; ++w)
    for (WorldId v : f.succ_[w]) f.plus_[w] |= (std::uint64_t{1} << v);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t w = 0; w < n; ++w) {
      std::uint64_t acc = f.plus_[w];
      for (WorldId v : f.succ_[w]) acc |= f.plus_[v];
      if (acc != f.plus_[w]) {
        f.plus_[w] = acc;
        changed = true;
      }
    }
  }
  f.star_ = f.plus_;
  for (std::size_t w = 0; w < n; ++w) f.star_[w] |= (std::uint64_t{1} << w);
  return f;
}

std::optional<WorldId> Frame::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<WorldId>(it - names_.begin());
}

WorldId Frame::id_of(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw UnknownWorldError("unknown world '" + std::string(name) + "'");
}

bool Frame::edge(WorldId a, WorldId b) const {
  const auto& s = succ_[a];
  return std::binary_search(s.begin(), s.end(), b);
}

std::vector<std::pair<std::string, std::string>> Frame::edge_list() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (WorldId w = 0; w < succ_.size(); ++w)
    for (WorldId v : succ_[w]) out.emplace_back(names_[w], names_[v]);
  return out;
}

Frame Frame::transitive_closure() const {
  std::vector<std::pair<std::string, std::string>> edges;
  for (WorldId w = 0; w < names_.size(); ++w)
    for (WorldId v = 0; v < names_.size(); ++v)
      if (reaches_plus(w, v)) edges.emplace_back(names_[w], names_[v]);
  return build(names_, edges);
}

}  // namespace cplkit

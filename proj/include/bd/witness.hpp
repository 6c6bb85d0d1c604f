#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <type_traits>
#include <vector>

#include "bd/core.hpp"

namespace bd {

// Persistent, append-only store of vertex sets and partial districtings shared between DP points.
class WitnessArena {
 public:
  using Id = std::int32_t;
  static constexpr Id kNone = -1;

  Id leaf(Index v) { return push({Kind::leaf, kNone, kNone, v}); }
  Id join(Id a, Id b) {
    if (a == kNone) return b;
    if (b == kNone) return a;
    return push({Kind::join, a, b, 0});
  }
  // Marks the vertex set `members` as one finished district.
  Id district(Id members) { return members == kNone ? kNone : push({Kind::district, members, kNone, 0}); }

  std::vector<Index> vertices(Id id) const {
    std::vector<Index> out;
    walk(id, [&](Index v) { out.push_back(v); }, nullptr);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Finished districts recorded under `id`, each sorted; open vertices are ignored.
  std::vector<std::vector<Index>> districts(Id id) const {
    std::vector<std::vector<Index>> out;
    walk(id, nullptr, &out);
    for (auto& d : out) std::sort(d.begin(), d.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t size() const { return nodes_.size(); }

 private:
  enum class Kind : std::uint8_t { leaf, join, district };
  struct Node {
    Kind kind;
    Id a;
    Id b;
    Index v;
  };

  Id push(Node n) {
    nodes_.push_back(n);
    return static_cast<Id>(nodes_.size() - 1);
  }

  template <class OnLeaf>
  void walk(Id root, OnLeaf on_leaf, std::vector<std::vector<Index>>* districts) const {
    std::vector<Id> stack;
    if (root != kNone) stack.push_back(root);
    while (!stack.empty()) {
      const Id id = stack.back();
      stack.pop_back();
      const Node& n = nodes_[static_cast<std::size_t>(id)];
      switch (n.kind) {
        case Kind::leaf:
          if constexpr (!std::is_same_v<OnLeaf, std::nullptr_t>) on_leaf(n.v);
          break;
        case Kind::join:
          stack.push_back(n.b);
          stack.push_back(n.a);
          break;
        case Kind::district:
          if (districts) {
            districts->push_back(vertices(n.a));
          } else if constexpr (!std::is_same_v<OnLeaf, std::nullptr_t>) {
            stack.push_back(n.a);
          }
          break;
      }
    }
  }

  std::vector<Node> nodes_;
};

}  // namespace bd

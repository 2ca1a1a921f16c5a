#pragma once

#include "glc/signal_space.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace glc {

// Integer coordinates of the hyper-cubic cell of side 1/eta containing a state.
using PartitionKey = std::vector<std::int64_t>;

struct PartitionKeyHash {
  std::size_t operator()(const PartitionKey& key) const noexcept {
    // FNV-1a over the coordinates, then a splitmix finaliser.
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t c : key) {
      h ^= static_cast<std::uint64_t>(c);
      h *= 1099511628211ull;
    }
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
  }
};

template <typename Scalar>
PartitionKey key_of(const VectorX<Scalar>& x, Scalar eta) {
  if (!(eta > Scalar(0))) throw DomainError("key_of: eta must be positive");
  if (!x.allFinite()) throw DomainError("key_of: state is not finite");
  using std::floor;
  PartitionKey key(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) key[i] = static_cast<std::int64_t>(floor(eta * x[i]));
  return key;
}

// Cells are cubes of side 1/eta, so every cell fits in a ball of this radius.
template <typename Scalar>
Scalar partition_radius(int n, Scalar eta) {
  using std::sqrt;
  return sqrt(Scalar(n)) / eta;
}

// Maps angle coordinates into [-pi, pi) before keying, when a problem requests it.
State wrap_for_key(const State& x, const std::vector<int>& wrap_axes);

struct LabelView {
  PartitionKey key;
  double terminal_time;
  double cost;
};

// z dominates w: same cell, no later, no costlier.
inline bool glc_less(const LabelView& z, const LabelView& w) {
  return z.key == w.key && z.terminal_time <= w.terminal_time && z.cost <= w.cost;
}

// The label set: at most one representative node per occupied cell.
class LabelMap {
 public:
  const NodeId* find(const PartitionKey& key) const {
    auto it = map_.find(key);
    return it == map_.end() ? nullptr : &it->second;
  }
  void assign(const PartitionKey& key, NodeId id) { map_.insert_or_assign(key, id); }
  std::size_t size() const { return map_.size(); }
  void reserve(std::size_t n) { map_.reserve(n); }

  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

 private:
  std::unordered_map<PartitionKey, NodeId, PartitionKeyHash> map_;
};

}  // namespace glc

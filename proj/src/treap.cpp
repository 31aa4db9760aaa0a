#include "vidstop/treap.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "vidstop/core.hpp"

namespace vidstop {

std::uint64_t MultisetIndex::next_priority() {
  std::uint64_t z = (rng_state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void MultisetIndex::pull(std::int32_t t) {
  Node& node = nodes_[t];
  node.count = node.multiplicity;
  node.sum = node.value * static_cast<double>(node.multiplicity);
  if (node.left >= 0) {
    node.count += nodes_[node.left].count;
    node.sum += nodes_[node.left].sum;
  }
  if (node.right >= 0) {
    node.count += nodes_[node.right].count;
    node.sum += nodes_[node.right].sum;
  }
}

std::int32_t MultisetIndex::rotate_right(std::int32_t t) {
  const std::int32_t l = nodes_[t].left;
  nodes_[t].left = nodes_[l].right;
  nodes_[l].right = t;
  pull(t);
  pull(l);
  return l;
}

std::int32_t MultisetIndex::rotate_left(std::int32_t t) {
  const std::int32_t r = nodes_[t].right;
  nodes_[t].right = nodes_[r].left;
  nodes_[r].left = t;
  pull(t);
  pull(r);
  return r;
}

std::int32_t MultisetIndex::insert_at(std::int32_t t, double value, std::size_t multiplicity) {
  if (t < 0) {
    nodes_.push_back(Node{value, multiplicity, next_priority(), -1, -1, 0, 0.0});
    const auto idx = static_cast<std::int32_t>(nodes_.size() - 1);
    pull(idx);
    return idx;
  }
  // nodes_ may reallocate inside the recursive call; re-index afterwards.
  if (value == nodes_[t].value) {
    nodes_[t].multiplicity += multiplicity;
  } else if (value < nodes_[t].value) {
    const std::int32_t child = insert_at(nodes_[t].left, value, multiplicity);
    nodes_[t].left = child;
    if (nodes_[child].priority > nodes_[t].priority) return rotate_right(t);
  } else {
    const std::int32_t child = insert_at(nodes_[t].right, value, multiplicity);
    nodes_[t].right = child;
    if (nodes_[child].priority > nodes_[t].priority) return rotate_left(t);
  }
  pull(t);
  return t;
}

void MultisetIndex::insert(double value, std::size_t multiplicity) {
  if (multiplicity == 0) throw ValidationError("treap insert: multiplicity must be positive");
  if (std::isnan(value)) throw ValidationError("treap insert: NaN value");
  root_ = insert_at(root_, value, multiplicity);
}

BelowQuery MultisetIndex::below(double bound) const {
  BelowQuery out;
  std::int32_t t = root_;
  while (t >= 0) {
    const Node& node = nodes_[t];
    if (node.value < bound) {
      if (node.left >= 0) {
        out.count += nodes_[node.left].count;
        out.sum += nodes_[node.left].sum;
      }
      out.count += node.multiplicity;
      out.sum += node.value * static_cast<double>(node.multiplicity);
      t = node.right;
    } else {
      t = node.left;
    }
  }
  return out;
}

BelowQuery MultisetIndex::totals() const {
  if (root_ < 0) return {};
  return {nodes_[root_].count, nodes_[root_].sum};
}

std::size_t MultisetIndex::depth() const {
  std::function<std::size_t(std::int32_t)> walk = [&](std::int32_t t) -> std::size_t {
    if (t < 0) return 0;
    return 1 + std::max(walk(nodes_[t].left), walk(nodes_[t].right));
  };
  return walk(root_);
}

bool MultisetIndex::check_invariants() const {
  struct Agg {
    bool ok;
    std::size_t count;
    double sum;
  };
  std::size_t visited = 0;
  std::function<Agg(std::int32_t, const double*, const double*)> walk =
      [&](std::int32_t t, const double* lo, const double* hi) -> Agg {
    if (t < 0) return {true, 0, 0.0};
    ++visited;
    const Node& node = nodes_[t];
    bool ok = node.multiplicity >= 1;
    if (lo && !(node.value > *lo)) ok = false;
    if (hi && !(node.value < *hi)) ok = false;
    for (std::int32_t c : {node.left, node.right}) {
      if (c >= 0 && nodes_[c].priority > node.priority) ok = false;
    }
    const Agg l = walk(node.left, lo, &node.value);
    const Agg r = walk(node.right, &node.value, hi);
    const std::size_t count = l.count + r.count + node.multiplicity;
    const double sum = l.sum + r.sum + node.value * static_cast<double>(node.multiplicity);
    ok = ok && l.ok && r.ok && count == node.count &&
         std::abs(sum - node.sum) <= 1e-12 * std::max(1.0, std::abs(sum));
    return {ok, count, sum};
  };
  const Agg all = walk(root_, nullptr, nullptr);
  return all.ok && visited == nodes_.size();
}

}  // namespace vidstop

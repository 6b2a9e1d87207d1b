#pragma once

#include <cassert>
#include <cstddef>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

namespace tns {

/// Binary min-heap over small integer ids with a position map, so that an id
/// whose key changed can be re-sifted in O(log n). The heap owns one key per
/// id; ids are expected to be dense (e.g. slot indices).
template <class Key, class Less = std::less<Key>>
class IndexedMinHeap {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  IndexedMinHeap() = default;
  explicit IndexedMinHeap(Less less) : less_(std::move(less)) {}

  bool empty() const noexcept { return heap_.empty(); }
  std::size_t size() const noexcept { return heap_.size(); }
  std::size_t top() const {
    assert(!heap_.empty());
    return heap_.front().id;
  }
  bool contains(std::size_t id) const noexcept { return id < pos_.size() && pos_[id] != npos; }
  const Key& key(std::size_t id) const {
    assert(contains(id));
    return heap_[pos_[id]].key;
  }

  void reserve(std::size_t n) {
    heap_.reserve(n);
    pos_.reserve(n);
  }

  void push(std::size_t id, Key key) {
    if (id >= pos_.size()) pos_.resize(id + 1, npos);
    assert(pos_[id] == npos);
    pos_[id] = heap_.size();
    heap_.push_back({std::move(key), id});
    sift_up(heap_.size() - 1);
  }

  void erase(std::size_t id) {
    assert(contains(id));
    const std::size_t at = pos_[id];
    const std::size_t last = heap_.size() - 1;
    if (at != last) {
      heap_[at] = std::move(heap_[last]);
      pos_[heap_[at].id] = at;
    }
    heap_.pop_back();
    pos_[id] = npos;
    if (at < heap_.size()) fix(at);
  }

  /// Replaces the key of `id` and restores heap order in either direction.
  void update(std::size_t id, Key key) {
    assert(contains(id));
    const std::size_t at = pos_[id];
    heap_[at].key = std::move(key);
    fix(at);
  }

  /// Renames a stored id (used when the caller compacts its slot storage).
  void relabel(std::size_t from, std::size_t to) {
    assert(contains(from) && !contains(to));
    if (to >= pos_.size()) pos_.resize(to + 1, npos);
    const std::size_t at = pos_[from];
    heap_[at].id = to;
    pos_[to] = at;
    pos_[from] = npos;
  }

  /// Full structural check, O(n). Intended for tests.
  bool valid() const {
    for (std::size_t k = 0; k < heap_.size(); ++k) {
      if (heap_[k].id >= pos_.size() || pos_[heap_[k].id] != k) return false;
      if (k > 0 && less_(heap_[k].key, heap_[(k - 1) / 2].key)) return false;
    }
    std::size_t mapped = 0;
    for (std::size_t p : pos_) mapped += (p != npos);
    return mapped == heap_.size();
  }

 private:
  // keys live inline so sifting compares adjacent memory
  struct Node {
    Key key;
    std::size_t id;
  };

  bool less(std::size_t a, std::size_t b) const { return less_(heap_[a].key, heap_[b].key); }

  void fix(std::size_t at) {
    if (at > 0 && less(at, (at - 1) / 2)) {
      sift_up(at);
    } else {
      sift_down(at);
    }
  }

  void sift_up(std::size_t at) {
    Node moving = std::move(heap_[at]);
    while (at > 0) {
      const std::size_t parent = (at - 1) / 2;
      if (!less_(moving.key, heap_[parent].key)) break;
      place(at, std::move(heap_[parent]));
      at = parent;
    }
    place(at, std::move(moving));
  }

  void sift_down(std::size_t at) {
    const std::size_t n = heap_.size();
    Node moving = std::move(heap_[at]);
    for (;;) {
      const std::size_t l = 2 * at + 1;
      if (l >= n) break;
      std::size_t best = l;
      if (l + 1 < n && less(l + 1, l)) best = l + 1;
      if (!less_(heap_[best].key, moving.key)) break;
      place(at, std::move(heap_[best]));
      at = best;
    }
    place(at, std::move(moving));
  }

  void place(std::size_t at, Node&& node) {
    heap_[at] = std::move(node);
    pos_[heap_[at].id] = at;
  }

  Less less_;
  std::vector<Node> heap_;
  std::vector<std::size_t> pos_;
};

}  // namespace tns

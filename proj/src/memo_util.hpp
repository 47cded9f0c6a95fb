#pragma once

#include <atomic>
#include <cstddef>

namespace yf::detail {

// Shared knobs for the per-thread memo caches (path counts, f values).
inline std::atomic<std::size_t> memo_cap_value{0};     // 0 = unbounded
inline std::atomic<unsigned> memo_generation{0};       // bumped by clear_memos

// Lazily drops a thread's cache when a global clear happened, and empties it
// when it grows past the cap.  Call before lookups and after inserts.
template <class Map>
void sync_cache(Map& map, unsigned& local_generation) {
  unsigned gen = memo_generation.load(std::memory_order_relaxed);
  if (local_generation != gen) {
    local_generation = gen;
    map.clear();
    return;
  }
  std::size_t cap = memo_cap_value.load(std::memory_order_relaxed);
  if (cap != 0 && map.size() > cap) map.clear();
}

}  // namespace yf::detail

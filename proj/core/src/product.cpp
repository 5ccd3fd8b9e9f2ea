#include "macoord/product.hpp"

#include <cstdint>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace macoord {

namespace {

inline std::uint64_t key_of(int ts_state, int nba_state) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ts_state))
          << 32) |
         static_cast<std::uint32_t>(nba_state);
}

}  // namespace

Product build_product(const TransitionSystem& ts, const Nba& nba) {
  Product p;
  std::unordered_map<std::uint64_t, int> index;

  auto intern = [&](int s, int q) {
    auto [it, fresh] = index.try_emplace(key_of(s, q),
                                         static_cast<int>(p.states.size()));
    if (fresh) {
      p.states.push_back(ProductState{s, q});
      p.accepting.push_back(nba.accepting[q]);
    }
    return it->second;
  };

  std::deque<int> queue;
  for (int q0 : nba.initial) {
    int id = intern(ts.initial, q0);
    p.initial.push_back(id);
    queue.push_back(id);
  }

  // Discovery order doubles as the state numbering, so the result is a pure
  // function of its inputs.
  std::unordered_set<int> queued(p.initial.begin(), p.initial.end());
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    if (id >= static_cast<int>(p.edges.size())) p.edges.resize(id + 1);
    ProductState st = p.states[id];
    std::unordered_set<std::uint64_t> emitted;
    for (const TsEdge& te : ts.edges[st.ts_state]) {
      SymbolSet label = ts.labels[te.target];
      for (const NbaEdge& ne : nba.edges[st.nba_state]) {
        if (!ne.guard.matches(label)) continue;
        if (!emitted.insert(key_of(te.target, ne.target)).second) continue;
        int tid = intern(te.target, ne.target);
        p.edges[id].push_back(ProductEdge{tid, te.cost});
        if (queued.insert(tid).second) queue.push_back(tid);
      }
    }
  }
  p.edges.resize(p.states.size());
  return p;
}

}  // namespace macoord

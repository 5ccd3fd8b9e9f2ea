#include "macoord/lasso.hpp"

#include <cstdint>
#include <unordered_map>

#include "macoord/errors.hpp"

namespace macoord {

namespace {

class LassoEval {
 public:
  LassoEval(const Formula& f, const Lasso& w)
      : w_(w),
        m_(w.prefix.size()),
        total_(w.prefix.size() + w.cycle.size()) {
    nodes_ = collect_subformulas(f);
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      index_[nodes_[i]] = static_cast<int>(i);
    memo_.assign(nodes_.size() * total_, -1);
  }

  bool eval(const Formula& f, std::size_t q) {
    const LtlNode& n = f.node();
    std::size_t slot = index_.at(f.ptr()) * total_ + q;
    int8_t cached = memo_[slot];
    if (cached >= 0) return cached != 0;
    bool value = false;
    switch (n.op) {
      case LtlOp::True:
        value = true;
        break;
      case LtlOp::Prop:
        value = (symbol_at(q) & symbol_bit(n.prop)) != 0;
        break;
      case LtlOp::Not:
        value = !eval(n.lhs, q);
        break;
      case LtlOp::And:
        value = eval(n.lhs, q) && eval(n.rhs, q);
        break;
      case LtlOp::Or:
        value = eval(n.lhs, q) || eval(n.rhs, q);
        break;
      case LtlOp::Next:
        value = eval(n.lhs, succ(q));
        break;
      case LtlOp::Until: {
        // Scan total_+1 folded positions: every position reachable from q is
        // seen at least once, so the bounded scan is exact on the lasso.
        value = false;
        std::size_t pos = q;
        for (std::size_t step = 0; step <= total_; ++step) {
          if (eval(n.rhs, pos)) {
            value = true;
            break;
          }
          if (!eval(n.lhs, pos)) break;
          pos = succ(pos);
        }
        break;
      }
      case LtlOp::Eventually: {
        value = false;
        std::size_t pos = q;
        for (std::size_t step = 0; step <= total_; ++step) {
          if (eval(n.lhs, pos)) {
            value = true;
            break;
          }
          pos = succ(pos);
        }
        break;
      }
      case LtlOp::Always: {
        value = true;
        std::size_t pos = q;
        for (std::size_t step = 0; step <= total_; ++step) {
          if (!eval(n.lhs, pos)) {
            value = false;
            break;
          }
          pos = succ(pos);
        }
        break;
      }
    }
    memo_[slot] = value ? 1 : 0;
    return value;
  }

 private:
  SymbolSet symbol_at(std::size_t q) const {
    return q < m_ ? w_.prefix[q] : w_.cycle[q - m_];
  }
  std::size_t succ(std::size_t q) const { return q + 1 < total_ ? q + 1 : m_; }

  const Lasso& w_;
  std::size_t m_;
  std::size_t total_;
  std::vector<const LtlNode*> nodes_;
  std::unordered_map<const LtlNode*, int> index_;
  std::vector<int8_t> memo_;
};

}  // namespace

bool word_satisfies(const Formula& f, const Lasso& w) {
  if (w.cycle.empty()) throw ValidationError("lasso cycle must be non-empty");
  return LassoEval(f, w).eval(f, 0);
}

bool nba_accepts_lasso(const Nba& a, const Lasso& w) {
  if (w.cycle.empty()) throw ValidationError("lasso cycle must be non-empty");
  const int n = a.num_states;

  std::vector<char> current(n, 0);
  for (int q : a.initial) current[q] = 1;

  auto step_set = [&](const std::vector<char>& from, SymbolSet sym) {
    std::vector<char> to(n, 0);
    for (int q = 0; q < n; ++q) {
      if (!from[q]) continue;
      for (const NbaEdge& e : a.edges[q])
        if (e.guard.matches(sym)) to[e.target] = 1;
    }
    return to;
  };

  for (SymbolSet sym : w.prefix) current = step_set(current, sym);

  // One-period relations: reach[q][q'] = a run over the cycle block exists;
  // acc[q][q'] = such a run visiting an accepting state at one of the
  // period's own time points (start inclusive, end exclusive, so every time
  // index is attributed to exactly one period).
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  std::vector<std::vector<char>> acc(n, std::vector<char>(n, 0));
  for (int q = 0; q < n; ++q) {
    // pair state: bit0 = plain reach, bit1 = reach with accepting visit
    std::vector<char> cur(2 * n, 0);
    cur[q] = 1;
    for (SymbolSet sym : w.cycle) {
      std::vector<char> nxt(2 * n, 0);
      for (int s = 0; s < n; ++s) {
        bool plain = cur[s];
        bool flagged = cur[n + s];
        if (!plain && !flagged) continue;
        bool hit = a.accepting[s];
        for (const NbaEdge& e : a.edges[s]) {
          if (!e.guard.matches(sym)) continue;
          if (flagged || (plain && hit)) nxt[n + e.target] = 1;
          if (plain && !hit) nxt[e.target] = 1;
        }
      }
      cur.swap(nxt);
    }
    for (int s = 0; s < n; ++s) {
      if (cur[s]) reach[q][s] = 1;
      if (cur[n + s]) {
        reach[q][s] = 1;
        acc[q][s] = 1;
      }
    }
  }

  // Closure of reach (period-to-period).
  std::vector<std::vector<char>> closure = reach;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (!closure[i][k]) continue;
      for (int j = 0; j < n; ++j)
        if (closure[k][j]) closure[i][j] = 1;
    }

  std::vector<char> from_start(n, 0);
  for (int q = 0; q < n; ++q) {
    if (!current[q]) continue;
    from_start[q] = 1;
    for (int j = 0; j < n; ++j)
      if (closure[q][j]) from_start[j] = 1;
  }

  // Accept iff some flagged edge x->y lies on a cycle reachable from the
  // post-prefix state set: x reachable from start, and y reaches x back.
  for (int x = 0; x < n; ++x) {
    if (!from_start[x]) continue;
    for (int y = 0; y < n; ++y) {
      if (!acc[x][y]) continue;
      if (y == x || closure[y][x]) return true;
    }
  }
  return false;
}

}  // namespace macoord

#include "macoord/ltl_translate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "macoord/errors.hpp"

namespace macoord {

namespace {

enum class Nk { True, False, Lit, And, Or, Next, Until, Release };

struct NnfNode {
  Nk k;
  int prop = -1;        // Lit
  bool positive = true; // Lit
  int a = -1;           // first child
  int b = -1;           // second child
};

// Hash-consed arena: node identity is the index, so formula sets are sorted
// int vectors and the Until list falls out of a linear scan.
class Arena {
 public:
  int mk(NnfNode n) {
    // light constant folding keeps trivial formulas trivial
    switch (n.k) {
      case Nk::And:
        if (n.a == ff_ || n.b == ff_) return ff();
        if (n.a == tt_) return n.b;
        if (n.b == tt_) return n.a;
        if (n.a == n.b) return n.a;
        break;
      case Nk::Or:
        if (n.a == tt_ || n.b == tt_) return tt();
        if (n.a == ff_) return n.b;
        if (n.b == ff_) return n.a;
        if (n.a == n.b) return n.a;
        break;
      case Nk::Next:
        if (n.a == tt_) return tt();
        if (n.a == ff_) return ff();
        break;
      case Nk::Until:
        if (n.b == tt_) return tt();
        if (n.b == ff_) return ff();
        if (n.a == ff_) return n.b;
        break;
      case Nk::Release:
        if (n.b == tt_) return tt();
        if (n.b == ff_) return ff();
        if (n.a == tt_) return n.b;
        break;
      default:
        break;
    }
    auto key = std::make_tuple(static_cast<int>(n.k), n.prop,
                               n.positive ? 1 : 0, n.a, n.b);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(n);
    index_.emplace(key, id);
    return id;
  }

  int tt() {
    if (tt_ < 0) {
      tt_ = static_cast<int>(nodes_.size());
      nodes_.push_back({Nk::True});
      index_.emplace(std::make_tuple(0, -1, 1, -1, -1), tt_);
    }
    return tt_;
  }
  int ff() {
    if (ff_ < 0) {
      ff_ = static_cast<int>(nodes_.size());
      nodes_.push_back({Nk::False});
      index_.emplace(std::make_tuple(1, -1, 1, -1, -1), ff_);
    }
    return ff_;
  }

  const NnfNode& at(int id) const { return nodes_[id]; }
  int size() const { return static_cast<int>(nodes_.size()); }

 private:
  std::vector<NnfNode> nodes_;
  std::map<std::tuple<int, int, int, int, int>, int> index_;
  int tt_ = -1;
  int ff_ = -1;
};

int to_nnf(Arena& ar, const Formula& f, bool positive) {
  const LtlNode& n = f.node();
  switch (n.op) {
    case LtlOp::True:
      return positive ? ar.tt() : ar.ff();
    case LtlOp::Prop:
      return ar.mk({Nk::Lit, n.prop, positive, -1, -1});
    case LtlOp::Not:
      return to_nnf(ar, n.lhs, !positive);
    case LtlOp::And: {
      int a = to_nnf(ar, n.lhs, positive);
      int b = to_nnf(ar, n.rhs, positive);
      return ar.mk({positive ? Nk::And : Nk::Or, -1, true, a, b});
    }
    case LtlOp::Or: {
      int a = to_nnf(ar, n.lhs, positive);
      int b = to_nnf(ar, n.rhs, positive);
      return ar.mk({positive ? Nk::Or : Nk::And, -1, true, a, b});
    }
    case LtlOp::Next:
      return ar.mk({Nk::Next, -1, true, to_nnf(ar, n.lhs, positive), -1});
    case LtlOp::Until: {
      int a = to_nnf(ar, n.lhs, positive);
      int b = to_nnf(ar, n.rhs, positive);
      return ar.mk({positive ? Nk::Until : Nk::Release, -1, true, a, b});
    }
    case LtlOp::Eventually: {
      int b = to_nnf(ar, n.lhs, positive);
      if (positive) return ar.mk({Nk::Until, -1, true, ar.tt(), b});
      return ar.mk({Nk::Release, -1, true, ar.ff(), b});
    }
    case LtlOp::Always: {
      int b = to_nnf(ar, n.lhs, positive);
      if (positive) return ar.mk({Nk::Release, -1, true, ar.ff(), b});
      return ar.mk({Nk::Until, -1, true, ar.tt(), b});
    }
  }
  return ar.ff();
}

using FormulaSet = std::set<int>;

struct TableauNode {
  std::set<int> incoming;  // node ids; 0 denotes the virtual initial state
  std::vector<int> old_set;
  std::vector<int> next_set;
};

class Tableau {
 public:
  Tableau(Arena& ar, int root, int max_nodes)
      : ar_(ar), max_nodes_(max_nodes) {
    Build b;
    b.incoming.insert(0);
    b.neu.insert(root);
    expand(std::move(b));
  }

  const std::vector<TableauNode>& nodes() const { return nodes_; }

 private:
  struct Build {
    std::set<int> incoming;
    FormulaSet neu, old, nxt;
  };

  void expand(Build b) {
    if (b.neu.empty()) {
      finalize(std::move(b));
      return;
    }
    int eta = *b.neu.begin();
    b.neu.erase(b.neu.begin());
    const NnfNode& n = ar_.at(eta);
    switch (n.k) {
      case Nk::True:
        // imposes nothing; keeping it out of old lets trivial nodes merge
        expand(std::move(b));
        return;
      case Nk::False:
        return;  // contradiction, drop this cover branch
      case Nk::Lit: {
        int negation = ar_.mk({Nk::Lit, n.prop, !n.positive, -1, -1});
        if (b.old.count(negation)) return;
        b.old.insert(eta);
        expand(std::move(b));
        return;
      }
      case Nk::And: {
        b.old.insert(eta);
        if (!b.old.count(n.a)) b.neu.insert(n.a);
        if (!b.old.count(n.b)) b.neu.insert(n.b);
        expand(std::move(b));
        return;
      }
      case Nk::Or: {
        b.old.insert(eta);
        Build left = b;
        if (!left.old.count(n.a)) left.neu.insert(n.a);
        expand(std::move(left));
        Build right = std::move(b);
        if (!right.old.count(n.b)) right.neu.insert(n.b);
        expand(std::move(right));
        return;
      }
      case Nk::Next: {
        b.old.insert(eta);
        b.nxt.insert(n.a);
        expand(std::move(b));
        return;
      }
      case Nk::Until: {
        b.old.insert(eta);
        Build wait = b;
        if (!wait.old.count(n.a)) wait.neu.insert(n.a);
        wait.nxt.insert(eta);
        expand(std::move(wait));
        Build done = std::move(b);
        if (!done.old.count(n.b)) done.neu.insert(n.b);
        expand(std::move(done));
        return;
      }
      case Nk::Release: {
        b.old.insert(eta);
        Build hold = b;
        if (!hold.old.count(n.b)) hold.neu.insert(n.b);
        hold.nxt.insert(eta);
        expand(std::move(hold));
        Build close = std::move(b);
        if (!close.old.count(n.a)) close.neu.insert(n.a);
        if (!close.old.count(n.b)) close.neu.insert(n.b);
        expand(std::move(close));
        return;
      }
    }
  }

  void finalize(Build b) {
    std::vector<int> old_v(b.old.begin(), b.old.end());
    std::vector<int> nxt_v(b.nxt.begin(), b.nxt.end());
    auto key = std::make_pair(old_v, nxt_v);
    auto it = merged_.find(key);
    if (it != merged_.end()) {
      TableauNode& existing = nodes_[it->second];
      existing.incoming.insert(b.incoming.begin(), b.incoming.end());
      return;
    }
    if (static_cast<int>(nodes_.size()) >= max_nodes_)
      throw ResourceLimitError("tableau exceeded max_states");
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back({std::move(b.incoming), old_v, nxt_v});
    merged_.emplace(std::move(key), id);

    Build succ;
    succ.incoming.insert(id + 1);  // state id: node index + 1, 0 is initial
    succ.neu.insert(nxt_v.begin(), nxt_v.end());
    expand(std::move(succ));
  }

  Arena& ar_;
  int max_nodes_;
  std::vector<TableauNode> nodes_;
  std::map<std::pair<std::vector<int>, std::vector<int>>, int> merged_;
};

NbaGuard guard_of(const Arena& ar, const TableauNode& node) {
  NbaGuard g;
  for (int id : node.old_set) {
    const NnfNode& n = ar.at(id);
    if (n.k == Nk::Lit) g.literals.push_back({n.prop, n.positive});
  }
  return g;
}

Nba prune_unreachable(const Nba& in) {
  std::vector<int> map(in.num_states, -1);
  std::vector<int> order;
  for (int q : in.initial) {
    if (map[q] >= 0) continue;
    map[q] = static_cast<int>(order.size());
    order.push_back(q);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const NbaEdge& e : in.edges[order[i]]) {
      if (map[e.target] >= 0) continue;
      map[e.target] = static_cast<int>(order.size());
      order.push_back(e.target);
    }
  }
  Nba out;
  out.num_props = in.num_props;
  out.num_states = static_cast<int>(order.size());
  out.edges.resize(order.size());
  out.accepting.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.accepting[i] = in.accepting[order[i]];
    for (const NbaEdge& e : in.edges[order[i]])
      out.edges[i].push_back({e.guard, map[e.target]});
  }
  for (int q : in.initial)
    out.initial.push_back(map[q]);
  std::sort(out.initial.begin(), out.initial.end());
  out.initial.erase(std::unique(out.initial.begin(), out.initial.end()),
                    out.initial.end());
  return out;
}

int max_prop_index(const Formula& f) {
  int mx = -1;
  for (const LtlNode* n : collect_subformulas(f))
    if (n->op == LtlOp::Prop) mx = std::max(mx, n->prop);
  return mx;
}

}  // namespace

Nba translate_to_nba(const Formula& f, const TranslateOptions& options) {
  Arena ar;
  int root = to_nnf(ar, f, true);
  int num_props = max_prop_index(f) + 1;

  if (root == ar.tt() || ar.at(root).k == Nk::True) {
    Nba a;
    a.num_props = num_props;
    a.num_states = 1;
    a.edges.resize(1);
    a.edges[0].push_back({NbaGuard{}, 0});
    a.initial = {0};
    a.accepting = {true};
    return a;
  }
  if (ar.at(root).k == Nk::False) {
    Nba a;
    a.num_props = num_props;
    a.num_states = 1;
    a.edges.resize(1);
    a.initial = {0};
    a.accepting = {false};
    return a;
  }

  Tableau tab(ar, root, options.max_states);
  const auto& nodes = tab.nodes();
  const int gen_states = static_cast<int>(nodes.size()) + 1;

  // Until obligations of the root closure, in arena order.
  std::vector<int> untils;
  {
    std::vector<char> seen(ar.size(), 0);
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int id = stack.back();
      stack.pop_back();
      if (seen[id]) continue;
      seen[id] = 1;
      const NnfNode& n = ar.at(id);
      if (n.k == Nk::Until) untils.push_back(id);
      if (n.a >= 0) stack.push_back(n.a);
      if (n.b >= 0) stack.push_back(n.b);
    }
    std::sort(untils.begin(), untils.end());
  }
  const int k = static_cast<int>(untils.size());

  // Generalized automaton: state 0 = initial, state i+1 = tableau node i.
  // Edge guards live on the target node's literal set.
  std::vector<std::vector<NbaEdge>> gen_edges(gen_states);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    NbaGuard g = guard_of(ar, nodes[i]);
    int target = static_cast<int>(i) + 1;
    for (int src : nodes[i].incoming)
      gen_edges[src].push_back({g, target});
  }

  // acc_sets[u][state]: state satisfies the u-th obligation (the until is
  // absent or already fulfilled there). The virtual initial state carries no
  // obligations and passes all sets.
  auto in_set = [&](int u, int state) {
    if (state == 0) return true;
    const TableauNode& node = nodes[state - 1];
    int until_id = untils[u];
    if (!std::binary_search(node.old_set.begin(), node.old_set.end(),
                            until_id))
      return true;
    int b = ar.at(until_id).b;
    return std::binary_search(node.old_set.begin(), node.old_set.end(), b);
  };

  Nba plain;
  plain.num_props = num_props;
  if (k == 0) {
    plain.num_states = gen_states;
    plain.edges = gen_edges;
    plain.accepting.assign(gen_states, true);
    plain.initial = {0};
  } else {
    // Counter construction: (state, level) with level in [0, k). The counter
    // advances when the source state satisfies the level's obligation;
    // accepting states sit at the wrap from level k-1.
    auto pid = [&](int s, int level) { return s * k + level; };
    const long long total = static_cast<long long>(gen_states) * k;
    if (total > options.max_states)
      throw ResourceLimitError("degeneralized automaton exceeded max_states");
    plain.num_states = static_cast<int>(total);
    plain.edges.resize(plain.num_states);
    plain.accepting.assign(plain.num_states, false);
    for (int s = 0; s < gen_states; ++s) {
      for (int level = 0; level < k; ++level) {
        int next_level = in_set(level, s) ? (level + 1) % k : level;
        for (const NbaEdge& e : gen_edges[s])
          plain.edges[pid(s, level)].push_back({e.guard, pid(e.target, next_level)});
        if (level == k - 1 && in_set(level, s))
          plain.accepting[pid(s, level)] = true;
      }
    }
    plain.initial = {pid(0, 0)};
  }

  Nba out = prune_unreachable(plain);
  if (out.num_states > options.max_states)
    throw ResourceLimitError("automaton exceeded max_states");
  return out;
}

}  // namespace macoord

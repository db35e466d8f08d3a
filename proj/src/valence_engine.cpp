#include "braidcomp/valence_engine.hpp"

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <tuple>
#include <stdexcept>

namespace braidcomp {

const char* to_string(Emptiness e) {
  switch (e) {
    case Emptiness::nonempty: return "nonempty";
    case Emptiness::empty: return "empty";
    case Emptiness::bound_exhausted: return "bound_exhausted";
  }
  return "?";
}

namespace {

constexpr int kMaxDimension = 4;

// Binarized rule lhs -> a b; a = b = -1 for an empty rhs, b = -1 for a unit.
struct Rule {
  int lhs = 0;
  int a = -1;
  int b = -1;
  int production = 0;
  int weight = 0;  // 1 on the rule carrying the production, 0 on helpers
};

// Grammar x automaton in a single symbol space: [0,N) nonterminals,
// [N,N+T) terminals, then atoms of associative tables and one helper per
// distinct proper suffix of a long production.
struct Problem {
  const ValenceGrammar* g = nullptr;
  int N = 0, T = 0, S = 0, dim = 0;
  std::vector<Rule> rules;
  std::vector<std::int64_t> rule_val;
  std::vector<std::vector<int>> unit_by_child, bin_by_left, bin_by_right, by_lhs;
  std::vector<int> eps_rules;
  std::vector<char> used_left, used_right;
  int Q = 1, initial = 0;
  std::vector<int> finals{0};
  struct Edge {
    int from, sym, to, id;
  };
  std::vector<Edge> edges;
  bool explicit_automaton = false;
  std::vector<char> helper;  // suffix symbol of a long production
  // Static anchoring: a fact (p, X, q) can only matter if p is an allowed
  // start and q an allowed end of X. Empty vectors mean no restriction.
  std::vector<std::vector<char>> starts, ends;
  std::vector<char> reachable;

  bool is_terminal(int s) const { return s >= N && s < N + T; }
  bool anchored(int p, int s, int q) const {
    if (is_terminal(s)) return true;
    if (!reachable[s]) return false;
    return (starts[s].empty() || starts[s][p]) && (ends[s].empty() || ends[s][q]);
  }
};

// Propagates start/end anchors from the axiom through the rules.
void anchor(Problem& pr) {
  pr.starts.assign(pr.S, {});
  pr.ends.assign(pr.S, {});
  pr.reachable.assign(pr.S, 0);
  std::vector<char> start_all(pr.S, 0), end_all(pr.S, 0);
  std::vector<int> work;
  auto join = [&](int s, const std::vector<char>* src, bool all, bool is_start) {
    std::vector<char>& dst = is_start ? pr.starts[s] : pr.ends[s];
    char& dall = is_start ? start_all[s] : end_all[s];
    bool changed = !pr.reachable[s];
    pr.reachable[s] = 1;
    if (!dall) {
      if (all) {
        dall = 1;
        changed = true;
      } else {
        if (dst.empty()) dst.assign(pr.Q, 0);
        for (int q = 0; q < pr.Q; ++q) {
          if ((*src)[q] && !dst[q]) {
            dst[q] = 1;
            changed = true;
          }
        }
      }
    }
    if (changed) work.push_back(s);
  };
  std::vector<char> init(pr.Q, 0), fin(pr.Q, 0);
  init[pr.initial] = 1;
  for (int f : pr.finals) fin[f] = 1;
  const int axiom = pr.g->axiom();
  join(axiom, &init, false, true);
  join(axiom, &fin, false, false);
  while (!work.empty()) {
    int x = work.back();
    work.pop_back();
    for (int ri : pr.by_lhs[x]) {
      const Rule& r = pr.rules[ri];
      if (r.a < 0 || pr.is_terminal(r.a)) {
        if (r.b >= 0 && !pr.is_terminal(r.b)) {
          join(r.b, nullptr, true, true);
          join(r.b, &pr.ends[x], end_all[x], false);
        }
        continue;
      }
      join(r.a, &pr.starts[x], start_all[x], true);
      if (r.b < 0) {
        join(r.a, &pr.ends[x], end_all[x], false);
      } else {
        join(r.a, nullptr, true, false);
        if (!pr.is_terminal(r.b)) {
          join(r.b, nullptr, true, true);
          join(r.b, &pr.ends[x], end_all[x], false);
        }
      }
    }
  }
  for (int s = 0; s < pr.S; ++s) {
    if (start_all[s]) pr.starts[s].clear();
    if (end_all[s]) pr.ends[s].clear();
  }
}

// Zero-valence productions X -> Y Z over a set M of nonterminals whose
// (Y, Z) -> X table is total and associative. Any derivation through such
// rules can be re-bracketed as a right comb over its maximal non-table
// subtrees with the same size and valence, so the engine only combines an
// atomic left child with an arbitrary right child.
std::vector<char> associative_tables(const ValenceGrammar& g, std::vector<char>& in_table) {
  const int N = static_cast<int>(g.nonterminals().size());
  const auto& prods = g.productions();
  std::vector<int> parent(N);
  for (int i = 0; i < N; ++i) parent[i] = i;
  auto root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> cand;
  for (int pi = 0; pi < static_cast<int>(prods.size()); ++pi) {
    const Production& p = prods[pi];
    if (p.rhs.size() != 2 || p.rhs[0].terminal || p.rhs[1].terminal) continue;
    if (std::any_of(p.valence.begin(), p.valence.end(), [](std::int64_t v) { return v != 0; })) continue;
    cand.push_back(pi);
    parent[root(p.rhs[0].id)] = root(p.lhs);
    parent[root(p.rhs[1].id)] = root(p.lhs);
  }
  std::vector<char> atomized(N, 0);
  in_table.assign(prods.size(), 0);
  std::vector<char> tried(N, 0);
  for (int pi : cand) {
    int r = root(prods[pi].lhs);
    if (tried[r]) continue;
    tried[r] = 1;
    std::vector<int> members;
    for (int x = 0; x < N; ++x) {
      if (root(x) == r) members.push_back(x);
    }
    const int M = static_cast<int>(members.size());
    auto slot = [&](int x) { return static_cast<int>(std::find(members.begin(), members.end(), x) - members.begin()); };
    std::vector<int> table(M * M, -1);
    std::vector<int> mine;
    bool ok = true;
    for (int pj : cand) {
      const Production& p = prods[pj];
      if (root(p.lhs) != r) continue;
      int& cell = table[slot(p.rhs[0].id) * M + slot(p.rhs[1].id)];
      if (cell >= 0) ok = false;
      cell = slot(p.lhs);
      mine.push_back(pj);
    }
    for (int c : table) ok = ok && c >= 0;
    for (int x = 0; ok && x < M; ++x)
      for (int y = 0; ok && y < M; ++y)
        for (int z = 0; ok && z < M; ++z) ok = table[table[x * M + y] * M + z] == table[x * M + table[y * M + z]];
    if (!ok) continue;
    for (int x : members) atomized[x] = 1;
    for (int pj : mine) in_table[pj] = 1;
  }
  return atomized;
}

Problem make_problem(const ValenceGrammar& g, const WordAutomaton* a, bool combs = true) {
  if (g.dimension() > kMaxDimension) {
    throw std::invalid_argument("valence dimension above " + std::to_string(kMaxDimension) + " unsupported");
  }
  Problem pr;
  pr.g = &g;
  pr.N = static_cast<int>(g.nonterminals().size());
  pr.T = static_cast<int>(g.terminals().size());
  pr.dim = g.dimension();
  int next = pr.N + pr.T;
  std::vector<char> in_table;
  std::vector<char> atomized = associative_tables(g, in_table);
  if (!combs) {
    std::fill(atomized.begin(), atomized.end(), 0);
    std::fill(in_table.begin(), in_table.end(), 0);
  }
  std::vector<int> atom(pr.N, -1);
  for (int x = 0; x < pr.N; ++x) {
    if (atomized[x]) atom[x] = next++;
  }
  auto sym = [&](const Symbol& s) { return s.terminal ? pr.N + s.id : s.id; };
  auto push = [&](Rule r, const Valence* v) {
    pr.rules.push_back(r);
    for (int d = 0; d < pr.dim; ++d) pr.rule_val.push_back(v ? (*v)[d] : 0);
  };
  // Helper for syms[i..], shared by every production ending the same way.
  std::map<std::vector<int>, int> suffixes;
  std::function<int(const std::vector<int>&, std::size_t)> suffix_symbol = [&](const std::vector<int>& syms,
                                                                               std::size_t i) {
    if (i + 1 == syms.size()) return syms[i];
    std::vector<int> key(syms.begin() + static_cast<std::ptrdiff_t>(i), syms.end());
    auto [it, fresh] = suffixes.try_emplace(std::move(key), next);
    if (!fresh) return it->second;
    const int h = next++;
    const int tail = suffix_symbol(syms, i + 1);
    push(Rule{h, syms[i], tail, -1, 0}, nullptr);
    return h;
  };
  const auto& prods = g.productions();
  for (int pi = 0; pi < static_cast<int>(prods.size()); ++pi) {
    const Production& p = prods[pi];
    const int m = static_cast<int>(p.rhs.size());
    if (in_table[pi]) {
      push(Rule{p.lhs, atom[p.rhs[0].id], p.rhs[1].id, pi, 1}, &p.valence);
      continue;
    }
    const int lhs = atomized[p.lhs] ? atom[p.lhs] : p.lhs;
    if (m <= 2) {
      push(Rule{lhs, m >= 1 ? sym(p.rhs[0]) : -1, m == 2 ? sym(p.rhs[1]) : -1, pi, 1}, &p.valence);
      continue;
    }
    std::vector<int> rest;
    for (int i = 1; i < m; ++i) rest.push_back(sym(p.rhs[i]));
    const int tail = suffix_symbol(rest, 0);
    push(Rule{lhs, sym(p.rhs[0]), tail, pi, 1}, &p.valence);
  }
  for (int x = 0; x < pr.N; ++x) {
    if (atomized[x]) push(Rule{x, atom[x], -1, -1, 0}, nullptr);
  }
  pr.helper.assign(next, 0);
  for (int s = pr.N + pr.T; s < next; ++s) pr.helper[s] = 1;
  for (int x = 0; x < pr.N; ++x) {
    if (atom[x] >= 0) pr.helper[atom[x]] = 0;
  }
  pr.S = next;
  pr.unit_by_child.assign(pr.S, {});
  pr.bin_by_left.assign(pr.S, {});
  pr.bin_by_right.assign(pr.S, {});
  pr.by_lhs.assign(pr.S, {});
  pr.used_left.assign(pr.S, 0);
  pr.used_right.assign(pr.S, 0);
  for (int ri = 0; ri < static_cast<int>(pr.rules.size()); ++ri) {
    const Rule& r = pr.rules[ri];
    pr.by_lhs[r.lhs].push_back(ri);
    if (r.a < 0) {
      pr.eps_rules.push_back(ri);
    } else if (r.b < 0) {
      pr.unit_by_child[r.a].push_back(ri);
    } else {
      pr.bin_by_left[r.a].push_back(ri);
      pr.bin_by_right[r.b].push_back(ri);
      pr.used_left[r.a] = 1;
      pr.used_right[r.b] = 1;
    }
  }
  if (a) {
    pr.explicit_automaton = true;
    pr.Q = a->num_states();
    pr.initial = a->initial();
    pr.finals = a->finals();
    for (int i = 0; i < static_cast<int>(a->edges().size()); ++i) {
      const AutomatonEdge& e = a->edges()[i];
      int t = g.find_terminal(e.label);
      if (t < 0) throw std::invalid_argument("automaton label '" + e.label + "' is not a grammar terminal");
      pr.edges.push_back({e.from, pr.N + t, e.to, i});
    }
  } else {
    for (int t = 0; t < pr.T; ++t) pr.edges.push_back({0, pr.N + t, 0, t});
  }
  if (pr.Q >= (1 << 21) || pr.S >= (1 << 21)) throw std::invalid_argument("instance too large for the engine");
  anchor(pr);
  return pr;
}

std::uint64_t triple_key(int p, int s, int q) {
  return (static_cast<std::uint64_t>(p) << 42) | (static_cast<std::uint64_t>(s) << 21) |
         static_cast<std::uint64_t>(q);
}

std::uint64_t pair_key(int p, int s) { return (static_cast<std::uint64_t>(p) << 32) | static_cast<std::uint32_t>(s); }

struct FactKey {
  int p, s, q;
  std::uint64_t v;
  bool operator==(const FactKey&) const = default;
  template <typename H>
  friend H AbslHashValue(H h, const FactKey& k) {
    return H::combine(std::move(h), k.p, k.s, k.q, k.v);
  }
};

struct Fact {
  int p, s, q;
  int rule;  // -1 for an automaton edge, whose index is kept in `left`
  int left, right;
  std::int64_t size;
  std::uint64_t v;
  bool done;
};

// Lightest-derivation saturation: facts are finalized in order of derivation
// size, so the first goal popped has a smallest derivation.
class Saturation {
 public:
  enum class Outcome { goal, closed, budget };

  // box < 0 projects valences away.
  Saturation(const Problem& pr, std::int64_t box, std::int64_t max_facts,
             const absl::flat_hash_set<std::uint64_t>* useful, bool stop_at_goal)
      : pr_(pr), box_(box), max_facts_(max_facts), useful_(useful), stop_at_goal_(stop_at_goal) {
    if (box_ >= 0 && pr_.dim > 0) {
      radix_ = static_cast<std::uint64_t>(2 * box_ + 1);
      std::uint64_t z = 0, mul = 1;
      for (int d = 0; d < pr_.dim; ++d) {
        z += static_cast<std::uint64_t>(box_) * mul;
        mul *= radix_;
      }
      zero_ = z;
    }
  }

  Outcome run() {
    for (const auto& e : pr_.edges) add(e.from, e.sym, e.to, zero_, 0, -1, e.id, -1);
    for (int ri : pr_.eps_rules) {
      std::uint64_t v = 0;
      if (!combine(ri, nullptr, nullptr, v)) continue;
      for (int p = 0; p < pr_.Q; ++p) add(p, pr_.rules[ri].lhs, p, v, pr_.rules[ri].weight, ri, -1, -1);
    }
    for (int id; pop(id);) {
      if (budget_hit_) return Outcome::budget;
      Fact& f = facts_[id];
      f.done = true;
      if (f.s == pr_.g->axiom() && f.p == pr_.initial && f.v == zero_ &&
          std::binary_search(pr_.finals.begin(), pr_.finals.end(), f.q)) {
        goal_ = id;
        if (stop_at_goal_) return Outcome::goal;
      }
      expand(id);
    }
    if (budget_hit_) return Outcome::budget;
    return goal_ >= 0 ? Outcome::goal : Outcome::closed;
  }

  bool box_hit() const { return box_hit_; }
  int goal() const { return goal_; }
  const std::vector<Fact>& facts() const { return facts_; }
  std::int64_t fact_count() const { return static_cast<std::int64_t>(facts_.size()); }
  int find(int p, int s, int q, std::uint64_t v) const {
    auto it = index_.find(FactKey{p, s, q, v});
    return it == index_.end() ? -1 : it->second;
  }

 private:
  // Sum of child valences and the rule valence; false when it leaves the box.
  bool combine(int ri, const Fact* x, const Fact* y, std::uint64_t& out) {
    if (box_ < 0 || pr_.dim == 0) {
      out = 0;
      return true;
    }
    std::uint64_t packed = 0, mul = 1;
    std::uint64_t xv = x ? x->v : zero_, yv = y ? y->v : zero_;
    for (int d = 0; d < pr_.dim; ++d) {
      std::int64_t a = static_cast<std::int64_t>(xv % radix_) - box_;
      std::int64_t b = static_cast<std::int64_t>(yv % radix_) - box_;
      xv /= radix_;
      yv /= radix_;
      std::int64_t s = a + b + pr_.rule_val[static_cast<std::size_t>(ri) * pr_.dim + d];
      if (s > box_ || s < -box_) {
        box_hit_ = true;
        return false;
      }
      packed += static_cast<std::uint64_t>(s + box_) * mul;
      mul *= radix_;
    }
    out = packed;
    return true;
  }

  // Next fact to finalize; the projection needs no size order.
  bool pop(int& id) {
    if (box_ < 0) {
      if (stack_.empty()) return false;
      id = stack_.back();
      stack_.pop_back();
      return true;
    }
    while (!pq_.empty()) {
      auto [size, top] = pq_.top();
      pq_.pop();
      if (facts_[top].done || facts_[top].size != size) continue;
      id = top;
      return true;
    }
    return false;
  }

  void add(int p, int s, int q, std::uint64_t v, std::int64_t size, int rule, int left, int right) {
    if (!pr_.anchored(p, s, q)) return;
    if (useful_ && !pr_.is_terminal(s) && !useful_->contains(triple_key(p, s, q))) return;
    auto [it, fresh] = index_.try_emplace(FactKey{p, s, q, v}, static_cast<int>(facts_.size()));
    if (fresh) {
      if (static_cast<std::int64_t>(facts_.size()) >= max_facts_) {
        budget_hit_ = true;
        index_.erase(it);
        return;
      }
      facts_.push_back(Fact{p, s, q, rule, left, right, size, v, false});
      if (box_ < 0) {
        stack_.push_back(it->second);
      } else {
        pq_.push({size, it->second});
      }
      return;
    }
    if (box_ < 0) return;
    Fact& f = facts_[it->second];
    if (!f.done && size < f.size) {
      f.size = size;
      f.rule = rule;
      f.left = left;
      f.right = right;
      pq_.push({size, it->second});
    }
  }

  void expand(int id) {
    const Fact f = facts_[id];
    if (pr_.used_right[f.s]) by_start_[pair_key(f.p, f.s)].push_back(id);
    if (pr_.used_left[f.s]) by_end_[pair_key(f.q, f.s)].push_back(id);
    std::uint64_t v = 0;
    for (int ri : pr_.unit_by_child[f.s]) {
      const Rule& r = pr_.rules[ri];
      if (combine(ri, &f, nullptr, v)) add(f.p, r.lhs, f.q, v, f.size + r.weight, ri, id, -1);
    }
    for (int ri : pr_.bin_by_left[f.s]) {
      const Rule& r = pr_.rules[ri];
      auto it = by_start_.find(pair_key(f.q, r.b));
      if (it == by_start_.end()) continue;
      const std::vector<int>& partners = it->second;
      for (std::size_t i = 0; i < partners.size(); ++i) {
        const Fact& g = facts_[partners[i]];
        if (combine(ri, &f, &g, v)) {
          std::int64_t size = f.size + g.size + r.weight;
          add(f.p, r.lhs, g.q, v, size, ri, id, partners[i]);
        }
      }
    }
    for (int ri : pr_.bin_by_right[f.s]) {
      const Rule& r = pr_.rules[ri];
      auto it = by_end_.find(pair_key(f.p, r.a));
      if (it == by_end_.end()) continue;
      const std::vector<int>& partners = it->second;
      for (std::size_t i = 0; i < partners.size(); ++i) {
        const Fact& g = facts_[partners[i]];
        if (combine(ri, &g, &f, v)) {
          std::int64_t size = f.size + g.size + r.weight;
          add(g.p, r.lhs, f.q, v, size, ri, partners[i], id);
        }
      }
    }
  }

  const Problem& pr_;
  std::int64_t box_;
  std::int64_t max_facts_;
  const absl::flat_hash_set<std::uint64_t>* useful_;
  bool stop_at_goal_;
  std::uint64_t radix_ = 1, zero_ = 0;
  bool box_hit_ = false, budget_hit_ = false;
  int goal_ = -1;
  std::vector<Fact> facts_;
  absl::flat_hash_map<FactKey, int> index_;
  absl::flat_hash_map<std::uint64_t, std::vector<int>> by_start_, by_end_;
  using Entry = std::pair<std::int64_t, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> pq_;
  std::vector<int> stack_;
};

// Triples that are productive and occur in some derivation of a goal.
absl::flat_hash_set<std::uint64_t> useful_triples(const Problem& pr, const Saturation& sat) {
  const auto& facts = sat.facts();
  absl::flat_hash_map<std::uint64_t, std::vector<int>> starts;
  for (int i = 0; i < static_cast<int>(facts.size()); ++i) starts[pair_key(facts[i].p, facts[i].s)].push_back(i);
  absl::flat_hash_set<std::uint64_t> useful;
  std::vector<int> work;
  auto mark = [&](int id) {
    const Fact& f = facts[id];
    if (useful.insert(triple_key(f.p, f.s, f.q)).second && !pr.is_terminal(f.s)) work.push_back(id);
  };
  for (int fq : pr.finals) {
    int id = sat.find(pr.initial, pr.g->axiom(), fq, 0);
    if (id >= 0) mark(id);
  }
  while (!work.empty()) {
    const Fact f = facts[work.back()];
    work.pop_back();
    for (int ri : pr.by_lhs[f.s]) {
      const Rule& r = pr.rules[ri];
      if (r.a < 0) continue;
      if (r.b < 0) {
        int c = sat.find(f.p, r.a, f.q, 0);
        if (c >= 0) mark(c);
        continue;
      }
      auto it = starts.find(pair_key(f.p, r.a));
      if (it == starts.end()) continue;
      for (int l : it->second) {
        int rt = sat.find(facts[l].q, r.b, f.q, 0);
        if (rt >= 0) {
          mark(l);
          mark(rt);
        }
      }
    }
  }
  return useful;
}

// Useful triples of the projection with the rule instances that derive them.
struct Hypergraph {
  struct Hyper {
    int parent, x, y, rule;
  };
  std::vector<int> ids;  // projected fact of each node
  std::vector<char> terminal;
  std::vector<Hyper> hypers;
  std::vector<int> goals;  // axiom nodes from the initial to a final state
};

Hypergraph build_hypergraph(const Problem& pr, const Saturation& projected,
                            const absl::flat_hash_set<std::uint64_t>& useful) {
  const auto& facts = projected.facts();
  Hypergraph h;
  absl::flat_hash_map<std::uint64_t, int> slot;
  absl::flat_hash_map<std::uint64_t, std::vector<int>> starts;
  for (int i = 0; i < static_cast<int>(facts.size()); ++i) {
    const Fact& f = facts[i];
    std::uint64_t key = triple_key(f.p, f.s, f.q);
    if (!pr.is_terminal(f.s) && !useful.contains(key)) continue;
    slot[key] = static_cast<int>(h.ids.size());
    starts[pair_key(f.p, f.s)].push_back(static_cast<int>(h.ids.size()));
    h.ids.push_back(i);
    h.terminal.push_back(pr.is_terminal(f.s));
  }
  for (int t = 0; t < static_cast<int>(h.ids.size()); ++t) {
    const Fact& f = facts[h.ids[t]];
    if (pr.is_terminal(f.s)) continue;
    for (int ri : pr.by_lhs[f.s]) {
      const Rule& r = pr.rules[ri];
      if (r.a < 0) {
        if (f.p == f.q) h.hypers.push_back({t, -1, -1, ri});
      } else if (r.b < 0) {
        auto it = slot.find(triple_key(f.p, r.a, f.q));
        if (it != slot.end()) h.hypers.push_back({t, it->second, -1, ri});
      } else {
        auto it = starts.find(pair_key(f.p, r.a));
        if (it == starts.end()) continue;
        for (int l : it->second) {
          auto jt = slot.find(triple_key(facts[h.ids[l]].q, r.b, f.q));
          if (jt != slot.end()) h.hypers.push_back({t, l, jt->second, ri});
        }
      }
    }
  }
  for (int fq : pr.finals) {
    auto it = slot.find(triple_key(pr.initial, pr.g->axiom(), fq));
    if (it != slot.end()) h.goals.push_back(it->second);
  }
  return h;
}

// Interval over-approximation of the valences of each node, with widening;
// sound for proving that no zero-valence derivation exists.
bool intervals_exclude_zero(const Problem& pr, const Hypergraph& hg) {
  constexpr std::int64_t kInf = std::int64_t{1} << 60;
  const int K = pr.dim;
  const std::size_t n = hg.ids.size();
  std::vector<std::int64_t> lo(n * K, kInf), hi(n * K, -kInf);
  std::vector<int> changes(n * K * 2, 0);
  for (std::size_t t = 0; t < n; ++t) {
    if (hg.terminal[t]) {
      for (int d = 0; d < K; ++d) lo[t * K + d] = hi[t * K + d] = 0;
    }
  }
  auto sat_add = [&](std::int64_t a, std::int64_t b) {
    if (a <= -kInf || b <= -kInf) return -kInf;
    if (a >= kInf || b >= kInf) return kInf;
    return std::clamp(a + b, -kInf, kInf);
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& h : hg.hypers) {
      bool ready = (h.x < 0 || lo[h.x * K] <= hi[h.x * K]) && (h.y < 0 || lo[h.y * K] <= hi[h.y * K]);
      if (!ready && K > 0) continue;
      for (int d = 0; d < K; ++d) {
        std::int64_t rv = pr.rule_val[static_cast<std::size_t>(h.rule) * K + d];
        std::int64_t l = rv, u = rv;
        if (h.x >= 0) {
          l = sat_add(l, lo[h.x * K + d]);
          u = sat_add(u, hi[h.x * K + d]);
        }
        if (h.y >= 0) {
          l = sat_add(l, lo[h.y * K + d]);
          u = sat_add(u, hi[h.y * K + d]);
        }
        std::size_t c = static_cast<std::size_t>(h.parent) * K + d;
        if (l < lo[c]) {
          lo[c] = ++changes[2 * c] > 4 ? -kInf : l;
          changed = true;
        }
        if (u > hi[c]) {
          hi[c] = ++changes[2 * c + 1] > 4 ? kInf : u;
          changed = true;
        }
      }
    }
  }
  for (int t : hg.goals) {
    bool zero_inside = true;
    for (int d = 0; d < K; ++d) {
      std::size_t c = static_cast<std::size_t>(t) * K + d;
      zero_inside = zero_inside && lo[c] <= 0 && hi[c] >= 0;
    }
    if (zero_inside) return false;
  }
  return true;
}

// Exact valences modulo m of each node; sound for proving emptiness when the
// axiom never reaches the zero residue.
bool residues_exclude_zero(const Problem& pr, const Hypergraph& hg, int m) {
  const int K = pr.dim;
  int R = 1;
  for (int d = 0; d < K; ++d) R *= m;
  const std::size_t n = hg.ids.size();
  std::vector<char> has(n * R, 0);
  for (std::size_t t = 0; t < n; ++t) {
    if (hg.terminal[t]) has[t * R] = 1;
  }
  auto plus = [&](int a, int b) {
    int out = 0;
    for (int d = 0, w = 1; d < K; ++d, w *= m) out += ((a / w % m + b / w % m) % m) * w;
    return out;
  };
  std::vector<int> rule_res(pr.rules.size(), 0);
  for (std::size_t r = 0; r < pr.rules.size(); ++r) {
    for (int d = 0, w = 1; d < K; ++d, w *= m) {
      std::int64_t v = pr.rule_val[r * K + d] % m;
      rule_res[r] += static_cast<int>(v < 0 ? v + m : v) * w;
    }
  }
  std::vector<int> xs, ys;
  auto members = [&](int node, std::vector<int>& out) {
    out.clear();
    if (node < 0) {
      out.push_back(0);
      return;
    }
    for (int r = 0; r < R; ++r) {
      if (has[static_cast<std::size_t>(node) * R + r]) out.push_back(r);
    }
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& h : hg.hypers) {
      members(h.x, xs);
      members(h.y, ys);
      for (int a : xs) {
        for (int b : ys) {
          char& slot = has[static_cast<std::size_t>(h.parent) * R + plus(plus(a, b), rule_res[h.rule])];
          if (!slot) {
            slot = 1;
            changed = true;
          }
        }
      }
    }
  }
  for (int t : hg.goals) {
    if (has[static_cast<std::size_t>(t) * R]) return false;
  }
  return true;
}

Certificate extract(const Problem& pr, const Saturation& sat, int goal) {
  const auto& facts = sat.facts();
  Certificate cert;
  std::vector<int> stack{goal};
  std::vector<int> children;
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    const Fact& f = facts[id];
    if (f.rule < 0) {
      cert.word.push_back(f.s - pr.N);
      if (pr.explicit_automaton) cert.path.push_back(f.left);
      continue;
    }
    const Rule& r = pr.rules[f.rule];
    if (r.production < 0) {
      stack.push_back(f.left);
      continue;
    }
    cert.steps.push_back({r.production, static_cast<int>(cert.word.size())});
    children.clear();
    if (r.a >= 0) children.push_back(f.left);
    if (r.b >= 0) {
      int cur = f.right;
      // Unfold the helper chain of a long production.
      while (pr.helper[facts[cur].s]) {
        const Fact& h = facts[cur];
        children.push_back(h.left);
        cur = h.right;
      }
      children.push_back(cur);
    }
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(*it);
  }
  return cert;
}

EmptinessResult solve(const Problem& pr, const SearchBudget& budget) {
  EmptinessResult res;
  auto found = [&](const Saturation& sat) {
    res.status = Emptiness::nonempty;
    res.certificate = extract(pr, sat, sat.goal());
  };
  if (pr.dim == 0) {
    Saturation sat(pr, -1, budget.max_facts, nullptr, true);
    auto out = sat.run();
    res.facts = sat.fact_count();
    if (out == Saturation::Outcome::goal) {
      found(sat);
    } else if (out == Saturation::Outcome::closed) {
      res.status = Emptiness::empty;
      res.detail = "no derivation of the axiom";
    } else {
      res.detail = "fact budget exhausted";
    }
    return res;
  }

  Saturation projected(pr, -1, budget.max_facts, nullptr, false);
  auto pout = projected.run();
  res.facts = projected.fact_count();
  if (pout == Saturation::Outcome::budget) {
    res.detail = "fact budget exhausted in the valence-free projection";
    return res;
  }
  if (pout == Saturation::Outcome::closed) {
    res.status = Emptiness::empty;
    res.detail = "underlying context-free language is empty";
    return res;
  }
  auto useful = useful_triples(pr, projected);

  std::int64_t max_box = budget.valence_box > 0 ? budget.valence_box : 1024;
  std::int64_t limit = pr.dim == 1 ? (std::int64_t{1} << 40) : (std::int64_t{1} << (60 / pr.dim - 1)) / 2;
  max_box = std::min(max_box, limit);
  std::int64_t box = std::min<std::int64_t>(64, max_box);
  for (;;) {
    Saturation sat(pr, box, budget.max_facts, &useful, true);
    auto out = sat.run();
    res.facts = std::max(res.facts, sat.fact_count());
    res.box = box;
    if (out == Saturation::Outcome::goal) {
      found(sat);
      return res;
    }
    if (out == Saturation::Outcome::budget) {
      res.detail = "fact budget exhausted at valence box " + std::to_string(box);
      break;
    }
    if (!sat.box_hit()) {
      res.status = Emptiness::empty;
      res.detail = "saturation closed inside valence box " + std::to_string(box);
      return res;
    }
    if (box >= max_box) {
      res.detail = "valence box " + std::to_string(box) + " exceeded";
      break;
    }
    box = std::min(box * 4, max_box);
  }
  const Hypergraph hg = build_hypergraph(pr, projected, useful);
  if (intervals_exclude_zero(pr, hg)) {
    res.status = Emptiness::empty;
    res.detail = "valence intervals exclude zero";
    return res;
  }
  for (int m = 2; m <= 12; ++m) {
    std::int64_t residues = 1;
    for (int d = 0; d < pr.dim; ++d) residues *= m;
    if (residues > 64) break;
    if (residues_exclude_zero(pr, hg, m)) {
      res.status = Emptiness::empty;
      res.detail = "valences modulo " + std::to_string(m) + " exclude zero";
      return res;
    }
  }
  return res;
}

}  // namespace

Intersection::Intersection(ValenceGrammar grammar, WordAutomaton automaton)
    : grammar_(std::move(grammar)), automaton_(std::move(automaton)) {
  for (const auto& e : automaton_.edges()) {
    if (grammar_.find_terminal(e.label) < 0) {
      throw std::invalid_argument("automaton label '" + e.label + "' is not a grammar terminal");
    }
  }
}

Intersection intersect(const ValenceGrammar& g, const WordAutomaton& a) { return Intersection(g, a); }

EmptinessResult is_empty(const ValenceGrammar& g, const SearchBudget& budget) {
  Problem pr = make_problem(g, nullptr);
  return solve(pr, budget);
}

EmptinessResult is_empty(const Intersection& x, const SearchBudget& budget) {
  Problem pr = make_problem(x.grammar(), &x.automaton());
  return solve(pr, budget);
}

ValenceGrammar Intersection::materialize() const {
  Problem pr = make_problem(grammar_, &automaton_, false);
  Saturation projected(pr, -1, std::numeric_limits<std::int64_t>::max(), nullptr, false);
  projected.run();
  auto useful = useful_triples(pr, projected);
  const ValenceGrammar& g = grammar_;
  GrammarBuilder b(g.dimension());
  int axiom = b.nonterminal("S'");
  for (const auto& t : g.terminals()) b.terminal(t);
  auto name = [&](int p, int s, int q) {
    return "[" + std::to_string(p) + "," + g.nonterminals()[s] + "," + std::to_string(q) + "]";
  };
  auto ok = [&](int p, const Symbol& s, int q) {
    return s.terminal || useful.contains(triple_key(p, s.id, q));
  };
  // States reachable from p by a useful triple of symbol s.
  absl::flat_hash_map<std::uint64_t, std::vector<int>> next;
  for (const Fact& f : projected.facts()) {
    if (pr.is_terminal(f.s) || useful.contains(triple_key(f.p, f.s, f.q))) {
      next[pair_key(f.p, f.s)].push_back(f.q);
    }
  }
  for (auto& [k, v] : next) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  Valence zero(g.dimension(), 0);
  for (int fq : automaton_.finals()) {
    if (useful.contains(triple_key(automaton_.initial(), g.axiom(), fq))) {
      b.add(axiom, {b.nt(name(automaton_.initial(), g.axiom(), fq))}, zero);
    }
  }
  std::vector<std::tuple<int, int, int>> triples;
  for (const Fact& f : projected.facts()) {
    if (f.s < pr.N && useful.contains(triple_key(f.p, f.s, f.q))) triples.emplace_back(f.p, f.s, f.q);
  }
  std::sort(triples.begin(), triples.end());
  for (auto [p, X, q] : triples) {
    int lhs = b.nonterminal(name(p, X, q));
    for (const Production& prod : g.productions()) {
      if (prod.lhs != X) continue;
      std::vector<int> states{p};
      // Depth-first over intermediate states.
      std::vector<std::size_t> choice{0};
      std::vector<std::vector<int>> options;
      const int m = static_cast<int>(prod.rhs.size());
      if (m == 0) {
        if (p == q) b.add(lhs, {}, prod.valence);
        continue;
      }
      auto opts = [&](int from, int i) {
        const Symbol& s = prod.rhs[i];
        int sid = s.terminal ? pr.N + s.id : s.id;
        auto it = next.find(pair_key(from, sid));
        std::vector<int> out;
        if (it == next.end()) return out;
        for (int t : it->second) {
          if (i == m - 1 && t != q) continue;
          if (ok(from, s, t)) out.push_back(t);
        }
        return out;
      };
      options.push_back(opts(p, 0));
      while (!options.empty()) {
        std::size_t depth = options.size() - 1;
        if (choice[depth] >= options[depth].size()) {
          options.pop_back();
          choice.pop_back();
          states.pop_back();
          if (!choice.empty()) ++choice.back();
          continue;
        }
        int t = options[depth][choice[depth]];
        if (static_cast<int>(depth) == m - 1) {
          std::vector<Symbol> rhs;
          int from = p;
          for (int i = 0; i < m; ++i) {
            int to = i == m - 1 ? t : states[i + 1];
            const Symbol& s = prod.rhs[i];
            rhs.push_back(s.terminal ? s : b.nt(name(from, s.id, to)));
            from = to;
          }
          b.add(lhs, std::move(rhs), prod.valence);
          ++choice[depth];
          continue;
        }
        states.push_back(t);
        choice.push_back(0);
        options.push_back(opts(t, static_cast<int>(depth) + 1));
      }
    }
  }
  return b.build(axiom);
}

}  // namespace braidcomp

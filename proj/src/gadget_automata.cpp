#include "braidcomp/gadget_automata.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace braidcomp {

GroupDFA::GroupDFA(int num_states, GroupAlphabet alphabet, int initial, std::vector<int> finals,
                   std::vector<DfaEdge> edges, std::vector<GadgetBlock> blocks)
    : num_states_(num_states),
      alphabet_(alphabet),
      initial_(initial),
      finals_(std::move(finals)),
      edges_(std::move(edges)),
      out_(num_states > 0 ? num_states : 0),
      blocks_(std::move(blocks)) {
  if (num_states_ < 1) throw std::invalid_argument("DFA needs at least one state");
  auto check_state = [&](int q) {
    if (q < 0 || q >= num_states_) throw std::invalid_argument("state " + std::to_string(q) + " out of range");
  };
  check_state(initial_);
  for (int f : finals_) check_state(f);
  std::sort(finals_.begin(), finals_.end());
  finals_.erase(std::unique(finals_.begin(), finals_.end()), finals_.end());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const DfaEdge& e = edges_[i];
    check_state(e.from);
    check_state(e.to);
    if (e.label != 0 && !alphabet_.contains(e.label)) {
      throw std::invalid_argument("edge label " + std::to_string(e.label) + " outside alphabet");
    }
    out_[e.from].push_back(static_cast<int>(i));
  }
  for (int q = 0; q < num_states_; ++q) {
    const auto& out = out_[q];
    for (std::size_t a = 0; a < out.size(); ++a) {
      const DfaEdge& ea = edges_[out[a]];
      if (ea.label == 0 && out.size() > 1) {
        throw std::invalid_argument("empty-label edge from state " + std::to_string(q) + " branches");
      }
      for (std::size_t b = a + 1; b < out.size(); ++b) {
        if (edges_[out[b]].label == ea.label) {
          throw std::invalid_argument("nondeterministic label at state " + std::to_string(q));
        }
      }
    }
  }
  std::vector<char> seen(num_states_, 0);
  std::vector<int> stack{initial_};
  seen[initial_] = 1;
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (int ei : out_[q]) {
      int t = edges_[ei].to;
      if (!seen[t]) {
        seen[t] = 1;
        stack.push_back(t);
      }
    }
  }
  for (int q = 0; q < num_states_; ++q) {
    if (!seen[q]) throw std::invalid_argument("state " + std::to_string(q) + " unreachable");
  }
}

bool GroupDFA::is_final(int q) const { return std::binary_search(finals_.begin(), finals_.end(), q); }

namespace {

// P_n over letters offset+1..offset+n, states base..base+n+2.
void append_pn(int n, int offset, int base, std::vector<DfaEdge>& edges) {
  auto q = [&](int a) { return base + a; };
  edges.push_back({q(0), offset + 1, q(1)});
  for (int a = 1; a <= n; ++a) {
    edges.push_back({q(a), -(offset + a), q(a + 1)});
    if (a >= 2 && a <= n - 1) edges.push_back({q(a), offset + a, q(0)});
  }
  edges.push_back({q(n + 1), offset + n, q(n + 2)});
}

}  // namespace

GroupDFA build_pn(int n) {
  if (n < 3) throw std::invalid_argument("P_n needs n >= 3");
  std::vector<DfaEdge> edges;
  append_pn(n, 0, 0, edges);
  GadgetBlock block{GadgetBlock::Kind::pn, n, 1 << n, 0, 0, n + 2};
  return GroupDFA(n + 3, GroupAlphabet(n), 0, {n + 2}, std::move(edges), {block});
}

GroupDFA build_ms(int s) {
  if (s < 1) throw std::invalid_argument("M_s needs s >= 1");
  std::vector<DfaEdge> edges;
  std::vector<GadgetBlock> blocks;
  int state = 0;
  int letters = 0;
  for (int bit = 0; (s >> bit) != 0; ++bit) {
    if (!((s >> bit) & 1)) continue;
    GadgetBlock b;
    b.weight = 1 << bit;
    b.initial_state = state;
    if (bit < 3) {
      b.kind = GadgetBlock::Kind::chain;
      b.order = b.weight;
      for (int i = 0; i < b.order; ++i) edges.push_back({state + i, 0, state + i + 1});
      state += b.order;
    } else {
      b.kind = GadgetBlock::Kind::pn;
      b.order = bit;
      b.letter_offset = letters;
      append_pn(bit, letters, state, edges);
      letters += bit;
      state += bit + 2;
    }
    b.final_state = state;
    blocks.push_back(b);
  }
  return GroupDFA(state + 1, GroupAlphabet(std::max(letters, 1)), 0, {state}, std::move(edges),
                  std::move(blocks));
}

const char* to_string(PathStatus s) {
  switch (s) {
    case PathStatus::unique: return "unique";
    case PathStatus::multiple: return "multiple";
    case PathStatus::none: return "none";
    case PathStatus::bound_exhausted: return "bound_exhausted";
  }
  return "?";
}

namespace {

// Accepted paths with an empty-reducing label decompose uniquely into units:
// an empty-label edge, or an edge y, a balanced infix that never pops y, and
// an edge y^-1. Table entry (c, p, q, L) counts paths p -> q of L transitions
// built from units none of which starts with c^-1 (c = 0: unconstrained).
class BalancedCounter {
 public:
  BalancedCounter(const GroupDFA& dfa, int cap) : dfa_(dfa), cap_(cap) {
    m_ = dfa.alphabet().size();
    C_ = 2 * m_ + 1;
    Q_ = dfa.num_states();
    std::size_t cells = static_cast<std::size_t>(C_) * Q_ * Q_ * (cap_ + 1);
    if (cells > (std::size_t{1} << 31)) throw std::invalid_argument("path cap too large for this automaton");
    table_.assign(cells, 0);
    nz_.assign(static_cast<std::size_t>(C_) * Q_ * Q_, {});
    by_label_.assign(C_, {});
    for (std::size_t i = 0; i < dfa.edges().size(); ++i) {
      const DfaEdge& e = dfa.edges()[i];
      if (e.label != 0) by_label_[cls(e.label)].push_back(static_cast<int>(i));
    }
  }

  void fill() {
    for (int L = 0; L <= cap_; ++L) {
      for (int c = 0; c < C_; ++c) {
        for (int p = 0; p < Q_; ++p) {
          for (int q = 0; q < Q_; ++q) {
            int v = compute(c, p, q, L, nullptr);
            if (v) {
              at(c, p, q, L) = static_cast<std::uint8_t>(v);
              nz_[tri(c, p, q)].push_back(L);
            }
          }
        }
      }
    }
  }

  int count(int c, int p, int q, int L) const { return L < 0 || L > cap_ ? 0 : table_[idx(c, p, q, L)]; }

  // Appends the first path (in decomposition order) of the given class.
  void witness(int c, int p, int q, int L, std::vector<int>& out) const {
    compute(c, p, q, L, &out);
  }

  // Whether any path of the class exists, ignoring the cap.
  std::vector<char> reachability() const {
    std::vector<char> e(static_cast<std::size_t>(C_) * Q_ * Q_, 0);
    for (int c = 0; c < C_; ++c)
      for (int p = 0; p < Q_; ++p) e[tri(c, p, p)] = 1;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int c = 0; c < C_; ++c) {
        for (int p = 0; p < Q_; ++p) {
          for (int q = 0; q < Q_; ++q) {
            if (e[tri(c, p, q)]) continue;
            bool hit = false;
            for (int ei : dfa_.out_edges(p)) {
              const DfaEdge& a = dfa_.edges()[ei];
              if (a.label == 0) {
                hit = e[tri(c, a.to, q)];
              } else if (!pops(c, a.label)) {
                int y = cls(a.label);
                for (int bi : by_label_[cls(-a.label)]) {
                  const DfaEdge& b = dfa_.edges()[bi];
                  if (e[tri(y, a.to, b.from)] && e[tri(c, b.to, q)]) {
                    hit = true;
                    break;
                  }
                }
              }
              if (hit) break;
            }
            if (hit) {
              e[tri(c, p, q)] = 1;
              changed = true;
            }
          }
        }
      }
    }
    return e;
  }

  std::size_t tri(int c, int p, int q) const { return (static_cast<std::size_t>(c) * Q_ + p) * Q_ + q; }

 private:
  int cls(int letter) const { return letter > 0 ? 2 * letter - 1 : -2 * letter; }
  bool pops(int c, int label) const { return c != 0 && cls(-label) == c; }
  std::size_t idx(int c, int p, int q, int L) const { return tri(c, p, q) * (cap_ + 1) + L; }
  std::uint8_t& at(int c, int p, int q, int L) { return table_[idx(c, p, q, L)]; }

  // Saturated count; with `out`, instead emits the first path and returns 1.
  int compute(int c, int p, int q, int L, std::vector<int>* out) const {
    if (L == 0) return p == q ? 1 : 0;
    int total = 0;
    for (int ei : dfa_.out_edges(p)) {
      const DfaEdge& a = dfa_.edges()[ei];
      if (a.label == 0) {
        int v = count(c, a.to, q, L - 1);
        if (v && out) {
          out->push_back(ei);
          witness(c, a.to, q, L - 1, *out);
          return 1;
        }
        total += v;
      } else if (!pops(c, a.label)) {
        int y = cls(a.label);
        for (int bi : by_label_[cls(-a.label)]) {
          const DfaEdge& b = dfa_.edges()[bi];
          for (int L1 : nz_[tri(y, a.to, b.from)]) {
            if (L1 > L - 2) break;
            int right = count(c, b.to, q, L - 2 - L1);
            if (!right) continue;
            if (out) {
              out->push_back(ei);
              witness(y, a.to, b.from, L1, *out);
              out->push_back(bi);
              witness(c, b.to, q, L - 2 - L1, *out);
              return 1;
            }
            total += count(y, a.to, b.from, L1) * right;
            if (total >= 2) return 2;
          }
        }
      }
      if (total >= 2) return 2;
    }
    return std::min(total, 2);
  }

  const GroupDFA& dfa_;
  int cap_;
  int m_ = 0, C_ = 0, Q_ = 0;
  std::vector<std::uint8_t> table_;
  std::vector<std::vector<int>> nz_;
  std::vector<std::vector<int>> by_label_;
};

}  // namespace

PathSearchResult unique_epsilon_path(const GroupDFA& dfa, int cap) {
  if (cap < 0) throw std::invalid_argument("cap must be non-negative");
  BalancedCounter counter(dfa, cap);
  counter.fill();
  PathSearchResult r;
  int best_len = -1, best_final = -1;
  for (int L = 0; L <= cap && r.count < 2; ++L) {
    for (int f : dfa.finals()) {
      int v = counter.count(0, dfa.initial(), f, L);
      if (v && best_len < 0) {
        best_len = L;
        best_final = f;
      }
      r.count = std::min(2, r.count + v);
    }
  }
  if (r.count == 0) {
    auto reach = counter.reachability();
    bool any = false;
    for (int f : dfa.finals()) any = any || reach[counter.tri(0, dfa.initial(), f)];
    r.status = any ? PathStatus::bound_exhausted : PathStatus::none;
    return r;
  }
  r.status = r.count == 1 ? PathStatus::unique : PathStatus::multiple;
  GadgetPath path;
  counter.witness(0, dfa.initial(), best_final, best_len, path.edges);
  path.transition_count = static_cast<int>(path.edges.size());
  std::vector<int> labels;
  for (int ei : path.edges) {
    int l = dfa.edges()[ei].label;
    if (l != 0) labels.push_back(l);
  }
  path.label_word = GroupWord(dfa.alphabet(), std::move(labels));
  r.path = std::move(path);
  return r;
}

std::string format_dfa(const GroupDFA& dfa) {
  std::ostringstream os;
  os << "format=1\n";
  os << "alphabet " << dfa.alphabet().size() << "\n";
  os << "states " << dfa.num_states() << "\n";
  os << "initial " << dfa.initial() << "\n";
  os << "final";
  for (int f : dfa.finals()) os << ' ' << f;
  os << "\n";
  for (const DfaEdge& e : dfa.edges()) {
    os << e.from << ' ';
    if (e.label == 0) os << 'e';
    else os << e.label;
    os << ' ' << e.to << "\n";
  }
  return os.str();
}

GroupDFA parse_dfa(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  int alphabet = -1, states = -1, initial = -1;
  std::vector<int> finals;
  std::vector<DfaEdge> edges;
  bool header = false;
  auto fail = [](const std::string& msg) { throw std::invalid_argument("dfa: " + msg); };
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (!header) {
      if (head != "format=1") fail("missing format=1 header");
      header = true;
      continue;
    }
    if (head == "alphabet") {
      if (!(ls >> alphabet)) fail("bad alphabet line");
    } else if (head == "states") {
      if (!(ls >> states)) fail("bad states line");
    } else if (head == "initial") {
      if (!(ls >> initial)) fail("bad initial line");
    } else if (head == "final") {
      int f;
      while (ls >> f) finals.push_back(f);
    } else {
      DfaEdge e;
      std::string label;
      try {
        e.from = std::stoi(head);
      } catch (const std::exception&) {
        fail("bad line '" + line + "'");
      }
      if (!(ls >> label >> e.to)) fail("bad edge line '" + line + "'");
      if (label == "e") {
        e.label = 0;
      } else {
        auto letters = parse_letters(label);
        if (letters.size() != 1) fail("bad edge label '" + label + "'");
        e.label = letters[0];
      }
      edges.push_back(e);
    }
  }
  if (!header) fail("missing format=1 header");
  if (alphabet < 1 || states < 1 || initial < 0) fail("missing alphabet, states or initial line");
  return GroupDFA(states, GroupAlphabet(alphabet), initial, std::move(finals), std::move(edges));
}

}  // namespace braidcomp

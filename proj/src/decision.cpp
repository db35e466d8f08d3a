#include "braidcomp/decision.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>

#include "braidcomp/free_words.hpp"
#include "braidcomp/gadget_automata.hpp"

namespace braidcomp {

const char* to_string(Answer a) {
  switch (a) {
    case Answer::yes: return "yes";
    case Answer::no: return "no";
    case Answer::bound_exhausted: return "bound_exhausted";
  }
  return "?";
}

const char* to_string(Freeness f) {
  switch (f) {
    case Freeness::free: return "free";
    case Freeness::not_free: return "not_free";
    case Freeness::bound_exhausted: return "bound_exhausted";
  }
  return "?";
}

void validate(const GeneratorSet& b) {
  if (b.braids.empty()) throw std::invalid_argument("generator set is empty");
  for (const auto& w : b.braids) {
    if (w.strands() != b.strands) throw std::invalid_argument("generator strand count differs from the set");
  }
}

BraidWord product(const GeneratorSet& b, const std::vector<int>& indices) {
  BraidWord out(b.strands);
  for (int i : indices) out *= b.braids.at(i);
  return out;
}

namespace {

void require_b3(const GeneratorSet& b) {
  validate(b);
  if (b.strands != 3) throw std::invalid_argument("decision procedures are implemented for B_3 only");
}

void require_b3(const BraidWord& w) {
  if (w.strands() != 3) throw std::invalid_argument("target braid must lie in B_3");
}

MembershipVerdict verdict_from(const EmptinessResult& r) {
  MembershipVerdict v;
  v.detail = r.detail;
  v.answer = r.status == Emptiness::nonempty ? Answer::yes
             : r.status == Emptiness::empty  ? Answer::no
                                             : Answer::bound_exhausted;
  return v;
}

void check_certificate(const Intersection& x, const Certificate& c) {
  std::string why;
  if (!replay(x.grammar(), x.automaton(), c, &why)) {
    throw std::logic_error("emptiness certificate failed to replay: " + why);
  }
}

}  // namespace

MembershipVerdict membership_b3(const GeneratorSet& b, const BraidWord& beta, const SearchBudget& budget) {
  require_b3(b);
  require_b3(beta);
  GeneratorAutomaton ga = build_generator_automaton(b.braids);
  Intersection x = intersect(build_target_grammar(beta), ga.automaton);
  EmptinessResult r = is_empty(x, budget);
  MembershipVerdict v = verdict_from(r);
  if (v.answer != Answer::yes) return v;
  check_certificate(x, *r.certificate);
  std::vector<int> witness = decode_generators(ga, r.certificate->path);
  if (!equal_b3(product(b, witness), beta)) throw std::logic_error("membership witness does not evaluate to the target");
  v.witness = std::move(witness);
  return v;
}

MembershipVerdict identity_b3(const GeneratorSet& b, const SearchBudget& budget) {
  MembershipVerdict v = membership_b3(b, BraidWord(3), budget);
  v.notes.push_back("products are nonempty: the empty product is not counted");
  return v;
}

MembershipVerdict group_problem_b3(const GeneratorSet& b, const SearchBudget& budget) {
  MembershipVerdict v = identity_b3(b, budget);
  v.notes.push_back(
      "group problem answered via the identity problem: a nonempty product equal to the identity exists "
      "iff some generators generate a nontrivial group");
  return v;
}

MembershipVerdict graph_membership(const LabeledDigraph& g, int u, int v, const BraidWord& beta,
                                   const SearchBudget& budget) {
  require_b3(beta);
  const int N = g.num_nodes;
  if (u < 0 || u >= N || v < 0 || v >= N) throw std::invalid_argument("unknown graph node");
  struct Meta {
    std::vector<int> before;  // empty-label graph edges crossed first
    int graph_edge = -1;
    bool closes = false;
  };
  int states = N;
  std::vector<AutomatonEdge> edges;
  std::vector<Meta> meta;
  std::vector<std::vector<std::pair<int, int>>> eps(N);
  std::vector<std::vector<int>> first(N);
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
    const auto& e = g.edges[i];
    if (e.from < 0 || e.from >= N || e.to < 0 || e.to >= N) throw std::invalid_argument("graph edge endpoint out of range");
    require_b3(e.label);
    auto word = garside_terminals(normal_form_b3(e.label));
    if (word.empty()) {
      eps[e.from].push_back({e.to, i});
      continue;
    }
    const int L = static_cast<int>(word.size());
    int base = states;
    states += L - 1;
    for (int j = 0; j < L; ++j) {
      int from = j == 0 ? e.from : base + j - 1;
      int to = j == L - 1 ? e.to : base + j;
      if (j == 0) first[e.from].push_back(static_cast<int>(edges.size()));
      edges.push_back({from, word[j], to});
      meta.push_back({{}, i, j == L - 1});
    }
  }
  // Empty-label edges are closed over: each node inherits the labeled edges
  // of everything it reaches through them.
  std::vector<int> finals;
  std::map<int, std::vector<int>> final_tail;
  for (int a = 0; a < N; ++a) {
    std::map<int, std::pair<int, int>> pred;
    std::vector<int> order{a};
    pred[a] = {-1, -1};
    for (std::size_t h = 0; h < order.size(); ++h) {
      for (auto [to, ge] : eps[order[h]]) {
        if (pred.count(to)) continue;
        pred[to] = {order[h], ge};
        order.push_back(to);
      }
    }
    for (int b : order) {
      std::vector<int> path;
      for (int x = b; x != a; x = pred[x].first) path.push_back(pred[x].second);
      std::reverse(path.begin(), path.end());
      if (b == v) {
        finals.push_back(a);
        final_tail[a] = path;
      }
      if (b == a) continue;
      for (int e : first[b]) {
        edges.push_back({a, edges[e].label, edges[e].to});
        meta.push_back({path, meta[e].graph_edge, meta[e].closes});
      }
    }
  }
  WordAutomaton automaton(states, u, finals, edges);
  Intersection x = intersect(build_target_grammar(beta), automaton);
  EmptinessResult r = is_empty(x, budget);
  MembershipVerdict out = verdict_from(r);
  out.notes.push_back("the empty path is accepted exactly when u = v (and the target is trivial)");
  if (out.answer != Answer::yes) return out;
  check_certificate(x, *r.certificate);
  std::vector<int> witness;
  int q = u;
  for (int e : r.certificate->path) {
    const Meta& m = meta[e];
    witness.insert(witness.end(), m.before.begin(), m.before.end());
    if (m.closes) witness.push_back(m.graph_edge);
    q = edges[e].to;
  }
  const auto& tail = final_tail.at(q);
  witness.insert(witness.end(), tail.begin(), tail.end());
  int at = u;
  BraidWord prod(3);
  for (int e : witness) {
    if (g.edges[e].from != at) throw std::logic_error("graph witness is not a path");
    prod *= g.edges[e].label;
    at = g.edges[e].to;
  }
  if (at != v || !equal_b3(prod, beta)) throw std::logic_error("graph witness does not evaluate to the target");
  out.witness = std::move(witness);
  return out;
}

FreenessVerdict freeness_b3(const GeneratorSet& b, const SearchBudget& budget) {
  require_b3(b);
  const int n = static_cast<int>(b.braids.size());
  FreenessVerdict out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (equal_b3(b.braids[i], b.braids[j])) {
        out.answer = Freeness::not_free;
        out.left = {i};
        out.right = {j};
        out.detail = "duplicate generators";
        return out;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (is_trivial(b.braids[i])) {
      out.answer = Freeness::not_free;
      out.left = {i};
      out.right = {i, i};
      out.detail = "trivial generator";
      return out;
    }
  }
  // A counterexample u = v can be taken with different first and different
  // last factors, each side of length >= 2 (replace u = v by uv = vu if needed):
  // A1 w1 A2 = C1 w2 C2, searched as A1 w1 A2 C2^-1 w2^-1 C1^-1 = 1.
  bool exhausted = false;
  for (int a1 = 0; a1 < n; ++a1) {
    for (int c1 = 0; c1 < n; ++c1) {
      if (c1 == a1) continue;
      for (int a2 = 0; a2 < n; ++a2) {
        for (int c2 = 0; c2 < n; ++c2) {
          if (c2 == a2) continue;
          LabeledDigraph g;
          g.num_nodes = 5;
          g.edges.push_back({0, 1, b.braids[a1]});
          for (int j = 0; j < n; ++j) g.edges.push_back({1, 1, b.braids[j]});
          g.edges.push_back({1, 2, b.braids[a2]});
          g.edges.push_back({2, 3, b.braids[c2].inverse()});
          for (int j = 0; j < n; ++j) g.edges.push_back({3, 3, b.braids[j].inverse()});
          g.edges.push_back({3, 4, b.braids[c1].inverse()});
          MembershipVerdict v = graph_membership(g, 0, 4, BraidWord(3), budget);
          if (v.answer == Answer::bound_exhausted) exhausted = true;
          if (v.answer != Answer::yes) continue;
          std::vector<int> left{a1}, loops3;
          for (int e : *v.witness) {
            if (e >= 1 && e <= n) left.push_back(e - 1);
            if (e >= n + 3 && e <= 2 * n + 2) loops3.push_back(e - n - 3);
          }
          left.push_back(a2);
          std::vector<int> right{c1};
          right.insert(right.end(), loops3.rbegin(), loops3.rend());
          right.push_back(c2);
          if (left == right || !equal_b3(product(b, left), product(b, right))) {
            throw std::logic_error("freeness witness failed verification");
          }
          out.answer = Freeness::not_free;
          out.left = std::move(left);
          out.right = std::move(right);
          out.detail = "equal products of distinct sequences";
          return out;
        }
      }
    }
  }
  out.answer = exhausted ? Freeness::bound_exhausted : Freeness::free;
  out.detail = exhausted ? "some pair search exhausted its budget" : "no pair admits equal products";
  return out;
}

namespace {

BraidWord fa(int letter, const GroupAlphabet& alphabet) {
  return f_encode(alpha_encode(GroupWord(alphabet, {letter})));
}

}  // namespace

SSPReduction ssp_reduce(const SSPInstance& inst) {
  if (inst.values.empty()) throw std::invalid_argument("SSP instance needs at least one value");
  for (int s : inst.values) {
    if (s < 1) throw std::invalid_argument("SSP values must be positive");
  }
  if (inst.target < 1) throw std::invalid_argument("SSP target must be positive");
  using Kind = SSPReduction::Origin::Kind;
  const int k = static_cast<int>(inst.values.size());
  int next = k + 3;  // chain nodes use symbols 1..k+2
  std::vector<SSPReduction::Origin> origins;
  auto add_gadget = [&](int s, int node, Kind kind) {
    GroupDFA m = build_ms(2 * s);
    std::vector<int> state_sym(m.num_states(), 0);
    state_sym[m.initial()] = node;
    state_sym[m.finals().front()] = node + 1;
    for (int q = 0; q < m.num_states(); ++q) {
      if (!state_sym[q]) state_sym[q] = next++;
    }
    std::vector<int> letter_sym(m.alphabet().size() + 1, 0);
    for (const DfaEdge& e : m.edges()) {
      int label = 0;
      if (e.label != 0) {
        int& slot = letter_sym[std::abs(e.label)];
        if (!slot) slot = next++;
        label = e.label > 0 ? slot : -slot;
      }
      origins.push_back({kind, node, state_sym[e.from], label, state_sym[e.to]});
    }
  };
  for (int i = 1; i <= k; ++i) {
    add_gadget(inst.values[i - 1], i, Kind::gadget);
    origins.push_back({Kind::skip, i, i, 0, i + 1});
  }
  add_gadget(inst.target, k + 1, Kind::target_gadget);

  SSPReduction red;
  red.alphabet_size = next - 1;
  red.origins = origins;
  red.generators.strands = 3;
  const GroupAlphabet alphabet(red.alphabet_size);
  const BraidWord delta2 = fundamental(3).power(2);
  for (const auto& o : origins) {
    BraidWord w = fa(o.from, alphabet);
    if (o.kind != Kind::skip) {
      w *= o.kind == Kind::gadget ? delta2 : delta2.inverse();
      if (o.label != 0) w *= fa(o.label, alphabet);
    }
    w *= fa(-o.to, alphabet);
    red.generators.braids.push_back(std::move(w));
  }
  red.target = fa(1, alphabet) * fa(-(k + 2), alphabet);
  return red;
}

bool ssp_brute(const SSPInstance& inst) {
  const int k = static_cast<int>(inst.values.size());
  if (k > 24) throw std::invalid_argument("ssp_brute handles at most 24 values");
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    long long sum = 0;
    for (int i = 0; i < k; ++i) {
      if (mask >> i & 1) sum += inst.values[i];
    }
    if (sum == inst.target) return true;
  }
  return false;
}

BruteResult semigroup_brute(const GeneratorSet& b, const BraidWord& beta, int max_factors) {
  validate(b);
  if (beta.strands() != b.strands) throw std::invalid_argument("target strand count differs from the generators");
  auto nf = [&](const BraidWord& w) { return b.strands == 3 ? normal_form_b3(w) : normal_form_bn(w); };
  const GarsideForm goal = nf(beta);
  std::set<std::string> seen;
  struct Node {
    BraidWord word;
    std::vector<int> factors;
  };
  std::vector<Node> frontier{{BraidWord(b.strands), {}}};
  for (int level = 1; level <= max_factors; ++level) {
    std::vector<Node> next;
    for (const Node& node : frontier) {
      for (int i = 0; i < static_cast<int>(b.braids.size()); ++i) {
        GarsideForm f = nf(node.word * b.braids[i]);
        std::vector<int> factors = node.factors;
        factors.push_back(i);
        if (f == goal) return {true, factors};
        if (!seen.insert(format_garside(f)).second) continue;
        next.push_back({to_word(f), std::move(factors)});
      }
    }
    frontier = std::move(next);
  }
  return {};
}

}  // namespace braidcomp

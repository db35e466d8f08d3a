#include "braidcomp/valence_engine.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace braidcomp {

std::vector<std::string> garside_terminals(const GarsideForm& form) {
  if (form.strands != 3) throw std::invalid_argument("braid terminals exist for B_3 only");
  std::vector<std::string> out;
  for (std::int64_t i = 0; i < (form.infimum < 0 ? -form.infimum : form.infimum); ++i) {
    out.push_back(form.infimum > 0 ? kDelta : kDeltaInv);
  }
  for (int g : form.remainder) out.push_back(g == 1 ? kSigma1 : kSigma2);
  return out;
}

BraidWord terminals_to_braid(const std::vector<std::string>& word) {
  std::vector<int> letters;
  for (const auto& t : word) {
    if (t == kSigma1) {
      letters.push_back(1);
    } else if (t == kSigma2) {
      letters.push_back(2);
    } else if (t == kDelta) {
      letters.insert(letters.end(), {1, 2, 1});
    } else if (t == kDeltaInv) {
      letters.insert(letters.end(), {-1, -2, -1});
    } else {
      throw std::invalid_argument("unknown braid terminal '" + t + "'");
    }
  }
  return BraidWord(3, std::move(letters));
}

std::vector<std::string> target_grammar_errata() {
  return {
      "r(sigma) read as the tau swap: r(s1) = s2, r(s2) = s1",
      "Delta^2 in the reduction read as (s1 s2 s1)^2; the printed (s1 s2 s3)^2 names a generator absent from B_3",
      "Sbar_j -> A_even r(s_{i_{j+1}}) Sbar_{j+1}: the printed Sbar_j on the right would never advance the chain",
  };
}

ValenceGrammar build_target_grammar(const BraidWord& beta) {
  if (beta.strands() != 3) throw std::invalid_argument("target grammar requires a B_3 braid");
  GarsideForm nf = normal_form_b3(beta);
  // Delta^k p = tau^k(p) Delta^k; the productions read the right-hand form.
  const std::int64_t k = nf.infimum;
  std::vector<std::string> letters;
  for (int g : nf.remainder) {
    int h = (k % 2 != 0) ? 3 - g : g;
    letters.push_back(h == 1 ? kSigma1 : kSigma2);
  }
  auto r = [](const std::string& s) { return std::string(s == kSigma1 ? kSigma2 : kSigma1); };
  const int n = static_cast<int>(letters.size());

  GrammarBuilder b(1);
  const int S = b.nonterminal("S");
  auto nt = [&](const std::string& name) { return b.nt(name); };
  auto t = [&](const std::string& name) { return b.t(name); };
  for (const char* name : {kSigma1, kSigma2, kDelta, kDeltaInv}) b.terminal(name);
  auto chain = [](int j) { return "S" + std::to_string(j); };
  auto bar = [](int j) { return "S" + std::to_string(j) + "bar"; };
  const Valence start{-k}, zero{0}, plus{1}, minus{-1};

  if (n == 0) {
    b.add(S, {nt("A_any")}, start);
  } else if (n == 1) {
    b.add(S, {nt("A_even"), t(letters[0]), nt("A_any")}, start);
    b.add(S, {nt("A_odd"), t(r(letters[0])), nt("A_any")}, start);
  } else {
    b.add(S, {nt("A_even"), t(letters[0]), nt(chain(1))}, start);
    b.add(S, {nt("A_odd"), t(r(letters[0])), nt(bar(1))}, start);
    for (int j = 1; j <= n - 2; ++j) {
      const std::string& x = letters[j];
      b.add(b.nonterminal(chain(j)), {nt("A_even"), t(x), nt(chain(j + 1))}, zero);
      b.add(b.nonterminal(chain(j)), {nt("A_odd"), t(r(x)), nt(bar(j + 1))}, zero);
      b.add(b.nonterminal(bar(j)), {nt("A_even"), t(r(x)), nt(bar(j + 1))}, zero);
      b.add(b.nonterminal(bar(j)), {nt("A_odd"), t(x), nt(chain(j + 1))}, zero);
    }
    const std::string& x = letters[n - 1];
    b.add(b.nonterminal(chain(n - 1)), {nt("A_even"), t(x), nt("A_any")}, zero);
    b.add(b.nonterminal(chain(n - 1)), {nt("A_odd"), t(r(x)), nt("A_any")}, zero);
    b.add(b.nonterminal(bar(n - 1)), {nt("A_even"), t(r(x)), nt("A_any")}, zero);
    b.add(b.nonterminal(bar(n - 1)), {nt("A_odd"), t(x), nt("A_any")}, zero);
  }

  const int E = b.nonterminal("A_even");
  const int O = b.nonterminal("A_odd");
  const int A = b.nonterminal("A_any");
  const std::string s1 = kSigma1, s2 = kSigma2;
  b.add(E, {}, zero);
  b.add(E, {nt("A_even"), nt("A_even")}, zero);
  b.add(E, {nt("A_odd"), nt("A_odd")}, zero);
  b.add(E, {t(s2), nt("A_odd"), t(s2), nt("A_even"), t(s1)}, plus);
  b.add(E, {t(s1), nt("A_even"), t(s2), nt("A_odd"), t(s2)}, plus);
  b.add(E, {t(s1), nt("A_odd"), t(s1), nt("A_even"), t(s2)}, plus);
  b.add(E, {t(s2), nt("A_even"), t(s1), nt("A_odd"), t(s1)}, plus);
  b.add(O, {t(kDelta)}, plus);
  b.add(O, {t(kDeltaInv)}, minus);
  b.add(O, {nt("A_even"), nt("A_odd")}, zero);
  b.add(O, {nt("A_odd"), nt("A_even")}, zero);
  b.add(O, {t(s1), nt("A_even"), t(s2), nt("A_even"), t(s1)}, plus);
  b.add(O, {t(s1), nt("A_odd"), t(s1), nt("A_odd"), t(s1)}, plus);
  b.add(O, {t(s2), nt("A_even"), t(s1), nt("A_even"), t(s2)}, plus);
  b.add(O, {t(s2), nt("A_odd"), t(s2), nt("A_odd"), t(s2)}, plus);
  b.add(A, {nt("A_even")}, zero);
  b.add(A, {nt("A_odd")}, zero);
  return b.build(S);
}

GeneratorAutomaton build_generator_automaton(const std::vector<BraidWord>& generators) {
  if (generators.empty()) throw std::invalid_argument("generator set is empty");
  constexpr int kStart = 0, kHub = 1;
  std::map<std::vector<std::string>, int> generator_of;
  std::optional<int> trivial;
  // Trie of the generator words hanging off the hub; the last letter of a
  // word is a closing edge back to the hub.
  struct Node {
    std::map<std::string, int> next;
    std::set<std::string> closing;
  };
  std::vector<Node> trie(1);
  for (int i = 0; i < static_cast<int>(generators.size()); ++i) {
    auto word = garside_terminals(normal_form_b3(generators[i]));
    if (word.empty()) {
      if (!trivial) trivial = i;
      continue;
    }
    generator_of.try_emplace(word, i);
    int node = 0;
    for (std::size_t j = 0; j + 1 < word.size(); ++j) {
      auto it = trie[node].next.find(word[j]);
      if (it == trie[node].next.end()) {
        it = trie[node].next.emplace(word[j], static_cast<int>(trie.size())).first;
        trie.emplace_back();
      }
      node = it->second;
    }
    trie[node].closing.insert(word.back());
  }
  // Merge trie nodes with equal futures. Children always follow their parent,
  // so a reverse sweep sees every child class first.
  std::vector<int> cls(trie.size(), -1);
  std::map<std::pair<std::vector<std::pair<std::string, int>>, std::set<std::string>>, int> classes;
  int states = 2;
  for (int v = static_cast<int>(trie.size()) - 1; v > 0; --v) {
    std::vector<std::pair<std::string, int>> sig;
    for (const auto& [label, child] : trie[v].next) sig.emplace_back(label, cls[child]);
    auto [it, fresh] = classes.try_emplace({std::move(sig), trie[v].closing}, states);
    if (fresh) ++states;
    cls[v] = it->second;
  }
  cls[0] = kHub;
  std::vector<AutomatonEdge> edges;
  std::vector<char> emitted(states, 0);
  for (int v = 0; v < static_cast<int>(trie.size()); ++v) {
    if (emitted[cls[v]]) continue;
    emitted[cls[v]] = 1;
    for (int from : v == 0 ? std::vector<int>{kStart, kHub} : std::vector<int>{cls[v]}) {
      for (const auto& [label, child] : trie[v].next) edges.push_back({from, label, cls[child]});
      for (const auto& label : trie[v].closing) edges.push_back({from, label, kHub});
    }
  }
  std::vector<int> finals{kHub};
  if (trivial) finals.push_back(kStart);
  return GeneratorAutomaton{WordAutomaton(states, kStart, std::move(finals), std::move(edges)),
                            std::move(generator_of), trivial};
}

std::vector<int> decode_generators(const GeneratorAutomaton& ga, const std::vector<int>& path) {
  constexpr int kHub = 1;
  std::vector<int> out;
  std::vector<std::string> word;
  for (int e : path) {
    const AutomatonEdge& edge = ga.automaton.edges().at(static_cast<std::size_t>(e));
    word.push_back(edge.label);
    if (edge.to != kHub) continue;
    auto it = ga.generator_of.find(word);
    if (it == ga.generator_of.end()) throw std::logic_error("path segment spells no generator");
    out.push_back(it->second);
    word.clear();
  }
  if (!word.empty()) throw std::logic_error("path does not end at the hub");
  if (out.empty() && ga.trivial_generator) out.push_back(*ga.trivial_generator);
  return out;
}

}  // namespace braidcomp

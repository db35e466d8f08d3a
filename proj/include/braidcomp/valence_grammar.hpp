#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace braidcomp {

using Valence = std::vector<std::int64_t>;

struct Symbol {
  bool terminal = false;
  int id = 0;
  bool operator==(const Symbol&) const = default;
};

struct Production {
  int lhs = 0;
  std::vector<Symbol> rhs;
  Valence valence;
};

class ValenceGrammar {
 public:
  ValenceGrammar(std::vector<std::string> nonterminals, std::vector<std::string> terminals, int axiom,
                 int dimension, std::vector<Production> productions);

  const std::vector<std::string>& nonterminals() const { return nonterminals_; }
  const std::vector<std::string>& terminals() const { return terminals_; }
  int axiom() const { return axiom_; }
  int dimension() const { return dimension_; }
  const std::vector<Production>& productions() const { return productions_; }

  // -1 when absent.
  int find_nonterminal(std::string_view name) const;
  int find_terminal(std::string_view name) const;

 private:
  std::vector<std::string> nonterminals_;
  std::vector<std::string> terminals_;
  int axiom_;
  int dimension_;
  std::vector<Production> productions_;
};

// Interns symbol names while productions are added.
class GrammarBuilder {
 public:
  explicit GrammarBuilder(int dimension);
  int nonterminal(const std::string& name);
  int terminal(const std::string& name);
  Symbol nt(const std::string& name) { return {false, nonterminal(name)}; }
  Symbol t(const std::string& name) { return {true, terminal(name)}; }
  void add(int lhs, std::vector<Symbol> rhs, Valence valence);
  ValenceGrammar build(int axiom) const;

 private:
  int dimension_;
  std::vector<std::string> nonterminals_;
  std::vector<std::string> terminals_;
  std::vector<Production> productions_;
};

struct AutomatonEdge {
  int from = 0;
  std::string label;
  int to = 0;
};

// Finite automaton with one terminal per edge.
class WordAutomaton {
 public:
  WordAutomaton(int num_states, int initial, std::vector<int> finals, std::vector<AutomatonEdge> edges);

  int num_states() const { return num_states_; }
  int initial() const { return initial_; }
  const std::vector<int>& finals() const { return finals_; }
  bool is_final(int q) const;
  const std::vector<AutomatonEdge>& edges() const { return edges_; }

 private:
  int num_states_;
  int initial_;
  std::vector<int> finals_;
  std::vector<AutomatonEdge> edges_;
};

// Accepts exactly the given terminal sequence.
WordAutomaton word_automaton(const std::vector<std::string>& word);

struct DerivationStep {
  int production = 0;
  int position = 0;
};

// Leftmost derivation plus the derived terminal word; for intersections the
// automaton edges spelling the word are attached as `path`.
struct Certificate {
  std::vector<DerivationStep> steps;
  std::vector<int> word;
  std::vector<int> path;
};

// Replays steps from (axiom, 0); true iff they end in `word` with valence 0.
bool replay(const ValenceGrammar& g, const Certificate& c, std::string* why = nullptr);
// Additionally checks that `path` is an accepting run spelling the word.
bool replay(const ValenceGrammar& g, const WordAutomaton& a, const Certificate& c,
            std::string* why = nullptr);

std::vector<std::string> certificate_word(const ValenceGrammar& g, const Certificate& c);

std::string format_grammar(const ValenceGrammar& g);
ValenceGrammar parse_grammar(std::string_view text);

}  // namespace braidcomp

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "braidcomp/braid_core.hpp"
#include "braidcomp/valence_grammar.hpp"

namespace braidcomp {

struct SearchBudget {
  // Cap on derived facts per saturation pass.
  std::int64_t max_facts = 20'000'000;
  // Largest valence box |v_i| <= box tried by the exact search; 0 means 1024.
  std::int64_t valence_box = 0;
};

enum class Emptiness { nonempty, empty, bound_exhausted };
const char* to_string(Emptiness e);

struct EmptinessResult {
  Emptiness status = Emptiness::bound_exhausted;
  std::optional<Certificate> certificate;
  std::string detail;
  std::int64_t facts = 0;
  std::int64_t box = 0;
};

// Product of a grammar with an automaton, kept implicit; the emptiness engine
// saturates (state, symbol, state, valence) facts directly.
class Intersection {
 public:
  Intersection(ValenceGrammar grammar, WordAutomaton automaton);

  const ValenceGrammar& grammar() const { return grammar_; }
  const WordAutomaton& automaton() const { return automaton_; }

  // Explicit triple grammar restricted to useful (state, symbol, state)
  // triples. Nonterminals are named "[p,X,q]"; the axiom is "S'".
  ValenceGrammar materialize() const;

 private:
  ValenceGrammar grammar_;
  WordAutomaton automaton_;
};

Intersection intersect(const ValenceGrammar& g, const WordAutomaton& a);

EmptinessResult is_empty(const ValenceGrammar& g, const SearchBudget& budget = {});
// Certificates carry the base-grammar derivation plus the automaton path.
EmptinessResult is_empty(const Intersection& x, const SearchBudget& budget = {});

// Terminal names of the braid alphabet.
inline constexpr const char* kSigma1 = "s1";
inline constexpr const char* kSigma2 = "s2";
inline constexpr const char* kDelta = "D";
inline constexpr const char* kDeltaInv = "D-";

// |k| Delta letters (or inverses) followed by the remainder letters.
std::vector<std::string> garside_terminals(const GarsideForm& form);
// Inverse of the terminal naming; Delta expands to its positive word.
BraidWord terminals_to_braid(const std::vector<std::string>& word);

ValenceGrammar build_target_grammar(const BraidWord& beta);
// Corrections applied to the published production table, one line each.
std::vector<std::string> target_grammar_errata();

// Start state 0 and final hub 1; the loops through the hub spell the
// generators' normal-form words, with common prefixes and suffixes shared.
struct GeneratorAutomaton {
  WordAutomaton automaton;
  std::map<std::vector<std::string>, int> generator_of;
  // A generator with trivial normal form makes the start state final.
  std::optional<int> trivial_generator;
};

GeneratorAutomaton build_generator_automaton(const std::vector<BraidWord>& generators);
// Generator indices read off an accepted path.
std::vector<int> decode_generators(const GeneratorAutomaton& ga, const std::vector<int>& path);

}  // namespace braidcomp

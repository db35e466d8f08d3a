#pragma once

#include <optional>
#include <string>
#include <vector>

#include "braidcomp/braid_core.hpp"
#include "braidcomp/valence_engine.hpp"

namespace braidcomp {

struct GeneratorSet {
  int strands = 3;
  std::vector<BraidWord> braids;
};

// Throws unless nonempty with uniform strand count.
void validate(const GeneratorSet& b);

// Left-to-right product of the indexed generators.
BraidWord product(const GeneratorSet& b, const std::vector<int>& indices);

struct SSPInstance {
  std::vector<int> values;
  int target = 0;
};

struct LabeledDigraph {
  struct Edge {
    int from = 0;
    int to = 0;
    BraidWord label;
  };
  int num_nodes = 0;
  std::vector<Edge> edges;
};

enum class Answer { yes, no, bound_exhausted };
const char* to_string(Answer a);

struct MembershipVerdict {
  Answer answer = Answer::bound_exhausted;
  // Generator indices (graph edge indices for graph_membership).
  std::optional<std::vector<int>> witness;
  std::string detail;
  std::vector<std::string> notes;
};

MembershipVerdict membership_b3(const GeneratorSet& b, const BraidWord& beta, const SearchBudget& budget = {});
MembershipVerdict identity_b3(const GeneratorSet& b, const SearchBudget& budget = {});
// Answered through the identity problem; a note in the verdict says so.
MembershipVerdict group_problem_b3(const GeneratorSet& b, const SearchBudget& budget = {});
MembershipVerdict graph_membership(const LabeledDigraph& g, int u, int v, const BraidWord& beta,
                                   const SearchBudget& budget = {});

enum class Freeness { free, not_free, bound_exhausted };
const char* to_string(Freeness f);

struct FreenessVerdict {
  Freeness answer = Freeness::bound_exhausted;
  std::vector<int> left;
  std::vector<int> right;
  std::string detail;
};

FreenessVerdict freeness_b3(const GeneratorSet& b, const SearchBudget& budget = {});

struct SSPReduction {
  struct Origin {
    enum class Kind { gadget, skip, target_gadget };
    Kind kind = Kind::gadget;
    int chain_edge = 0;  // chain node i for the edge i -> i+1
    int from = 0;        // free-group symbols of the encoded transition
    int label = 0;       // 0 when the transition is unlabeled
    int to = 0;
  };
  GeneratorSet generators;
  BraidWord target;
  std::vector<Origin> origins;
  int alphabet_size = 0;
};

SSPReduction ssp_reduce(const SSPInstance& inst);
bool ssp_brute(const SSPInstance& inst);

struct BruteResult {
  bool found = false;
  std::vector<int> witness;
};

// Products of 1..max_factors generators, deduplicated by normal form.
BruteResult semigroup_brute(const GeneratorSet& b, const BraidWord& beta, int max_factors);

}  // namespace braidcomp

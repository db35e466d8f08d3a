#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "braidcomp/free_words.hpp"

namespace braidcomp {

struct DfaEdge {
  int from = 0;
  int label = 0;  // 0 is the empty label
  int to = 0;
  bool operator==(const DfaEdge&) const = default;
};

// Provenance of one part of an M_s chain: a P_n copy over letters
// offset+1..offset+n, or a run of `order` empty transitions.
struct GadgetBlock {
  enum class Kind { pn, chain };
  Kind kind = Kind::chain;
  int order = 0;
  int weight = 0;
  int letter_offset = 0;
  int initial_state = 0;
  int final_state = 0;
};

class GroupDFA {
 public:
  GroupDFA(int num_states, GroupAlphabet alphabet, int initial, std::vector<int> finals,
           std::vector<DfaEdge> edges, std::vector<GadgetBlock> blocks = {});

  int num_states() const { return num_states_; }
  const GroupAlphabet& alphabet() const { return alphabet_; }
  int initial() const { return initial_; }
  const std::vector<int>& finals() const { return finals_; }
  bool is_final(int q) const;
  const std::vector<DfaEdge>& edges() const { return edges_; }
  // Edge indices leaving q, in insertion order.
  const std::vector<int>& out_edges(int q) const { return out_[q]; }
  const std::vector<GadgetBlock>& blocks() const { return blocks_; }

 private:
  int num_states_;
  GroupAlphabet alphabet_;
  int initial_;
  std::vector<int> finals_;
  std::vector<DfaEdge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<GadgetBlock> blocks_;
};

GroupDFA build_pn(int n);
GroupDFA build_ms(int s);

struct GadgetPath {
  std::vector<int> edges;
  int transition_count = 0;
  GroupWord label_word;
};

enum class PathStatus { unique, multiple, none, bound_exhausted };

struct PathSearchResult {
  PathStatus status = PathStatus::none;
  // Shortest accepted path with an empty-reducing label (first in edge order),
  // present for unique and multiple.
  std::optional<GadgetPath> path;
  // Number of such paths within the cap, saturated at 2.
  int count = 0;
};

// Counts accepted paths of at most `cap` transitions whose label freely
// reduces to the empty word. `none` means no such path exists at any length;
// `bound_exhausted` means none fits within the cap although longer ones exist.
PathSearchResult unique_epsilon_path(const GroupDFA& dfa, int cap);

const char* to_string(PathStatus s);

std::string format_dfa(const GroupDFA& dfa);
GroupDFA parse_dfa(std::string_view text);

}  // namespace braidcomp

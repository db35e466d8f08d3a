#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "braidcomp/braid_word.hpp"
#include "braidcomp/decision.hpp"
#include "braidcomp/free_words.hpp"

namespace braidcomp {

// Letters of the binary alphabet {a, b}.
inline constexpr int kLetterA = 1;
inline constexpr int kLetterB = 2;

// a -> sigma_1^4, b -> sigma_2^4 in B_5.
BraidWord phi(const GroupWord& w);
// a -> sigma_4^2, b -> sigma_4 sigma_3 sigma_2 sigma_1^2 sigma_2 sigma_3 sigma_4 in B_5.
BraidWord psi(const GroupWord& w);
// phi(u) psi(v).
BraidWord gamma(const GroupWord& u, const GroupWord& v);

struct ICPInstance {
  std::vector<std::pair<GroupWord, GroupWord>> pairs;
};

// Source letters a_1..a_m; target words use 1 for a_{m+1} and 2 for a_{m+2}.
struct MMPCPInstance {
  std::vector<GroupWord> h;
  std::vector<GroupWord> g;
};

void validate(const ICPInstance& inst);
void validate(const MMPCPInstance& inst);

// Generators phi(s_i) psi(t_i).
GeneratorSet encode_icp(const ICPInstance& inst);
// Generators gamma(alpha(a_i), h(a_i)), gamma(alpha(a_i), g(a_i)) for each i, in that order.
GeneratorSet encode_mmpcp(const MMPCPInstance& inst);

// Bounded search for a nonempty product equal to the identity.
BruteResult bounded_identity_search(const GeneratorSet& b, int max_factors);

ICPInstance parse_icp(std::string_view text);
std::string format_icp(const ICPInstance& inst);
MMPCPInstance parse_mmpcp(std::string_view text);
std::string format_mmpcp(const MMPCPInstance& inst);

}  // namespace braidcomp

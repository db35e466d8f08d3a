#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "braidcomp/braid_word.hpp"

namespace braidcomp {

// Images of 0..n-1; entry j is the final position of the strand starting at j.
using Permutation = std::vector<int>;

// Delta^infimum followed by a positive remainder.
// For B_3 the remainder is the Delta-free positive word and `factors` stays
// empty. For the general form, `factors` holds the left-greedy permutation
// braids and `remainder` their concatenated canonical words.
struct GarsideForm {
  int strands = 3;
  std::int64_t infimum = 0;
  std::vector<int> remainder;
  std::vector<Permutation> factors;

  bool operator==(const GarsideForm&) const = default;
};

BraidWord fundamental(int n);

// Swaps sigma_1 and sigma_2 (B_3 only).
BraidWord tau(const BraidWord& w);
int tau_letter(int letter);

GarsideForm normal_form_b3(const BraidWord& w);
GarsideForm normal_form_bn(const BraidWord& w);

bool equal_b3(const BraidWord& u, const BraidWord& v);
bool equal_bn(const BraidWord& u, const BraidWord& v);
bool is_trivial(const BraidWord& w);

// Delta^k spelled as fundamental-braid words, then the remainder.
BraidWord to_word(const GarsideForm& form);

// "D^k | letters"; factors of the general form are separated by " . ".
std::string format_garside(const GarsideForm& form);

// Positive word of a permutation braid, smallest generator first.
std::vector<int> permutation_word(const Permutation& p);

}  // namespace braidcomp

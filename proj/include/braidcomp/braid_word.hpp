#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace braidcomp {

// A word over the Artin generators of B_n. Letter g > 0 stands for sigma_g,
// g < 0 for its inverse.
class BraidWord {
 public:
  explicit BraidWord(int strands = 3, std::vector<int> letters = {});

  int strands() const { return strands_; }
  const std::vector<int>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  // Literal concatenation; strand counts must agree.
  BraidWord operator*(const BraidWord& rhs) const;
  BraidWord& operator*=(const BraidWord& rhs);
  BraidWord inverse() const;
  BraidWord power(int exponent) const;

  bool operator==(const BraidWord&) const = default;

 private:
  int strands_;
  std::vector<int> letters_;
};

// "1 -2 3", or "e" for the empty word.
std::string format_letters(const std::vector<int>& letters);
std::string format_braid(const BraidWord& w);

// Parses whitespace separated signed integers; "e" (or blank) is the empty word.
std::vector<int> parse_letters(std::string_view text);
BraidWord parse_braid(std::string_view text, int strands);

}  // namespace braidcomp

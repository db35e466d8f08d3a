#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "braidcomp/braid_word.hpp"

namespace braidcomp {

// Letters 1..m and their formal inverses -1..-m.
class GroupAlphabet {
 public:
  explicit GroupAlphabet(int size = 1);
  int size() const { return size_; }
  bool contains(int letter) const { return letter != 0 && letter <= size_ && letter >= -size_; }
  bool operator==(const GroupAlphabet&) const = default;

 private:
  int size_;
};

class GroupWord {
 public:
  explicit GroupWord(GroupAlphabet alphabet = GroupAlphabet{}, std::vector<int> letters = {});

  const GroupAlphabet& alphabet() const { return alphabet_; }
  const std::vector<int>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  bool operator==(const GroupWord&) const = default;

 private:
  GroupAlphabet alphabet_;
  std::vector<int> letters_;
};

// The binary alphabet of the encodings: c = 1, d = 2.
inline constexpr int kLetterC = 1;
inline constexpr int kLetterD = 2;
GroupAlphabet binary_alphabet();

// Free reduction by a single stack pass.
GroupWord reduce(const GroupWord& w);
std::vector<int> reduce_letters(const std::vector<int>& letters);
GroupWord invert(const GroupWord& w);
GroupWord concat(const GroupWord& u, const GroupWord& v);

// z_i -> c^i d c^-i, z_i^-1 -> c^i d^-1 c^-i.
GroupWord alpha_encode(const GroupWord& w);
// c -> sigma_1^4, d -> sigma_2^4, inverses accordingly.
BraidWord f_encode(const GroupWord& w);

std::string format_group_word(const GroupWord& w);
GroupWord parse_group_word(std::string_view text, GroupAlphabet alphabet);

}  // namespace braidcomp

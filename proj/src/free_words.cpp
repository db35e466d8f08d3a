#include "braidcomp/free_words.hpp"

#include <cstdlib>
#include <stdexcept>

namespace braidcomp {

GroupAlphabet::GroupAlphabet(int size) : size_(size) {
  if (size_ < 1) throw std::invalid_argument("group alphabet size must be positive");
}

GroupWord::GroupWord(GroupAlphabet alphabet, std::vector<int> letters)
    : alphabet_(alphabet), letters_(std::move(letters)) {
  for (int x : letters_) {
    if (!alphabet_.contains(x)) {
      throw std::invalid_argument("letter " + std::to_string(x) + " not in alphabet of size " +
                                  std::to_string(alphabet_.size()));
    }
  }
}

GroupAlphabet binary_alphabet() { return GroupAlphabet(2); }

std::vector<int> reduce_letters(const std::vector<int>& letters) {
  std::vector<int> stack;
  stack.reserve(letters.size());
  for (int x : letters) {
    if (!stack.empty() && stack.back() == -x) {
      stack.pop_back();
    } else {
      stack.push_back(x);
    }
  }
  return stack;
}

GroupWord reduce(const GroupWord& w) { return GroupWord(w.alphabet(), reduce_letters(w.letters())); }

GroupWord invert(const GroupWord& w) {
  std::vector<int> out(w.letters().rbegin(), w.letters().rend());
  for (int& x : out) x = -x;
  return GroupWord(w.alphabet(), std::move(out));
}

GroupWord concat(const GroupWord& u, const GroupWord& v) {
  if (!(u.alphabet() == v.alphabet())) throw std::invalid_argument("alphabet mismatch");
  std::vector<int> out = u.letters();
  out.insert(out.end(), v.letters().begin(), v.letters().end());
  return GroupWord(u.alphabet(), std::move(out));
}

GroupWord alpha_encode(const GroupWord& w) {
  std::vector<int> out;
  for (int x : w.letters()) {
    int i = std::abs(x);
    out.insert(out.end(), i, kLetterC);
    out.push_back(x > 0 ? kLetterD : -kLetterD);
    out.insert(out.end(), i, -kLetterC);
  }
  // Neighbouring blocks share c^-i c^j seams; the image is kept reduced.
  return GroupWord(binary_alphabet(), reduce_letters(out));
}

BraidWord f_encode(const GroupWord& w) {
  if (w.alphabet().size() != 2) throw std::invalid_argument("f_encode expects the binary alphabet");
  std::vector<int> out;
  out.reserve(4 * w.size());
  for (int x : w.letters()) out.insert(out.end(), 4, x);
  return BraidWord(3, std::move(out));
}

std::string format_group_word(const GroupWord& w) { return format_letters(w.letters()); }

GroupWord parse_group_word(std::string_view text, GroupAlphabet alphabet) {
  return GroupWord(alphabet, parse_letters(text));
}

}  // namespace braidcomp

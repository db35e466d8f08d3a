#include "braidcomp/braid_word.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace braidcomp {

BraidWord::BraidWord(int strands, std::vector<int> letters)
    : strands_(strands), letters_(std::move(letters)) {
  if (strands_ < 2) throw std::invalid_argument("braid word needs at least 2 strands");
  for (int g : letters_) {
    if (g == 0 || std::abs(g) > strands_ - 1) {
      throw std::invalid_argument("braid letter " + std::to_string(g) +
                                  " out of range for B_" + std::to_string(strands_));
    }
  }
}

BraidWord BraidWord::operator*(const BraidWord& rhs) const {
  BraidWord out = *this;
  out *= rhs;
  return out;
}

BraidWord& BraidWord::operator*=(const BraidWord& rhs) {
  if (rhs.strands_ != strands_) throw std::invalid_argument("strand count mismatch");
  letters_.insert(letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
  return *this;
}

BraidWord BraidWord::inverse() const {
  std::vector<int> out(letters_.rbegin(), letters_.rend());
  for (int& g : out) g = -g;
  return BraidWord(strands_, std::move(out));
}

BraidWord BraidWord::power(int exponent) const {
  BraidWord base = exponent < 0 ? inverse() : *this;
  BraidWord out(strands_);
  for (int i = 0; i < std::abs(exponent); ++i) out *= base;
  return out;
}

std::string format_letters(const std::vector<int>& letters) {
  if (letters.empty()) return "e";
  std::ostringstream os;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) os << ' ';
    os << letters[i];
  }
  return os.str();
}

std::string format_braid(const BraidWord& w) { return format_letters(w.letters()); }

std::vector<int> parse_letters(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::vector<int> out;
  std::string tok;
  while (is >> tok) {
    if (tok == "e") continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad letter '" + tok + "'");
    }
    if (used != tok.size() || v == 0) throw std::invalid_argument("bad letter '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

BraidWord parse_braid(std::string_view text, int strands) {
  return BraidWord(strands, parse_letters(text));
}

}  // namespace braidcomp

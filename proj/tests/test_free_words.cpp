#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "braidcomp/braid_core.hpp"
#include "braidcomp/free_words.hpp"

using namespace braidcomp;

namespace {

GroupWord word(int m, std::vector<int> letters) { return GroupWord(GroupAlphabet(m), std::move(letters)); }

GroupWord random_word(std::mt19937& rng, int m, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), letter(1, m), sign(0, 1);
  std::vector<int> w(len(rng));
  for (int& x : w) x = sign(rng) ? letter(rng) : -letter(rng);
  return word(m, w);
}

// Every reduced word of length <= max_len over m letters.
std::vector<GroupWord> reduced_words(int m, int max_len) {
  std::vector<GroupWord> out{word(m, {})};
  std::vector<std::vector<int>> layer{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : layer) {
      for (int x = -m; x <= m; ++x) {
        if (x == 0 || (!w.empty() && w.back() == -x)) continue;
        auto v = w;
        v.push_back(x);
        out.push_back(word(m, v));
        next.push_back(std::move(v));
      }
    }
    layer = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("alphabets and words validate") {
  CHECK_THROWS_AS(GroupAlphabet(0), std::invalid_argument);
  CHECK_THROWS_AS(word(2, {3}), std::invalid_argument);
  CHECK_THROWS_AS(word(2, {0}), std::invalid_argument);
  CHECK(GroupAlphabet(3).contains(-3));
  CHECK_FALSE(GroupAlphabet(3).contains(4));
}

TEST_CASE("free reduction") {
  CHECK(reduce(word(3, {1, 3, 2, -2, 1, -1, -3, -1})).empty());
  CHECK(reduce(word(3, {})).empty());
  CHECK(reduce(word(2, {1, 2, -2, 2})) == word(2, {1, 2}));
}

TEST_CASE("inversion") {
  CHECK(invert(word(2, {1, 2})) == word(2, {-2, -1}));
  CHECK(invert(word(2, {})).empty());
  CHECK(invert(word(3, {1, -3, 1})) == word(3, {-1, 3, -1}));
}

TEST_CASE("reduction properties on random words") {
  std::mt19937 rng(1);
  for (int i = 0; i < 3000; ++i) {
    GroupWord w = random_word(rng, 3, 12);
    GroupWord r = reduce(w);
    CHECK(reduce(r) == r);
    CHECK(r.size() <= w.size());
    CHECK(r.size() % 2 == w.size() % 2);
    CHECK(reduce(concat(w, invert(w))).empty());
    for (std::size_t j = 0; j + 1 < r.size(); ++j) CHECK(r.letters()[j] != -r.letters()[j + 1]);
  }
}

TEST_CASE("alpha encoding") {
  CHECK(alpha_encode(word(2, {2})) == word(2, {1, 1, 2, -1, -1}));
  CHECK(alpha_encode(word(3, {})).empty());
  CHECK(alpha_encode(word(3, {1, -1})).empty());
  CHECK(alpha_encode(word(3, {-3})) == word(2, {1, 1, 1, -2, -1, -1, -1}));
  std::mt19937 rng(2);
  for (int i = 0; i < 500; ++i) {
    GroupWord u = random_word(rng, 4, 6), v = random_word(rng, 4, 6);
    CHECK(alpha_encode(concat(u, v)) == reduce(concat(alpha_encode(u), alpha_encode(v))));
    GroupWord ru = reduce(u);
    CHECK(reduce(alpha_encode(ru)) == alpha_encode(ru));
  }
}

TEST_CASE("f encoding") {
  CHECK(f_encode(word(2, {1, 2})).letters() == std::vector<int>{1, 1, 1, 1, 2, 2, 2, 2});
  CHECK(f_encode(word(2, {})).empty());
  CHECK(f_encode(word(2, {-2})).letters() == std::vector<int>{-2, -2, -2, -2});
  CHECK_THROWS_AS(f_encode(word(3, {1})), std::invalid_argument);
  for (int j = 1; j <= 5; ++j) {
    BraidWord b = f_encode(alpha_encode(word(5, {j})));
    CHECK(b.strands() == 3);
    CHECK(b.size() == static_cast<std::size_t>(8 * j + 4));
    BraidWord expect = BraidWord(3, {1}).power(4 * j) * BraidWord(3, {2, 2, 2, 2}) * BraidWord(3, {1}).power(-4 * j);
    CHECK(b == expect);
  }
}

TEST_CASE("f after alpha separates short reduced words") {
  std::set<std::string> forms;
  auto words = reduced_words(4, 4);
  for (const GroupWord& w : words) forms.insert(format_garside(normal_form_b3(f_encode(alpha_encode(w)))));
  CHECK(forms.size() == words.size());
}

TEST_CASE("group word text format") {
  CHECK(format_group_word(word(3, {1, 3, -2})) == "1 3 -2");
  CHECK(format_group_word(word(3, {})) == "e");
  CHECK(parse_group_word("1 3 -2", GroupAlphabet(3)) == word(3, {1, 3, -2}));
  CHECK(parse_group_word("e", GroupAlphabet(3)).empty());
  CHECK_THROWS_AS(parse_group_word("4", GroupAlphabet(3)), std::invalid_argument);
}

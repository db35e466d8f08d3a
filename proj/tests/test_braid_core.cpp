#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "braidcomp/braid_core.hpp"
#include "support/braid_moves.hpp"
#include "support/burau.hpp"

using namespace braidcomp;

namespace {

BraidWord b3(std::vector<int> letters) { return BraidWord(3, std::move(letters)); }

std::string nf3(std::vector<int> letters) { return format_garside(normal_form_b3(b3(std::move(letters)))); }

}  // namespace

TEST_CASE("braid words validate letters and strand counts") {
  CHECK_THROWS_AS(BraidWord(1), std::invalid_argument);
  CHECK_THROWS_AS(BraidWord(3, {3}), std::invalid_argument);
  CHECK_THROWS_AS(BraidWord(3, {0}), std::invalid_argument);
  CHECK_THROWS_AS(b3({1}) * BraidWord(4, {1}), std::invalid_argument);
  CHECK(b3({1, -2}).inverse() == b3({2, -1}));
  CHECK(b3({1, 2}).power(-2) == b3({-2, -1, -2, -1}));
  CHECK(format_braid(BraidWord(3)) == "e");
  CHECK(parse_braid(" 1 -2\t2 ", 3) == b3({1, -2, 2}));
  CHECK(parse_braid("e", 3).empty());
  CHECK_THROWS_AS(parse_braid("1 x", 3), std::invalid_argument);
}

TEST_CASE("fundamental braid") {
  CHECK(fundamental(3).letters() == std::vector<int>{2, 1, 2});
  CHECK(fundamental(2).size() == 1);
  CHECK(fundamental(5).size() == 10);
  CHECK_THROWS_AS(fundamental(1), std::invalid_argument);
  CHECK(equal_b3(fundamental(3), b3({1, 2, 1})));
}

TEST_CASE("tau swaps the generators") {
  CHECK(tau(b3({1, -2})) == b3({2, -1}));
  CHECK(tau(tau(b3({1, 2, -1}))) == b3({1, 2, -1}));
  CHECK(equal_b3(fundamental(3) * b3({1}), b3({2}) * fundamental(3)));
  CHECK_THROWS_AS(tau(BraidWord(4, {1})), std::invalid_argument);
}

TEST_CASE("B3 normal form examples") {
  CHECK(nf3({1, 2, 1}) == "D^1 | e");
  CHECK(nf3({2, 1, 2}) == "D^1 | e");
  CHECK(nf3({1, -1}) == "D^0 | e");
  CHECK(nf3({-1}) == "D^-1 | 1 2");
  CHECK(nf3({-2}) == "D^-1 | 2 1");
  CHECK(normal_form_b3(b3({-1})).remainder == std::vector<int>{1, 2});
  CHECK_THROWS_AS(normal_form_b3(BraidWord(4, {1})), std::invalid_argument);
}

TEST_CASE("B3 equality and triviality") {
  CHECK(equal_b3(b3({1, 2, 1}), b3({2, 1, 2})));
  CHECK_FALSE(equal_b3(b3({1}), b3({2})));
  CHECK_FALSE(equal_b3(b3({1, 1, 1, 1, 2, 2, 2, 2}), b3({2, 2, 2, 2, 1, 1, 1, 1})));
  CHECK(is_trivial(BraidWord(3)));
  CHECK(is_trivial(b3({1, 2, 1, -2, -1, -2})));
  CHECK_FALSE(is_trivial(fundamental(3).power(2)));
  CHECK_THROWS_AS(equal_b3(b3({1}), BraidWord(4, {1})), std::invalid_argument);
}

TEST_CASE("B3 remainders are positive and free of Delta factors") {
  std::mt19937 rng(11);
  for (int i = 0; i < 2000; ++i) {
    auto w = braid_moves::random_word(rng, 10);
    GarsideForm f = normal_form_b3(b3(w));
    for (std::size_t j = 0; j < f.remainder.size(); ++j) {
      CHECK(f.remainder[j] > 0);
      if (j + 2 < f.remainder.size()) {
        bool factor = f.remainder[j] == f.remainder[j + 2] && f.remainder[j] != f.remainder[j + 1];
        CHECK_FALSE(factor);
      }
    }
    CHECK(equal_b3(to_word(f), b3(w)));
  }
}

TEST_CASE("centrality of Delta squared and the tau twist") {
  const BraidWord d = fundamental(3);
  std::mt19937 rng(5);
  for (int i = 0; i < 1000; ++i) {
    BraidWord w = b3(braid_moves::random_word(rng, 6));
    CHECK(equal_b3(d * d * w, w * d * d));
    CHECK(equal_b3(d * w, tau(w) * d));
  }
}

TEST_CASE("B3 equality agrees with the Burau oracle") {
  std::mt19937 rng(7);
  int equal_pairs = 0;
  for (int i = 0; i < 10000; ++i) {
    auto u = braid_moves::random_word(rng, 8);
    // Every third pair is related, so both outcomes are exercised.
    auto v = i % 3 == 0 ? braid_moves::relation_move(rng, u) : braid_moves::random_word(rng, 8);
    bool oracle = burau::of_letters(u) == burau::of_letters(v);
    equal_pairs += oracle;
    CHECK(equal_b3(b3(u), b3(v)) == oracle);
  }
  CHECK(equal_pairs > 3000);
}

TEST_CASE("general normal form") {
  const BraidWord d5 = fundamental(5);
  GarsideForm f = normal_form_bn(d5);
  CHECK(f.infimum == 1);
  CHECK(f.factors.empty());
  CHECK(normal_form_bn(BraidWord(5, {4, -4})) == normal_form_bn(BraidWord(5)));
  CHECK(equal_bn(BraidWord(5, {1, 1, 1, 1, 4, 4}), BraidWord(5, {4, 4, 1, 1, 1, 1})));
  CHECK_FALSE(equal_bn(BraidWord(5, {1, 2}), BraidWord(5, {2, 1})));
  CHECK(format_garside(normal_form_bn(BraidWord(3, {-1}))) == "D^-1 | 1 2");
  CHECK(is_trivial(BraidWord(5, {3, 1, -3, -1})));
}

TEST_CASE("general form factors are left-weighted permutation braids") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> letter(1, 4), sign(0, 1), len(0, 12);
  for (int i = 0; i < 500; ++i) {
    std::vector<int> w(len(rng));
    for (int& x : w) x = sign(rng) ? letter(rng) : -letter(rng);
    GarsideForm f = normal_form_bn(BraidWord(5, w));
    for (const Permutation& p : f.factors) {
      Permutation id(5);
      for (int j = 0; j < 5; ++j) id[j] = j;
      CHECK(p != id);
      CHECK(permutation_word(p).size() < 10);
    }
    CHECK(equal_bn(to_word(f), BraidWord(5, w)));
    CHECK(normal_form_bn(to_word(f)) == f);
  }
}

TEST_CASE("general form on three strands matches the B3 relation") {
  std::mt19937 rng(9);
  for (int i = 0; i < 3000; ++i) {
    auto u = braid_moves::random_word(rng, 7);
    auto v = i % 2 ? braid_moves::relation_move(rng, u) : braid_moves::random_word(rng, 7);
    CHECK(equal_bn(b3(u), b3(v)) == equal_b3(b3(u), b3(v)));
  }
}

TEST_CASE("far commutation in B5 keeps the normal form") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> letter(1, 4), sign(0, 1), len(0, 8);
  for (int i = 0; i < 500; ++i) {
    std::vector<int> w(len(rng));
    for (int& x : w) x = sign(rng) ? letter(rng) : -letter(rng);
    for (std::size_t j = 0; j + 1 < w.size(); ++j) {
      if (std::abs(std::abs(w[j]) - std::abs(w[j + 1])) >= 2) {
        auto v = w;
        std::swap(v[j], v[j + 1]);
        CHECK(normal_form_bn(BraidWord(5, v)) == normal_form_bn(BraidWord(5, w)));
      }
    }
  }
}

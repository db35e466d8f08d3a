#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <optional>
#include <random>
#include <set>
#include <tuple>

#include "braidcomp/gadget_automata.hpp"
#include "support/path_bfs.hpp"
#include "support/path_dp.hpp"

using namespace braidcomp;

TEST_CASE("P_n follows the transition table") {
  for (int n = 3; n <= 8; ++n) {
    GroupDFA p = build_pn(n);
    CHECK(p.num_states() == n + 3);
    CHECK(p.edges().size() == static_cast<std::size_t>(2 * n));
    CHECK(p.alphabet().size() == n);
    CHECK(p.initial() == 0);
    CHECK(p.finals() == std::vector<int>{n + 2});
    std::set<std::tuple<int, int, int>> edges;
    for (const auto& e : p.edges()) edges.insert({e.from, e.label, e.to});
    CHECK(edges.count({0, 1, 1}));
    for (int a = 1; a <= n; ++a) CHECK(edges.count({a, -a, a + 1}));
    for (int a = 2; a <= n - 1; ++a) CHECK(edges.count({a, a, 0}));
    CHECK(edges.count({n + 1, n, n + 2}));
  }
  CHECK_THROWS_AS(build_pn(2), std::invalid_argument);
}

TEST_CASE("P_n has a unique empty-reducing path of length 2^n") {
  for (int n = 3; n <= 8; ++n) {
    PathSearchResult r = unique_epsilon_path(build_pn(n), 1 << (n + 1));
    REQUIRE(r.status == PathStatus::unique);
    CHECK(r.path->transition_count == (1 << n));
    CHECK(r.path->label_word.size() == static_cast<std::size_t>(1 << n));
    CHECK(reduce(r.path->label_word).empty());
  }
  PathSearchResult r3 = unique_epsilon_path(build_pn(3), 8);
  REQUIRE(r3.status == PathStatus::unique);
  CHECK(r3.path->label_word.letters() == std::vector<int>{1, -1, 2, 1, -1, -2, -3, 3});
}

TEST_CASE("P_3 prefix q0 q1 q2 reduces to the empty word") {
  GroupDFA p = build_pn(3);
  const auto& e0 = p.edges()[p.out_edges(0)[0]];
  CHECK(e0.label == 1);
  CHECK(e0.to == 1);
  const auto& e1 = p.edges()[p.out_edges(1)[0]];
  CHECK(e1.label == -1);
  CHECK(e1.to == 2);
}

TEST_CASE("cap below the path length is reported as exhausted") {
  CHECK(unique_epsilon_path(build_pn(3), 7).status == PathStatus::bound_exhausted);
  CHECK(unique_epsilon_path(build_ms(13), 12).status == PathStatus::bound_exhausted);
}

TEST_CASE("M_s examples") {
  PathSearchResult r1 = unique_epsilon_path(build_ms(1), 1);
  REQUIRE(r1.status == PathStatus::unique);
  CHECK(r1.path->transition_count == 1);
  CHECK(r1.path->label_word.empty());
  GroupDFA m5 = build_ms(5);
  REQUIRE(m5.blocks().size() == 2);
  CHECK(m5.blocks()[0].kind == GadgetBlock::Kind::chain);
  CHECK(m5.blocks()[1].order == 4);
  GroupDFA m8 = build_ms(8);
  REQUIRE(m8.blocks().size() == 1);
  CHECK(m8.blocks()[0].kind == GadgetBlock::Kind::pn);
  CHECK(m8.blocks()[0].order == 3);
  CHECK(build_ms(13).blocks().size() == 3);
  CHECK_THROWS_AS(build_ms(0), std::invalid_argument);
}

TEST_CASE("M_s has a unique empty-reducing path of s transitions") {
  for (int s = 1; s <= 64; ++s) {
    PathSearchResult r = unique_epsilon_path(build_ms(s), 2 * s);
    REQUIRE(r.status == PathStatus::unique);
    CHECK(r.path->transition_count == s);
  }
}

TEST_CASE("M_s blocks use disjoint letters") {
  for (int s = 1; s <= 200; ++s) {
    GroupDFA m = build_ms(s);
    std::map<int, int> owner;
    for (std::size_t b = 0; b < m.blocks().size(); ++b) {
      const GadgetBlock& block = m.blocks()[b];
      for (const auto& e : m.edges()) {
        if (e.label == 0 || e.from < block.initial_state || e.from >= block.final_state) continue;
        auto [it, fresh] = owner.emplace(std::abs(e.label), static_cast<int>(b));
        CHECK(it->second == static_cast<int>(b));
      }
    }
  }
}

TEST_CASE("path counts agree with breadth-first search") {
  for (int n = 3; n <= 4; ++n) {
    const int cap = (1 << n) + 6;
    path_bfs::Result oracle = path_bfs::search(build_pn(n), cap);
    PathSearchResult r = unique_epsilon_path(build_pn(n), cap);
    CHECK(oracle.paths == 1);
    CHECK(oracle.shortest == (1 << n));
    REQUIRE(r.path);
    CHECK(r.path->edges == oracle.first_edges);
  }
  for (int s = 1; s <= 20; ++s) {
    path_bfs::Result oracle = path_bfs::search(build_ms(s), s + 4);
    PathSearchResult r = unique_epsilon_path(build_ms(s), s + 4);
    CHECK(oracle.paths == 1);
    CHECK(oracle.shortest == s);
    REQUIRE(r.path);
    CHECK(r.path->edges == oracle.first_edges);
  }
}

TEST_CASE("counting oracle agrees with breadth-first search") {
  std::mt19937 rng(31);
  int checked = 0, nonzero = 0;
  for (int i = 0; i < 400; ++i) {
    const int q = 1 + static_cast<int>(rng() % 4);
    std::vector<DfaEdge> edges;
    for (int from = 0; from < q; ++from) {
      for (int label : {0, 1, -1, 2, -2}) {
        if (rng() % 3 == 0) edges.push_back({from, label, static_cast<int>(rng() % q)});
      }
    }
    std::vector<int> finals{static_cast<int>(rng() % q)};
    std::optional<GroupDFA> dfa;
    try {
      dfa.emplace(q, GroupAlphabet(2), 0, finals, edges);
    } catch (const std::invalid_argument&) {
      continue;
    }
    const int cap = 8;
    path_dp::Counter counter(*dfa, cap);
    path_bfs::Result bfs = path_bfs::search(*dfa, cap);
    std::int64_t total = 0;
    int shortest = -1;
    for (int L = 0; L <= cap; ++L) {
      total += static_cast<std::int64_t>(counter.accepted(L));
      if (shortest < 0 && counter.accepted(L)) shortest = L;
    }
    CHECK(total == bfs.paths);
    CHECK(shortest == bfs.shortest);
    PathSearchResult r = unique_epsilon_path(*dfa, cap);
    CHECK(r.count == std::min<std::int64_t>(2, total));
    ++checked;
    nonzero += total > 0;
  }
  CHECK(checked > 100);
  CHECK(nonzero > 20);
}

TEST_CASE("multiple and missing paths") {
  // Two cancelling branches give two paths; a lone letter gives none.
  GroupDFA two(4, GroupAlphabet(2), 0, {2}, {{0, 1, 1}, {1, -1, 2}, {0, 2, 3}, {3, -2, 2}});
  PathSearchResult r = unique_epsilon_path(two, 6);
  CHECK(r.status == PathStatus::multiple);
  CHECK(r.count == 2);
  CHECK(path_bfs::search(two, 6).paths > 1);
  GroupDFA none(2, GroupAlphabet(1), 0, {1}, {{0, 1, 1}});
  CHECK(unique_epsilon_path(none, 5).status == PathStatus::none);
}

TEST_CASE("automaton validation") {
  CHECK_THROWS_AS(GroupDFA(2, GroupAlphabet(1), 0, {1}, {{0, 1, 1}, {0, 1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(GroupDFA(2, GroupAlphabet(1), 0, {1}, {{0, 2, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(GroupDFA(2, GroupAlphabet(1), 0, {1}, {{0, 0, 1}, {0, 1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(GroupDFA(3, GroupAlphabet(1), 0, {1}, {{0, 1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(GroupDFA(2, GroupAlphabet(1), 0, {5}, {{0, 1, 1}}), std::invalid_argument);
}

TEST_CASE("automaton text round trip") {
  for (GroupDFA d : {build_pn(4), build_ms(13)}) {
    std::string text = format_dfa(d);
    CHECK(text.rfind("format=1", 0) == 0);
    GroupDFA back = parse_dfa(text);
    CHECK(back.num_states() == d.num_states());
    CHECK(back.edges() == d.edges());
    CHECK(back.finals() == d.finals());
    CHECK(format_dfa(back) == text);
  }
  CHECK_THROWS_AS(parse_dfa("alphabet 1\n"), std::invalid_argument);
}

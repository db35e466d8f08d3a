#pragma once

#include <set>
#include <utility>
#include <vector>

#include "braidcomp/valence_grammar.hpp"

// Bottom-up enumeration of derivation trees by their number of production
// applications. Each nonterminal gets the set of (terminal word, valence)
// pairs it derives with exactly n steps.
namespace derivations {

using Item = std::pair<std::vector<int>, braidcomp::Valence>;
using ItemSet = std::set<Item>;

class Enumerator {
 public:
  // Without words only valences are kept, which keeps the sets tiny.
  Enumerator(const braidcomp::ValenceGrammar& g, int max_steps, bool words)
      : g_(g), words_(words), table_(max_steps + 1, std::vector<ItemSet>(g.nonterminals().size())) {
    for (int n = 1; n <= max_steps; ++n) {
      for (const auto& p : g.productions()) expand(p, n);
    }
  }

  const ItemSet& exact(int nonterminal, int steps) const { return table_[steps][nonterminal]; }

  // Everything the axiom derives in at most max_steps steps.
  ItemSet language() const {
    ItemSet out;
    for (std::size_t n = 1; n < table_.size(); ++n) out.insert(table_[n][g_.axiom()].begin(), table_[n][g_.axiom()].end());
    return out;
  }

  bool derives_zero() const {
    braidcomp::Valence zero(g_.dimension(), 0);
    for (const auto& [w, v] : language()) {
      if (v == zero) return true;
    }
    return false;
  }

 private:
  void expand(const braidcomp::Production& p, int n) {
    std::vector<int> slots;
    for (std::size_t i = 0; i < p.rhs.size(); ++i) {
      if (!p.rhs[i].terminal) slots.push_back(static_cast<int>(i));
    }
    if (slots.empty()) {
      if (n != 1) return;
      std::vector<int> word;
      if (words_) {
        for (const auto& s : p.rhs) word.push_back(s.id);
      }
      table_[n][p.lhs].insert({word, p.valence});
      return;
    }
    std::vector<int> sizes(slots.size(), 1);
    split(p, slots, sizes, 0, n - 1);
  }

  // Distributes `left` steps over the nonterminal slots, each at least one.
  void split(const braidcomp::Production& p, const std::vector<int>& slots, std::vector<int>& sizes,
             std::size_t i, int left) {
    if (i + 1 == slots.size()) {
      if (left < 1) return;
      sizes[i] = left;
      std::vector<int> word;
      combine(p, slots, sizes, 0, 0, word, p.valence);
      return;
    }
    for (int k = 1; k <= left - static_cast<int>(slots.size() - i - 1); ++k) {
      sizes[i] = k;
      split(p, slots, sizes, i + 1, left - k);
    }
  }

  void combine(const braidcomp::Production& p, const std::vector<int>& slots, const std::vector<int>& sizes,
               std::size_t rhs_pos, std::size_t slot, std::vector<int>& word, const braidcomp::Valence& v) {
    if (rhs_pos == p.rhs.size()) {
      table_[1 + total(sizes)][p.lhs].insert({word, v});
      return;
    }
    const auto& sym = p.rhs[rhs_pos];
    if (sym.terminal) {
      if (words_) word.push_back(sym.id);
      combine(p, slots, sizes, rhs_pos + 1, slot, word, v);
      if (words_) word.pop_back();
      return;
    }
    for (const auto& [w, cv] : table_[sizes[slot]][sym.id]) {
      braidcomp::Valence sum = v;
      for (std::size_t d = 0; d < sum.size(); ++d) sum[d] += cv[d];
      std::size_t mark = word.size();
      word.insert(word.end(), w.begin(), w.end());
      combine(p, slots, sizes, rhs_pos + 1, slot + 1, word, sum);
      word.resize(mark);
    }
  }

  static int total(const std::vector<int>& sizes) {
    int t = 0;
    for (int s : sizes) t += s;
    return t;
  }

  const braidcomp::ValenceGrammar& g_;
  bool words_;
  std::vector<std::vector<ItemSet>> table_;
};

}  // namespace derivations

#include "braidcomp/valence_grammar.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace braidcomp {

ValenceGrammar::ValenceGrammar(std::vector<std::string> nonterminals, std::vector<std::string> terminals,
                               int axiom, int dimension, std::vector<Production> productions)
    : nonterminals_(std::move(nonterminals)),
      terminals_(std::move(terminals)),
      axiom_(axiom),
      dimension_(dimension),
      productions_(std::move(productions)) {
  const int N = static_cast<int>(nonterminals_.size());
  const int T = static_cast<int>(terminals_.size());
  if (dimension_ < 0) throw std::invalid_argument("grammar dimension must be non-negative");
  if (axiom_ < 0 || axiom_ >= N) throw std::invalid_argument("grammar axiom undeclared");
  for (const auto& name : terminals_) {
    if (std::find(nonterminals_.begin(), nonterminals_.end(), name) != nonterminals_.end()) {
      throw std::invalid_argument("symbol '" + name + "' is both terminal and nonterminal");
    }
  }
  for (const Production& p : productions_) {
    if (p.lhs < 0 || p.lhs >= N) throw std::invalid_argument("production lhs undeclared");
    if (static_cast<int>(p.valence.size()) != dimension_) {
      throw std::invalid_argument("production valence has wrong dimension");
    }
    for (const Symbol& s : p.rhs) {
      if (s.id < 0 || s.id >= (s.terminal ? T : N)) throw std::invalid_argument("production rhs undeclared");
    }
  }
}

int ValenceGrammar::find_nonterminal(std::string_view name) const {
  auto it = std::find(nonterminals_.begin(), nonterminals_.end(), name);
  return it == nonterminals_.end() ? -1 : static_cast<int>(it - nonterminals_.begin());
}

int ValenceGrammar::find_terminal(std::string_view name) const {
  auto it = std::find(terminals_.begin(), terminals_.end(), name);
  return it == terminals_.end() ? -1 : static_cast<int>(it - terminals_.begin());
}

GrammarBuilder::GrammarBuilder(int dimension) : dimension_(dimension) {}

int GrammarBuilder::nonterminal(const std::string& name) {
  auto it = std::find(nonterminals_.begin(), nonterminals_.end(), name);
  if (it != nonterminals_.end()) return static_cast<int>(it - nonterminals_.begin());
  nonterminals_.push_back(name);
  return static_cast<int>(nonterminals_.size()) - 1;
}

int GrammarBuilder::terminal(const std::string& name) {
  auto it = std::find(terminals_.begin(), terminals_.end(), name);
  if (it != terminals_.end()) return static_cast<int>(it - terminals_.begin());
  terminals_.push_back(name);
  return static_cast<int>(terminals_.size()) - 1;
}

void GrammarBuilder::add(int lhs, std::vector<Symbol> rhs, Valence valence) {
  productions_.push_back({lhs, std::move(rhs), std::move(valence)});
}

ValenceGrammar GrammarBuilder::build(int axiom) const {
  return ValenceGrammar(nonterminals_, terminals_, axiom, dimension_, productions_);
}

WordAutomaton::WordAutomaton(int num_states, int initial, std::vector<int> finals,
                             std::vector<AutomatonEdge> edges)
    : num_states_(num_states), initial_(initial), finals_(std::move(finals)), edges_(std::move(edges)) {
  auto check = [&](int q) {
    if (q < 0 || q >= num_states_) throw std::invalid_argument("automaton state out of range");
  };
  if (num_states_ < 1) throw std::invalid_argument("automaton needs a state");
  check(initial_);
  for (int f : finals_) check(f);
  std::sort(finals_.begin(), finals_.end());
  finals_.erase(std::unique(finals_.begin(), finals_.end()), finals_.end());
  for (const auto& e : edges_) {
    check(e.from);
    check(e.to);
    if (e.label.empty()) throw std::invalid_argument("automaton edge without label");
  }
}

bool WordAutomaton::is_final(int q) const { return std::binary_search(finals_.begin(), finals_.end(), q); }

WordAutomaton word_automaton(const std::vector<std::string>& word) {
  std::vector<AutomatonEdge> edges;
  for (std::size_t i = 0; i < word.size(); ++i) {
    edges.push_back({static_cast<int>(i), word[i], static_cast<int>(i) + 1});
  }
  int n = static_cast<int>(word.size());
  return WordAutomaton(n + 1, 0, {n}, std::move(edges));
}

bool replay(const ValenceGrammar& g, const Certificate& c, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  // Sentential form = prefix + reversed(stack); steps move the boundary.
  std::vector<Symbol> prefix;
  std::vector<Symbol> stack{Symbol{false, g.axiom()}};
  Valence total(g.dimension(), 0);
  const auto& prods = g.productions();
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const DerivationStep& s = c.steps[i];
    if (s.production < 0 || s.production >= static_cast<int>(prods.size())) {
      return fail("step " + std::to_string(i) + ": unknown production");
    }
    std::size_t len = prefix.size() + stack.size();
    if (s.position < 0 || static_cast<std::size_t>(s.position) >= len) {
      return fail("step " + std::to_string(i) + ": position out of range");
    }
    std::size_t pos = static_cast<std::size_t>(s.position);
    while (prefix.size() > pos) {
      stack.push_back(prefix.back());
      prefix.pop_back();
    }
    while (prefix.size() < pos) {
      prefix.push_back(stack.back());
      stack.pop_back();
    }
    const Production& p = prods[s.production];
    if (stack.back() != Symbol{false, p.lhs}) {
      return fail("step " + std::to_string(i) + ": symbol at position is not the production lhs");
    }
    stack.pop_back();
    for (auto it = p.rhs.rbegin(); it != p.rhs.rend(); ++it) stack.push_back(*it);
    for (int d = 0; d < g.dimension(); ++d) total[d] += p.valence[d];
  }
  while (!stack.empty()) {
    prefix.push_back(stack.back());
    stack.pop_back();
  }
  if (prefix.size() != c.word.size()) return fail("derived word length differs from certificate word");
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (!prefix[i].terminal) return fail("derivation leaves a nonterminal");
    if (prefix[i].id != c.word[i]) return fail("derived word differs from certificate word");
  }
  for (auto v : total) {
    if (v != 0) return fail("derivation valence is not zero");
  }
  return true;
}

bool replay(const ValenceGrammar& g, const WordAutomaton& a, const Certificate& c, std::string* why) {
  if (!replay(g, c, why)) return false;
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (c.path.size() != c.word.size()) return fail("path length differs from word length");
  int q = a.initial();
  for (std::size_t i = 0; i < c.path.size(); ++i) {
    int e = c.path[i];
    if (e < 0 || e >= static_cast<int>(a.edges().size())) return fail("path uses unknown edge");
    const AutomatonEdge& edge = a.edges()[e];
    if (edge.from != q) return fail("path is not contiguous");
    if (edge.label != g.terminals()[c.word[i]]) return fail("path label differs from word");
    q = edge.to;
  }
  if (!a.is_final(q)) return fail("path does not end in a final state");
  return true;
}

std::vector<std::string> certificate_word(const ValenceGrammar& g, const Certificate& c) {
  std::vector<std::string> out;
  out.reserve(c.word.size());
  for (int t : c.word) out.push_back(g.terminals().at(t));
  return out;
}

std::string format_grammar(const ValenceGrammar& g) {
  std::ostringstream os;
  os << "format=1\n";
  os << "axiom " << g.nonterminals()[g.axiom()] << "\n";
  os << "dim " << g.dimension() << "\n";
  if (!g.terminals().empty()) {
    os << "terminals";
    for (const auto& t : g.terminals()) os << ' ' << t;
    os << "\n";
  }
  for (const Production& p : g.productions()) {
    os << g.nonterminals()[p.lhs] << " ->";
    if (p.rhs.empty()) os << " _";
    for (const Symbol& s : p.rhs) os << ' ' << (s.terminal ? g.terminals()[s.id] : g.nonterminals()[s.id]);
    if (g.dimension() > 0) {
      os << " @ ";
      for (int d = 0; d < g.dimension(); ++d) os << (d ? "," : "") << p.valence[d];
    }
    os << "\n";
  }
  return os.str();
}

ValenceGrammar parse_grammar(std::string_view text) {
  auto fail = [](const std::string& msg) -> void { throw std::invalid_argument("grammar: " + msg); };
  struct Raw {
    std::string lhs;
    std::vector<std::string> rhs;
    Valence valence;
    bool has_valence = false;
  };
  std::istringstream is{std::string(text)};
  std::string line, axiom;
  int dim = -1;
  std::vector<std::string> declared_terminals;
  std::vector<Raw> raws;
  bool header = false;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (!header) {
      if (toks[0] != "format=1") fail("missing format=1 header");
      header = true;
      continue;
    }
    if (toks[0] == "axiom") {
      if (toks.size() != 2) fail("bad axiom line");
      axiom = toks[1];
      continue;
    }
    if (toks[0] == "dim") {
      if (toks.size() != 2) fail("bad dim line");
      dim = std::stoi(toks[1]);
      continue;
    }
    if (toks[0] == "terminals") {
      declared_terminals.insert(declared_terminals.end(), toks.begin() + 1, toks.end());
      continue;
    }
    if (toks.size() < 3 || toks[1] != "->") fail("bad production line '" + line + "'");
    Raw r;
    r.lhs = toks[0];
    std::size_t i = 2;
    for (; i < toks.size() && toks[i] != "@"; ++i) {
      if (toks[i] != "_") r.rhs.push_back(toks[i]);
    }
    if (i < toks.size()) {
      r.has_valence = true;
      std::string joined;
      for (std::size_t j = i + 1; j < toks.size(); ++j) joined += toks[j];
      std::istringstream vs(joined);
      for (std::string v; std::getline(vs, v, ',');) {
        try {
          r.valence.push_back(std::stoll(v));
        } catch (const std::exception&) {
          fail("bad valence '" + v + "'");
        }
      }
    }
    raws.push_back(std::move(r));
  }
  if (!header) fail("missing format=1 header");
  if (axiom.empty()) fail("missing axiom line");
  if (dim < 0) dim = raws.empty() ? 0 : static_cast<int>(raws.front().valence.size());

  std::vector<std::string> nts{axiom};
  for (const Raw& r : raws) {
    if (std::find(nts.begin(), nts.end(), r.lhs) == nts.end()) nts.push_back(r.lhs);
  }
  std::vector<std::string> ts;
  for (const auto& t : declared_terminals) {
    if (std::find(nts.begin(), nts.end(), t) != nts.end()) fail("terminal '" + t + "' used as lhs");
    if (std::find(ts.begin(), ts.end(), t) == ts.end()) ts.push_back(t);
  }
  for (const Raw& r : raws) {
    for (const auto& s : r.rhs) {
      if (std::find(nts.begin(), nts.end(), s) == nts.end() && std::find(ts.begin(), ts.end(), s) == ts.end()) {
        ts.push_back(s);
      }
    }
  }
  auto index = [](const std::vector<std::string>& v, const std::string& s) {
    return static_cast<int>(std::find(v.begin(), v.end(), s) - v.begin());
  };
  std::vector<Production> prods;
  for (const Raw& r : raws) {
    Production p;
    p.lhs = index(nts, r.lhs);
    for (const auto& s : r.rhs) {
      int n = index(nts, s);
      if (n < static_cast<int>(nts.size())) p.rhs.push_back({false, n});
      else p.rhs.push_back({true, index(ts, s)});
    }
    p.valence = r.has_valence ? r.valence : Valence(dim, 0);
    if (static_cast<int>(p.valence.size()) != dim) fail("valence dimension mismatch in production of " + r.lhs);
    prods.push_back(std::move(p));
  }
  return ValenceGrammar(std::move(nts), std::move(ts), 0, dim, std::move(prods));
}

}  // namespace braidcomp

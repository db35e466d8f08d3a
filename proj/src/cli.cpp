#include "braidcomp/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "braidcomp/b5_encoders.hpp"
#include "braidcomp/braid_core.hpp"
#include "braidcomp/gadget_automata.hpp"
#include "braidcomp/valence_engine.hpp"

namespace braidcomp {

namespace {

class Output {
 public:
  Output(std::ostream& out, bool records) : out_(out), records_(records) {}

  void answer(const std::string& value) {
    if (records_) {
      out_ << "answer=" << value << "\n";
    } else {
      out_ << value << "\n";
    }
  }
  void field(const std::string& key, const std::string& value) {
    out_ << key << (records_ ? "=" : ": ") << value << "\n";
  }

 private:
  std::ostream& out_;
  bool records_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << text;
}

// One-based indices, as printed by every subcommand.
std::string indices(const std::vector<int>& xs) {
  std::string s;
  for (int x : xs) s += (s.empty() ? "" : " ") + std::to_string(x + 1);
  return s;
}

int exit_for(Answer a) {
  switch (a) {
    case Answer::yes:
      return kExitYes;
    case Answer::no:
      return kExitNo;
    case Answer::bound_exhausted:
      break;
  }
  return kExitBound;
}

// Lines with comments stripped and blanks dropped, after the format=1 header.
std::vector<std::string> body_lines(const std::string& text, const char* what) {
  std::istringstream is(text);
  std::string line;
  std::vector<std::string> out;
  bool header = false;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!header) {
      std::istringstream ls(line);
      std::string head;
      ls >> head;
      if (head != "format=1") break;
      header = true;
      continue;
    }
    out.push_back(line);
  }
  if (!header) throw std::invalid_argument(std::string(what) + ": missing format=1 header");
  return out;
}

int keyword_count(const std::string& line, const char* key, const char* what) {
  std::istringstream ls(line);
  std::string head;
  int n = 0;
  if (!(ls >> head >> n) || head != key) {
    throw std::invalid_argument(std::string(what) + ": expected '" + key + " <count>'");
  }
  return n;
}

void report_membership(Output& o, std::ostream& err, const MembershipVerdict& v, const BraidWord& product) {
  o.answer(to_string(v.answer));
  if (v.witness) {
    o.field("witness", indices(*v.witness));
    o.field("product", format_braid(product));
  }
  if (!v.detail.empty()) err << "detail: " << v.detail << "\n";
  for (const auto& note : v.notes) err << "note: " << note << "\n";
}

void report_path(Output& o, const PathSearchResult& r) {
  o.field("path", to_string(r.status));
  o.field("count", std::to_string(r.count));
  if (r.path) {
    o.field("transitions", std::to_string(r.path->transition_count));
    o.field("label", format_group_word(r.path->label_word));
  }
}

void report_dfa(Output& o, const GroupDFA& dfa) {
  o.field("states", std::to_string(dfa.num_states()));
  o.field("edges", std::to_string(dfa.edges().size()));
  o.field("alphabet", std::to_string(dfa.alphabet().size()));
}

}  // namespace

GeneratorSet parse_generator_set(const std::string& text) {
  auto lines = body_lines(text, "generators");
  if (lines.empty()) throw std::invalid_argument("generators: missing strands line");
  GeneratorSet b;
  b.strands = keyword_count(lines[0], "strands", "generators");
  for (std::size_t i = 1; i < lines.size(); ++i) b.braids.push_back(parse_braid(lines[i], b.strands));
  validate(b);
  return b;
}

std::string format_generator_set(const GeneratorSet& b) {
  std::string out = "format=1\nstrands " + std::to_string(b.strands) + "\n";
  for (const auto& w : b.braids) out += format_braid(w) + "\n";
  return out;
}

LabeledDigraph parse_digraph(const std::string& text) {
  auto lines = body_lines(text, "graph");
  if (lines.empty()) throw std::invalid_argument("graph: missing nodes line");
  LabeledDigraph g;
  g.num_nodes = keyword_count(lines[0], "nodes", "graph");
  if (g.num_nodes < 1) throw std::invalid_argument("graph: needs at least one node");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto colon = lines[i].find(':');
    if (colon == std::string::npos) throw std::invalid_argument("graph: expected 'from to : word'");
    std::istringstream ls(lines[i].substr(0, colon));
    LabeledDigraph::Edge e;
    std::string extra;
    if (!(ls >> e.from >> e.to) || (ls >> extra)) throw std::invalid_argument("graph: bad edge endpoints");
    if (e.from < 0 || e.from >= g.num_nodes || e.to < 0 || e.to >= g.num_nodes) {
      throw std::invalid_argument("graph: edge endpoint out of range");
    }
    e.label = parse_braid(lines[i].substr(colon + 1), 3);
    g.edges.push_back(std::move(e));
  }
  return g;
}

std::string format_digraph(const LabeledDigraph& g) {
  std::string out = "format=1\nnodes " + std::to_string(g.num_nodes) + "\n";
  for (const auto& e : g.edges) {
    out += std::to_string(e.from) + " " + std::to_string(e.to) + " : " + format_braid(e.label) + "\n";
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision procedures and encoders for braid semigroups", "braidcomp"};
  app.require_subcommand(1);
  app.fallthrough();
  bool records = false, erratum_log = false;
  SearchBudget budget;
  app.add_flag("--records", records, "Print one key=value per line");
  app.add_flag("--erratum-log", erratum_log, "Print the errata applied to the construction");
  app.add_option("--budget", budget.max_facts, "Fact cap per saturation pass")->check(CLI::PositiveNumber);
  app.add_option("--valence-box", budget.valence_box, "Largest valence box of the exact search")
      ->check(CLI::NonNegativeNumber);

  int n = 3;
  std::string word, word2, gens_path, target, graph_path, out_path, instance_path, dfa_path, values;
  int from = 0, to = 0, s = 1, ssp_target = 0, explore = 0, max_factors = 6, cap = 1024;
  bool decide = false;

  auto* nf = app.add_subcommand("nf", "Garside normal form");
  nf->add_option("--n", n, "Strand count")->check(CLI::Range(2, 64));
  nf->add_option("word", word, "Braid word")->required();

  auto* eq = app.add_subcommand("eq", "Braid equality");
  eq->add_option("--n", n, "Strand count")->check(CLI::Range(2, 64));
  eq->add_option("u", word, "First braid word")->required();
  eq->add_option("v", word2, "Second braid word")->required();

  auto* member = app.add_subcommand("member", "Membership in a B_3 semigroup");
  member->add_option("--n", n, "Strand count (3)");
  member->add_option("--gens", gens_path, "Generator file")->required();
  member->add_option("--target", target, "Target braid word")->required();

  auto* identity = app.add_subcommand("identity", "Identity problem in B_3");
  identity->add_option("--gens", gens_path, "Generator file")->required();
  auto* group = app.add_subcommand("group", "Group problem in B_3");
  group->add_option("--gens", gens_path, "Generator file")->required();
  auto* freeness = app.add_subcommand("free", "Freeness of a two-generator B_3 semigroup");
  freeness->add_option("--gens", gens_path, "Generator file")->required();

  auto* graph = app.add_subcommand("graph-member", "Path product in a B_3-labeled graph");
  graph->add_option("--graph", graph_path, "Graph file")->required();
  graph->add_option("--from", from, "Source node")->required();
  graph->add_option("--to", to, "Destination node")->required();
  graph->add_option("--target", target, "Target braid word")->required();

  auto* pn = app.add_subcommand("gadget-pn", "Build the P_n gadget");
  pn->add_option("--n", n, "Gadget order")->required()->check(CLI::Range(1, 16));
  pn->add_option("--dfa-out", out_path, "Write the automaton here");
  auto* ms = app.add_subcommand("gadget-ms", "Build the M_s gadget");
  ms->add_option("--s", s, "Path length")->required()->check(CLI::Range(1, 1 << 16));
  ms->add_option("--dfa-out", out_path, "Write the automaton here");

  auto* ssp = app.add_subcommand("reduce-ssp", "Reduce a subset-sum instance to B_3 membership");
  ssp->add_option("--values", values, "Item sizes")->required();
  ssp->add_option("--target", ssp_target, "Target sum")->required();
  ssp->add_option("--gens-out", out_path, "Write the generator file here");
  ssp->add_flag("--decide", decide, "Run membership and the subset-sum oracle");

  auto* icp = app.add_subcommand("encode-icp", "Encode an identity-correspondence instance into B_5");
  icp->add_option("--instance", instance_path, "Instance file")->required();
  icp->add_option("--gens-out", out_path, "Write the generator file here");
  icp->add_option("--explore", explore, "Search products of up to this many factors")->check(CLI::Range(0, 8));
  auto* mmpcp = app.add_subcommand("encode-mmpcp", "Encode a mixed modification PCP instance into B_5");
  mmpcp->add_option("--instance", instance_path, "Instance file")->required();
  mmpcp->add_option("--gens-out", out_path, "Write the generator file here");

  auto* products = app.add_subcommand("oracle-products", "Enumerate bounded products");
  products->add_option("--gens", gens_path, "Generator file")->required();
  products->add_option("--target", target, "Target braid word")->required();
  products->add_option("--max-factors", max_factors, "Product length bound")->check(CLI::Range(1, 12));
  auto* path = app.add_subcommand("oracle-path", "Empty-reducing accepted paths of a gadget automaton");
  path->add_option("--dfa", dfa_path, "Automaton file")->required();
  path->add_option("--cap", cap, "Path length bound")->check(CLI::Range(0, 1 << 20));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitYes : kExitError;
  }

  Output o(out, records);
  try {
    if (erratum_log) {
      for (const auto& line : target_grammar_errata()) o.field("erratum", line);
    }
    if (nf->parsed()) {
      BraidWord w = parse_braid(word, n);
      o.answer(format_garside(n == 3 ? normal_form_b3(w) : normal_form_bn(w)));
      return kExitYes;
    }
    if (eq->parsed()) {
      bool same = n == 3 ? equal_b3(parse_braid(word, n), parse_braid(word2, n))
                         : equal_bn(parse_braid(word, n), parse_braid(word2, n));
      o.answer(same ? "equal" : "not equal");
      return same ? kExitYes : kExitNo;
    }
    if (member->parsed() || identity->parsed() || group->parsed()) {
      if (n != 3) throw std::invalid_argument("membership is decided in B_3 only");
      GeneratorSet b = parse_generator_set(read_file(gens_path));
      MembershipVerdict v = member->parsed()     ? membership_b3(b, parse_braid(target, 3), budget)
                            : identity->parsed() ? identity_b3(b, budget)
                                                 : group_problem_b3(b, budget);
      report_membership(o, err, v, v.witness ? product(b, *v.witness) : BraidWord(3));
      return exit_for(v.answer);
    }
    if (freeness->parsed()) {
      GeneratorSet b = parse_generator_set(read_file(gens_path));
      FreenessVerdict v = freeness_b3(b, budget);
      o.answer(to_string(v.answer));
      if (v.answer == Freeness::not_free) {
        o.field("left", indices(v.left));
        o.field("right", indices(v.right));
        o.field("left-product", format_braid(product(b, v.left)));
        o.field("right-product", format_braid(product(b, v.right)));
      }
      if (!v.detail.empty()) err << "detail: " << v.detail << "\n";
      return v.answer == Freeness::free ? kExitYes : v.answer == Freeness::not_free ? kExitNo : kExitBound;
    }
    if (graph->parsed()) {
      LabeledDigraph g = parse_digraph(read_file(graph_path));
      MembershipVerdict v = graph_membership(g, from, to, parse_braid(target, 3), budget);
      o.answer(to_string(v.answer));
      if (v.witness) {
        BraidWord p(3);
        for (int e : *v.witness) p *= g.edges[e].label;
        o.field("edges", indices(*v.witness));
        o.field("product", format_braid(p));
      }
      if (!v.detail.empty()) err << "detail: " << v.detail << "\n";
      for (const auto& note : v.notes) err << "note: " << note << "\n";
      return exit_for(v.answer);
    }
    if (pn->parsed() || ms->parsed()) {
      GroupDFA dfa = pn->parsed() ? build_pn(n) : build_ms(s);
      if (!out_path.empty()) write_file(out_path, format_dfa(dfa));
      report_dfa(o, dfa);
      report_path(o, unique_epsilon_path(dfa, pn->parsed() ? 1 << (n + 1) : 2 * s));
      return kExitYes;
    }
    if (ssp->parsed()) {
      SSPInstance inst{parse_letters(values), ssp_target};
      SSPReduction red = ssp_reduce(inst);
      if (!out_path.empty()) write_file(out_path, format_generator_set(red.generators));
      o.field("generators", std::to_string(red.generators.braids.size()));
      o.field("alphabet", std::to_string(red.alphabet_size));
      o.field("target", format_braid(red.target));
      if (!decide) return kExitYes;
      MembershipVerdict v = membership_b3(red.generators, red.target, budget);
      o.field("subset-sum", ssp_brute(inst) ? "yes" : "no");
      report_membership(o, err, v, v.witness ? product(red.generators, *v.witness) : BraidWord(3));
      return exit_for(v.answer);
    }
    if (icp->parsed() || mmpcp->parsed()) {
      std::string text = read_file(instance_path);
      GeneratorSet b = icp->parsed() ? encode_icp(parse_icp(text)) : encode_mmpcp(parse_mmpcp(text));
      if (!out_path.empty()) write_file(out_path, format_generator_set(b));
      err << "note: encoder only; the " << (icp->parsed() ? "identity" : "freeness")
          << " problem in B_5 is undecidable and is not decided here\n";
      o.field("generators", std::to_string(b.braids.size()));
      for (const auto& w : b.braids) o.field("generator", format_braid(w));
      if (explore > 0) {
        BruteResult r = bounded_identity_search(b, explore);
        o.field("identity-within-" + std::to_string(explore), r.found ? "found" : "none");
        if (r.found) o.field("witness", indices(r.witness));
      }
      return kExitYes;
    }
    if (products->parsed()) {
      GeneratorSet b = parse_generator_set(read_file(gens_path));
      BruteResult r = semigroup_brute(b, parse_braid(target, b.strands), max_factors);
      o.answer(r.found ? "found" : "none");
      if (r.found) {
        o.field("witness", indices(r.witness));
        o.field("product", format_braid(product(b, r.witness)));
      }
      return r.found ? kExitYes : kExitNo;
    }
    if (path->parsed()) {
      PathSearchResult r = unique_epsilon_path(parse_dfa(read_file(dfa_path)), cap);
      report_path(o, r);
      return r.status == PathStatus::unique ? kExitYes : r.status == PathStatus::bound_exhausted ? kExitBound : kExitNo;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace braidcomp

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "braidcomp/braid_core.hpp"
#include "braidcomp/cli.hpp"

using namespace braidcomp;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  fs::path dir = fs::temp_directory_path() / "braidcomp_cli_test";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Value of "key: value" in human output.
std::string field(const std::string& out, const std::string& key) {
  std::istringstream is(out);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
  }
  return "";
}

std::string first_line(const std::string& out) { return out.substr(0, out.find('\n')); }

}  // namespace

TEST_CASE("nf and eq") {
  Result r = call({"nf", "1 2 1"});
  CHECK(r.code == kExitYes);
  CHECK(r.out == "D^1 | e\n");
  CHECK(call({"nf", "-1"}).out == "D^-1 | 1 2\n");
  CHECK(call({"nf", "--n", "4", "1 2 3 1 2 1"}).code == kExitYes);
  CHECK(call({"eq", "1 2 1", "2 1 2"}).code == kExitYes);
  Result ne = call({"eq", "1 2", "2 1"});
  CHECK(ne.code == kExitNo);
  CHECK(ne.out == "not equal\n");
  CHECK(call({"eq", "--n", "4", "1 3", "3 1"}).code == kExitYes);
  CHECK(call({"--records", "eq", "1", "1"}).out == "answer=equal\n");
}

TEST_CASE("errors and help") {
  CHECK(call({}).code == kExitError);
  CHECK(call({"nf", "1 5"}).code == kExitError);
  CHECK(call({"bogus"}).code == kExitError);
  Result missing = call({"member", "--gens", "/nonexistent/gens.txt", "--target", "1"});
  CHECK(missing.code == kExitError);
  CHECK(missing.err.rfind("error: ", 0) == 0);
  CHECK(call({"--help"}).code == kExitYes);
  std::string bad = write_temp("bad.txt", "strands 3\n1\n");
  CHECK(call({"identity", "--gens", bad}).code == kExitError);
}

TEST_CASE("member, identity and group") {
  std::string gens = write_temp("artin.txt", "format=1\nstrands 3\n1\n2\n");
  Result r = call({"member", "--gens", gens, "--target", "1 2 1"});
  CHECK(r.code == kExitYes);
  CHECK(first_line(r.out) == "yes");
  std::string witness = field(r.out, "witness");
  CHECK(witness.size() == 5);
  CHECK(call({"eq", field(r.out, "product"), "1 2 1"}).code == kExitYes);

  Result no = call({"member", "--gens", gens, "--target", "-1"});
  CHECK(no.code == kExitNo);
  CHECK(first_line(no.out) == "no");
  CHECK(call({"member", "--n", "4", "--gens", gens, "--target", "1"}).code == kExitError);

  Result rec = call({"--records", "member", "--gens", gens, "--target", "1 1"});
  CHECK(first_line(rec.out) == "answer=yes");
  CHECK(rec.out.find("witness=1 1\n") != std::string::npos);

  CHECK(call({"identity", "--gens", gens}).code == kExitNo);
  std::string inv = write_temp("inverse.txt", "format=1\nstrands 3\n1 2\n-2 -1\n");
  Result id = call({"identity", "--gens", inv});
  CHECK(id.code == kExitYes);
  CHECK(field(id.out, "witness").size() == 3);
  Result group = call({"group", "--gens", inv});
  CHECK(group.code == kExitYes);
  CHECK(group.err.find("note: ") != std::string::npos);
}

TEST_CASE("bound exhaustion exits with 3") {
  std::string gens = write_temp("bound.txt", "format=1\nstrands 3\n1 2\n2 -1 -1\n");
  Result r = call({"--budget", "1", "member", "--gens", gens, "--target", "1 2 2 -1"});
  CHECK(r.code == kExitBound);
  CHECK(first_line(r.out) == "bound_exhausted");
  std::string dfa = write_temp("p3.dfa", "");
  CHECK(call({"gadget-pn", "--n", "3", "--dfa-out", dfa}).code == kExitYes);
  CHECK(call({"oracle-path", "--dfa", dfa, "--cap", "7"}).code == kExitBound);
}

TEST_CASE("erratum log") {
  Result r = call({"--erratum-log", "nf", "1"});
  CHECK(r.code == kExitYes);
  CHECK(r.out.rfind("erratum: ", 0) == 0);
  CHECK(r.out.find("D^0 | 1\n") != std::string::npos);
}

TEST_CASE("free") {
  std::string quartic = write_temp("quartic.txt", "format=1\nstrands 3\n1 1 1 1\n2 2 2 2\n");
  CHECK(call({"free", "--gens", quartic}).out == "free\n");
  std::string artin = write_temp("artin2.txt", "format=1\nstrands 3\n1\n2\n");
  Result r = call({"free", "--gens", artin});
  CHECK(r.code == kExitNo);
  CHECK(first_line(r.out) == "not_free");
  CHECK(field(r.out, "left") != field(r.out, "right"));
  CHECK(call({"eq", field(r.out, "left-product"), field(r.out, "right-product")}).code == kExitYes);
}

TEST_CASE("graph-member") {
  std::string graph = write_temp("graph.txt", "format=1\nnodes 2\n0 0 : 1\n0 1 : 2\n");
  Result r = call({"graph-member", "--graph", graph, "--from", "0", "--to", "1", "--target", "1 1 2"});
  CHECK(r.code == kExitYes);
  CHECK(field(r.out, "edges") == "1 1 2");
  CHECK(field(r.out, "product") == "1 1 2");
  CHECK(call({"graph-member", "--graph", graph, "--from", "1", "--to", "0", "--target", "e"}).code == kExitNo);
  LabeledDigraph g = parse_digraph(read(graph));
  CHECK(format_digraph(g) == read(graph));
}

TEST_CASE("gadgets and the path oracle") {
  std::string dfa = write_temp("p4.dfa", "");
  Result pn = call({"gadget-pn", "--n", "4", "--dfa-out", dfa});
  CHECK(field(pn.out, "path") == "unique");
  CHECK(field(pn.out, "transitions") == "16");
  Result path = call({"oracle-path", "--dfa", dfa});
  CHECK(path.code == kExitYes);
  CHECK(field(path.out, "count") == "1");
  Result ms = call({"gadget-ms", "--s", "5"});
  CHECK(field(ms.out, "path") == "unique");
  CHECK(field(ms.out, "transitions") == "5");
  CHECK(call({"gadget-pn", "--n", "17"}).code == kExitError);
}

TEST_CASE("reduce-ssp") {
  std::string gens = write_temp("ssp.txt", "");
  Result r = call({"reduce-ssp", "--values", "1 2", "--target", "3", "--gens-out", gens, "--decide"});
  CHECK(r.code == kExitYes);
  CHECK(field(r.out, "subset-sum") == "yes");
  CHECK(first_line(r.out).rfind("generators: ", 0) == 0);
  GeneratorSet b = parse_generator_set(read(gens));
  CHECK(std::to_string(b.braids.size()) == field(r.out, "generators"));
  Result no = call({"reduce-ssp", "--values", "2", "--target", "3", "--decide"});
  CHECK(no.code == kExitNo);
  CHECK(field(no.out, "subset-sum") == "no");
  CHECK(call({"reduce-ssp", "--values", "0", "--target", "3"}).code == kExitError);
}

TEST_CASE("encoders") {
  std::string icp = write_temp("icp.txt", "format=1\n1 | e\n-1 | e\n");
  std::string gens = write_temp("icp_gens.txt", "");
  Result r = call({"encode-icp", "--instance", icp, "--gens-out", gens, "--explore", "2"});
  CHECK(r.code == kExitYes);
  CHECK(field(r.out, "generators") == "2");
  CHECK(field(r.out, "identity-within-2") == "found");
  CHECK(r.err.find("note: encoder only") != std::string::npos);
  CHECK(parse_generator_set(read(gens)).strands == 5);

  std::string mm = write_temp("mmpcp.txt", "format=1\n1 : 1 : 1 2\n2 : 2 : e\n");
  Result m = call({"encode-mmpcp", "--instance", mm});
  CHECK(m.code == kExitYes);
  CHECK(field(m.out, "generators") == "4");
}

TEST_CASE("oracle-products") {
  std::string gens = write_temp("prod.txt", "format=1\nstrands 3\n1\n2\n");
  Result r = call({"oracle-products", "--gens", gens, "--target", "2 1 2"});
  CHECK(r.code == kExitYes);
  CHECK(first_line(r.out) == "found");
  CHECK(call({"eq", field(r.out, "product"), "2 1 2"}).code == kExitYes);
  CHECK(call({"oracle-products", "--gens", gens, "--target", "-1", "--max-factors", "3"}).code == kExitNo);
}

TEST_CASE("generator file round trip") {
  GeneratorSet b{3, {BraidWord(3, {1, -2}), BraidWord(3)}};
  std::string text = format_generator_set(b);
  CHECK(text == "format=1\nstrands 3\n1 -2\ne\n");
  GeneratorSet back = parse_generator_set(text);
  CHECK(back.braids == b.braids);
}

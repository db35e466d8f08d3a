#include "braidcomp/b5_encoders.hpp"

#include <sstream>
#include <stdexcept>

namespace braidcomp {

namespace {

constexpr int kStrands = 5;

void require_binary(const GroupWord& w) {
  if (w.alphabet().size() != 2) throw std::invalid_argument("expected a word over the binary alphabet {a, b}");
}

BraidWord letterwise(const GroupWord& w, const std::vector<int>& a_image, const std::vector<int>& b_image) {
  require_binary(w);
  std::vector<int> out;
  for (int x : w.letters()) {
    const std::vector<int>& img = (x == kLetterA || x == -kLetterA) ? a_image : b_image;
    if (x > 0) {
      out.insert(out.end(), img.begin(), img.end());
    } else {
      for (auto it = img.rbegin(); it != img.rend(); ++it) out.push_back(-*it);
    }
  }
  return BraidWord(kStrands, std::move(out));
}

std::vector<std::string> content_lines(std::string_view text, const char* what) {
  std::istringstream is{std::string(text)};
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
      if (head != "format=1") throw std::invalid_argument(std::string(what) + ": missing format=1 header");
      header = true;
      continue;
    }
    out.push_back(line);
  }
  if (!header) throw std::invalid_argument(std::string(what) + ": missing format=1 header");
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find(sep, start);
    parts.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) return parts;
    start = pos + 1;
  }
}

}  // namespace

BraidWord phi(const GroupWord& w) { return letterwise(w, {1, 1, 1, 1}, {2, 2, 2, 2}); }

BraidWord psi(const GroupWord& w) { return letterwise(w, {4, 4}, {4, 3, 2, 1, 1, 2, 3, 4}); }

BraidWord gamma(const GroupWord& u, const GroupWord& v) { return phi(u) * psi(v); }

void validate(const ICPInstance& inst) {
  if (inst.pairs.empty()) throw std::invalid_argument("ICP instance has no pairs");
  for (const auto& [s, t] : inst.pairs) {
    require_binary(s);
    require_binary(t);
    if (reduce(s) != s || reduce(t) != t) throw std::invalid_argument("ICP words must be reduced");
  }
}

void validate(const MMPCPInstance& inst) {
  if (inst.h.empty()) throw std::invalid_argument("MMPCP instance has no source letters");
  if (inst.h.size() != inst.g.size()) throw std::invalid_argument("MMPCP morphisms differ in domain");
  for (const auto* images : {&inst.h, &inst.g}) {
    for (const GroupWord& w : *images) {
      require_binary(w);
      for (int x : w.letters()) {
        if (x < 0) throw std::invalid_argument("MMPCP images are positive words");
      }
    }
  }
}

GeneratorSet encode_icp(const ICPInstance& inst) {
  validate(inst);
  GeneratorSet out{kStrands, {}};
  for (const auto& [s, t] : inst.pairs) out.braids.push_back(phi(s) * psi(t));
  return out;
}

GeneratorSet encode_mmpcp(const MMPCPInstance& inst) {
  validate(inst);
  const int m = static_cast<int>(inst.h.size());
  GeneratorSet out{kStrands, {}};
  for (int i = 0; i < m; ++i) {
    GroupWord source = alpha_encode(GroupWord(GroupAlphabet(m), {i + 1}));
    out.braids.push_back(gamma(source, inst.h[i]));
    out.braids.push_back(gamma(source, inst.g[i]));
  }
  return out;
}

BruteResult bounded_identity_search(const GeneratorSet& b, int max_factors) {
  return semigroup_brute(b, BraidWord(b.strands), max_factors);
}

ICPInstance parse_icp(std::string_view text) {
  ICPInstance inst;
  for (const std::string& line : content_lines(text, "icp")) {
    auto parts = split(line, '|');
    if (parts.size() != 2) throw std::invalid_argument("icp: expected 's | t' in '" + line + "'");
    inst.pairs.emplace_back(parse_group_word(parts[0], binary_alphabet()),
                            parse_group_word(parts[1], binary_alphabet()));
  }
  validate(inst);
  return inst;
}

std::string format_icp(const ICPInstance& inst) {
  std::string out = "format=1\n";
  for (const auto& [s, t] : inst.pairs) out += format_group_word(s) + " | " + format_group_word(t) + "\n";
  return out;
}

MMPCPInstance parse_mmpcp(std::string_view text) {
  std::vector<std::pair<int, std::pair<GroupWord, GroupWord>>> rows;
  for (const std::string& line : content_lines(text, "mmpcp")) {
    auto parts = split(line, ':');
    if (parts.size() != 3) throw std::invalid_argument("mmpcp: expected 'i : h : g' in '" + line + "'");
    int index = 0;
    try {
      index = std::stoi(parts[0]);
    } catch (const std::exception&) {
      throw std::invalid_argument("mmpcp: bad source letter in '" + line + "'");
    }
    rows.push_back({index, {parse_group_word(parts[1], binary_alphabet()), parse_group_word(parts[2], binary_alphabet())}});
  }
  MMPCPInstance inst;
  inst.h.resize(rows.size());
  inst.g.resize(rows.size());
  std::vector<char> seen(rows.size(), 0);
  for (auto& [index, images] : rows) {
    if (index < 1 || index > static_cast<int>(rows.size()) || seen[index - 1]) {
      throw std::invalid_argument("mmpcp: source letters must be 1..m, each once");
    }
    seen[index - 1] = 1;
    inst.h[index - 1] = images.first;
    inst.g[index - 1] = images.second;
  }
  validate(inst);
  return inst;
}

std::string format_mmpcp(const MMPCPInstance& inst) {
  std::string out = "format=1\n";
  for (std::size_t i = 0; i < inst.h.size(); ++i) {
    out += std::to_string(i + 1) + " : " + format_group_word(inst.h[i]) + " : " + format_group_word(inst.g[i]) + "\n";
  }
  return out;
}

}  // namespace braidcomp

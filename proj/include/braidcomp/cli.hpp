#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "braidcomp/braid_word.hpp"
#include "braidcomp/decision.hpp"

namespace braidcomp {

// Exit codes of the command-line front end.
inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitBound = 3;

// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "format=1", "strands n", then one braid word per line.
GeneratorSet parse_generator_set(const std::string& text);
std::string format_generator_set(const GeneratorSet& b);

// "format=1", "nodes n", then one "from to : word" edge per line.
LabeledDigraph parse_digraph(const std::string& text);
std::string format_digraph(const LabeledDigraph& g);

}  // namespace braidcomp

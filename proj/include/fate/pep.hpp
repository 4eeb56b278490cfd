#pragma once

#include <string>
#include <vector>

#include "fate/net.hpp"

namespace fate {

/// Parses the PEP ll_net subset:
///   PEP / PetriBox / FORMAT_N2
///   PL   lines  <id>"<name>"  with optional M1 (marked) or M0 suffix
///   TR   lines  <id>"<name>"
///   TP   lines  <tid>><pid>
///   PT   lines  <pid><<tid>
/// Unknown attribute suffixes are ignored; a note is appended to
/// `warnings` when given.
PetriNet parse_pep(const std::string& text,
                   std::vector<std::string>* warnings = nullptr);

/// Canonical emitter; parse_pep(print_pep(net)) reproduces the net.
std::string print_pep(const PetriNet& net);

/// One marking per non-empty line: place names separated by commas
/// and/or whitespace, `#` starts a comment.
std::vector<Marking> parse_bad(const std::string& text, const PetriNet& net);

}  // namespace fate

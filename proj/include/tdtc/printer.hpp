#pragma once

#include <string>
#include <vector>

#include "tdtc/parser.hpp"

namespace tdtc {

// Canonical source text for a declaration. print_program(parse(x)) parses
// back to an equal declaration list.
std::string print_declaration(const Declaration& d);
std::string print_program(const std::vector<Declaration>& decls);

} // namespace tdtc

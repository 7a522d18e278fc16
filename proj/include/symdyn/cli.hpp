#pragma once

#include <iosfwd>

namespace symdyn {

// Entry point of the symdyn tool. Exit status: 0 holds/pass, 1 fails with a
// witness, 2 inconclusive, 3 bad input or spec, 4 any other error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace symdyn

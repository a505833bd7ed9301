// cli.hpp -- command-line front end (single binary, subcommands)
//
// Exit codes, total by design:
//   0  pass / Holds / NoCounterexampleFound
//   1  Counterexample
//   2  input or parse error (files, formulas, flags)
//   3  Inconclusive / verification gate failure
//   4  resource cap exceeded
//
// Streams are injected so tests can run commands in-process; the real
// binary passes std::cout / std::cerr.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rtdig {

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rtdig

#pragma once

#include <iosfwd>

namespace pslearn
{

/*! \brief Exit codes of the command-line tool. */
enum exit_code : int
{
  exit_found = 0,
  exit_input_error = 1,
  exit_exhausted = 2,
  exit_timeout = 3,
  exit_internal_error = 4
};

/*! \brief Runs the `learn`, `eval`, `gen` and `export-cnf` subcommands. */
int run_cli( int argc, char const* const* argv, std::ostream& out, std::ostream& err );

} // namespace pslearn

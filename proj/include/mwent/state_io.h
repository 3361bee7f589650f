#pragma once

#include <iosfwd>
#include <string>

#include "mwent/states.h"

namespace mwent {

// Text format:
//
//   modes=<F> cutoff=<c>
//   <n_1> ... <n_F> <re> <im>
//   ...
//
// Amplitudes are written with 17 significant digits so a write/read cycle is
// bit-exact. Blank lines and lines starting with '#' are ignored on input.

void write_state(std::ostream &out, const PureState &state);

/// Throws ParseError carrying the 1-based line number of the first bad line.
PureState read_state(std::istream &in);

void write_state_file(const std::string &path, const PureState &state);
PureState read_state_file(const std::string &path);

}  // namespace mwent

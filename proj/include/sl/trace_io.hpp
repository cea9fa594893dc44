#ifndef SL_TRACE_IO_HPP
#define SL_TRACE_IO_HPP

#include <iosfwd>
#include <string>

#include "sl/mcmc.hpp"

namespace sl {

// Delimited text with a header row; floats printed with 17 significant
// digits so a write/read round trip is bit-faithful. -inf log-likelihoods
// serialize as the sentinel token "-inf".
void write_trace(std::ostream& out, const ChainTrace& trace);
void write_trace_file(const std::string& path, const ChainTrace& trace);

// Throws parse_error-style config_error messages carrying the line number.
ChainTrace read_trace(std::istream& in);
ChainTrace read_trace_file(const std::string& path);

}  // namespace sl

#endif

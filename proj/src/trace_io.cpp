#include "sl/trace_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "sl/errors.hpp"

namespace sl {

namespace {
constexpr char kSep = ',';

std::string fmt_double(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& tok, int line) {
  if (tok == "-inf") return -std::numeric_limits<double>::infinity();
  if (tok == "inf") return std::numeric_limits<double>::infinity();
  double v;
  const auto [ptr, ec] =
      std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw parse_error(line, "bad float '" + tok + "'");
  return v;
}

long parse_long(const std::string& tok, int line) {
  long v;
  const auto [ptr, ec] =
      std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw parse_error(line, "bad integer '" + tok + "'");
  return v;
}

std::vector<std::string> split(const std::string& line_text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line_text) {
    if (c == kSep) {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(std::move(cur));
  return out;
}
}  // namespace

void write_trace(std::ostream& out, const ChainTrace& trace) {
  const int d =
      trace.size() ? int(trace.theta_chain.front().size()) : 0;
  out << "stage,accepted,refreshed_block,loglik";
  for (int j = 0; j < d; ++j) out << ",chain_" << j;
  for (int j = 0; j < d; ++j) out << ",natural_" << j;
  out << '\n';
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out << int(trace.stage[i]) << kSep << int(trace.accepted[i]) << kSep
        << trace.refreshed_block[i] << kSep << fmt_double(trace.loglik[i]);
    for (int j = 0; j < d; ++j)
      out << kSep << fmt_double(trace.theta_chain[i](j));
    for (int j = 0; j < d; ++j)
      out << kSep << fmt_double(trace.theta_natural[i](j));
    out << '\n';
  }
}

void write_trace_file(const std::string& path, const ChainTrace& trace) {
  std::ofstream f(path);
  if (!f) throw invalid_input("write_trace_file: cannot open " + path);
  write_trace(f, trace);
}

ChainTrace read_trace(std::istream& in) {
  std::string line_text;
  if (!std::getline(in, line_text)) throw parse_error(1, "missing header");
  const auto header = split(line_text);
  if (header.size() < 4 || header[0] != "stage")
    throw parse_error(1, "unrecognized header");
  if ((header.size() - 4) % 2 != 0)
    throw parse_error(1, "unpaired parameter columns");
  const int d = int(header.size() - 4) / 2;

  ChainTrace trace;
  int line_no = 1;
  while (std::getline(in, line_text)) {
    ++line_no;
    if (line_text.empty()) continue;
    const auto tok = split(line_text);
    if (int(tok.size()) != 4 + 2 * d)
      throw parse_error(line_no, "expected " + std::to_string(4 + 2 * d) +
                                     " fields, got " +
                                     std::to_string(tok.size()));
    const long stage = parse_long(tok[0], line_no);
    if (stage < 0 || stage > 2) throw parse_error(line_no, "bad stage value");
    trace.stage.push_back(Stage(stage));
    trace.accepted.push_back(std::uint8_t(parse_long(tok[1], line_no) != 0));
    trace.refreshed_block.push_back(int(parse_long(tok[2], line_no)));
    trace.loglik.push_back(parse_double(tok[3], line_no));
    VectorXd chain(d), natural(d);
    for (int j = 0; j < d; ++j) chain(j) = parse_double(tok[4 + j], line_no);
    for (int j = 0; j < d; ++j)
      natural(j) = parse_double(tok[4 + d + j], line_no);
    trace.theta_chain.push_back(std::move(chain));
    trace.theta_natural.push_back(std::move(natural));
  }
  return trace;
}

ChainTrace read_trace_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw invalid_input("read_trace_file: cannot open " + path);
  return read_trace(f);
}

}  // namespace sl

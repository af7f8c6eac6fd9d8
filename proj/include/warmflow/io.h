#ifndef WARMFLOW_IO_H_
#define WARMFLOW_IO_H_

#include <iosfwd>
#include <string>
#include <string_view>

#include "warmflow/flow_core.h"
#include "warmflow/gridgen.h"

namespace warmflow {

// Malformed file contents. line() is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line);
  int line() const { return line_; }

 private:
  int line_;
};

// DIMACS max-flow: "p max <nodes> <arcs>", "n <id> s", "n <id> t",
// "a <tail> <head> <cap>" with 1-based ids; "c" lines are comments. Arcs keep
// their file order as edge indices.
FlowNetwork parse_dimacs(std::string_view text);
std::string write_dimacs(const FlowNetwork& net);

// Flow file: "f <edge_count>" then one non-negative integer per line.
Flow parse_flow(std::string_view text);
std::string write_flow(const Flow& f);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

// JSON form of a grid spec; region rows are strings of '0'/'1'.
std::string grid_spec_to_json(const GridSpec& spec);
GridSpec grid_spec_from_json(std::string_view text);

}  // namespace warmflow

#endif  // WARMFLOW_IO_H_

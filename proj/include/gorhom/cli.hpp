#pragma once

// Text front end: literal grammar, printers, commands and suite files.
//
//   ring Z/4
//   module M = coker [[2]]                      relations are columns
//   module N = Z/2 ⊕ Z/4                        diagonal form, also "Z + Z/3", "0", "free 2"
//   complex X = deg 1..0 : [[1]]                ∂ matrices from the top degree down, free terms
//   complex Y = deg 1..0 : [[1]] terms Z/2, Z/2
//   amodule A = graded 1..0 : [[1]] pieces Z/2, Z/2
//   expect ext 1 M M = Z/2
//   expect not exact X

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gorhom/graded_bridge.hpp"

namespace gorhom::cli {

struct SourcePos {
  int line = 1;
  int column = 1;
};

/// Syntax error or an invariant violated by a literal; what() is "line L, column C: message".
class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos pos, const std::string& message);
  SourcePos pos;
  std::string message;
};

/// Bad command, argument or flag (exit status 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Value = std::variant<FPModule, ChainComplex, GradedAModule>;

struct Expectation {
  SourcePos pos;
  std::string source;              // the line after "expect"
  bool negated = false;            // "expect not <property> ..."
  std::string head;                // command or property name
  std::vector<std::string> args;   // argument source texts
  std::optional<std::string> expected;  // text after '=', if any
};

struct Document {
  Ring ring;
  bool ring_given = false;
  std::map<std::string, Value> names;
  std::vector<Expectation> expects;
};

/// Parses a whole source text. A "ring" line must precede every object.
Document parse(const std::string& text, const Ring& ring = Ring::integers());
/// One literal or name, resolved against `scope`.
Value parse_value(const std::string& text, const Document& scope);
Matrix parse_matrix(const std::string& text, const Ring& ring);

std::string literal(const FPModule& m);
std::string literal(const ChainComplex& x);
std::string literal(const GradedAModule& m);
std::string literal(const Value& v);

struct Options {
  Ring ring;
  std::string format = "text";  // "text" or "tree"
  bool oracle = false;
  std::uint64_t seed = 2024;
  unsigned bound = 64;  // oracle size cap, complex window for cogen X
  unsigned r = 0;
};

struct Output {
  std::vector<std::string> lines;
  std::string tree;  // JSON
  int status = 0;
};

/// Runs one command on argument texts. Throws UsageError, ParseError or Refused.
Output run_command(const std::string& command, const std::vector<std::string>& args, const Options& opts,
                   const Document& scope);
/// Checks every expectation of a parsed suite.
Output run_suite(const Document& doc, const Options& opts);

/// Full program: flags, dispatch, printing. Returns the exit status (0, 1 or 2).
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gorhom::cli

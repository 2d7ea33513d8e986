#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "flounder/program.hpp"

namespace flounder {

struct ParseOptions {
  // Permits clauses defining evar/1 or enonground/1 and terms built from
  // 'VAR'.  Needed for programs that spell out the encoding predicates.
  bool allow_encoding_definitions = false;
  // In programs without delay declarations, tags clauses whose body only
  // calls evar/enonground as delay clauses.  Lets transformed output
  // round-trip through text.
  bool infer_delay_tags = true;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

Program parse_program(std::string_view text, const ParseOptions& options = {});
Program load_program(const std::string& path, const ParseOptions& options = {});

// A conjunction of goals; the trailing '.' is optional.
Goal parse_goal(std::string_view text);

// `names` binds variable names to ids; new names are appended.
Term parse_term(std::string_view text, std::vector<std::string>& names);
Term parse_term(std::string_view text);

}  // namespace flounder

#pragma once

#include <string>
#include <string_view>

#include "ramlab/multipoly.hpp"

namespace ramlab {

struct SourcePos {
  int line = 1;
  int column = 1;
};

class ParseError : public Error {
 public:
  ParseError(ErrorCode code, SourcePos pos, const std::string& message)
      : Error(code, std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message), pos_(pos),
        detail_(message) {}
  SourcePos pos() const { return pos_; }
  const std::string& detail() const { return detail_; }

 private:
  SourcePos pos_;
  std::string detail_;
};

// Grammar: integers, identifiers (ring variables or field parameters),
// + - * / ^ with integer exponents, parentheses. `origin` is the position of
// the first character, used for diagnostics.
RationalFunction parse_rational(const RingPtr& ring, std::string_view text, SourcePos origin = {});
MultiPoly parse_poly(const RingPtr& ring, std::string_view text, SourcePos origin = {});
Coefficient parse_coefficient(const FieldPtr& field, std::string_view text, SourcePos origin = {});

}  // namespace ramlab

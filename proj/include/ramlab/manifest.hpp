#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ramlab/expr.hpp"
#include "ramlab/sweep.hpp"

namespace ramlab {

struct Diagnostic {
  ErrorCode code = ErrorCode::SyntaxError;
  SourcePos pos;
  std::string message;
  std::string to_string() const;
};

// All diagnostics of a rejected manifest; what() lists them one per line.
class ManifestError : public Error {
 public:
  explicit ManifestError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// key = value pairs in source order. Values are stored with runs of
// whitespace collapsed; points as "(a, b)", lists as "[a, b]".
using ArgList = std::vector<std::pair<std::string, std::string>>;

struct SheafDecl {
  std::string g;
  std::string h;
  bool operator==(const SheafDecl&) const = default;
};

struct SSDecl {
  std::string kind;  // zero, conormal-divisor, conormal-point, line-field
  ArgList args;
  SourcePos pos;
  bool operator==(const SSDecl& o) const { return kind == o.kind && args == o.args; }
};

struct TaskDecl {
  std::string kind;
  ArgList args;
  SourcePos pos;
  bool has(const std::string& key) const;
  const std::string& get(const std::string& key) const;  // throws InvalidInput when absent
  bool operator==(const TaskDecl& o) const { return kind == o.kind && args == o.args; }
};

struct Manifest {
  std::uint32_t p = 0;
  std::vector<std::string> vars;
  std::vector<std::string> params;
  std::optional<SheafDecl> sheaf;
  std::vector<SSDecl> ss;
  std::vector<TaskDecl> tasks;

  RingPtr ring() const;  // a fresh ring on every call
  ASheafSpec sheaf_spec(const RingPtr& ring) const;  // throws SemanticError when no sheaf was declared
  std::vector<SSComponent> ss_model(const RingPtr& ring) const;
  bool operator==(const Manifest& o) const {
    return p == o.p && vars == o.vars && params == o.params && sheaf == o.sheaf && ss == o.ss && tasks == o.tasks;
  }
};

extern const char* const kTaskKinds[10];

// Throws ManifestError.
Manifest parse_manifest(std::string_view text);
std::string serialize_manifest(const Manifest& m);

// Typed readers for validated argument values.
PlanarPoint read_point(const FieldPtr& field, const std::string& text);
std::pair<Coefficient, Coefficient> read_pair(const FieldPtr& field, const std::string& text);
std::vector<std::string> read_list(const std::string& text);
std::pair<std::int64_t, std::int64_t> read_range(const std::string& text);  // "a..b" or "a"
std::int64_t read_int(const std::string& text);
bool read_bool(const std::string& text);
// Replaces the identifier N in an expression template by a decimal value.
std::string substitute_n(const std::string& text, std::int64_t n);

}  // namespace ramlab

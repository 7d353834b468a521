#include "ramlab/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "ramlab/errors.hpp"
#include "ramlab/fp.hpp"

namespace ramlab {

const char* const kTaskKinds[10] = {"swan", "phi-dim",         "sweep",       "resolve",  "ep",
                                    "codifferent", "depth-bound", "empirical-depth", "ttfun-check", "gos-line"};

std::string Diagnostic::to_string() const {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + error_code_name(code) + ": " + message;
}

namespace {

std::string join_diagnostics(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) {
    if (!out.empty()) out += "\n";
    out += d.to_string();
  }
  return out;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool is_ident(std::string_view s) {
  if (s.empty() || !ident_start(s[0])) return false;
  return std::all_of(s.begin(), s.end(), ident_char);
}

std::string collapse(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

// Splits at top-level commas.
std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct Abort {};

class Source {
 public:
  explicit Source(std::string_view text) : text_(text) {
    starts_.push_back(0);
    for (std::size_t i = 0; i < text_.size(); ++i)
      if (text_[i] == '\n') starts_.push_back(i + 1);
    // Comments become blanks so offsets stay valid.
    bool in_comment = false;
    for (auto& c : text_) {
      if (c == '\n') in_comment = false;
      else if (c == '#') in_comment = true;
      if (in_comment) c = ' ';
    }
  }
  const std::string& text() const { return text_; }
  std::string& mutable_text() { return text_; }
  SourcePos pos(std::size_t off) const {
    const auto it = std::upper_bound(starts_.begin(), starts_.end(), off) - 1;
    int col = 1;
    for (std::size_t i = *it; i < off; ++i)
      if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) ++col;
    return {static_cast<int>(it - starts_.begin()) + 1, col};
  }

 private:
  std::string text_;
  std::vector<std::size_t> starts_;
};

enum class VT { Expr, Poly, Coord, Covector, PolyPair, Int, PosInt, Range, PolyList, Ident, IntList, Bool, Deferred };

struct KeySpec {
  const char* key;
  VT type;
  bool required;
};

const std::map<std::string, std::vector<KeySpec>>& task_schemas() {
  static const std::map<std::string, std::vector<KeySpec>> m = {
      {"swan", {{"curve", VT::Poly, true}, {"at", VT::Coord, true}}},
      {"phi-dim", {{"f", VT::Expr, true}, {"at", VT::Coord, true}, {"sample", VT::Bool, false}}},
      {"sweep",
       {{"family", VT::Deferred, false},
        {"connect", VT::Expr, false},
        {"param", VT::Ident, false},
        {"N", VT::Range, false},
        {"level", VT::PosInt, false},
        {"at", VT::Coord, true},
        {"xi", VT::Covector, true},
        {"samples", VT::IntList, false}}},
      {"resolve", {{"curve", VT::Poly, true}, {"at", VT::Coord, true}}},
      {"ep", {{"ideal", VT::PolyList, true}, {"radical", VT::PolyList, false}}},
      {"codifferent",
       {{"f", VT::Deferred, true}, {"var", VT::Ident, false}, {"g", VT::Poly, true}, {"at", VT::Coord, true}}},
      {"depth-bound",
       {{"group", VT::PosInt, true},
        {"ix", VT::PosInt, true},
        {"ep", VT::PosInt, false},
        {"ep_ideal", VT::PolyList, false},
        {"r", VT::PosInt, false},
        {"s", VT::PosInt, false},
        {"f", VT::Deferred, false},
        {"var", VT::Ident, false},
        {"g", VT::Poly, false},
        {"at", VT::Coord, false},
        {"locally_constant", VT::Bool, false}}},
      {"empirical-depth",
       {{"at", VT::Coord, true}, {"xi", VT::Covector, true}, {"nmax", VT::PosInt, true}, {"probes", VT::PolyList, false}}},
      {"ttfun-check", {{"f", VT::Expr, true}, {"at", VT::Coord, true}, {"xi", VT::Covector, true}}},
      {"gos-line", {{"line", VT::Poly, true}}},
  };
  return m;
}

const std::map<std::string, std::vector<KeySpec>>& ss_schemas() {
  static const std::map<std::string, std::vector<KeySpec>> m = {
      {"zero", {}},
      {"conormal-divisor", {{"h", VT::Poly, true}}},
      {"conormal-point", {{"at", VT::Coord, true}}},
      {"line-field", {{"h", VT::Poly, true}, {"omega", VT::PolyPair, true}}},
  };
  return m;
}

bool planar_task(const std::string& kind) { return kind != "gos-line" && kind != "ep" && kind != "depth-bound"; }
bool needs_sheaf(const std::string& kind) {
  return kind == "swan" || kind == "phi-dim" || kind == "sweep" || kind == "empirical-depth" || kind == "gos-line";
}

struct RawArg {
  std::string key;
  std::size_t key_off;
  std::size_t val_off;
  std::string_view raw;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : src_(text) {}

  Manifest run() {
    split_statements();
    // Header statements first, so expressions anywhere can see the ring.
    for (const auto& st : stmts_) guarded(st.begin, [&] { header(st); });
    if (m_.p == 0 || m_.vars.empty()) {
      if (diags_.empty()) {
        if (m_.p == 0) diag(ErrorCode::SemanticError, 0, "missing 'p = <prime>' statement");
        if (m_.vars.empty()) diag(ErrorCode::SemanticError, 0, "missing 'ring' statement");
      }
      throw ManifestError(diags_);
    }
    try {
      ring_ = m_.ring();
    } catch (const Error& e) {
      diag(ErrorCode::SemanticError, ring_off_, e.what());
      throw ManifestError(diags_);
    }
    for (const auto& st : stmts_) guarded(st.begin, [&] { body(st); });
    for (const auto& t : m_.tasks)
      if (needs_sheaf(t.kind) && !m_.sheaf && sheaf_ok_)
        diags_.push_back({ErrorCode::SemanticError, t.pos, "task " + t.kind + " needs a 'sheaf' statement"});
    if (!diags_.empty()) throw ManifestError(diags_);
    return m_;
  }

 private:
  struct Stmt {
    std::size_t begin, end;  // [begin, end) excluding ';'
    std::string keyword;
    std::size_t kw_off;
    std::size_t rest;        // offset after the keyword
  };

  [[noreturn]] void error(ErrorCode code, std::size_t off, const std::string& msg) {
    diag(code, off, msg);
    throw Abort{};
  }
  void diag(ErrorCode code, std::size_t off, const std::string& msg) { diags_.push_back({code, src_.pos(off), msg}); }

  void guarded(std::size_t off, const std::function<void()>& f) {
    try {
      f();
    } catch (const Abort&) {
    } catch (const ParseError& e) {
      diags_.push_back({e.code(), e.pos(), e.detail()});
    } catch (const Error& e) {
      diag(ErrorCode::SemanticError, off, e.what());
    }
  }

  const std::string& T() const { return src_.text(); }

  std::size_t skip_ws(std::size_t i, std::size_t end) const {
    while (i < end && std::isspace(static_cast<unsigned char>(T()[i]))) ++i;
    return i;
  }

  void split_statements() {
    const std::string& t = T();
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= t.size(); ++i) {
      const char c = i < t.size() ? t[i] : ';';
      if (c == '(' || c == '[') ++depth;
      if ((c == ')' || c == ']') && depth > 0) --depth;
      if (c != ';' || (depth > 0 && i < t.size())) continue;
      depth = 0;
      const std::size_t b = skip_ws(start, i);
      if (b < i) {
        Stmt st{b, i, "", b, b};
        std::size_t k = b;
        while (k < i && ident_char(t[k])) ++k;
        st.keyword = t.substr(b, k - b);
        st.rest = k;
        if (st.keyword.empty() || !ident_start(t[b])) {
          diag(ErrorCode::SyntaxError, b, "expected a statement keyword");
        } else {
          stmts_.push_back(st);
        }
      }
      start = i + 1;
    }
  }

  std::vector<std::string> ident_list(std::size_t b, std::size_t e, const char* what) {
    std::vector<std::string> out;
    for (auto part : split_commas(std::string_view(T()).substr(b, e - b))) {
      const auto name = trim(part);
      const std::size_t at = static_cast<std::size_t>(part.data() - T().data());
      if (!is_ident(name)) error(ErrorCode::SyntaxError, name.empty() ? at : static_cast<std::size_t>(name.data() - T().data()),
                                 std::string("expected a ") + what + " name");
      if (std::find(out.begin(), out.end(), name) != out.end())
        error(ErrorCode::SemanticError, static_cast<std::size_t>(name.data() - T().data()),
              std::string("duplicate ") + what + " '" + std::string(name) + "'");
      out.emplace_back(name);
    }
    return out;
  }

  void header(const Stmt& st) {
    const std::size_t after = skip_ws(st.rest, st.end);
    if (st.keyword == "p") {
      if (after >= st.end || T()[after] != '=') error(ErrorCode::SyntaxError, after, "expected '=' after p");
      if (m_.p != 0) error(ErrorCode::SemanticError, st.kw_off, "duplicate 'p' statement");
      const std::size_t vb = skip_ws(after + 1, st.end);
      const auto v = trim(std::string_view(T()).substr(vb, st.end - vb));
      std::uint64_t p = 0;
      const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), p);
      if (v.empty() || ec != std::errc() || ptr != v.data() + v.size())
        error(ErrorCode::SyntaxError, vb, "expected a positive integer for p");
      if (p > 0xFFFFFFFFull) error(ErrorCode::SemanticError, vb, "p is too large");
      if (!is_prime(p)) error(ErrorCode::SemanticError, vb, "p = " + std::to_string(p) + " is not prime");
      if (p == 2)
        error(ErrorCode::SemanticError, vb, "p = 2 is excluded: Artin-Schreier data here requires p > 2");
      m_.p = static_cast<std::uint32_t>(p);
    } else if (st.keyword == "ring") {
      if (!m_.vars.empty()) error(ErrorCode::SemanticError, st.kw_off, "duplicate 'ring' statement");
      auto vars = ident_list(st.rest, st.end, "variable");
      if (vars.size() < 2 || vars.size() > 3)
        error(ErrorCode::SemanticError, after, "ring needs 2 variables (affine chart) or 3 (homogeneous coordinates)");
      m_.vars = std::move(vars);
      ring_off_ = after;
    } else if (st.keyword == "params") {
      if (!m_.params.empty()) error(ErrorCode::SemanticError, st.kw_off, "duplicate 'params' statement");
      m_.params = ident_list(st.rest, st.end, "parameter");
    } else if (st.keyword != "sheaf" && st.keyword != "ss" && st.keyword != "task") {
      error(ErrorCode::SyntaxError, st.kw_off, "unknown statement '" + st.keyword + "'");
    }
  }

  void check_names() {
    for (const auto& v : m_.vars)
      if (std::find(m_.params.begin(), m_.params.end(), v) != m_.params.end())
        error(ErrorCode::SemanticError, ring_off_, "'" + v + "' is both a variable and a parameter");
  }

  // key = value pairs in [b, e).
  std::vector<RawArg> args(std::size_t b, std::size_t e) {
    std::vector<RawArg> out;
    const std::string& t = T();
    std::vector<std::size_t> eqs;
    int depth = 0;
    for (std::size_t i = b; i < e; ++i) {
      const char c = t[i];
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') --depth;
      if (c == '=' && depth == 0) eqs.push_back(i);
    }
    std::vector<std::size_t> key_start;
    for (auto q : eqs) {
      std::size_t k = q;
      while (k > b && std::isspace(static_cast<unsigned char>(t[k - 1]))) --k;
      const std::size_t kend = k;
      while (k > b && ident_char(t[k - 1])) --k;
      if (k == kend || !ident_start(t[k])) error(ErrorCode::SyntaxError, q, "expected a key before '='");
      key_start.push_back(k);
    }
    const std::size_t first = skip_ws(b, e);
    if (first < e && (key_start.empty() || key_start[0] != first))
      error(ErrorCode::SyntaxError, first, "expected 'key = value'");
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      RawArg a;
      a.key_off = key_start[i];
      a.key = t.substr(key_start[i], eqs[i] - key_start[i]);
      a.key = std::string(trim(a.key));
      const std::size_t vend = i + 1 < eqs.size() ? key_start[i + 1] : e;
      a.val_off = skip_ws(eqs[i] + 1, vend);
      a.raw = std::string_view(t).substr(a.val_off, vend - a.val_off);
      if (trim(a.raw).empty()) error(ErrorCode::SyntaxError, a.val_off, "missing value for '" + a.key + "'");
      for (const auto& prev : out)
        if (prev.key == a.key) error(ErrorCode::SemanticError, a.key_off, "duplicate key '" + a.key + "'");
      out.push_back(a);
    }
    return out;
  }

  std::string kind_word(std::size_t& i, std::size_t e, const char* what) {
    i = skip_ws(i, e);
    const std::size_t b = i;
    while (i < e && (std::isalnum(static_cast<unsigned char>(T()[i])) || T()[i] == '-' || T()[i] == '_')) ++i;
    if (b == i) error(ErrorCode::SyntaxError, b, std::string("expected a ") + what + " kind");
    return T().substr(b, i - b);
  }

  SourcePos pos(std::size_t off) const { return src_.pos(off); }

  void body(const Stmt& st) {
    if (st.keyword == "p" || st.keyword == "ring" || st.keyword == "params") return;
    if (st.keyword == "sheaf") {
      check_names();
      sheaf(st);
    } else if (st.keyword == "ss") {
      std::size_t i = st.rest;
      const std::size_t kw = skip_ws(i, st.end);
      const std::string kind = kind_word(i, st.end, "ss component");
      const auto it = ss_schemas().find(kind);
      if (it == ss_schemas().end()) error(ErrorCode::SemanticError, kw, "unknown ss component kind '" + kind + "'");
      SSDecl d;
      d.kind = kind;
      d.pos = pos(kw);
      d.args = typed(args(i, st.end), it->second, "ss " + kind);
      m_.ss.push_back(std::move(d));
    } else if (st.keyword == "task") {
      std::size_t i = st.rest;
      const std::size_t kw = skip_ws(i, st.end);
      const std::string kind = kind_word(i, st.end, "task");
      const auto it = task_schemas().find(kind);
      if (it == task_schemas().end()) error(ErrorCode::SemanticError, kw, "unknown task kind '" + kind + "'");
      if (planar_task(kind) && m_.vars.size() != 2)
        error(ErrorCode::SemanticError, kw, "task " + kind + " needs a ring with 2 variables");
      if (kind == "gos-line" && m_.vars.size() != 3)
        error(ErrorCode::SemanticError, kw, "task gos-line needs homogeneous coordinates (3 variables)");
      const auto raw = args(i, st.end);
      TaskDecl d;
      d.kind = kind;
      d.pos = pos(kw);
      d.args = typed(raw, it->second, "task " + kind);
      cross_check(d, raw, kw);
      m_.tasks.push_back(std::move(d));
    }
  }

  void sheaf(const Stmt& st) {
    if (m_.sheaf) error(ErrorCode::SemanticError, st.kw_off, "duplicate 'sheaf' statement");
    sheaf_ok_ = false;
    // "g = <expr> bang h = <expr>"
    std::string& t = src_.mutable_text();
    std::optional<std::size_t> bang;
    for (std::size_t i = st.rest; i + 4 <= st.end; ++i) {
      if (t.compare(i, 4, "bang") == 0 && (i == 0 || !ident_char(t[i - 1])) && (i + 4 == st.end || !ident_char(t[i + 4]))) {
        if (bang) error(ErrorCode::SyntaxError, i, "duplicate 'bang'");
        bang = i;
      }
    }
    if (!bang) error(ErrorCode::SyntaxError, skip_ws(st.rest, st.end), "expected 'g = <expr> bang h = <expr>'");
    const std::string saved = t.substr(*bang, 4);
    t.replace(*bang, 4, "    ");
    std::vector<RawArg> raw;
    try {
      raw = args(st.rest, st.end);
    } catch (...) {
      t.replace(*bang, 4, saved);
      throw;
    }
    t.replace(*bang, 4, saved);
    if (raw.size() != 2 || raw[0].key != "g" || raw[1].key != "h" || raw[1].key_off < *bang || raw[0].key_off > *bang)
      error(ErrorCode::SyntaxError, skip_ws(st.rest, st.end), "expected 'g = <expr> bang h = <expr>'");
    raw[0].raw = raw[0].raw.substr(0, *bang - raw[0].val_off);
    if (trim(raw[0].raw).empty()) error(ErrorCode::SyntaxError, raw[0].val_off, "missing value for 'g'");
    const RationalFunction g = parse_rational(ring_, raw[0].raw, pos(raw[0].val_off));
    const MultiPoly h = parse_poly(ring_, raw[1].raw, pos(raw[1].val_off));
    try {
      ASheafSpec::make(g, h);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      error(ErrorCode::SemanticError, raw[0].val_off, e.what());
    }
    m_.sheaf = SheafDecl{collapse(raw[0].raw), collapse(raw[1].raw)};
    sheaf_ok_ = true;
  }

  std::string pair_text(const RawArg& a, const std::function<void(std::string_view, std::size_t)>& check) {
    const auto v = trim(a.raw);
    if (v.size() < 2 || v.front() != '(' || v.back() != ')')
      error(ErrorCode::SyntaxError, a.val_off, "expected '(a, b)' for '" + a.key + "'");
    const auto inner = v.substr(1, v.size() - 2);
    const auto parts = split_commas(inner);
    if (parts.size() != 2) error(ErrorCode::SyntaxError, a.val_off, "expected two entries for '" + a.key + "'");
    for (auto part : parts) {
      if (trim(part).empty()) error(ErrorCode::SyntaxError, a.val_off, "empty entry in '" + a.key + "'");
      check(part, static_cast<std::size_t>(part.data() - T().data()));
    }
    return "(" + collapse(parts[0]) + ", " + collapse(parts[1]) + ")";
  }

  std::string list_text(const RawArg& a, const std::function<void(std::string_view, std::size_t)>& check,
                        bool allow_empty) {
    const auto v = trim(a.raw);
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
      error(ErrorCode::SyntaxError, a.val_off, "expected '[a, b, ...]' for '" + a.key + "'");
    const auto inner = v.substr(1, v.size() - 2);
    if (trim(inner).empty()) {
      if (!allow_empty) error(ErrorCode::SemanticError, a.val_off, "'" + a.key + "' must not be empty");
      return "[]";
    }
    std::string out = "[";
    for (auto part : split_commas(inner)) {
      if (trim(part).empty()) error(ErrorCode::SyntaxError, a.val_off, "empty entry in '" + a.key + "'");
      check(part, static_cast<std::size_t>(part.data() - T().data()));
      if (out.size() > 1) out += ", ";
      out += collapse(part);
    }
    return out + "]";
  }

  std::int64_t int_value(std::string_view s, std::size_t off, const std::string& key) {
    s = trim(s);
    std::int64_t v = 0;
    const char* b = s.data();
    if (!s.empty() && s[0] == '+') ++b;
    const auto [ptr, ec] = std::from_chars(b, s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
      error(ErrorCode::SyntaxError, off, "expected an integer for '" + key + "'");
    return v;
  }

  std::string typed_value(const RawArg& a, VT type) {
    const auto v = trim(a.raw);
    const FieldPtr field = ring_->field();
    switch (type) {
      case VT::Deferred: return collapse(a.raw);
      case VT::Expr: parse_rational(ring_, a.raw, pos(a.val_off)); return collapse(a.raw);
      case VT::Poly: parse_poly(ring_, a.raw, pos(a.val_off)); return collapse(a.raw);
      case VT::Coord:
      case VT::Covector: {
        std::vector<Coefficient> cs;
        auto s = pair_text(a, [&](std::string_view part, std::size_t off) {
          cs.push_back(parse_coefficient(field, part, pos(off)));
        });
        if (type == VT::Covector && cs[0].is_zero() && cs[1].is_zero())
          error(ErrorCode::SemanticError, a.val_off, "covector '" + a.key + "' is zero");
        return s;
      }
      case VT::PolyPair:
        return pair_text(a, [&](std::string_view part, std::size_t off) { parse_poly(ring_, part, pos(off)); });
      case VT::Int: return std::to_string(int_value(v, a.val_off, a.key));
      case VT::PosInt: {
        const auto n = int_value(v, a.val_off, a.key);
        if (n < 1) error(ErrorCode::SemanticError, a.val_off, "'" + a.key + "' must be positive");
        return std::to_string(n);
      }
      case VT::Range: {
        const auto dots = v.find("..");
        const auto lo = int_value(v.substr(0, dots), a.val_off, a.key);
        const auto hi = dots == std::string_view::npos ? lo : int_value(v.substr(dots + 2), a.val_off, a.key);
        if (lo < 2 || hi < lo || hi - lo > 64)
          error(ErrorCode::SemanticError, a.val_off, "'" + a.key + "' must be a range a..b with 2 <= a <= b <= a+64");
        return lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi);
      }
      case VT::PolyList:
        return list_text(a, [&](std::string_view part, std::size_t off) { parse_poly(ring_, part, pos(off)); },
                         a.key == "probes");
      case VT::Ident:
        if (!is_ident(v)) error(ErrorCode::SyntaxError, a.val_off, "expected a name for '" + a.key + "'");
        if (ring_->var_index(std::string(v)) || field->param_index(std::string(v)))
          error(ErrorCode::SemanticError, a.val_off, "'" + std::string(v) + "' is already declared");
        return std::string(v);
      case VT::IntList:
        return list_text(a, [&](std::string_view part, std::size_t off) {
          const auto n = int_value(part, off, a.key);
          if (n < 0 || n >= static_cast<std::int64_t>(m_.p))
            error(ErrorCode::SemanticError, off, "'" + a.key + "' entries must lie in 0..p-1");
        }, true);
      case VT::Bool:
        if (v != "true" && v != "false") error(ErrorCode::SyntaxError, a.val_off, "expected true or false for '" + a.key + "'");
        return std::string(v);
    }
    return {};
  }

  ArgList typed(const std::vector<RawArg>& raw, const std::vector<KeySpec>& schema, const std::string& where) {
    ArgList out;
    for (const auto& a : raw) {
      const auto it = std::find_if(schema.begin(), schema.end(), [&](const KeySpec& k) { return a.key == k.key; });
      if (it == schema.end()) error(ErrorCode::SemanticError, a.key_off, "unknown key '" + a.key + "' for " + where);
      out.emplace_back(a.key, typed_value(a, it->type));
    }
    for (const auto& k : schema)
      if (k.required && std::none_of(raw.begin(), raw.end(), [&](const RawArg& a) { return a.key == k.key; }))
        error(ErrorCode::SemanticError, raw.empty() ? 0 : raw.front().key_off,
              "missing key '" + std::string(k.key) + "' for " + where);
    return out;
  }

  const RawArg& raw_of(const std::vector<RawArg>& raw, const std::string& key) {
    for (const auto& a : raw)
      if (a.key == key) return a;
    throw Abort{};
  }

  RingPtr extended_ring(const std::string& param) const {
    return ring_->with_field(ring_->field()->with_params({param}));
  }

  void cross_check(const TaskDecl& d, const std::vector<RawArg>& raw, std::size_t kw) {
    auto need_one = [&](const char* a, const char* b) {
      if (d.has(a) == d.has(b))
        error(ErrorCode::SemanticError, kw, "task " + d.kind + " needs exactly one of '" + a + "' and '" + b + "'");
    };
    auto codifferent_f = [&] {
      const std::string var = d.has("var") ? d.get("var") : "t";
      if (ring_->var_index(var) || ring_->field()->param_index(var))
        error(ErrorCode::SemanticError, kw, "'" + var + "' is already declared");
      std::vector<std::string> vars = m_.vars;
      vars.push_back(var);
      const RingPtr r3 = Ring::make(ring_->field(), vars);
      const auto& f = raw_of(raw, "f");
      parse_poly(r3, f.raw, pos(f.val_off));
    };
    if (d.kind == "sweep") {
      need_one("family", "connect");
      const std::string param = d.has("param") ? d.get("param") : "s";
      if (ring_->var_index(param) || ring_->field()->param_index(param))
        error(ErrorCode::SemanticError, kw, "'" + param + "' is already declared");
      if (d.has("connect") && (d.has("N") || d.has("level")))
        error(ErrorCode::SemanticError, kw, "'N' and 'level' apply to 'family' sweeps only");
      if (d.has("family")) {
        if (!d.has("N") && !d.has("level"))
          error(ErrorCode::SemanticError, kw, "a family sweep needs 'level' or 'N'");
        const auto& fam = raw_of(raw, "family");
        const RingPtr rs = extended_ring(param);
        if (d.has("N")) {
          const auto [lo, hi] = read_range(d.get("N"));
          for (auto n = lo; n <= hi; ++n) parse_rational(rs, substitute_n(std::string(fam.raw), n), pos(fam.val_off));
        } else {
          parse_rational(rs, fam.raw, pos(fam.val_off));
        }
      }
    } else if (d.kind == "codifferent") {
      codifferent_f();
    } else if (d.kind == "depth-bound") {
      const bool lc = d.has("locally_constant") && read_bool(d.get("locally_constant"));
      if (!lc) {
        need_one("ep", "ep_ideal");
        const bool rs = d.has("r") || d.has("s");
        const bool pres = d.has("f") || d.has("g") || d.has("at") || d.has("var");
        if (rs == pres)
          error(ErrorCode::SemanticError, kw, "task depth-bound needs either 'r' and 's' or a presentation 'f', 'g', 'at'");
        if (rs && !(d.has("r") && d.has("s"))) error(ErrorCode::SemanticError, kw, "'r' and 's' go together");
        if (pres) {
          if (!(d.has("f") && d.has("g") && d.has("at")))
            error(ErrorCode::SemanticError, kw, "a presentation needs 'f', 'g' and 'at'");
          codifferent_f();
        }
        const auto ix = read_int(d.get("ix"));
        if (ix != 1 && ix != 2) error(ErrorCode::SemanticError, raw_of(raw, "ix").val_off, "'ix' must be 1 or 2");
      }
    }
  }

  Source src_;
  std::vector<Stmt> stmts_;
  std::vector<Diagnostic> diags_;
  Manifest m_;
  RingPtr ring_;
  std::size_t ring_off_ = 0;
  bool sheaf_ok_ = true;
};

}  // namespace

ManifestError::ManifestError(std::vector<Diagnostic> diagnostics)
    : Error(diagnostics.empty() ? ErrorCode::SyntaxError : diagnostics.front().code, join_diagnostics(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

bool TaskDecl::has(const std::string& key) const {
  return std::any_of(args.begin(), args.end(), [&](const auto& kv) { return kv.first == key; });
}

const std::string& TaskDecl::get(const std::string& key) const {
  for (const auto& kv : args)
    if (kv.first == key) return kv.second;
  fail(ErrorCode::InvalidInput, "task " + kind + " has no key '" + key + "'");
}

RingPtr Manifest::ring() const { return Ring::make(Field::make(p, params), vars); }

ASheafSpec Manifest::sheaf_spec(const RingPtr& ring) const {
  if (!sheaf) fail(ErrorCode::SemanticError, "no sheaf declared");
  return ASheafSpec::make(parse_rational(ring, sheaf->g), parse_poly(ring, sheaf->h));
}

std::vector<SSComponent> Manifest::ss_model(const RingPtr& ring) const {
  std::vector<SSComponent> out;
  for (const auto& d : ss) {
    auto get = [&](const std::string& k) -> const std::string& {
      for (const auto& kv : d.args)
        if (kv.first == k) return kv.second;
      fail(ErrorCode::InvalidInput, "ss " + d.kind + " has no key '" + k + "'");
    };
    if (d.kind == "zero") {
      out.push_back(SSComponent::zero_section());
    } else if (d.kind == "conormal-divisor") {
      out.push_back(SSComponent::conormal_to_divisor(parse_poly(ring, get("h"))));
    } else if (d.kind == "conormal-point") {
      out.push_back(SSComponent::conormal_to_point(read_point(ring->field(), get("at"))));
    } else {
      const auto parts = split_commas(std::string_view(get("omega")).substr(1, get("omega").size() - 2));
      out.push_back(SSComponent::line_field(parse_poly(ring, get("h")),
                                            {parse_poly(ring, trim(parts[0])), parse_poly(ring, trim(parts[1]))}));
    }
  }
  return out;
}

Manifest parse_manifest(std::string_view text) { return Parser(text).run(); }

std::string serialize_manifest(const Manifest& m) {
  std::ostringstream out;
  auto list = [&](const std::vector<std::string>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
  };
  auto args = [&](const ArgList& a) {
    for (const auto& [k, v] : a) out << ' ' << k << " = " << v;
  };
  out << "p = " << m.p << ";\n";
  out << "ring ";
  list(m.vars);
  out << ";\n";
  if (!m.params.empty()) {
    out << "params ";
    list(m.params);
    out << ";\n";
  }
  if (m.sheaf) out << "sheaf g = " << m.sheaf->g << " bang h = " << m.sheaf->h << ";\n";
  for (const auto& s : m.ss) {
    out << "ss " << s.kind;
    args(s.args);
    out << ";\n";
  }
  for (const auto& t : m.tasks) {
    out << "task " << t.kind;
    args(t.args);
    out << ";\n";
  }
  return out.str();
}

std::pair<Coefficient, Coefficient> read_pair(const FieldPtr& field, const std::string& text) {
  const auto v = trim(text);
  if (v.size() < 2 || v.front() != '(' || v.back() != ')') fail(ErrorCode::SyntaxError, "expected '(a, b)'");
  const auto parts = split_commas(v.substr(1, v.size() - 2));
  if (parts.size() != 2) fail(ErrorCode::SyntaxError, "expected '(a, b)'");
  return {parse_coefficient(field, trim(parts[0])), parse_coefficient(field, trim(parts[1]))};
}

PlanarPoint read_point(const FieldPtr& field, const std::string& text) {
  auto [x, y] = read_pair(field, text);
  return PlanarPoint{x, y};
}

std::vector<std::string> read_list(const std::string& text) {
  const auto v = trim(text);
  if (v.size() < 2 || v.front() != '[' || v.back() != ']') fail(ErrorCode::SyntaxError, "expected '[...]'");
  const auto inner = v.substr(1, v.size() - 2);
  std::vector<std::string> out;
  if (trim(inner).empty()) return out;
  for (auto part : split_commas(inner)) out.push_back(collapse(part));
  return out;
}

std::int64_t read_int(const std::string& text) {
  const auto v = trim(text);
  std::int64_t n = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) fail(ErrorCode::SyntaxError, "expected an integer");
  return n;
}

std::pair<std::int64_t, std::int64_t> read_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto n = read_int(text);
    return {n, n};
  }
  return {read_int(text.substr(0, dots)), read_int(text.substr(dots + 2))};
}

bool read_bool(const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  fail(ErrorCode::SyntaxError, "expected true or false");
}

std::string substitute_n(const std::string& text, std::int64_t n) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const bool boundary_before = i == 0 || !ident_char(text[i - 1]);
    const bool boundary_after = i + 1 == text.size() || !ident_char(text[i + 1]);
    if (text[i] == 'N' && boundary_before && boundary_after) {
      out += std::to_string(n);
    } else {
      out += text[i];
    }
  }
  return out;
}

}  // namespace ramlab

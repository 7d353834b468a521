#include "ramlab/report.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ramlab/blowup.hpp"
#include "ramlab/bounds.hpp"
#include "ramlab/errors.hpp"

namespace ramlab {

namespace {

std::string S(std::int64_t v) { return std::to_string(v); }
std::string S(const BigInt& v) { return v.str(); }

PrecisionPolicy policy_of(const RunOptions& o) {
  PrecisionPolicy p;
  if (o.precision_guard) p.guard = *o.precision_guard;
  p.reduction_seed = o.seed;
  return p;
}

CotangentPoint covector(const FieldPtr& field, const TaskDecl& t) {
  const auto [a, b] = read_pair(field, t.get("xi"));
  return {read_point(field, t.get("at")), a, b};
}

std::vector<MultiPoly> poly_list(const RingPtr& ring, const std::string& text) {
  std::vector<MultiPoly> out;
  for (const auto& s : read_list(text)) out.push_back(parse_poly(ring, s));
  return out;
}

Json ram_json(const RamificationReport& r) {
  Json j;
  j["sw"] = S(r.sw);
  j["dim"] = S(r.dim);
  j["dimtot"] = S(r.dimtot());
  j["unramified"] = r.unramified;
  j["leading"] = r.leading.field() ? r.leading.to_string() : "0";
  j["perfection"] = S(static_cast<std::int64_t>(r.perfection));
  j["precision"] = S(r.precision);
  return j;
}

Json cell_json(const SweepCell& c) {
  if (c.ok()) return ram_json(*c.report);
  Json j;
  j["error"] = {{"code", c.error_code}, {"message", c.error}};
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void sweep_rows(std::ostringstream& csv, std::int64_t level, const SweepTable& t) {
  for (const auto& sl : t.slices) {
    const std::pair<const char*, const SweepCell*> fibers[] = {{"rho=0", &sl.special}, {"rho generic", &sl.generic_fiber}};
    for (const auto& [name, cell] : fibers) {
      csv << level << ',' << csv_field(sl.label) << ',' << name << ',';
      if (cell->ok()) csv << cell->report->sw << ',' << cell->report->dimtot();
      else csv << ',';
      csv << ',' << (sl.dim_phi ? S(*sl.dim_phi) : "") << ',' << (sl.jump ? "true" : "false") << ','
          << (sl.ttfun ? (*sl.ttfun ? "true" : "false") : "") << ',' << csv_field(cell->ok() ? "" : cell->error_code)
          << '\n';
    }
  }
}

Json sweep_json(std::int64_t level, const SweepTable& t) {
  Json j;
  j["level"] = S(level);
  j["param"] = t.param;
  j["congruence"] = S(t.congruence);
  j["family"] = t.family;
  Json slices = Json::array();
  for (const auto& sl : t.slices) {
    Json s;
    s["label"] = sl.label;
    s["generic"] = sl.generic;
    if (sl.ttfun) s["ttfun"] = *sl.ttfun;
    if (!sl.ttfun_note.empty()) s["ttfun_note"] = sl.ttfun_note;
    s["special"] = cell_json(sl.special);
    s["generic_fiber"] = cell_json(sl.generic_fiber);
    if (sl.dim_phi) s["dim_phi"] = S(*sl.dim_phi);
    s["jump"] = sl.jump;
    slices.push_back(std::move(s));
  }
  j["slices"] = std::move(slices);
  j["exceptional"] = t.exceptional;
  j["semicontinuous"] = t.semicontinuous;
  j["violations"] = t.violations;
  return j;
}

std::string sweep_line(std::int64_t level, const SweepTable& t) {
  std::ostringstream o;
  o << "level " << level << ":";
  for (const auto& sl : t.slices) {
    o << "  [" << sl.label << "] sw ";
    o << (sl.special.ok() ? S(sl.special.report->sw) : sl.special.error_code) << "/";
    o << (sl.generic_fiber.ok() ? S(sl.generic_fiber.report->sw) : sl.generic_fiber.error_code);
    if (sl.dim_phi) o << " dim phi " << *sl.dim_phi;
    if (sl.jump) o << " JUMP";
    if (sl.ttfun && !*sl.ttfun) o << " (not a ttfun)";
  }
  if (!t.semicontinuous) o << "  semicontinuity violated";
  return o.str();
}

void task_swan(const Manifest&, const TaskDecl& t, const RingPtr& ring, const ASheafSpec& sh, const RunOptions& o,
               TaskResult& r) {
  const auto P = read_point(ring->field(), t.get("at"));
  const auto rep = swan_on_curve(sh, parse_poly(ring, t.get("curve")), P, policy_of(o));
  r.data = ram_json(rep);
  r.lines.push_back("sw = " + S(rep.sw) + ", dimtot = " + S(rep.dimtot()));
}

void task_phi_dim(const TaskDecl& t, const RingPtr& ring, const ASheafSpec& sh, const RunOptions& o, TaskResult& r) {
  PhiDimOptions opt;
  opt.precision = policy_of(o);
  opt.sample = t.has("sample") && read_bool(t.get("sample"));
  const auto rep = dl_phi_dim_report(sh, parse_rational(ring, t.get("f")), read_point(ring->field(), t.get("at")), opt);
  r.data["special"] = ram_json(rep.special);
  r.data["generic"] = ram_json(rep.generic);
  r.data["dim_phi"] = S(rep.dim_phi);
  r.data["generic_param"] = rep.generic_param;
  Json sampled = Json::array();
  for (auto v : rep.sampled) sampled.push_back(S(v));
  r.data["sampled"] = sampled;
  r.lines.push_back("a_s = " + S(rep.special.dimtot()) + ", a_eta = " + S(rep.generic.dimtot()) +
                    ", dim phi = " + S(rep.dim_phi));
}

void task_sweep(const Manifest& m, const TaskDecl& t, const RingPtr& ring, const ASheafSpec& sh, const RunOptions& o,
                TaskResult& r) {
  const std::string param = t.has("param") ? t.get("param") : "s";
  const auto ss = m.ss_model(ring);
  const auto nu = covector(ring->field(), t);
  SweepOptions so;
  so.precision = policy_of(o);
  so.parallel = o.parallel;
  if (t.has("samples")) {
    so.samples.clear();
    for (const auto& v : read_list(t.get("samples"))) so.samples.push_back(read_int(v));
  } else if (t.has("connect")) {
    so.samples = {0, 1};
  }
  std::vector<std::pair<std::int64_t, FamilySpec>> fams;
  if (t.has("connect")) {
    auto fam = connect_family(parse_rational(ring, t.get("connect")), nu, param);
    fams.emplace_back(fam.congruence, std::move(fam));
  } else {
    const RingPtr rs = ring->with_field(ring->field()->with_params({param}));
    if (t.has("N")) {
      const auto [lo, hi] = read_range(t.get("N"));
      for (auto n = lo; n <= hi; ++n) {
        const int level = t.has("level") ? static_cast<int>(read_int(t.get("level"))) : static_cast<int>(n);
        fams.emplace_back(n, FamilySpec::make(parse_rational(rs, substitute_n(t.get("family"), n)), param, nu, level));
      }
    } else {
      const int level = static_cast<int>(read_int(t.get("level")));
      fams.emplace_back(level, FamilySpec::make(parse_rational(rs, t.get("family")), param, nu, level));
    }
  }
  std::ostringstream csv;
  csv << sweep_csv_header() << '\n';
  Json tables = Json::array();
  bool semicontinuous = true;
  for (const auto& [level, fam] : fams) {
    const auto table = sweep_family(sh, fam, ss, so);
    tables.push_back(sweep_json(level, table));
    sweep_rows(csv, level, table);
    r.lines.push_back(sweep_line(level, table));
    semicontinuous = semicontinuous && table.semicontinuous;
  }
  r.data["tables"] = std::move(tables);
  r.data["semicontinuous"] = semicontinuous;
  r.csv.push_back({"task" + std::to_string(r.index) + "-sweep", csv.str()});
}

void task_resolve(const TaskDecl& t, const RingPtr& ring, TaskResult& r) {
  const auto tree = resolve_curve(parse_poly(ring, t.get("curve")), read_point(ring->field(), t.get("at")));
  r.data["stages"] = S(tree.stages);
  r.data["root_mult"] = S(tree.root_mult);
  r.data["max_exceptional_mult"] = S(tree.M1);
  r.data["non_reduced"] = tree.non_reduced;
  Json nodes = Json::array();
  for (const auto& n : tree.nodes) {
    Json j;
    j["id"] = S(static_cast<std::int64_t>(n.id));
    j["stage"] = S(n.stage);
    j["chart"] = n.parent.name;
    j["center"] = n.center.to_string();
    j["strict_mult"] = S(n.strict_mult);
    j["exc_mult"] = S(n.exc_mult);
    if (n.parent_node) j["parent"] = S(static_cast<std::int64_t>(*n.parent_node));
    nodes.push_back(std::move(j));
  }
  r.data["nodes"] = std::move(nodes);
  Json leaves = Json::array();
  for (const auto& l : tree.leaves) leaves.push_back({{"chart", l.chart.name}, {"strict", to_string(l.strict)}});
  r.data["leaves"] = std::move(leaves);
  r.lines.push_back("stages = " + S(tree.stages) + ", blowups = " + S(static_cast<std::int64_t>(tree.nodes.size())) +
                    ", max exceptional multiplicity = " + S(tree.M1));
}

EpReport compute_ep(const RingPtr& ring, const std::string& ideal, const std::optional<std::string>& radical) {
  const IdealHandle I(ring, poly_list(ring, ideal));
  if (radical) return ep_report(I, EpMode::assisted(IdealHandle(ring, poly_list(ring, *radical))));
  return ep_report(I);
}

Json ep_json(const EpReport& e) {
  Json j;
  j["ep"] = S(e.ep);
  j["shape"] = e.shape;
  Json rad = Json::array();
  for (const auto& g : e.radical) rad.push_back(to_string(g));
  j["radical"] = std::move(rad);
  j["radical_assumed"] = e.radical_assumed;
  return j;
}

void task_ep(const TaskDecl& t, const RingPtr& ring, TaskResult& r) {
  const auto e = compute_ep(ring, t.get("ideal"),
                            t.has("radical") ? std::optional<std::string>(t.get("radical")) : std::nullopt);
  r.data = ep_json(e);
  r.lines.push_back("ep = " + S(e.ep) + " (" + e.shape + (e.radical_assumed ? ", radical assumed" : "") + ")");
}

CodifferentReport compute_codifferent(const TaskDecl& t, const RingPtr& ring) {
  const std::string var = t.has("var") ? t.get("var") : "t";
  std::vector<std::string> vars = ring->vars();
  vars.push_back(var);
  const RingPtr r3 = Ring::make(ring->field(), vars);
  return codifferent_r_s(parse_poly(r3, t.get("f")), parse_poly(r3, t.get("g")), read_point(ring->field(), t.get("at")),
                         r3->nvars() - 1);
}

Json codifferent_json(const CodifferentReport& c) {
  Json j;
  j["f"] = to_string(c.f);
  j["delta"] = to_string(c.delta);
  j["g"] = to_string(c.g);
  j["r"] = S(c.r);
  j["s"] = S(c.s);
  Json ann = Json::array();
  for (const auto& a : c.annihilator) ann.push_back(to_string(a));
  j["annihilator"] = std::move(ann);
  j["warnings"] = c.warnings;
  return j;
}

void task_codifferent(const TaskDecl& t, const RingPtr& ring, TaskResult& r) {
  const auto c = compute_codifferent(t, ring);
  r.data = codifferent_json(c);
  r.lines.push_back("Delta = " + to_string(c.delta) + ", r = " + S(c.r) + ", s = " + S(c.s));
  for (const auto& w : c.warnings) r.lines.push_back("warning: " + w);
}

void task_depth_bound(const TaskDecl& t, const RingPtr& ring, TaskResult& r) {
  const bool lc = t.has("locally_constant") && read_bool(t.get("locally_constant"));
  std::int64_t ep_max = 0, rr = 0, ss = 0;
  if (!lc) {
    if (t.has("ep")) {
      ep_max = read_int(t.get("ep"));
    } else {
      const auto e = compute_ep(ring, t.get("ep_ideal"), std::nullopt);
      ep_max = e.ep;
      r.data["ep_source"] = ep_json(e);
    }
    if (t.has("r")) {
      rr = read_int(t.get("r"));
      ss = read_int(t.get("s"));
    } else {
      const auto c = compute_codifferent(t, ring);
      rr = c.r;
      ss = c.s;
      r.data["codifferent"] = codifferent_json(c);
    }
  }
  const auto b = depth_bound(ring->p(), read_int(t.get("group")), read_int(t.get("ix")), ep_max, rr, ss, lc);
  Json j;
  j["p"] = S(b.p);
  j["group_order"] = S(b.group_order);
  j["i_x"] = S(b.i_x);
  j["ep"] = S(b.ep_max);
  j["r"] = S(b.r);
  j["s"] = S(b.s);
  j["M"] = S(b.M);
  j["M1"] = S(b.M1);
  j["M2"] = S(b.M2);
  j["N"] = S(b.N);
  j["locally_constant"] = b.locally_constant;
  for (auto& [k, v] : r.data.items()) j[k] = v;
  r.data = std::move(j);
  r.lines.push_back(lc ? "locally constant: N = 2"
                       : "M = " + S(b.M) + ", M1 = " + S(b.M1) + ", M2 = " + S(b.M2) + ", N = " + S(b.N));
}

void task_empirical_depth(const Manifest& m, const TaskDecl& t, const RingPtr& ring, const ASheafSpec& sh,
                          const RunOptions& o, TaskResult& r) {
  SweepOptions so;
  so.precision = policy_of(o);
  so.parallel = o.parallel;
  const auto probes = t.has("probes") ? poly_list(ring, t.get("probes")) : std::vector<MultiPoly>{};
  const auto est = empirical_depth(sh, m.ss_model(ring), covector(ring->field(), t),
                                   static_cast<int>(read_int(t.get("nmax"))), probes, so);
  r.data["n_lower"] = S(est.n_lower);
  r.data["stable_found"] = est.stable_found;
  r.data["base"] = est.base;
  r.data["caveat"] = est.caveat;
  Json ev = Json::array();
  std::ostringstream csv;
  csv << "probe," << sweep_csv_header() << '\n';
  for (const auto& e : est.evidence) {
    Json j;
    j["level"] = S(e.level);
    j["probe"] = e.probe;
    j["certified"] = e.certified;
    j["jump"] = e.jump;
    j["table"] = sweep_json(e.table.congruence, e.table);
    ev.push_back(std::move(j));
    std::ostringstream rows;
    sweep_rows(rows, e.table.congruence, e.table);
    std::istringstream in(rows.str());
    for (std::string line; std::getline(in, line);) csv << csv_field(e.probe) << ',' << line << '\n';
    r.lines.push_back("probe " + e.probe + " (order " + S(e.table.congruence) + "): " +
                      (e.jump ? "jump" : "stable") + (e.certified ? "" : ", not a ttfam"));
  }
  r.data["evidence"] = std::move(ev);
  r.csv.push_back({"task" + std::to_string(r.index) + "-depth", csv.str()});
  r.lines.push_back("base ttfun " + est.base + "; N_lower = " + S(est.n_lower) +
                    (est.stable_found ? "" : " (no stable level up to Nmax)") + "; " + est.caveat);
}

void task_ttfun(const Manifest& m, const TaskDecl& t, const RingPtr& ring, TaskResult& r) {
  const auto c = is_ttfun(parse_rational(ring, t.get("f")), m.ss_model(ring), covector(ring->field(), t));
  r.data["certified"] = c.certified;
  r.data["reason"] = c.reason;
  if (c.component) r.data["component"] = S(static_cast<std::int64_t>(*c.component));
  r.data["scale"] = c.scale.to_string();
  r.data["determinant"] = c.determinant.to_string();
  Json rows = Json::array();
  for (const auto& row : c.tangents) {
    Json jr = Json::array();
    for (const auto& v : row) jr.push_back(v.to_string());
    rows.push_back(std::move(jr));
  }
  r.data["tangents"] = std::move(rows);
  if (c.witness) r.data["witness"] = to_string(*c.witness);
  r.lines.push_back(c.certified ? "certified (determinant " + c.determinant.to_string() + ")" : "refuted: " + c.reason);
}

void task_gos(const TaskDecl& t, const RingPtr& ring, const ASheafSpec& sh, const RunOptions& o, TaskResult& r) {
  const auto g = gos_euler_line_report(sh, parse_poly(ring, t.get("line")), policy_of(o));
  r.data["chi"] = S(g.chi);
  r.data["boundary"] = g.boundary;
  Json sw = Json::array();
  for (auto v : g.swans) sw.push_back(S(v));
  r.data["swans"] = std::move(sw);
  r.lines.push_back("chi_c = " + S(g.chi) + " with " + S(static_cast<std::int64_t>(g.boundary.size())) +
                    " boundary point(s)");
}

}  // namespace

bool RunReport::any_error() const {
  return std::any_of(tasks.begin(), tasks.end(), [](const TaskResult& t) { return !t.ok; });
}

std::string sweep_csv_header() { return "level,slice,fiber,sw,dimtot,dim_phi,jump,ttfun,error"; }

TaskResult run_task(const Manifest& m, const TaskDecl& t, std::size_t index, const RunOptions& o) {
  TaskResult r;
  r.index = index;
  r.kind = t.kind;
  const auto start = std::chrono::steady_clock::now();
  try {
    const RingPtr ring = m.ring();
    auto sheaf = [&] { return m.sheaf_spec(ring); };
    if (t.kind == "swan") task_swan(m, t, ring, sheaf(), o, r);
    else if (t.kind == "phi-dim") task_phi_dim(t, ring, sheaf(), o, r);
    else if (t.kind == "sweep") task_sweep(m, t, ring, sheaf(), o, r);
    else if (t.kind == "resolve") task_resolve(t, ring, r);
    else if (t.kind == "ep") task_ep(t, ring, r);
    else if (t.kind == "codifferent") task_codifferent(t, ring, r);
    else if (t.kind == "depth-bound") task_depth_bound(t, ring, r);
    else if (t.kind == "empirical-depth") task_empirical_depth(m, t, ring, sheaf(), o, r);
    else if (t.kind == "ttfun-check") task_ttfun(m, t, ring, r);
    else if (t.kind == "gos-line") task_gos(t, ring, sheaf(), o, r);
    else fail(ErrorCode::InvalidInput, "unknown task kind " + t.kind);
  } catch (const Error& e) {
    r.ok = false;
    r.error_code = e.code_name();
    r.error = e.what();
    r.data = Json::object();
    r.csv.clear();
    r.lines = {"error " + r.error_code + ": " + r.error};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

RunReport run_manifest(const Manifest& m, const RunOptions& o) {
  RunReport rep;
  rep.p = m.p;
  for (std::size_t i = 0; i < m.tasks.size(); ++i) rep.tasks.push_back(run_task(m, m.tasks[i], i + 1, o));
  return rep;
}

std::string report_json(const RunReport& r) {
  Json j;
  j["schema"] = kReportSchema;
  j["p"] = S(static_cast<std::int64_t>(r.p));
  j["ok"] = !r.any_error();
  Json tasks = Json::array();
  for (const auto& t : r.tasks) {
    Json jt;
    jt["index"] = S(static_cast<std::int64_t>(t.index));
    jt["kind"] = t.kind;
    jt["status"] = t.ok ? "ok" : "error";
    if (t.ok) jt["result"] = t.data;
    else jt["error"] = {{"code", t.error_code}, {"message", t.error}};
    tasks.push_back(std::move(jt));
  }
  j["tasks"] = std::move(tasks);
  return j.dump(2) + "\n";
}

std::string report_text(const RunReport& r) {
  std::ostringstream o;
  o << kReportSchema << "  p = " << r.p << ", " << r.tasks.size() << " task(s)\n";
  for (const auto& t : r.tasks) {
    o << "\n[" << t.index << "] " << t.kind << (t.ok ? "" : "  FAILED");
    o << "  (" << std::fixed;
    o.precision(3);
    o << t.seconds << " s)\n";
    for (const auto& l : t.lines) o << "  " << l << '\n';
  }
  return o.str();
}

OutputFormat parse_format(const std::string& s) {
  if (s == "text") return OutputFormat::Text;
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "all") return OutputFormat::All;
  fail(ErrorCode::InvalidInput, "unknown format '" + s + "' (text, json, csv or all)");
}

std::vector<std::string> write_report(const RunReport& r, const std::string& dir, OutputFormat format) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> written;
  auto put = [&](const std::string& name, const std::string& content) {
    const fs::path path = fs::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::InvalidInput, "cannot write " + path.string());
    out << content;
    written.push_back(path.string());
  };
  const bool all = format == OutputFormat::All;
  if (all || format == OutputFormat::Text) put("report.txt", report_text(r));
  if (all || format == OutputFormat::Json) put("report.json", report_json(r));
  if (all || format == OutputFormat::Csv)
    for (const auto& t : r.tasks)
      for (const auto& c : t.csv) put(c.name + ".csv", c.content);
  return written;
}

}  // namespace ramlab

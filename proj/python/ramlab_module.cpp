#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ramlab/bounds.hpp"
#include "ramlab/localgeom.hpp"
#include "ramlab/manifest.hpp"
#include "ramlab/report.hpp"

namespace py = pybind11;
using namespace ramlab;

namespace {

PyObject* g_ramlab_error = nullptr;
PyObject* g_manifest_error = nullptr;

RingPtr planar_ring(std::uint32_t p, const std::vector<std::string>& params) {
  return Ring::make(Field::make(p, params), {"x", "y"});
}

// Accepts (a, b) with ints or coefficient expressions, or the text "(a, b)".
PlanarPoint to_point(const RingPtr& r, const py::object& at) {
  if (py::isinstance<py::str>(at)) return read_point(r->field(), at.cast<std::string>());
  auto seq = at.cast<py::sequence>();
  if (py::len(seq) != 2) throw py::value_error("point must have two coordinates");
  return read_point(r->field(), "(" + py::str(seq[0]).cast<std::string>() + ", " +
                                    py::str(seq[1]).cast<std::string>() + ")");
}

py::int_ big(const BigInt& n) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(n.str().c_str(), nullptr, 10));
}

py::dict ramification_dict(const RamificationReport& rep) {
  py::dict d;
  d["sw"] = rep.sw;
  d["dim"] = rep.dim;
  d["dimtot"] = rep.dimtot();
  d["unramified"] = rep.unramified;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact wild-ramification invariants of rank-1 Artin-Schreier sheaves";

  g_ramlab_error = PyErr_NewException("ramlab.RamlabError", PyExc_RuntimeError, nullptr);
  g_manifest_error = PyErr_NewException("ramlab.ManifestError", g_ramlab_error, nullptr);
  m.attr("RamlabError") = py::handle(g_ramlab_error);
  m.attr("ManifestError") = py::handle(g_manifest_error);

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ManifestError& e) {
      py::list diags;
      for (const auto& d : e.diagnostics())
        diags.append(py::make_tuple(d.pos.line, d.pos.column, error_code_name(d.code), d.message));
      PyErr_SetObject(g_manifest_error, py::make_tuple(e.what(), e.code_name(), diags).ptr());
    } catch (const Error& e) {
      PyErr_SetObject(g_ramlab_error, py::make_tuple(e.what(), e.code_name()).ptr());
    }
  });

  m.def(
      "canonical_manifest", [](const std::string& text) { return serialize_manifest(parse_manifest(text)); },
      py::arg("text"), "Parse a manifest and return its canonical text.");

  m.def(
      "run_manifest_json",
      [](const std::string& text, unsigned parallel, std::optional<std::uint64_t> seed) {
        const Manifest man = parse_manifest(text);
        RunOptions opt;
        opt.parallel = parallel;
        opt.seed = seed;
        RunReport rep;
        {
          py::gil_scoped_release release;
          rep = run_manifest(man, opt);
        }
        return report_json(rep);
      },
      py::arg("text"), py::arg("parallel") = 1, py::arg("seed") = py::none());

  m.def(
      "swan",
      [](std::uint32_t p, const std::string& g, const std::string& h, const std::string& curve, const py::object& at,
         const std::vector<std::string>& params) {
        auto r = planar_ring(p, params);
        auto sheaf = ASheafSpec::make(parse_rational(r, g), parse_poly(r, h));
        return ramification_dict(swan_on_curve(sheaf, parse_poly(r, curve), to_point(r, at)));
      },
      py::arg("p"), py::arg("g"), py::arg("h"), py::arg("curve"), py::arg("at") = py::make_tuple(0, 0),
      py::arg("params") = std::vector<std::string>{});

  m.def(
      "phi_dim",
      [](std::uint32_t p, const std::string& g, const std::string& h, const std::string& f, const py::object& at,
         const std::vector<std::string>& params) {
        auto r = planar_ring(p, params);
        auto sheaf = ASheafSpec::make(parse_rational(r, g), parse_poly(r, h));
        const auto rep = dl_phi_dim_report(sheaf, parse_rational(r, f), to_point(r, at));
        py::dict d;
        d["special"] = ramification_dict(rep.special);
        d["generic"] = ramification_dict(rep.generic);
        d["dim_phi"] = rep.dim_phi;
        return d;
      },
      py::arg("p"), py::arg("g"), py::arg("h"), py::arg("f"), py::arg("at") = py::make_tuple(0, 0),
      py::arg("params") = std::vector<std::string>{});

  m.def(
      "intersection_multiplicity",
      [](std::uint32_t p, const std::string& f, const std::string& g, const py::object& at) {
        auto r = planar_ring(p, {});
        return intersection_multiplicity(parse_poly(r, f), parse_poly(r, g), to_point(r, at));
      },
      py::arg("p"), py::arg("f"), py::arg("g"), py::arg("at") = py::make_tuple(0, 0),
      "Local intersection number at a point, or None when the curves share a component there.");

  m.def(
      "depth_bound",
      [](std::int64_t p, std::int64_t group_order, std::int64_t ix, std::int64_t ep_max, std::int64_t r,
         std::int64_t s, bool locally_constant) {
        const auto b = depth_bound(p, group_order, ix, ep_max, r, s, locally_constant);
        py::dict d;
        d["M"] = b.M;
        d["M1"] = big(b.M1);
        d["M2"] = big(b.M2);
        d["N"] = big(b.N);
        return d;
      },
      py::arg("p"), py::arg("group_order"), py::arg("ix"), py::arg("ep"), py::arg("r"), py::arg("s"),
      py::arg("locally_constant") = false);
}

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "entropic/conjectures.hpp"
#include "entropic/entropy.hpp"
#include "entropic/equality.hpp"
#include "entropic/error.hpp"
#include "entropic/frontier.hpp"
#include "entropic/io.hpp"
#include "entropic/observables.hpp"
#include "entropic/sampling.hpp"

namespace py = pybind11;
using namespace entropic;

namespace {

RenyiOrder order(double a) { return std::isinf(a) ? RenyiOrder::infinity() : RenyiOrder(a); }
RenyiOrder order_or_dual(double a, std::optional<double> b) { return b ? order(*b) : dual_order(order(a)); }

py::array_t<double> points_array(const std::vector<EntropyPoint>& pts) {
  py::array_t<double> a({static_cast<py::ssize_t>(pts.size()), py::ssize_t{2}});
  auto m = a.mutable_unchecked<2>();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    m(i, 0) = pts[i].hx;
    m(i, 1) = pts[i].hy;
  }
  return a;
}

py::object json_object(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entropic uncertainty diagrams and Maassen-Uffink equality";

  static py::exception<Error> error(m, "EntropicError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<ObservablePair>(m, "ObservablePair")
      .def_property_readonly("label", &ObservablePair::label)
      .def_property_readonly("dimension", &ObservablePair::dimension)
      .def_property_readonly("matrix",
                             [](const ObservablePair& w) {
                               const auto& a = w.matrix();
                               py::array_t<std::complex<double>> out(
                                   {static_cast<py::ssize_t>(a.rows()), static_cast<py::ssize_t>(a.cols())});
                               auto v = out.mutable_unchecked<2>();
                               for (std::size_t i = 0; i < a.rows(); ++i)
                                 for (std::size_t j = 0; j < a.cols(); ++j) v(i, j) = a(i, j);
                               return out;
                             })
      .def("__repr__", [](const ObservablePair& w) { return "<ObservablePair " + w.label() + ">"; });

  m.def("unitary", [](const std::string& spec, bool force) { return resolve_unitary(spec, force); },
        py::arg("spec"), py::arg("force") = false);
  m.def("fourier_cyclic", &fourier_cyclic, py::arg("d"));
  m.def("builtin", &builtin, py::arg("name"));

  m.def("overlap", [](const ObservablePair& w) {
    const auto o = overlap_data(w.matrix());
    py::dict d;
    d["c"] = o.c;
    d["bound_bits"] = o.mu_bound_bits;
    d["inv_c2"] = o.inv_c2;
    d["inv_c2_is_integer"] = o.inv_c2_is_integer;
    return d;
  });

  m.def(
      "entropy_pair",
      [](const ObservablePair& w, const CVector& psi, double alpha, std::optional<double> beta) {
        CVector v = psi;
        normalize(v);
        const auto p = entropy_pair(w, v, order(alpha), order_or_dual(alpha, beta));
        return py::make_tuple(p.hx, p.hy);
      },
      py::arg("w"), py::arg("psi"), py::arg("alpha") = 1.0, py::arg("beta") = py::none());

  m.def(
      "sample_diagram",
      [](const ObservablePair& w, std::size_t n, double alpha, std::optional<double> beta, const std::string& strategy,
         std::uint64_t seed, std::size_t threads) {
        SampleOptions o;
        o.threads = threads;
        std::vector<EntropyPoint> pts;
        {
          py::gil_scoped_release release;
          pts = sample_diagram(w, order(alpha), order_or_dual(alpha, beta), n, SamplingStrategy::parse(strategy),
                               SeededRng(seed), o)
                    .points;
        }
        return points_array(pts);
      },
      py::arg("w"), py::arg("n"), py::arg("alpha") = 1.0, py::arg("beta") = py::none(), py::arg("strategy") = "haar",
      py::arg("seed") = 0, py::arg("threads") = 1);

  m.def(
      "equality_supports",
      [](const ObservablePair& w, double tol) {
        const auto scan = find_equality_supports(w, tol);
        py::list hits;
        for (const auto& h : scan.hits) {
          py::dict d;
          d["sX"] = h.supports.sx;
          d["sY"] = h.supports.sy;
          d["witness"] = h.witness;
          d["verified"] = h.report.is_equality && h.report.structural_ok;
          hits.append(d);
        }
        py::dict out;
        out["candidates"] = scan.candidates;
        out["hits"] = hits;
        return out;
      },
      py::arg("w"), py::arg("tol") = 1e-8);

  m.def(
      "check_equality",
      [](const ObservablePair& w, const CVector& psi, double alpha, std::optional<double> beta) {
        CVector v = psi;
        normalize(v);
        return json_object(to_json(check_equality_state(w, v, order(alpha), order_or_dual(alpha, beta))));
      },
      py::arg("w"), py::arg("psi"), py::arg("alpha") = 1.0, py::arg("beta") = py::none());

  m.def(
      "d2_exact_curve",
      [](const ObservablePair& w, double alpha, std::optional<double> beta, std::size_t m) {
        return points_array(d2_exact_curve(w, order(alpha), order_or_dual(alpha, beta), m).points);
      },
      py::arg("w"), py::arg("alpha") = 1.0, py::arg("beta") = py::none(), py::arg("m") = 512);

  m.def(
      "optimized_frontier",
      [](const ObservablePair& w, double alpha, std::optional<double> beta, std::size_t n_delta, std::uint64_t seed,
         std::size_t threads) {
        OptimizeOptions o;
        o.seed = seed;
        o.threads = threads;
        FrontierCurve c;
        {
          py::gil_scoped_release release;
          c = optimized_frontier(w, order(alpha), order_or_dual(alpha, beta), n_delta, o);
        }
        return points_array(c.points);
      },
      py::arg("w"), py::arg("alpha") = 1.0, py::arg("beta") = py::none(), py::arg("n_delta") = 64,
      py::arg("seed") = 0, py::arg("threads") = 1);

  m.def(
      "probe_rrs",
      [](std::size_t d, double alpha, std::size_t n, std::uint64_t seed) {
        ProbeOptions o;
        o.n = n;
        o.seed = seed;
        ProbeReport r;
        {
          py::gil_scoped_release release;
          r = probe_rrs_sufficiency(d, order(alpha), dual_order(order(alpha)), o);
        }
        return json_object(to_json(r));
      },
      py::arg("d"), py::arg("alpha") = 1.0, py::arg("n") = 100000, py::arg("seed") = 0);
}

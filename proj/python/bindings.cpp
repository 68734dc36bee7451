#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "unitri/degrees.hpp"
#include "unitri/genericity.hpp"
#include "unitri/io.hpp"
#include "unitri/tridiagonalizer.hpp"

namespace py = pybind11;
using namespace unitri;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const ComplexArray& arr) {
    if (arr.ndim() != 2 || arr.shape(0) != arr.shape(1)) throw InvalidInput("expected a square 2-D array");
    const auto n = static_cast<std::size_t>(arr.shape(0));
    if (n < 1 || n > 4) throw InvalidInput("n must be between 1 and 4");
    const auto view = arr.unchecked<2>();
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j));
    return m;
}

ComplexArray to_array(const ComplexMatrix& m) {
    ComplexArray out({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = m(i, j);
    return out;
}

ComplexArray to_array(const Vector& v) {
    ComplexArray out(static_cast<py::ssize_t>(v.size()));
    auto view = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < v.size(); ++i) view(static_cast<py::ssize_t>(i)) = v[i];
    return out;
}

py::dict result_dict(const TridiagResult& r) {
    py::dict d;
    d["U"] = to_array(r.U);
    d["T"] = to_array(r.T);
    d["off_residual"] = r.off_residual;
    d["unitarity_residual"] = r.unitarity_residual;
    d["provenance"] = std::string(to_string(r.provenance));
    d["perturbation"] = r.perturbation;
    d["polished"] = r.polished;
    d["seed"] = r.seed;
    py::list flag;
    for (const auto& f : r.flag.basis) flag.append(to_array(f));
    d["flag"] = flag;
    py::list cands;
    for (const auto& c : r.candidates) {
        py::dict cd;
        cd["v"] = to_array(c.point.v.coords());
        cd["sigma4"] = c.sigma4;
        cd["shortcut"] = c.shortcut;
        cands.append(cd);
    }
    d["candidates"] = cands;
    d["diagnostics"] = r.diagnostics;
    return d;
}

py::dict counts_dict(const CountSummary& s) {
    py::dict d;
    d["count"] = s.count;
    d["stable"] = s.stable;
    d["agreement"] = s.agreement;
    py::list per;
    for (const auto& t : s.trials) per.append(t.count);
    d["per_trial"] = per;
    return d;
}

} // namespace

PYBIND11_MODULE(_unitri, m) {
    m.doc() = "Unitary tridiagonalization of complex matrices up to 4x4";

    static py::exception<Unsolved> unsolved(m, "Unsolved", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Unsolved& e) {
            py::set_error(unsolved, e.what());
        } catch (const InvalidInput& e) {
            py::set_error(PyExc_ValueError, e.what());
        } catch (const Error& e) {
            py::set_error(PyExc_RuntimeError, e.what());
        }
    });

    m.def(
        "tridiagonalize",
        [](const ComplexArray& a, double tol, std::uint64_t seed, std::size_t sweep_samples, bool all_flags,
           bool force_perturbation) {
            TridiagOptions o;
            o.tol = tol;
            o.seed = seed;
            o.sweep.samples = sweep_samples;
            o.sweep.seed = seed;
            o.all_flags = all_flags;
            o.force_perturbation = force_perturbation;
            const ComplexMatrix mat = to_matrix(a);
            TridiagResult r;
            {
                py::gil_scoped_release release;
                r = tridiagonalize(mat, o);
            }
            return result_dict(r);
        },
        py::arg("a"), py::arg("tol") = 1e-8, py::arg("seed") = 42, py::arg("sweep_samples") = 720,
        py::arg("all_flags") = false, py::arg("force_perturbation") = false,
        "Unitary U with U A U* tridiagonal; returns a dict with U, T and residuals.");

    m.def(
        "verify",
        [](const ComplexArray& a, const ComplexArray& u) {
            TridiagResult r;
            r.U = to_matrix(u);
            const ComplexMatrix mat = to_matrix(a);
            const VerifyReport v = verify(r, mat);
            py::dict d;
            d["off_residual"] = v.off_residual;
            d["unitarity_residual"] = v.unitarity_residual;
            d["spectrum_gap"] = v.spectrum_gap;
            return d;
        },
        py::arg("a"), py::arg("u"));

    m.def(
        "classify",
        [](const ComplexArray& a, double tol) {
            const GenericityReport g = classify(to_matrix(a), tol);
            py::dict d;
            d["s1"] = g.nonsingular;
            d["s2"] = g.distinct_eigenvalues;
            d["s3"] = g.pencil_rank_ok;
            d["generic"] = g.generic();
            d["heuristic"] = g.heuristic;
            d["witness"] = g.witness ? py::object(to_array(g.witness->coords())) : py::object(py::none());
            py::list common;
            for (const auto& v : g.common_eigenvectors) common.append(to_array(v.coords()));
            d["common_eigenvectors"] = common;
            d["details"] = g.details;
            return d;
        },
        py::arg("a"), py::arg("tol") = 1e-8);

    m.def(
        "degree_of_D",
        [](const ComplexArray& a, std::size_t lines, std::uint64_t seed) {
            return counts_dict(degree_of_D(Pencil(to_matrix(a)), lines, seed));
        },
        py::arg("a"), py::arg("lines") = 10, py::arg("seed") = 42);

    m.def(
        "degree_of_C",
        [](const ComplexArray& a, std::size_t hyperplanes, std::uint64_t seed) {
            SweepOptions o;
            o.seed = seed;
            const ComplexMatrix mat = to_matrix(a);
            CountSummary s;
            {
                py::gil_scoped_release release;
                s = degree_of_C(Pencil(mat), hyperplanes, seed, o);
            }
            return counts_dict(s);
        },
        py::arg("a"), py::arg("hyperplanes") = 1, py::arg("seed") = 42);

    m.def(
        "section_zero_count",
        [](const ComplexArray& a, std::size_t samples, std::size_t restarts, std::uint64_t seed) {
            SweepOptions o = exhaustive_sweep(seed);
            o.samples = samples;
            o.random_restarts = restarts;
            const ComplexMatrix mat = to_matrix(a);
            py::gil_scoped_release release;
            return section_zero_count(Pencil(mat), o).count;
        },
        py::arg("a"), py::arg("samples") = 2880, py::arg("restarts") = 64, py::arg("seed") = 42);

    m.def(
        "generate",
        [](const std::string& kind, std::size_t n, std::uint64_t seed) {
            return to_array(generate_matrix(parse_kind(kind), n, seed));
        },
        py::arg("kind") = "gaussian", py::arg("n") = 4, py::arg("seed") = 42);

    m.def(
        "parse_matrix", [](const std::string& text) { return to_array(parse_matrix(text)); }, py::arg("text"));
}

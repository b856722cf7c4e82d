// Python bindings for the main library operations: scalars, series, phi/psi,
// Mellin, divisor chains, and structure predictions.
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "iwa/group_ring.hpp"
#include "iwa/io.hpp"
#include "iwa/phi_psi.hpp"
#include "iwa/structure.hpp"

namespace py = pybind11;
using namespace iwa;

namespace {

TruncatedSeries series_from_int_list(long p, long prec, const std::vector<long>& coeffs) {
    std::vector<mpz_class> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.emplace_back(v);
    return TruncatedSeries::from_ints(p, prec, c);
}

FilteredPhiNModule module_from_weights(long p, long u, long K_degree, std::vector<long> weights,
                                       bool no_pj_eigenvalue, bool V_fixed_trivial) {
    FilteredPhiNModule d;
    d.p = p;
    d.u = u;
    d.K_degree = K_degree;
    d.dim = (long)weights.size();
    d.weights = std::move(weights);
    d.flags.no_pj_eigenvalue = no_pj_eigenvalue;
    d.flags.V_fixed_trivial = V_fixed_trivial;
    return d;
}

}  // namespace

PYBIND11_MODULE(_iwacore, m) {
    m.doc() = "p-adic power series, phi/psi operators, and divisor-chain predictions";

    py::register_exception<domain_error>(m, "DomainError");
    py::register_exception<precision_error>(m, "PrecisionError");

    py::class_<Config>(m, "Config")
        .def(py::init<long, long, long>(), py::arg("p") = 3, py::arg("u") = 4,
             py::arg("prec") = 30)
        .def_readwrite("p", &Config::p)
        .def_readwrite("u", &Config::u)
        .def_readwrite("prec", &Config::prec);

    py::class_<RadiusExp>(m, "RadiusExp")
        .def(py::init<long, long>(), py::arg("a"), py::arg("b"))
        .def("__str__", &RadiusExp::str);

    py::class_<PadicScalar>(m, "PadicScalar")
        .def_static("from_int",
                    [](long p, long v, long prec) { return PadicScalar::from_long(p, v, prec); },
                    py::arg("p"), py::arg("value"), py::arg("prec"))
        .def_static("parse", &PadicScalar::parse)
        .def_property_readonly("prime", &PadicScalar::prime)
        .def("valuation", &PadicScalar::valuation)
        .def("is_zero", &PadicScalar::is_zero)
        .def("congruent", &PadicScalar::congruent)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self / py::self)
        .def("__str__", &PadicScalar::str);

    py::class_<TruncatedSeries>(m, "TruncatedSeries")
        .def_static("from_ints", &series_from_int_list, py::arg("p"), py::arg("prec"),
                    py::arg("coeffs"))
        .def_static("zero", &TruncatedSeries::zero)
        .def_static("one", &TruncatedSeries::one)
        .def_property_readonly("p", &TruncatedSeries::prime)
        .def_property_readonly("prec", &TruncatedSeries::prec)
        .def_property_readonly("x_trunc", &TruncatedSeries::x_trunc)
        .def("coeff", &TruncatedSeries::coeff)
        .def("degree", &TruncatedSeries::degree)
        .def("is_zero", &TruncatedSeries::is_zero)
        .def("congruent", &TruncatedSeries::congruent)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def("evaluate", &TruncatedSeries::evaluate)
        .def("to_json", [](const TruncatedSeries& f) { return series_to_json(f).dump(); })
        .def_static("from_json",
                    [](const std::string& text) { return series_from_json(json::parse(text)); })
        .def("__str__", &TruncatedSeries::str);

    m.def("omega", &omega, py::arg("cfg"), py::arg("n"));
    m.def("xi", &xi, py::arg("cfg"), py::arg("n"));
    m.def("ell", &ell, py::arg("cfg"), py::arg("j"), py::arg("len"));
    m.def("pi_factor", &pi_factor, py::arg("cfg"), py::arg("n"), py::arg("j"));
    m.def("log1px", &log1px, py::arg("cfg"), py::arg("len"));
    m.def("is_unit_on_circle", &is_unit_on_circle, py::arg("f"), py::arg("rho"));
    m.def("norm_valuation", [](const TruncatedSeries& f, const RadiusExp& rho) {
        NormResult r = norm_at_radius(f, rho);
        return py::make_tuple(r.valuation.get_str(), r.certified);
    });
    m.def("ord_at_factor", &ord_at_factor, py::arg("f"), py::arg("pi"), py::arg("tau") = -1);

    m.def("phi", &phi, py::arg("cfg"), py::arg("f"));
    m.def("psi", &psi, py::arg("cfg"), py::arg("f"));

    py::class_<GroupRingElem>(m, "GroupRingElem")
        .def(py::init<long, long>(), py::arg("p"), py::arg("level"))
        .def_static("dirac", &GroupRingElem::dirac)
        .def("set", &GroupRingElem::set)
        .def("coeff", &GroupRingElem::coeff)
        .def_property_readonly("level", &GroupRingElem::level)
        .def(py::self + py::self)
        .def(py::self * py::self);
    m.def("mellin", &mellin, py::arg("cfg"), py::arg("g"));

    py::class_<FactorSym>(m, "FactorSym")
        .def_static("pi", &FactorSym::pi)
        .def_static("ell", &FactorSym::ell)
        .def_static("parse", &FactorSym::parse)
        .def("__str__", &FactorSym::str);

    py::class_<FactoredElement>(m, "FactoredElement")
        .def_static("one", &FactoredElement::one)
        .def_static("sym", &FactoredElement::sym, py::arg("s"), py::arg("e") = 1)
        .def("is_zero", &FactoredElement::is_zero)
        .def("is_one", &FactoredElement::is_one)
        .def("exponent", &FactoredElement::exponent)
        .def(py::self * py::self)
        .def(py::self == py::self)
        .def("__str__", &FactoredElement::str);

    py::class_<DivisorChain>(m, "DivisorChain")
        .def_readonly("entries", &DivisorChain::entries)
        .def_readonly("partial", &DivisorChain::partial)
        .def_readonly("det_consistent", &DivisorChain::det_consistent)
        .def_readonly("note", &DivisorChain::note)
        .def("descending_ok", &DivisorChain::descending_ok)
        .def("__str__", [](const DivisorChain& c) {
            std::ostringstream os;
            os << "[";
            for (size_t i = 0; i < c.entries.size(); ++i)
                os << (i ? "; " : "") << c.entries[i].str();
            os << "]";
            return os.str();
        });

    m.def("snf_exact", &snf_exact, py::arg("a"), py::arg("seed") = 0);
    m.def("snf_numeric", &snf_numeric, py::arg("cfg"), py::arg("a"), py::arg("factors"),
          py::arg("tau") = -1);
    m.def("materialize", &materialize, py::arg("cfg"), py::arg("f"),
          py::arg("ell_shadow_level") = 2);

    py::class_<FilteredPhiNModule>(m, "FilteredPhiNModule")
        .def_static("from_weights", &module_from_weights, py::arg("p"), py::arg("u"),
                    py::arg("K_degree"), py::arg("weights"),
                    py::arg("no_pj_eigenvalue") = false, py::arg("V_fixed_trivial") = false)
        .def_readwrite("weights", &FilteredPhiNModule::weights)
        .def_readwrite("K_degree", &FilteredPhiNModule::K_degree);

    py::class_<HodgeData>(m, "HodgeData")
        .def_readonly("r", &HodgeData::r)
        .def_readonly("r_star", &HodgeData::r_star)
        .def_readonly("r_sorted", &HodgeData::r_sorted)
        .def_readonly("fil_dims", &HodgeData::fil_dims);
    m.def("hodge_data", &hodge_data);

    m.def("predicted_chain", &predicted_chain, py::arg("d"),
          py::arg("r_star") = std::optional<long>());
    m.def("predicted_determinant", &predicted_determinant, py::arg("d"),
          py::arg("r_star") = std::optional<long>());
    m.def("predicted_annihilator", &predicted_annihilator, py::arg("d"),
          py::arg("r_star") = std::optional<long>());
    m.def("chain_from_determinant", &chain_from_determinant, py::arg("n"), py::arg("d_tilde"));

    py::class_<SyntheticReport>(m, "SyntheticReport")
        .def_readonly("ok", &SyntheticReport::ok)
        .def_readonly("recovered", &SyntheticReport::recovered)
        .def_readonly("expected_shadow", &SyntheticReport::expected_shadow)
        .def_readonly("note", &SyntheticReport::note);
    m.def("synthetic_verify", &synthetic_verify, py::arg("d"), py::arg("n0"), py::arg("seed"),
          py::arg("prec") = 40);
}

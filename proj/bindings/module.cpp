#include "epkit/corpus.hpp"
#include "epkit/geninv.hpp"
#include "epkit/json_io.hpp"
#include "epkit/normscope.hpp"
#include "epkit/numkernel.hpp"
#include "epkit/specrep.hpp"
#include "epkit/theorems.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace epkit;

namespace {

Theorem theorem_arg(const std::string& name) { return theorem_from_string(name); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Moore-Penrose / group inverses, norm-relative hermitian elements, and "
              "EP/normality theorem suites for complex matrices";

    py::register_exception<UnsupportedNorm>(m, "UnsupportedNorm", PyExc_ValueError);
    py::register_exception<corpus::CorpusError>(m, "CorpusError", PyExc_RuntimeError);

    py::class_<NumericContext>(m, "NumericContext")
        .def(py::init<>())
        .def_readwrite("eq_tol", &NumericContext::eq_tol)
        .def_readwrite("rank_tol", &NumericContext::rank_tol)
        .def_readwrite("herm_tol", &NumericContext::herm_tol)
        .def_readwrite("exp_grid_points", &NumericContext::exp_grid_points)
        .def_readwrite("sip_samples", &NumericContext::sip_samples)
        .def_readwrite("margin", &NumericContext::margin)
        .def("validate", &NumericContext::validate)
        .def_static("from_eq_tol", &NumericContext::from_eq_tol);

    py::class_<NormSpec>(m, "NormSpec")
        .def(py::init([](const std::string& text) { return NormSpec::parse(text); }))
        .def_static("parse", &NormSpec::parse)
        .def_static("l1", &NormSpec::l1)
        .def_static("l2", &NormSpec::l2)
        .def_static("linf", &NormSpec::linf)
        .def_static("lp", &NormSpec::lp)
        .def("smooth", &NormSpec::smooth)
        .def("__str__", &NormSpec::str)
        .def("__repr__", [](const NormSpec& s) { return "NormSpec('" + s.str() + "')"; });
    py::implicitly_convertible<std::string, NormSpec>();

    py::class_<EqResult>(m, "EqResult")
        .def_readonly("residual", &EqResult::residual)
        .def_readonly("equal", &EqResult::equal)
        .def("__bool__", [](const EqResult& r) { return r.equal; });

    py::class_<FullRankFactorization>(m, "FullRankFactorization")
        .def_readonly("f", &FullRankFactorization::f)
        .def_readonly("g", &FullRankFactorization::g)
        .def_readonly("rank", &FullRankFactorization::rank);

    py::class_<HermitianReport>(m, "HermitianReport")
        .def_property_readonly("verdict",
                               [](const HermitianReport& r) { return to_string(r.verdict); })
        .def_readonly("max_exp_deviation", &HermitianReport::max_exp_deviation)
        .def_readonly("derivative_minus", &HermitianReport::derivative_minus)
        .def_readonly("derivative_plus", &HermitianReport::derivative_plus)
        .def_readonly("spectrum_imag_max", &HermitianReport::spectrum_imag_max)
        .def_readonly("witness_t", &HermitianReport::witness_t)
        .def("hermitian", &HermitianReport::hermitian)
        .def("__bool__", [](const HermitianReport& r) { return r.hermitian(); });

    py::class_<VidavValidation>(m, "VidavValidation")
        .def_readonly("ok", &VidavValidation::ok)
        .def_readonly("reconstruction_residual", &VidavValidation::reconstruction_residual)
        .def_readonly("u_report", &VidavValidation::u_report)
        .def_readonly("v_report", &VidavValidation::v_report)
        .def("__bool__", [](const VidavValidation& v) { return v.ok; });

    py::class_<NormalityResult>(m, "NormalityResult")
        .def_readonly("normal", &NormalityResult::normal)
        .def_readonly("residual", &NormalityResult::residual)
        .def("__bool__", [](const NormalityResult& r) { return r.normal; });

    py::class_<PenroseWitness>(m, "PenroseWitness")
        .def_readonly("x", &PenroseWitness::x)
        .def_readonly("res_axa", &PenroseWitness::res_axa)
        .def_readonly("res_xax", &PenroseWitness::res_xax)
        .def_readonly("herm_ax", &PenroseWitness::herm_ax)
        .def_readonly("herm_xa", &PenroseWitness::herm_xa)
        .def_readonly("accepted", &PenroseWitness::accepted)
        .def("__bool__", [](const PenroseWitness& w) { return w.accepted; });

    py::class_<GroupWitness>(m, "GroupWitness")
        .def_readonly("x", &GroupWitness::x)
        .def_readonly("res_axa", &GroupWitness::res_axa)
        .def_readonly("res_xax", &GroupWitness::res_xax)
        .def_readonly("res_comm", &GroupWitness::res_comm)
        .def_readonly("accepted", &GroupWitness::accepted)
        .def("__bool__", [](const GroupWitness& w) { return w.accepted; });

    py::class_<EpResult>(m, "EpResult")
        .def_readonly("ep", &EpResult::ep)
        .def_readonly("residual", &EpResult::residual)
        .def_readonly("reason", &EpResult::reason)
        .def("__bool__", [](const EpResult& r) { return r.ep; });

    py::class_<MpViaGroupResult>(m, "MpViaGroupResult")
        .def_property_readonly("status",
                               [](const MpViaGroupResult& r) -> std::string {
                                   switch (r.status) {
                                       case MpRouteStatus::Ok: return "ok";
                                       case MpRouteStatus::NotEp: return "not_ep";
                                       case MpRouteStatus::Inconclusive: return "inconclusive";
                                   }
                                   return "not_ep";
                               })
        .def_property_readonly("inverse",
                               [](const MpViaGroupResult& r) -> py::object {
                                   if (r.status != MpRouteStatus::Ok) return py::none();
                                   return py::cast(r.inverse);
                               })
        .def_readonly("product_report", &MpViaGroupResult::product_report)
        .def_readonly("reason", &MpViaGroupResult::reason);

    py::class_<SpectralData>(m, "SpectralData")
        .def_readonly("eigenvalues", &SpectralData::eigenvalues)
        .def_readonly("spectral_radius", &SpectralData::spectral_radius);

    py::class_<AscentDescent>(m, "AscentDescent")
        .def_readonly("ascent", &AscentDescent::ascent)
        .def_readonly("descent", &AscentDescent::descent);

    py::class_<LemmaReport>(m, "LemmaReport")
        .def_readonly("preconditions_met", &LemmaReport::preconditions_met)
        .def_readonly("ep", &LemmaReport::ep)
        .def_readonly("range_a_in_adag", &LemmaReport::range_a_in_adag)
        .def_readonly("range_adag_in_a", &LemmaReport::range_adag_in_a)
        .def_readonly("null_a_in_adag", &LemmaReport::null_a_in_adag)
        .def_readonly("null_adag_in_a", &LemmaReport::null_adag_in_a)
        .def_readonly("consistent", &LemmaReport::consistent);

    py::class_<ItemResult>(m, "ItemResult")
        .def_property_readonly("id", [](const ItemResult& r) { return r.id.label(); })
        .def_readonly("holds", &ItemResult::holds)
        .def_readonly("residual", &ItemResult::residual)
        .def_readonly("preconditions_met", &ItemResult::preconditions_met)
        .def_readonly("finiteness_flag", &ItemResult::finiteness_flag);

    py::class_<TheoremSuiteReport>(m, "TheoremSuiteReport")
        .def_readonly("subject", &TheoremSuiteReport::subject)
        .def_property_readonly("theorem",
                               [](const TheoremSuiteReport& r) { return to_string(r.theorem); })
        .def_readonly("items", &TheoremSuiteReport::items)
        .def_readonly("ep", &TheoremSuiteReport::ep_verdict)
        .def_readonly("ep_residual", &TheoremSuiteReport::ep_residual)
        .def_readonly("normal", &TheoremSuiteReport::normal_verdict)
        .def_readonly("normal_residual", &TheoremSuiteReport::normal_residual)
        .def_readonly("group_invertible", &TheoremSuiteReport::group_invertible)
        .def_readonly("consistent", &TheoremSuiteReport::consistent)
        .def("json", [](const TheoremSuiteReport& r) { return dump_json(to_json(r)); });

    py::class_<ItemStat>(m, "ItemStat")
        .def_readonly("id", &ItemStat::id)
        .def_readonly("asserted", &ItemStat::asserted)
        .def_readonly("violations", &ItemStat::violations);

    py::class_<HarnessReport>(m, "HarnessReport")
        .def_property_readonly("theorem",
                               [](const HarnessReport& r) { return to_string(r.theorem); })
        .def_readonly("samples", &HarnessReport::samples)
        .def_readonly("asserted_samples", &HarnessReport::asserted_samples)
        .def_readonly("margin_zone", &HarnessReport::margin_zone)
        .def_readonly("skipped_preconditions", &HarnessReport::skipped_preconditions)
        .def_readonly("inconsistencies", &HarnessReport::inconsistencies)
        .def_readonly("offenders", &HarnessReport::offenders)
        .def_readonly("per_item", &HarnessReport::per_item)
        .def_readonly("worst_positive_residual", &HarnessReport::worst_positive_residual)
        .def_readonly("worst_negative_residual", &HarnessReport::worst_negative_residual)
        .def("json", [](const HarnessReport& r) { return dump_json(to_json(r)); });

    py::class_<corpus::ClaimedFlags>(m, "ClaimedFlags")
        .def_readonly("ep", &corpus::ClaimedFlags::ep)
        .def_readonly("normal", &corpus::ClaimedFlags::normal)
        .def_readonly("group_invertible", &corpus::ClaimedFlags::group_invertible)
        .def_readonly("nilpotent", &corpus::ClaimedFlags::nilpotent);

    py::class_<corpus::GeneratorSpec>(m, "GeneratorSpec")
        .def(py::init([](const std::string& kind, int n, int rank, std::uint64_t seed, int count) {
                 corpus::GeneratorSpec s;
                 s.kind = corpus::kind_from_string(kind);
                 s.n = n;
                 s.rank = rank;
                 s.seed = seed;
                 s.count = count;
                 s.validate();
                 return s;
             }),
             py::arg("kind"), py::arg("n"), py::arg("rank") = -1, py::arg("seed") = 0,
             py::arg("count") = 1)
        .def_property_readonly("kind",
                               [](const corpus::GeneratorSpec& s) { return to_string(s.kind); })
        .def_readonly("n", &corpus::GeneratorSpec::n)
        .def_readonly("rank", &corpus::GeneratorSpec::rank)
        .def_readonly("seed", &corpus::GeneratorSpec::seed)
        .def_readonly("count", &corpus::GeneratorSpec::count);

    py::class_<corpus::Sample>(m, "Sample")
        .def_readonly("id", &corpus::Sample::id)
        .def_readonly("matrix", &corpus::Sample::matrix)
        .def_readonly("claimed", &corpus::Sample::claimed);

    // numkernel
    m.def("rank", &rank, py::arg("a"), py::arg("ctx") = NumericContext{});
    m.def("full_rank_factorization", &full_rank_factorization, py::arg("a"),
          py::arg("ctx") = NumericContext{});
    m.def("approx_eq", &approx_eq, py::arg("x"), py::arg("y"), py::arg("ctx") = NumericContext{});
    m.def("range_included", &range_included, py::arg("x"), py::arg("y"),
          py::arg("ctx") = NumericContext{});
    m.def("null_included", &null_included, py::arg("x"), py::arg("y"),
          py::arg("ctx") = NumericContext{});
    m.def("spectral_norm", &spectral_norm, py::arg("a"));

    // normscope
    m.def("operator_norm", &operator_norm, py::arg("a"), py::arg("norm") = NormSpec::l2());
    m.def("matrix_exp", &matrix_exp, py::arg("a"));
    m.def("is_hermitian", &is_hermitian, py::arg("a"), py::arg("norm") = NormSpec::l2(),
          py::arg("ctx") = NumericContext{});
    m.def("sip_hermitian_probe", &sip_hermitian_probe, py::arg("a"),
          py::arg("norm") = NormSpec::l2(), py::arg("ctx") = NumericContext{},
          py::arg("seed") = 0x51b9a1d5u);
    m.def(
        "vidav_decompose",
        [](const ComplexMatrix& a, const NormSpec& norm) {
            const VidavPair p = vidav_decompose(a, norm);
            return py::make_tuple(p.u, p.v);
        },
        py::arg("a"), py::arg("norm") = NormSpec::l2());
    m.def(
        "validate_vidav",
        [](const ComplexMatrix& a, const ComplexMatrix& u, const ComplexMatrix& v,
           const NormSpec& norm, const NumericContext& ctx) {
            return validate_vidav(a, u, v, norm, ctx);
        },
        py::arg("a"), py::arg("u"), py::arg("v"), py::arg("norm") = NormSpec::l2(),
        py::arg("ctx") = NumericContext{});
    m.def("star", &star, py::arg("a"), py::arg("norm") = NormSpec::l2());
    m.def(
        "is_normal",
        [](const ComplexMatrix& a, const NormSpec& norm, const NumericContext& ctx) {
            return is_normal(a, norm, ctx);
        },
        py::arg("a"), py::arg("norm") = NormSpec::l2(), py::arg("ctx") = NumericContext{});
    m.def(
        "is_normal_with_pair",
        [](const ComplexMatrix& a, const ComplexMatrix& u, const ComplexMatrix& v,
           const NormSpec& norm, const NumericContext& ctx) {
            return is_normal(a, VidavPair{u, v, norm}, ctx);
        },
        py::arg("a"), py::arg("u"), py::arg("v"), py::arg("norm"),
        py::arg("ctx") = NumericContext{});

    // geninv
    m.def("mp_inverse", &mp_inverse, py::arg("a"), py::arg("ctx") = NumericContext{});
    m.def("verify_mp", &verify_mp, py::arg("a"), py::arg("x"), py::arg("norm") = NormSpec::l2(),
          py::arg("ctx") = NumericContext{});
    m.def("verify_group", &verify_group, py::arg("a"), py::arg("x"),
          py::arg("ctx") = NumericContext{});
    m.def(
        "group_inverse",
        [](const ComplexMatrix& a, const NumericContext& ctx) -> py::object {
            const auto g = group_inverse(a, ctx);
            if (!g) return py::none();
            return py::cast(*g);
        },
        py::arg("a"), py::arg("ctx") = NumericContext{});
    m.def("is_ep", &is_ep, py::arg("a"), py::arg("norm") = NormSpec::l2(),
          py::arg("ctx") = NumericContext{});
    m.def("mp_via_group", &mp_via_group, py::arg("a"), py::arg("norm") = NormSpec::l2(),
          py::arg("ctx") = NumericContext{});

    // specrep
    m.def("spectrum", &spectrum, py::arg("a"));
    m.def("is_quasinilpotent", &is_quasinilpotent, py::arg("a"), py::arg("ctx") = NumericContext{});
    m.def(
        "ascent_descent",
        [](const ComplexMatrix& a, const NumericContext& ctx) { return ascent_descent(a, ctx); },
        py::arg("a"), py::arg("ctx") = NumericContext{});
    m.def("left_mult", &left_mult, py::arg("a"));
    m.def("right_mult", &right_mult, py::arg("a"));
    m.def("kron", &kron, py::arg("a"), py::arg("b"));

    // theorem suites
    m.def("item_count", [](const std::string& t) { return item_count(theorem_arg(t)); });
    m.def("lemma_inclusions", &lemma_inclusions, py::arg("a"), py::arg("ctx") = NumericContext{});
    m.def(
        "evaluate_item",
        [](const ComplexMatrix& a, const std::string& theorem, int index,
           const NumericContext& ctx) {
            return evaluate_item(a, make_item(theorem_arg(theorem), index), ctx);
        },
        py::arg("a"), py::arg("theorem"), py::arg("index"), py::arg("ctx") = NumericContext{});
    m.def(
        "run_suite",
        [](const ComplexMatrix& a, const std::string& theorem, const NumericContext& ctx,
           const std::string& subject) { return run_suite(a, theorem_arg(theorem), ctx, subject); },
        py::arg("a"), py::arg("theorem"), py::arg("ctx") = NumericContext{},
        py::arg("subject") = "");
    m.def(
        "equivalence_harness",
        [](const std::vector<corpus::Sample>& samples, const std::string& theorem,
           const NumericContext& ctx, int threads) {
            return equivalence_harness(samples, theorem_arg(theorem), ctx, threads);
        },
        py::arg("samples"), py::arg("theorem"), py::arg("ctx") = NumericContext{},
        py::arg("threads") = 0);

    // corpus
    m.def("generate", &corpus::generate, py::arg("spec"), py::arg("ctx") = NumericContext{},
          py::arg("threads") = 0);
    m.def("save_corpus", &corpus::save_corpus, py::arg("samples"), py::arg("path"));
    m.def("load_corpus", &corpus::load_corpus, py::arg("path"));
}

// epkit command line: classify a matrix, run theorem suites over corpora,
// generate corpora. Exit codes: 0 success/consistent, 1 verification
// inconsistency, 2 usage or input error.

#include "epkit/corpus.hpp"
#include "epkit/geninv.hpp"
#include "epkit/json_io.hpp"
#include "epkit/normscope.hpp"
#include "epkit/parallel.hpp"
#include "epkit/specrep.hpp"
#include "epkit/theorems.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

using namespace epkit;

struct ClassifyInput {
    std::string id;
    ComplexMatrix matrix;
};

// Accepts a corpus file with exactly one sample, a bare sample object, or
// a bare matrix array in the corpus entry encoding.
ClassifyInput load_classify_input(const std::string& path) {
    Json doc;
    try {
        doc = Json::parse(read_text_file(path));
    } catch (const std::exception& e) {
        throw corpus::CorpusError("cannot parse " + path + ": " + e.what());
    }
    ClassifyInput in;
    in.id = path;
    if (doc.is_array()) {
        in.matrix = matrix_from_json(doc);
        return in;
    }
    if (doc.is_object() && doc.contains("matrix")) {
        in.id = doc.value("id", path);
        in.matrix = matrix_from_json(doc["matrix"]);
        return in;
    }
    if (doc.is_object() && doc.contains("samples")) {
        const auto samples = corpus::load_corpus(path);
        if (samples.size() != 1)
            throw corpus::CorpusError("classify expects exactly one sample, got " +
                                      std::to_string(samples.size()));
        in.id = samples.front().id;
        in.matrix = samples.front().matrix;
        return in;
    }
    throw corpus::CorpusError("unrecognized input format in " + path);
}

Json flag_json(bool value, double residual, double tolerance) {
    return Json{{"value", value}, {"residual", residual}, {"tolerance", tolerance}};
}

Json classify(const ClassifyInput& in, const NormSpec& norm, const NumericContext& ctx) {
    const ComplexMatrix& a = in.matrix;
    if (a.rows() != a.cols())
        throw corpus::CorpusError("classify needs a square matrix for algebra-element flags");

    Json flags;
    Json inverses;

    // Moore-Penrose: under l2 the SVD route always produces the inverse;
    // under other norms the group route is the only constructive one, so
    // a failed route leaves the flag undecided (null).
    const auto sharp = group_inverse(a, ctx);
    std::optional<ComplexMatrix> mp;
    if (norm.kind == NormKind::L2) {
        mp = mp_inverse(a, ctx);
    } else {
        const MpViaGroupResult route = mp_via_group(a, norm, ctx);
        if (route.status == MpRouteStatus::Ok) mp = route.inverse;
    }
    if (mp) {
        const PenroseWitness w = verify_mp(a, *mp, norm, ctx);
        Json f = flag_json(w.accepted, std::max(w.res_axa, w.res_xax), ctx.eq_tol);
        f["herm_ax"] = to_string(w.herm_ax.verdict);
        f["herm_xa"] = to_string(w.herm_xa.verdict);
        flags["mp_invertible"] = std::move(f);
        inverses["mp"] = matrix_to_json(*mp);
    } else {
        flags["mp_invertible"] =
            Json{{"value", nullptr},
                 {"note", "undecided: only the group route is constructive under " + norm.str()}};
        inverses["mp"] = nullptr;
    }

    if (sharp) {
        const GroupWitness w = verify_group(a, *sharp, ctx);
        flags["group_invertible"] =
            flag_json(w.accepted, std::max({w.res_axa, w.res_xax, w.res_comm}), ctx.eq_tol);
        inverses["group"] = matrix_to_json(*sharp);
    } else {
        Json f = flag_json(false, 1.0, ctx.eq_tol);
        f["note"] = "rank(a^2) < rank(a)";
        flags["group_invertible"] = std::move(f);
        inverses["group"] = nullptr;
    }

    const EpResult ep = is_ep(a, norm, ctx);
    {
        Json f = flag_json(ep.ep, ep.residual, ctx.eq_tol);
        if (!ep.reason.empty()) f["note"] = ep.reason;
        flags["ep"] = std::move(f);
    }

    if (norm.kind == NormKind::L2) {
        const NormalityResult nr = is_normal(a, norm, ctx);
        flags["normal"] = flag_json(nr.normal, nr.residual, ctx.eq_tol);
    } else {
        flags["normal"] = Json{{"value", nullptr},
                               {"note", "vidav decomposition unsupported under " + norm.str() +
                                            "; supply a pair through the library API"}};
    }

    const HermitianReport hr = is_hermitian(a, norm, ctx);
    {
        Json f = flag_json(hr.hermitian(), hr.max_exp_deviation, ctx.herm_tol);
        f["verdict"] = to_string(hr.verdict);
        f["witness_t"] = hr.witness_t;
        f["spectrum_imag_max"] = hr.spectrum_imag_max;
        flags["hermitian"] = std::move(f);
    }

    const SpectralData sd = spectrum(a);
    const double qn_residual = sd.spectral_radius / std::max(1.0, operator_norm(a, NormSpec::l2()));
    flags["quasinilpotent"] = flag_json(is_quasinilpotent(a, ctx), qn_residual, ctx.eq_tol);

    const AscentDescent ad = ascent_descent(a, ctx);

    return Json{{"id", in.id},
                {"n", a.rows()},
                {"norm", norm.str()},
                {"flags", std::move(flags)},
                {"inverses", std::move(inverses)},
                {"ascent", ad.ascent},
                {"descent", ad.descent},
                {"tolerances", Json{{"eq_tol", ctx.eq_tol},
                                    {"rank_tol", ctx.rank_tol},
                                    {"herm_tol", ctx.herm_tol},
                                    {"margin", ctx.margin}}}};
}

void emit(const Json& doc, const std::string& out_path) {
    const std::string text = dump_json(doc);
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"EP / normal / Moore-Penrose classification and theorem verification "
                 "for complex matrices under configurable norms"};
    app.require_subcommand(1);

    std::string input_path, norm_text = "l2", out_path;
    double tol = 1e-8;

    auto* cmd_classify = app.add_subcommand("classify", "classify one matrix");
    cmd_classify->add_option("input", input_path, "matrix or single-sample JSON file")
        ->required();
    cmd_classify->add_option("--norm", norm_text, "vector norm: l1, l2, linf, lp:<p>");
    cmd_classify->add_option("--tol", tol, "equality tolerance (rank_tol = tol/100, herm_tol = 10*tol)");
    cmd_classify->add_option("--out", out_path, "write the report here instead of stdout");

    std::string suite = "all", corpus_path, report_path;
    auto* cmd_verify = app.add_subcommand("verify", "run theorem suites over a corpus");
    cmd_verify->add_option("--suite", suite, "lemma|t6|t7|t8|t9|t13|t14|t15|t19|all");
    cmd_verify->add_option("--corpus", corpus_path, "corpus JSON file")->required();
    cmd_verify->add_option("--tol", tol, "equality tolerance");
    cmd_verify->add_option("--report", report_path, "write the aggregate report here");

    std::string kind_text = "ep";
    int gen_n = 4, gen_rank = -1, gen_count = 1;
    std::uint64_t gen_seed = 0;
    auto* cmd_generate = app.add_subcommand("generate", "generate a seeded corpus");
    cmd_generate->add_option("--kind", kind_text,
                             "ep|mp_generic|group_invertible|normal|nilpotent|hermitian_diag");
    cmd_generate->add_option("--n", gen_n, "dimension");
    cmd_generate->add_option("--rank", gen_rank, "rank (default: full)");
    cmd_generate->add_option("--seed", gen_seed, "64-bit seed");
    cmd_generate->add_option("--count", gen_count, "number of samples");
    cmd_generate->add_option("--out", out_path, "output corpus file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const NumericContext ctx = NumericContext::from_eq_tol(tol);

        if (cmd_classify->parsed()) {
            const NormSpec norm = NormSpec::parse(norm_text);
            emit(classify(load_classify_input(input_path), norm, ctx), out_path);
            return 0;
        }

        if (cmd_verify->parsed()) {
            std::vector<Theorem> suites;
            if (suite == "all")
                suites = all_theorems();
            else
                suites.push_back(theorem_from_string(suite));
            const auto samples = corpus::load_corpus(corpus_path);
            if (samples.empty()) throw corpus::CorpusError("corpus is empty: " + corpus_path);

            int total_inconsistencies = 0;
            Json suite_reports = Json::array();
            for (Theorem t : suites) {
                const HarnessReport rep = equivalence_harness(samples, t, ctx);
                total_inconsistencies += rep.inconsistencies;
                suite_reports.push_back(to_json(rep));
            }
            const Json doc{{"corpus", corpus_path},
                           {"samples", samples.size()},
                           {"total_inconsistencies", total_inconsistencies},
                           {"suites", std::move(suite_reports)}};
            emit(doc, report_path);
            return total_inconsistencies == 0 ? 0 : 1;
        }

        if (cmd_generate->parsed()) {
            corpus::GeneratorSpec spec;
            spec.kind = corpus::kind_from_string(kind_text);
            spec.n = gen_n;
            spec.rank = gen_rank;
            spec.seed = gen_seed;
            spec.count = gen_count;
            spec.validate();
            corpus::save_corpus(corpus::generate(spec, ctx), out_path);
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const epkit::corpus::CorpusError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

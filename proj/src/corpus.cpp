#include "epkit/corpus.hpp"

#include "epkit/geninv.hpp"
#include "epkit/json_io.hpp"
#include "epkit/normscope.hpp"
#include "epkit/parallel.hpp"
#include "epkit/rng.hpp"
#include "epkit/specrep.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <functional>
#include <mutex>

namespace epkit::corpus {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr int kMaxAttempts = 16;

Complex unit_phase(Complex z) {
    const double m = std::abs(z);
    return m == 0.0 ? Complex(1.0, 0.0) : z / m;
}

// Haar-distributed unitary: QR of a complex Gaussian with the R diagonal
// phase-fixed.
ComplexMatrix haar_unitary(Rng& rng, Index n) {
    const ComplexMatrix g = rng.gaussian_matrix(n, n);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < n; ++j) q.col(j) *= unit_phase(r(j, j));
    return q;
}

// Invertible with singular values log-uniform in [0.2, 2], so the
// condition number never exceeds 10 (well inside the <= 100 contract).
ComplexMatrix conditioned_invertible(Rng& rng, Index n) {
    const ComplexMatrix u = haar_unitary(rng, n);
    const ComplexMatrix v = haar_unitary(rng, n);
    Eigen::VectorXd s(n);
    for (Index i = 0; i < n; ++i) s(i) = 0.2 * std::pow(10.0, rng.uniform());
    return u * s.asDiagonal() * v.adjoint();
}

ComplexMatrix pad_top_left(const ComplexMatrix& k, Index n) {
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    d.topLeftCorner(k.rows(), k.cols()) = k;
    return d;
}

ComplexMatrix draw_matrix(const GeneratorSpec& spec, Rng& rng) {
    const Index n = spec.n;
    const Index r = spec.rank;
    switch (spec.kind) {
        case Kind::Ep: {
            const ComplexMatrix u = haar_unitary(rng, n);
            const ComplexMatrix k = conditioned_invertible(rng, r);
            return u * pad_top_left(k, n) * u.adjoint();
        }
        case Kind::MpGeneric: {
            const ComplexMatrix u = haar_unitary(rng, n);
            const ComplexMatrix v = haar_unitary(rng, n);
            Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
            for (Index i = 0; i < r; ++i) s(i) = 0.2 * std::pow(10.0, rng.uniform());
            std::sort(s.data(), s.data() + n, std::greater<double>());
            return u * s.asDiagonal() * v.adjoint();
        }
        case Kind::GroupInvertible: {
            const ComplexMatrix s = conditioned_invertible(rng, n);
            const ComplexMatrix k = conditioned_invertible(rng, r);
            return s * pad_top_left(k, n) * s.inverse();
        }
        case Kind::Normal: {
            const ComplexMatrix u = haar_unitary(rng, n);
            ComplexVector lambda = ComplexVector::Zero(n);
            for (Index i = 0; i < r; ++i) {
                const double mag = 0.2 * std::pow(10.0, rng.uniform());
                const double phase = 2.0 * M_PI * rng.uniform();
                lambda(i) = mag * Complex(std::cos(phase), std::sin(phase));
            }
            return u * lambda.asDiagonal() * u.adjoint();
        }
        case Kind::Nilpotent: {
            ComplexMatrix nil = ComplexMatrix::Zero(n, n);
            for (Index i = 0; i < n; ++i)
                for (Index j = i + 1; j < n; ++j) nil(i, j) = rng.cnormal();
            const ComplexMatrix s = conditioned_invertible(rng, n);
            return s * nil * s.inverse();
        }
        case Kind::HermitianDiag: {
            ComplexMatrix d = ComplexMatrix::Zero(n, n);
            for (Index i = 0; i < r; ++i) {
                const double mag = 0.2 * std::pow(10.0, rng.uniform());
                d(i, i) = rng.uniform() < 0.5 ? -mag : mag;
            }
            return d;
        }
    }
    throw std::logic_error("draw_matrix: unhandled kind");
}

bool gray_zone(double residual, const NumericContext& ctx) {
    return residual > ctx.eq_tol && residual < ctx.margin;
}

// Computes the claimed flags with the library's own predicates. Returns
// false when any verdict is indecisive (caller regenerates); throws when
// a structural guarantee of the construction is violated.
bool classify_draw(const GeneratorSpec& spec, const ComplexMatrix& a, const NumericContext& ctx,
                   ClaimedFlags& out) {
    const EpResult ep = is_ep(a, NormSpec::l2(), ctx);
    if (gray_zone(ep.residual, ctx)) return false;
    const NormalityResult nr = is_normal(a, NormSpec::l2(), ctx);
    if (gray_zone(nr.residual, ctx)) return false;
    const auto sharp = group_inverse(a, ctx);

    out.ep = ep.ep;
    out.normal = nr.normal;
    out.group_invertible = sharp.has_value();
    out.nilpotent = is_quasinilpotent(a, ctx);

    switch (spec.kind) {
        case Kind::Ep:
            if (!out.ep || !out.group_invertible)
                throw std::logic_error("corpus: ep construction failed its own predicate");
            break;
        case Kind::GroupInvertible: {
            if (!out.group_invertible)
                throw std::logic_error("corpus: group construction lost its group inverse");
            if (!out.ep) {
                // Non-EP samples must be decisively rejectable through the
                // hermitian route as well.
                const HermitianReport hr = is_hermitian(a * *sharp, NormSpec::l2(), ctx);
                if (hr.verdict != HermitianVerdict::NotHermitian) return false;
            }
            break;
        }
        case Kind::Normal:
            if (!out.normal || !out.ep || !out.group_invertible)
                throw std::logic_error("corpus: normal construction failed its own predicate");
            break;
        case Kind::Nilpotent:
            if (!out.nilpotent)
                throw std::logic_error("corpus: nilpotent construction has nonzero spectrum");
            break;
        case Kind::HermitianDiag:
            if (!is_hermitian(a, NormSpec::l2(), ctx).hermitian())
                throw std::logic_error("corpus: real diagonal failed the hermitian predicate");
            break;
        case Kind::MpGeneric:
            break;  // flags are computed, not promised
    }
    return true;
}

std::string sample_id(const GeneratorSpec& spec, int index) {
    char buf[128];
    if (spec.kind == Kind::Nilpotent)
        std::snprintf(buf, sizeof buf, "%s-n%d-s%" PRIu64 "-%04d", to_string(spec.kind).c_str(),
                      spec.n, spec.seed, index);
    else
        std::snprintf(buf, sizeof buf, "%s-n%d-r%d-s%" PRIu64 "-%04d", to_string(spec.kind).c_str(),
                      spec.n, spec.rank, spec.seed, index);
    return buf;
}

}  // namespace

Kind kind_from_string(const std::string& name) {
    if (name == "ep") return Kind::Ep;
    if (name == "mp_generic") return Kind::MpGeneric;
    if (name == "group_invertible") return Kind::GroupInvertible;
    if (name == "normal") return Kind::Normal;
    if (name == "nilpotent") return Kind::Nilpotent;
    if (name == "hermitian_diag") return Kind::HermitianDiag;
    throw std::invalid_argument("unknown generator kind '" + name + "'");
}

std::string to_string(Kind k) {
    switch (k) {
        case Kind::Ep: return "ep";
        case Kind::MpGeneric: return "mp_generic";
        case Kind::GroupInvertible: return "group_invertible";
        case Kind::Normal: return "normal";
        case Kind::Nilpotent: return "nilpotent";
        case Kind::HermitianDiag: return "hermitian_diag";
    }
    return "ep";
}

GeneratorSpec GeneratorSpec::normalized() const {
    GeneratorSpec out = *this;
    if (out.kind == Kind::Nilpotent)
        out.rank = 0;  // unused for this kind
    else if (out.rank < 0)
        out.rank = out.n;
    return out;
}

void GeneratorSpec::validate() const {
    if (n < 1) throw std::invalid_argument("GeneratorSpec: n must be positive");
    if (count < 1) throw std::invalid_argument("GeneratorSpec: count must be positive");
    const GeneratorSpec norm = normalized();
    if (kind != Kind::Nilpotent && (norm.rank < 0 || norm.rank > n))
        throw std::invalid_argument("GeneratorSpec: rank must lie in [0, n]");
}

std::vector<Sample> generate(const GeneratorSpec& raw, const NumericContext& ctx, int threads) {
    raw.validate();
    const GeneratorSpec spec = raw.normalized();
    std::vector<Sample> samples(static_cast<std::size_t>(spec.count));
    std::exception_ptr failure;
    std::mutex failure_mutex;

    parallel_for(static_cast<std::size_t>(spec.count), threads, [&](std::size_t i) {
        try {
            const std::uint64_t base =
                splitmix64(spec.seed + kGolden * (static_cast<std::uint64_t>(i) + 1));
            Sample s;
            s.generator = spec;
            s.id = sample_id(spec, static_cast<int>(i));
            bool ok = false;
            for (int attempt = 0; attempt < kMaxAttempts && !ok; ++attempt) {
                Rng rng(base + static_cast<std::uint64_t>(attempt));
                s.matrix = draw_matrix(spec, rng);
                ok = classify_draw(spec, s.matrix, ctx, s.claimed);
            }
            if (!ok)
                throw CorpusError("corpus: no decisive sample after " +
                                  std::to_string(kMaxAttempts) + " attempts for " + s.id);
            samples[i] = std::move(s);
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    });
    if (failure) std::rethrow_exception(failure);
    return samples;
}

void save_corpus(const std::vector<Sample>& samples, const std::string& path) {
    Json spec_json;
    if (!samples.empty()) {
        const GeneratorSpec& g = samples.front().generator;
        spec_json = Json{{"kind", to_string(g.kind)}, {"n", g.n},         {"rank", g.rank},
                         {"seed", g.seed},            {"count", g.count}};
    }
    Json out{{"version", 1}, {"spec", spec_json}, {"samples", Json::array()}};
    for (const Sample& s : samples) {
        require_finite(s.matrix, "save_corpus");
        out["samples"].push_back(Json{{"id", s.id},
                                      {"n", s.matrix.rows()},
                                      {"matrix", matrix_to_json(s.matrix)},
                                      {"claimed", Json{{"ep", s.claimed.ep},
                                                       {"normal", s.claimed.normal},
                                                       {"group_invertible", s.claimed.group_invertible},
                                                       {"nilpotent", s.claimed.nilpotent}}}});
    }
    write_text_file(path, dump_json(out));
}

std::vector<Sample> load_corpus(const std::string& path) {
    Json doc;
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const std::exception& e) {
        throw CorpusError(e.what());
    }
    try {
        doc = Json::parse(text);
    } catch (const std::exception& e) {
        throw CorpusError("malformed corpus file " + path + ": " + e.what());
    }
    try {
        if (!doc.is_object() || !doc.contains("samples") || !doc["samples"].is_array())
            throw CorpusError("corpus file " + path + " lacks a samples array");
        if (doc.value("version", 0) != 1)
            throw CorpusError("corpus file " + path + ": unsupported version");

        GeneratorSpec spec;
        if (doc.contains("spec") && doc["spec"].is_object()) {
            const Json& sj = doc["spec"];
            spec.kind = kind_from_string(sj.value("kind", "ep"));
            spec.n = sj.value("n", 0);
            spec.rank = sj.value("rank", -1);
            spec.seed = sj.value("seed", std::uint64_t{0});
            spec.count = sj.value("count", 0);
        }

        std::vector<Sample> samples;
        for (const Json& sj : doc["samples"]) {
            Sample s;
            s.id = sj.value("id", "sample-" + std::to_string(samples.size()));
            s.generator = spec;
            if (!sj.contains("matrix"))
                throw CorpusError("corpus sample " + s.id + " has no matrix");
            s.matrix = matrix_from_json(sj["matrix"]);
            if (sj.contains("n") && sj["n"].get<Index>() != s.matrix.rows())
                throw CorpusError("corpus sample " + s.id + ": dimension mismatch");
            if (s.matrix.rows() != s.matrix.cols())
                throw CorpusError("corpus sample " + s.id + ": matrix must be square");
            if (sj.contains("claimed")) {
                const Json& c = sj["claimed"];
                s.claimed.ep = c.value("ep", false);
                s.claimed.normal = c.value("normal", false);
                s.claimed.group_invertible = c.value("group_invertible", false);
                s.claimed.nilpotent = c.value("nilpotent", false);
            }
            samples.push_back(std::move(s));
        }
        return samples;
    } catch (const CorpusError&) {
        throw;
    } catch (const std::exception& e) {
        throw CorpusError("malformed corpus file " + path + ": " + e.what());
    }
}

}  // namespace epkit::corpus

#pragma once

#include "epkit/types.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace epkit::corpus {

struct CorpusError : std::runtime_error {
    explicit CorpusError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Kind { Ep, MpGeneric, GroupInvertible, Normal, Nilpotent, HermitianDiag };

Kind kind_from_string(const std::string& name);
std::string to_string(Kind k);

/// Seeded generator request. rank = -1 selects the kind default (full
/// rank); rank is ignored for nilpotent samples.
struct GeneratorSpec {
    Kind kind = Kind::Ep;
    int n = 4;
    int rank = -1;
    std::uint64_t seed = 0;
    int count = 1;

    void validate() const;       // throws std::invalid_argument
    GeneratorSpec normalized() const;  // rank defaults resolved
};

struct ClaimedFlags {
    bool ep = false;
    bool normal = false;
    bool group_invertible = false;
    bool nilpotent = false;
};

struct Sample {
    std::string id;
    ComplexMatrix matrix;
    ClaimedFlags claimed;
    GeneratorSpec generator;
};

/// Deterministic for a fixed spec, independent of thread count: sample i,
/// attempt t draws from Rng(splitmix64(seed + GOLDEN * (i+1)) + t), where
/// GOLDEN = 0x9e3779b97f4a7c15. Claimed flags are re-verified with the
/// library's own predicates; indecisive draws (any flag residual between
/// eq_tol and margin) are regenerated with the next attempt seed, at most
/// 16 times. A structural verification failure throws std::logic_error --
/// it indicates a library bug, not a user error.
std::vector<Sample> generate(const GeneratorSpec& spec, const NumericContext& ctx,
                             int threads = 0);

/// JSON corpus file, schema {version, spec, samples: [{id, n, matrix:
/// [[[re, im], ...], ...], claimed: {...}}]}. Numbers are written with 17
/// significant digits, so save/load round-trips entries exactly and
/// regenerated corpora are byte-identical for fixed seeds.
void save_corpus(const std::vector<Sample>& samples, const std::string& path);
std::vector<Sample> load_corpus(const std::string& path);

}  // namespace epkit::corpus

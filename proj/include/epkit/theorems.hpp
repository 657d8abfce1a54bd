#pragma once

#include "epkit/corpus.hpp"
#include "epkit/geninv.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace epkit {

/// The characterization suites. T6/T7/T8/T9 and the inclusion Lemma
/// characterize EP elements; T13 pairs subspace inclusions with product
/// identities; T14/T19 and T15 characterize normal elements. All suites
/// evaluate under l2, where the star is the conjugate transpose and every
/// predicate is exact.
enum class Theorem { LemmaInclusions, T6, T7, T8, T9, T13, T14, T15, T19 };

Theorem theorem_from_string(const std::string& name);  // "lemma", "t6", ..., "t19"
std::string to_string(Theorem t);
const std::vector<Theorem>& all_theorems();

int item_count(Theorem t);

enum class TargetVerdict { Ep, Normal };
TargetVerdict target_of(Theorem t);

struct ItemId {
    Theorem theorem;
    int index = 1;  // 1-based
    std::string label() const;  // lower-case roman numeral
};

/// Validates the index range for the theorem.
ItemId make_item(Theorem t, int index);

struct ItemResult {
    ItemId id;
    bool holds = false;
    double residual = 0.0;
    bool preconditions_met = false;
    // T8 only: the ascent/descent finiteness conjunct of the statement,
    // always true at matrix scale but recorded for faithfulness.
    std::string finiteness_flag;
    bool finiteness_holds = true;
};

/// Everything the item formulas consume, computed once per element under
/// l2: the pseudoinverse, the conjugate-transpose star, the group inverse
/// when it exists, and the EP/normality verdicts with their residuals.
struct ElementData {
    ComplexMatrix a;
    ComplexMatrix adag;
    ComplexMatrix astar;
    std::optional<ComplexMatrix> asharp;
    EpResult ep;
    NormalityResult normal;
};

ElementData analyze_element(const ComplexMatrix& a, const NumericContext& ctx);

struct LemmaReport {
    bool preconditions_met = false;  // requires both a_dag and a_sharp
    bool ep = false;
    bool range_a_in_adag = false;
    bool range_adag_in_a = false;
    bool null_a_in_adag = false;
    bool null_adag_in_a = false;
    bool consistent = false;  // the five statements agree
};

/// The five equivalent statements of the inclusion lemma, evaluated with
/// the rank-of-concatenation predicates.
LemmaReport lemma_inclusions(const ComplexMatrix& a, const NumericContext& ctx);

struct TheoremSuiteReport {
    std::string subject;
    Theorem theorem = Theorem::T6;
    std::vector<ItemResult> items;
    bool ep_verdict = false;
    double ep_residual = 0.0;
    bool normal_verdict = false;
    double normal_residual = 0.0;
    bool group_invertible = false;
    bool consistent = false;
    // T13 only: the subspace side of each pairing.
    std::optional<bool> t13_range_star_in_a;
    std::optional<bool> t13_null_a_in_star;
};

ItemResult evaluate_item(const ElementData& d, const ItemId& id, const NumericContext& ctx);
ItemResult evaluate_item(const ComplexMatrix& a, const ItemId& id, const NumericContext& ctx);

TheoremSuiteReport run_suite(const ComplexMatrix& a, Theorem t, const NumericContext& ctx,
                             const std::string& subject = "");

struct ItemStat {
    std::string id;
    int asserted = 0;
    int violations = 0;
};

/// Aggregate of one theorem over a corpus. Samples whose EP (or
/// normality) residual falls between eq_tol and margin are excluded from
/// the biconditional and counted as margin_zone; per-item preconditions
/// failures are skipped and counted.
struct HarnessReport {
    Theorem theorem = Theorem::T6;
    int samples = 0;
    int asserted_samples = 0;
    int margin_zone = 0;
    int skipped_preconditions = 0;  // item evaluations skipped
    int inconsistencies = 0;
    std::vector<std::string> offenders;
    std::vector<ItemStat> per_item;
    // max item residual among samples where the target verdict is true
    double worst_positive_residual = 0.0;
    // min item residual among asserted samples where the target is false
    double worst_negative_residual = -1.0;  // -1 when no such sample
};

HarnessReport equivalence_harness(const std::vector<corpus::Sample>& samples, Theorem t,
                                  const NumericContext& ctx, int threads = 0);

nlohmann::json to_json(const TheoremSuiteReport& r);
nlohmann::json to_json(const HarnessReport& r);

}  // namespace epkit

#include "epkit/theorems.hpp"

#include "epkit/parallel.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace epkit {

namespace {

struct ItemEval {
    bool holds = false;
    double residual = 0.0;
};

ItemEval identity_eval(const ComplexMatrix& lhs, const ComplexMatrix& rhs,
                       const NumericContext& ctx) {
    const double r = rel_residual(lhs, rhs);
    return {r <= ctx.eq_tol, r};
}

ItemEval both(const ItemEval& x, const ItemEval& y) {
    return {x.holds && y.holds, std::max(x.residual, y.residual)};
}

using EvalFn = ItemEval (*)(const ElementData&, const NumericContext&);

struct ItemDef {
    // a_sharp hoisted outside the disjunction in the theorem statement:
    // without it the item is unevaluable (preconditions_met = false).
    // Items that mention a_sharp inline treat a missing group inverse as
    // a failing statement instead.
    bool sharp_hoisted = false;
    bool sharp_inline = false;
    const char* finiteness_flag = nullptr;  // T8(i)-(viii) only
    EvalFn eval = nullptr;
};

// Shorthands inside the formula table. S() must only be called when the
// group inverse exists (guarded by sharp_hoisted / sharp_inline).
#define A (d.a)
#define D (d.adag)
#define X (d.astar)
#define S (*d.asharp)

ItemEval sharp_missing_eval() {
    // The statement asserts existence; without a_sharp it fails outright.
    return {false, 1.0};
}

const std::map<Theorem, std::vector<ItemDef>>& registry() {
    static const std::map<Theorem, std::vector<ItemDef>> table = [] {
        std::map<Theorem, std::vector<ItemDef>> t;

        // Inclusion lemma: EP plus the four range/null inclusions, all
        // decided by the rank-of-concatenation predicates.
        t[Theorem::LemmaInclusions] = {
            {true, false, nullptr,
             [](const ElementData& d, const NumericContext&) -> ItemEval {
                 return {d.ep.ep, d.ep.residual};
             }},
            {true, false, nullptr,
             [](const ElementData& d, const NumericContext& ctx) -> ItemEval {
                 const double e = range_inclusion_excess(A, D, ctx);
                 return {e <= ctx.rank_tol, e};
             }},
            {true, false, nullptr,
             [](const ElementData& d, const NumericContext& ctx) -> ItemEval {
                 const double e = range_inclusion_excess(D, A, ctx);
                 return {e <= ctx.rank_tol, e};
             }},
            {true, false, nullptr,
             [](const ElementData& d, const NumericContext& ctx) -> ItemEval {
                 const double e = null_inclusion_excess(A, D, ctx);
                 return {e <= ctx.rank_tol, e};
             }},
            {true, false, nullptr,
             [](const ElementData& d, const NumericContext& ctx) -> ItemEval {
                 const double e = null_inclusion_excess(D, A, ctx);
                 return {e <= ctx.rank_tol, e};
             }},
        };

        // Twenty equational characterizations of EP in terms of a_dag and
        // a_sharp (a_sharp hoisted: "EP iff a_sharp exists and ...").
        auto h = [](EvalFn f) { return ItemDef{true, false, nullptr, f}; };
        t[Theorem::T6] = {
            h([](const ElementData& d, const NumericContext& c) { return identity_eval(A * D * S, D * S * A, c); }),
            h([](const ElementData& d, const NumericContext& c) { return identity_eval(A * D * S, S * A * D, c); }),
            h([](const ElementData& d, const NumericContext& c) { return identity_eval(A * S * D, D * A * S, c); }),
            h([](const ElementData& d, const NumericContext& c) { return identity_eval(A * S * D, S * D * A, c); }),
            h([](const ElementData& d, const NumericContext& c) { return identity_eval(D * A * S, S * D * A, c); }),
            h([](const ElementData& d, const NumericContext& c) { return identity_eval(D * D * S, D * S * D, c); }),
            h([](const ElementData& d, const NumericContext& c) { return identity_eval(A * S * D, S, c); }),
            h([](const ElementData& d, const NumericContext& c) { return identity_eval(D * S, S * D, c); }),
            h([](const ElementData& d, const NumericContext& c) { return identity_eval(D * S * D, S * D * D, c); }),
            h([](const ElementData& d, const NumericContext& c) { return identity_eval(D * S * S, S * D * S, c); }),
            h([](const ElementData& d, const NumericContext& c) { return identity_eval(D * S * S, S * S * D, c); }),
            h([](const ElementData& d, const NumericContext& c) { return identity_eval(S * S * D, S * D * S, c); }),
            h([](const ElementData& d, const NumericContext& c) { return identity_eval(A * S, D * A, c); }),
            h([](const ElementData& d, const NumericContext& c) { return identity_eval(D * D, D * S, c); }),
            h([](const ElementData& d, const NumericContext& c) { return identity_eval(D * D, S * D, c); }),
            h([](const ElementData& d, const NumericContext& c) { return identity_eval(D * D, S * S, c); }),
            h([](const ElementData& d, const NumericContext& c) { return identity_eval(D * S, S * S, c); }),
            h([](const ElementData& d, const NumericContext& c) { return identity_eval(A * D * D, S, c); }),
            h([](const ElementData& d, const NumericContext& c) { return identity_eval(S * D * A, D, c); }),
            h([](const ElementData& d, const NumericContext& c) { return identity_eval(D * A * S, D, c); }),
        };

        // Symmetrized-product characterizations; (iii) asserts the group
        // inverse inline.
        t[Theorem::T7] = {
            {false, false, nullptr,
             [](const ElementData& d, const NumericContext& c) {
                 return identity_eval(A * A * D + D * A * A, 2.0 * A, c);
             }},
            {false, false, nullptr,
             [](const ElementData& d, const NumericContext& c) {
                 return identity_eval(D * D * A + A * D * D, 2.0 * D, c);
             }},
            {false, true, nullptr,
             [](const ElementData& d, const NumericContext& c) {
                 return identity_eval(D * S * A + A * S * D, 2.0 * D, c);
             }},
        };

        // Ascent/descent characterizations. The finiteness conjuncts are
        // always true for matrices; they are recorded per item.
        auto f8 = [](const char* flag, EvalFn f) { return ItemDef{false, false, flag, f}; };
        auto h8 = [](EvalFn f) { return ItemDef{true, false, nullptr, f}; };
        t[Theorem::T8] = {
            f8("ascent(a) finite", [](const ElementData& d, const NumericContext& c) { return identity_eval(A * D * D, D, c); }),
            f8("ascent(a_dag) finite", [](const ElementData& d, const NumericContext& c) { return identity_eval(D * A * A, A, c); }),
            f8("descent(a_dag) finite", [](const ElementData& d, const NumericContext& c) { return identity_eval(A * A * D, A, c); }),
            f8("descent(a) finite", [](const ElementData& d, const NumericContext& c) { return identity_eval(D * D * A, D, c); }),
            f8("ascent(a) finite", [](const ElementData& d, const NumericContext& c) { return identity_eval(A * A * D, A, c); }),
            f8("ascent(a_dag) finite", [](const ElementData& d, const NumericContext& c) { return identity_eval(D * D * A, D, c); }),
            f8("descent(a) finite", [](const ElementData& d, const NumericContext& c) { return identity_eval(D * A * A, A, c); }),
            f8("descent(a_dag) finite", [](const ElementData& d, const NumericContext& c) { return identity_eval(A * D * D, D, c); }),
            h8([](const ElementData& d, const NumericContext& c) { return identity_eval(A, D * A * A, c); }),
            h8([](const ElementData& d, const NumericContext& c) { return identity_eval(A, A * A * D, c); }),
            h8([](const ElementData& d, const NumericContext& c) { return identity_eval(D, A * D * D, c); }),
            h8([](const ElementData& d, const NumericContext& c) { return identity_eval(D, D * D * A, c); }),
        };

        t[Theorem::T9] = {
            h8([](const ElementData& d, const NumericContext& c) { return identity_eval(A, D * A * A, c); }),
            h8([](const ElementData& d, const NumericContext& c) { return identity_eval(A, A * A * D, c); }),
            h8([](const ElementData& d, const NumericContext& c) { return identity_eval(D, A * D * D, c); }),
            h8([](const ElementData& d, const NumericContext& c) { return identity_eval(D, D * D * A, c); }),
        };

        // The identity halves of the two range/null pairings; the
        // subspace halves live in run_suite (t13_* fields).
        t[Theorem::T13] = {
            {false, false, nullptr,
             [](const ElementData& d, const NumericContext& c) { return identity_eval(A, A * A * D, c); }},
            {false, false, nullptr,
             [](const ElementData& d, const NumericContext& c) { return identity_eval(A, D * A * A, c); }},
        };

        // Normality: EP together with the star/pseudoinverse commutation.
        auto t14eval = [](const ElementData& d, const NumericContext& c) -> ItemEval {
            const ItemEval commute = identity_eval(D * X, X * D, c);
            return {d.ep.ep && commute.holds, commute.residual};
        };
        t[Theorem::T14] = {{false, false, nullptr, t14eval}};
        t[Theorem::T19] = {{false, false, nullptr, t14eval}};

        // Ten normality characterizations (a_sharp hoisted); items with a
        // side condition require both halves.
        t[Theorem::T15] = {
            h([](const ElementData& d, const NumericContext& c) {
                return both(identity_eval(A * X * S, X * S * A, c), identity_eval(A, D * A * A, c));
            }),
            h([](const ElementData& d, const NumericContext& c) {
                return both(identity_eval(A * X * S, S * A * X, c), identity_eval(A, A * A * D, c));
            }),
            h([](const ElementData& d, const NumericContext& c) {
                return both(identity_eval(A * S * X, S * X * A, c), identity_eval(A, A * A * D, c));
            }),
            h([](const ElementData& d, const NumericContext& c) {
                return both(identity_eval(X * A * S, S * X * A, c), identity_eval(A, D * A * A, c));
            }),
            h([](const ElementData& d, const NumericContext& c) {
                return both(identity_eval(D * X * S, D * S * X, c), identity_eval(A, A * A * D, c));
            }),
            h([](const ElementData& d, const NumericContext& c) {
                return both(identity_eval(X * S * D, S * X * D, c), identity_eval(A, D * A * A, c));
            }),
            h([](const ElementData& d, const NumericContext& c) {
                return identity_eval(X, A * X * S, c);
            }),
            h([](const ElementData& d, const NumericContext& c) {
                return identity_eval(X, S * X * A, c);
            }),
            h([](const ElementData& d, const NumericContext& c) {
                return both(identity_eval(A * X * A, X * A * A, c), identity_eval(A, D * A * A, c));
            }),
            h([](const ElementData& d, const NumericContext& c) {
                return both(identity_eval(A * A * X, A * X * A, c), identity_eval(A, A * A * D, c));
            }),
        };
        return t;
    }();
    return table;
}

#undef A
#undef D
#undef X
#undef S

}  // namespace

Theorem theorem_from_string(const std::string& name) {
    static const std::map<std::string, Theorem> names = {
        {"lemma", Theorem::LemmaInclusions}, {"t6", Theorem::T6},   {"t7", Theorem::T7},
        {"t8", Theorem::T8},                 {"t9", Theorem::T9},   {"t13", Theorem::T13},
        {"t14", Theorem::T14},               {"t15", Theorem::T15}, {"t19", Theorem::T19}};
    const auto it = names.find(name);
    if (it == names.end())
        throw std::invalid_argument("unknown theorem suite '" + name + "'");
    return it->second;
}

std::string to_string(Theorem t) {
    switch (t) {
        case Theorem::LemmaInclusions: return "lemma";
        case Theorem::T6: return "t6";
        case Theorem::T7: return "t7";
        case Theorem::T8: return "t8";
        case Theorem::T9: return "t9";
        case Theorem::T13: return "t13";
        case Theorem::T14: return "t14";
        case Theorem::T15: return "t15";
        case Theorem::T19: return "t19";
    }
    return "t6";
}

const std::vector<Theorem>& all_theorems() {
    static const std::vector<Theorem> all = {
        Theorem::LemmaInclusions, Theorem::T6,  Theorem::T7,  Theorem::T8,  Theorem::T9,
        Theorem::T13,             Theorem::T14, Theorem::T15, Theorem::T19};
    return all;
}

int item_count(Theorem t) {
    return static_cast<int>(registry().at(t).size());
}

TargetVerdict target_of(Theorem t) {
    switch (t) {
        case Theorem::T14:
        case Theorem::T15:
        case Theorem::T19: return TargetVerdict::Normal;
        default: return TargetVerdict::Ep;
    }
}

std::string ItemId::label() const {
    static const char* ones[] = {"", "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix"};
    int k = index;
    std::string out;
    while (k >= 10) {
        out += "x";
        k -= 10;
    }
    return out + ones[k];
}

ItemId make_item(Theorem t, int index) {
    if (index < 1 || index > item_count(t))
        throw std::invalid_argument("item index " + std::to_string(index) + " out of range for " +
                                    to_string(t));
    return {t, index};
}

ElementData analyze_element(const ComplexMatrix& a, const NumericContext& ctx) {
    require_square(a, "analyze_element");
    require_finite(a, "analyze_element");
    ElementData d;
    d.a = a;
    d.adag = mp_inverse(a, ctx);
    d.astar = a.adjoint();
    d.asharp = group_inverse(a, ctx);
    d.ep.residual = rel_residual(a * d.adag, d.adag * a);
    d.ep.ep = d.ep.residual <= ctx.eq_tol;
    d.normal = is_normal(a, NormSpec::l2(), ctx);
    return d;
}

ItemResult evaluate_item(const ElementData& d, const ItemId& id, const NumericContext& ctx) {
    const auto& defs = registry().at(id.theorem);
    if (id.index < 1 || id.index > static_cast<int>(defs.size()))
        throw std::invalid_argument("item index out of range for " + to_string(id.theorem));
    const ItemDef& def = defs[static_cast<std::size_t>(id.index - 1)];

    ItemResult out;
    out.id = id;
    if (def.finiteness_flag) out.finiteness_flag = def.finiteness_flag;
    if (def.sharp_hoisted && !d.asharp) {
        out.preconditions_met = false;
        return out;
    }
    out.preconditions_met = true;
    if (def.sharp_inline && !d.asharp) {
        const ItemEval e = sharp_missing_eval();
        out.holds = e.holds;
        out.residual = e.residual;
        return out;
    }
    const ItemEval e = def.eval(d, ctx);
    out.holds = e.holds && out.finiteness_holds;
    out.residual = e.residual;
    return out;
}

ItemResult evaluate_item(const ComplexMatrix& a, const ItemId& id, const NumericContext& ctx) {
    return evaluate_item(analyze_element(a, ctx), id, ctx);
}

LemmaReport lemma_inclusions(const ComplexMatrix& a, const NumericContext& ctx) {
    const ElementData d = analyze_element(a, ctx);
    LemmaReport rep;
    rep.preconditions_met = d.asharp.has_value();
    rep.ep = d.ep.ep;
    rep.range_a_in_adag = range_included(d.a, d.adag, ctx);
    rep.range_adag_in_a = range_included(d.adag, d.a, ctx);
    rep.null_a_in_adag = null_included(d.a, d.adag, ctx);
    rep.null_adag_in_a = null_included(d.adag, d.a, ctx);
    const bool all = rep.ep && rep.range_a_in_adag && rep.range_adag_in_a && rep.null_a_in_adag &&
                     rep.null_adag_in_a;
    const bool none = !rep.ep && !rep.range_a_in_adag && !rep.range_adag_in_a &&
                      !rep.null_a_in_adag && !rep.null_adag_in_a;
    rep.consistent = all || none;
    return rep;
}

TheoremSuiteReport run_suite(const ComplexMatrix& a, Theorem t, const NumericContext& ctx,
                             const std::string& subject) {
    const ElementData d = analyze_element(a, ctx);
    TheoremSuiteReport rep;
    rep.subject = subject;
    rep.theorem = t;
    rep.ep_verdict = d.ep.ep;
    rep.ep_residual = d.ep.residual;
    rep.normal_verdict = d.normal.normal;
    rep.normal_residual = d.normal.residual;
    rep.group_invertible = d.asharp.has_value();

    const int count = item_count(t);
    for (int k = 1; k <= count; ++k)
        rep.items.push_back(evaluate_item(d, make_item(t, k), ctx));

    if (t == Theorem::T13) {
        rep.t13_range_star_in_a = range_included(d.astar, d.a, ctx);
        rep.t13_null_a_in_star = null_included(d.a, d.astar, ctx);
        const bool id1 = rep.items[0].holds;
        const bool id2 = rep.items[1].holds;
        rep.consistent = (*rep.t13_range_star_in_a == id1) && (*rep.t13_null_a_in_star == id2) &&
                         (rep.ep_verdict == (id1 && id2));
    } else {
        const bool target =
            target_of(t) == TargetVerdict::Ep ? rep.ep_verdict : rep.normal_verdict;
        rep.consistent = true;
        for (const ItemResult& item : rep.items)
            if (item.preconditions_met && item.holds != target) rep.consistent = false;
    }
    return rep;
}

HarnessReport equivalence_harness(const std::vector<corpus::Sample>& samples, Theorem t,
                                  const NumericContext& ctx, int threads) {
    if (samples.empty())
        throw std::invalid_argument("equivalence_harness: empty corpus");
    HarnessReport rep;
    rep.theorem = t;
    rep.samples = static_cast<int>(samples.size());
    for (int k = 1; k <= item_count(t); ++k)
        rep.per_item.push_back({make_item(t, k).label(), 0, 0});

    std::vector<TheoremSuiteReport> runs(samples.size());
    parallel_for(samples.size(), threads, [&](std::size_t i) {
        runs[i] = run_suite(samples[i].matrix, t, ctx, samples[i].id);
    });

    // Aggregate in id order so reports are independent of scheduling.
    std::vector<std::size_t> order(samples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return samples[x].id < samples[y].id; });

    for (std::size_t i : order) {
        const TheoremSuiteReport& run = runs[i];
        const double verdict_residual =
            target_of(t) == TargetVerdict::Ep ? run.ep_residual : run.normal_residual;
        const bool gray_ep = run.ep_residual > ctx.eq_tol && run.ep_residual < ctx.margin;
        const bool gray = (verdict_residual > ctx.eq_tol && verdict_residual < ctx.margin) ||
                          gray_ep;
        if (gray) {
            ++rep.margin_zone;
            continue;
        }
        const bool target =
            target_of(t) == TargetVerdict::Ep ? run.ep_verdict : run.normal_verdict;
        bool contributed = false;
        for (std::size_t k = 0; k < run.items.size(); ++k) {
            const ItemResult& item = run.items[k];
            if (!item.preconditions_met) {
                ++rep.skipped_preconditions;
                continue;
            }
            contributed = true;
            ++rep.per_item[k].asserted;
            if (t != Theorem::T13 && item.holds != target) ++rep.per_item[k].violations;
            if (target)
                rep.worst_positive_residual = std::max(rep.worst_positive_residual, item.residual);
            else if (rep.worst_negative_residual < 0 || item.residual < rep.worst_negative_residual)
                rep.worst_negative_residual = item.residual;
        }
        if (contributed || t == Theorem::T13) {
            ++rep.asserted_samples;
            if (!run.consistent) {
                ++rep.inconsistencies;
                rep.offenders.push_back(samples[i].id);
            }
        }
    }
    return rep;
}

nlohmann::json to_json(const TheoremSuiteReport& r) {
    Json items = Json::array();
    for (const ItemResult& it : r.items) {
        Json j{{"id", it.id.label()},
               {"holds", it.holds},
               {"residual", it.residual},
               {"preconditions_met", it.preconditions_met}};
        if (!it.finiteness_flag.empty()) {
            j["finiteness_flag"] = it.finiteness_flag;
            j["finiteness_holds"] = it.finiteness_holds;
        }
        items.push_back(std::move(j));
    }
    Json out{{"subject", r.subject},
             {"theorem", to_string(r.theorem)},
             {"items", std::move(items)},
             {"ep", r.ep_verdict},
             {"ep_residual", r.ep_residual},
             {"normal", r.normal_verdict},
             {"normal_residual", r.normal_residual},
             {"group_invertible", r.group_invertible},
             {"consistent", r.consistent}};
    if (r.t13_range_star_in_a) out["range_star_in_a"] = *r.t13_range_star_in_a;
    if (r.t13_null_a_in_star) out["null_a_in_star"] = *r.t13_null_a_in_star;
    return out;
}

nlohmann::json to_json(const HarnessReport& r) {
    Json per_item = Json::array();
    for (const ItemStat& s : r.per_item)
        per_item.push_back(
            Json{{"id", s.id}, {"asserted", s.asserted}, {"violations", s.violations}});
    Json out{{"theorem", to_string(r.theorem)},
             {"samples", r.samples},
             {"asserted_samples", r.asserted_samples},
             {"margin_zone", r.margin_zone},
             {"skipped_preconditions", r.skipped_preconditions},
             {"inconsistencies", r.inconsistencies},
             {"offenders", r.offenders},
             {"per_item", std::move(per_item)},
             {"worst_positive_residual", r.worst_positive_residual}};
    if (r.worst_negative_residual >= 0) out["worst_negative_residual"] = r.worst_negative_residual;
    return out;
}

}  // namespace epkit

#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "aut_pruner.hpp"
#include "core.hpp"
#include "degree_one.hpp"
#include "generate.hpp"
#include "implicit_size2.hpp"
#include "invariants.hpp"
#include "refine_wl1.hpp"
#include "stats.hpp"
#include "target_cell.hpp"
#include "traversal.hpp"

namespace ircanon {

enum class TraversalKind { dfs, bfs_exp, bfs_exp_m };
enum class SelectorKind { f, fl, flm };

inline TraversalKind parse_traversal(const std::string& s) {
    if (s == "dfs")
        return TraversalKind::dfs;
    if (s == "bfs-exp")
        return TraversalKind::bfs_exp;
    if (s == "bfs-exp-m")
        return TraversalKind::bfs_exp_m;
    throw std::invalid_argument("unknown traversal '" + s + "' (dfs, bfs-exp, bfs-exp-m)");
}

inline SelectorKind parse_selector(const std::string& s) {
    if (s == "f")
        return SelectorKind::f;
    if (s == "fl")
        return SelectorKind::fl;
    if (s == "flm")
        return SelectorKind::flm;
    throw std::invalid_argument("unknown target cell selector '" + s + "' (f, fl, flm)");
}

struct RunConfig {
    TraversalKind traversal = TraversalKind::dfs;
    SelectorKind selector = SelectorKind::f;
    bool invariant_t = false;
    bool invariant_q = false;
    bool invariant_pl = false;
    bool aut_pruner = true;
    bool implicit_size2 = true;
    bool degree_one = true;
    std::uint64_t memory_limit = 0; // bytes; required for bfs-exp-m
    int exp_paths_per_level = 1;
    bool with_stats = false;
    bool with_alloc_trace = false;

    bool any_invariant() const { return invariant_t || invariant_q || invariant_pl; }

    void set_invariants(const std::string& csv) {
        invariant_t = invariant_q = invariant_pl = false;
        std::size_t i = 0;
        while (i < csv.size()) {
            std::size_t j = csv.find(',', i);
            std::string item = csv.substr(i, j == std::string::npos ? j : j - i);
            if (item == "t")
                invariant_t = true;
            else if (item == "q")
                invariant_q = true;
            else if (item == "pl")
                invariant_pl = true;
            else if (!item.empty() && item != "none")
                throw std::invalid_argument("unknown invariant '" + item + "' (pl, q, t)");
            if (j == std::string::npos)
                break;
            i = j + 1;
        }
    }

    std::string describe() const {
        std::string s;
        switch (traversal) {
        case TraversalKind::dfs: s = "dfs"; break;
        case TraversalKind::bfs_exp: s = "bfs-exp"; break;
        case TraversalKind::bfs_exp_m: s = "bfs-exp-m"; break;
        }
        switch (selector) {
        case SelectorKind::f: s += "/f"; break;
        case SelectorKind::fl: s += "/fl"; break;
        case SelectorKind::flm: s += "/flm"; break;
        }
        s += "/inv=";
        if (!any_invariant())
            s += "none";
        if (invariant_t)
            s += "t";
        if (invariant_q)
            s += "q";
        if (invariant_pl)
            s += "pl";
        if (!aut_pruner)
            s += "/no-aut";
        if (!implicit_size2)
            s += "/no-size2";
        if (!degree_one)
            s += "/no-deg1";
        return s;
    }
};

/// Handles into a built suite, for output emission after a run.
struct SuiteHandles {
    StatsVisitor* stats = nullptr;
    AllocTraceVisitor* alloc = nullptr;
    BfsExpTraversal* bfs = nullptr;
};

/// Assemble the visitor suite for a configuration. Registration order fixes
/// dispatch order and the invariant ids (T < Q < PL).
inline VisitorSuite build_suite(const RunConfig& cfg, SuiteHandles* handles = nullptr) {
    if (cfg.traversal == TraversalKind::bfs_exp_m && cfg.memory_limit == 0)
        throw std::invalid_argument("bfs-exp-m requires --memory-limit");
    VisitorSuite suite;
    switch (cfg.selector) {
    case SelectorKind::f: suite.emplace<SelectFirst>(); break;
    case SelectorKind::fl: suite.emplace<SelectFirstLargest>(); break;
    case SelectorKind::flm: suite.emplace<SelectFirstLargestMostJoined>(); break;
    }
    suite.emplace<Wl1Refiner>();
    if (cfg.degree_one)
        suite.emplace<DegreeOneRefiner>();
    if (cfg.any_invariant()) {
        // The members register first so their emissions precede the
        // coordinator's own create-end bookkeeping in dispatch order.
        // Ids follow construction order: T < Q < PL.
        auto coord = std::make_unique<InvariantCoordinator>();
        if (cfg.invariant_t)
            suite.emplace<CellSplitTrace>(*coord);
        if (cfg.invariant_q)
            suite.emplace<QuotientTrace>(*coord);
        if (cfg.invariant_pl)
            suite.emplace<PartialLeafTrace>(*coord);
        suite.add(std::move(coord));
    }
    if (cfg.aut_pruner)
        suite.emplace<AutPruner>();
    if (cfg.implicit_size2)
        suite.emplace<ImplicitSize2>();
    BfsExpTraversal* bfs = nullptr;
    switch (cfg.traversal) {
    case TraversalKind::dfs:
        suite.emplace<DfsTraversal>();
        break;
    case TraversalKind::bfs_exp:
        bfs = &suite.emplace<BfsExpTraversal>(0, cfg.exp_paths_per_level);
        break;
    case TraversalKind::bfs_exp_m:
        bfs = &suite.emplace<BfsExpTraversal>(cfg.memory_limit, cfg.exp_paths_per_level);
        break;
    }
    StatsVisitor* stats = nullptr;
    AllocTraceVisitor* alloc = nullptr;
    if (cfg.with_stats)
        stats = &suite.emplace<StatsVisitor>();
    if (cfg.with_alloc_trace)
        alloc = &suite.emplace<AllocTraceVisitor>();
    if (handles) {
        handles->stats = stats;
        handles->alloc = alloc;
        handles->bfs = bfs;
    }
    return suite;
}

/// One-shot canonization under a configuration.
inline RunReport canonicalize_with(const AttributedGraph& g, const RunConfig& cfg) {
    VisitorSuite suite = build_suite(cfg);
    return canonicalize(g, suite);
}

/// The canonical form itself: G^perm for the reported permutation.
inline AttributedGraph canonical_form(const AttributedGraph& g, const RunReport& report) {
    return apply_permutation(g, report.canonical);
}

struct RepetitionResult {
    Permutation relabeling;  // the random gamma applied to the input
    RunReport report;
    double millis = 0;
};

struct RepetitionOutcome {
    bool agree = false;
    std::vector<RepetitionResult> runs;
    std::optional<AttributedGraph> form; // the agreed canonical form
    std::string disagreement;            // human-readable diff when !agree
};

/// The correctness protocol: canonize R random relabelings of g and demand
/// representationally equal canonical forms. The suite factory variant exists
/// so tests can inject deliberately broken visitors and watch the check fire.
template <typename SuiteFactory>
inline RepetitionOutcome run_repetitions_with(const AttributedGraph& g, SuiteFactory&& make_suite,
                                              int reps, std::uint64_t seed) {
    if (reps < 1)
        throw std::invalid_argument("need at least one repetition");
    std::mt19937_64 rng(seed);
    RepetitionOutcome out;
    out.agree = true;
    for (int r = 0; r < reps; ++r) {
        RepetitionResult res;
        res.relabeling = random_permutation(g.vertex_count(), rng);
        AttributedGraph permuted = apply_permutation(g, res.relabeling);
        VisitorSuite suite = make_suite();
        auto t0 = std::chrono::steady_clock::now();
        res.report = canonicalize(permuted, suite);
        auto t1 = std::chrono::steady_clock::now();
        res.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
        AttributedGraph form = canonical_form(permuted, res.report);
        if (!out.form) {
            out.form = std::move(form);
        } else if (!representation_equal(form, *out.form)) {
            out.agree = false;
            out.disagreement = "repetition " + std::to_string(r + 1) +
                               " produced a different canonical form (digest " +
                               std::to_string(representation_digest(form)) + " vs " +
                               std::to_string(representation_digest(*out.form)) + ")";
        }
        out.runs.push_back(std::move(res));
    }
    return out;
}

inline RepetitionOutcome run_repetitions(const AttributedGraph& g, const RunConfig& cfg, int reps,
                                         std::uint64_t seed) {
    return run_repetitions_with(g, [&cfg] { return build_suite(cfg); }, reps, seed);
}

} // namespace ircanon

#pragma once

#include <algorithm>
#include <cassert>
#include <string>
#include <tuple>
#include <vector>

#include "core.hpp"

namespace ircanon {

/// Refiner for cells whose vertices all have total degree 1. Vertices whose
/// unique neighbors sit in distinct singleton cells are split apart (ordered
/// by neighbor position, then edge attribute); vertices sharing a neighbor
/// and edge attribute, and mutually adjacent pendant pairs, are reported as
/// implicit transpositions. Runs after WL-1.
class DegreeOneRefiner final : public Visitor {
public:
    std::string name() const override { return "degree-one"; }

    RefineStatus refine(Canonizer& cz, TreeNode& node) override {
        RefineStatus st = refine_partition(
            cz.graph(), node.mutable_pi(),
            [&](const Permutation& gamma) { cz.report_implicit_automorphism(node, gamma); },
            [&](int pos) {
                cz.dispatch_new_cell(node, pos);
                return !node.is_pruned();
            },
            [&] {
                cz.dispatch_refine_round_end(node);
                return !node.is_pruned();
            });
        if (st == RefineStatus::aborted)
            cz.dispatch_refine_abort(node);
        return st;
    }

    /// The work function, directly usable on a bare partition in tests.
    template <typename ReportAut, typename OnNewCell, typename OnRoundEnd>
    static RefineStatus refine_partition(const AttributedGraph& g, OrderedPartition& pi,
                                         ReportAut&& report_aut, OnNewCell&& on_new_cell,
                                         OnRoundEnd&& on_round_end) {
        const int n = pi.size();
        bool changed = false;
        std::vector<int> starts = pi.cell_starts();
        for (int s : starts) {
            int size = pi.cell_size(s);
            if (size < 2)
                continue;
            bool all_degree_one = true;
            for (int i = s; i < s + size && all_degree_one; ++i)
                all_degree_one = g.degree(pi.element(i)) == 1;
            if (!all_degree_one)
                continue;

            // Pendant pairs: two degree-1 vertices of the cell joined to each
            // other form an isolated edge; swapping them is an automorphism.
            for (int i = s; i < s + size; ++i) {
                Vertex v = pi.element(i);
                Vertex u = g.incidences(v)[0].to;
                if (pi.cell_start_of_vertex(u) == s && g.degree(u) == 1 &&
                    g.incidences(u)[0].to == v && pi.position(v) < pi.position(u)) {
                    Permutation t(n);
                    t.compose_transposition(v, u);
                    report_aut(t);
                }
            }

            // Group the members by (neighbor, edge attribute), in segment
            // order; a chain of transpositions covers each group.
            std::vector<std::tuple<Vertex, EdgeAttr, Vertex>> keyed; // (nb, attr, member)
            for (int i = s; i < s + size; ++i) {
                Vertex v = pi.element(i);
                const Incidence& inc = g.incidences(v)[0];
                keyed.emplace_back(inc.to, inc.attr, v);
            }
            for (std::size_t i = 0; i < keyed.size(); ++i) {
                for (std::size_t j = i + 1; j < keyed.size(); ++j) {
                    if (std::get<0>(keyed[j]) == std::get<0>(keyed[i]) &&
                        std::get<1>(keyed[j]) == std::get<1>(keyed[i])) {
                        Permutation t(n);
                        t.compose_transposition(std::get<2>(keyed[i]), std::get<2>(keyed[j]));
                        report_aut(t);
                        break; // chain: i with its next partner only
                    }
                }
            }

            // Members with singleton-cell neighbors become their own cells,
            // ordered by (neighbor position, edge attribute); members that
            // share a key stay together. The rest lead the segment unchanged.
            std::vector<Vertex> remainder;
            std::vector<std::tuple<int, EdgeAttr, Vertex>> split_off; // (nb pos, attr, member)
            for (int i = s; i < s + size; ++i) {
                Vertex v = pi.element(i);
                const Incidence& inc = g.incidences(v)[0];
                int nb_cell = pi.cell_start_of_vertex(inc.to);
                if (pi.cell_size(nb_cell) == 1)
                    split_off.emplace_back(pi.position(inc.to), inc.attr, v);
                else
                    remainder.push_back(v);
            }
            if (split_off.empty())
                continue;
            std::stable_sort(split_off.begin(), split_off.end(),
                             [](const auto& a, const auto& b) {
                                 return std::tie(std::get<0>(a), std::get<1>(a)) <
                                        std::tie(std::get<0>(b), std::get<1>(b));
                             });
            std::vector<Vertex> new_order = remainder;
            std::vector<int> cuts;
            for (std::size_t i = 0; i < split_off.size(); ++i) {
                bool new_group = i == 0 ? !remainder.empty()
                                        : std::tie(std::get<0>(split_off[i]), std::get<1>(split_off[i])) !=
                                              std::tie(std::get<0>(split_off[i - 1]),
                                                       std::get<1>(split_off[i - 1]));
                if (new_group)
                    cuts.push_back(s + static_cast<int>(new_order.size()));
                new_order.push_back(std::get<2>(split_off[i]));
            }
            if (cuts.empty())
                continue; // one group and no remainder: nothing to separate
            pi.permute_segment(s, new_order);
            pi.split_cell(s, cuts);
            changed = true;
            for (int c : cuts)
                if (!on_new_cell(c))
                    return RefineStatus::aborted;
        }
        if (changed && !on_round_end())
            return RefineStatus::aborted;
        return changed ? RefineStatus::changed : RefineStatus::unchanged;
    }
};

} // namespace ircanon

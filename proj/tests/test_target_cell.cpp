#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace ircanon;

namespace {

// Run a selector directly on a prepared node by borrowing a canonizer with a
// do-nothing traversal. The selector visitors are stateless, so calling them
// through a scratch suite is fine.
struct NullTraversal final : Visitor {
    std::string name() const override { return "null-traversal"; }
    bool can_traverse() const override { return true; }
    void traverse(Canonizer&, TreeNode&) override {}
};

int select_on(const AttributedGraph& g, const OrderedPartition& pi, std::unique_ptr<Visitor> sel) {
    VisitorSuite suite;
    Visitor& s = suite.add(std::move(sel));
    suite.emplace<NullTraversal>();
    Canonizer cz(g, suite);
    // Build a bare node around the partition, bypassing refinement.
    struct Probe final : Visitor {
        std::string name() const override { return "probe"; }
    };
    TreeNode node(cz, NodePtr(), pi, 0);
    return s.select_target_cell(cz, node);
}

std::vector<Vertex> cell_at(const OrderedPartition& pi, int start) {
    std::vector<Vertex> out;
    for (int i = start; i < start + pi.cell_size(start); ++i)
        out.push_back(pi.element(i));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("F selects the first non-singleton cell") {
    AttributedGraph g = AttributedGraph::build(6, {});
    OrderedPartition pi = OrderedPartition::parse("[1 | 2 3 | 4 5 6]");
    int s = select_on(g, pi, std::make_unique<SelectFirst>());
    CHECK(cell_at(pi, s) == std::vector<Vertex>{2, 3});

    OrderedPartition root = OrderedPartition::parse("[1 2 | 7 8 9 10 | 3 4 5 6]");
    AttributedGraph g10 = testutil::tree_example_graph();
    CHECK(cell_at(root, select_on(g10, root, std::make_unique<SelectFirst>())) ==
          std::vector<Vertex>{1, 2});

    OrderedPartition single = OrderedPartition::parse("[1 | 2 | 3 4]");
    CHECK(cell_at(single, select_on(g, OrderedPartition::parse("[1 | 2 | 3 4 | 5 | 6]"),
                                    std::make_unique<SelectFirst>())) == std::vector<Vertex>{3, 4});
}

TEST_CASE("FL selects the first largest cell") {
    AttributedGraph g10 = testutil::tree_example_graph();
    OrderedPartition root = OrderedPartition::parse("[1 2 | 7 8 9 10 | 3 4 5 6]");
    CHECK(cell_at(root, select_on(g10, root, std::make_unique<SelectFirstLargest>())) ==
          std::vector<Vertex>{7, 8, 9, 10});

    AttributedGraph g6 = AttributedGraph::build(6, {});
    OrderedPartition all2 = OrderedPartition::parse("[1 2 | 3 4 | 5 6]");
    CHECK(cell_at(all2, select_on(g6, all2, std::make_unique<SelectFirstLargest>())) ==
          std::vector<Vertex>{1, 2});

    OrderedPartition mid = OrderedPartition::parse("[1 | 2 3 4 | 5 6]");
    CHECK(cell_at(mid, select_on(g6, mid, std::make_unique<SelectFirstLargest>())) ==
          std::vector<Vertex>{2, 3, 4});
}

TEST_CASE("non_uniformly_joined definition") {
    // u adjacent to exactly one of two vertices in W -> true
    AttributedGraph g1 = AttributedGraph::build(3, {{1, 2, 0}});
    OrderedPartition pi1 = OrderedPartition::parse("[1 | 2 3]");
    CHECK(non_uniformly_joined(g1, pi1, 1, 2));

    // complete bipartite join: no non-neighbors -> false
    AttributedGraph g2 =
        AttributedGraph::build(4, {{1, 3, 0}, {1, 4, 0}, {2, 3, 0}, {2, 4, 0}});
    OrderedPartition pi2 = OrderedPartition::parse("[1 2 | 3 4]");
    CHECK(!non_uniformly_joined(g2, pi2, 1, 3));

    // no edges between the cells -> false
    AttributedGraph g3 = AttributedGraph::build(4, {{1, 2, 0}, {3, 4, 0}});
    CHECK(!non_uniformly_joined(g3, pi2, 1, 3));
}

TEST_CASE("FLM prefers the max cell joined non-uniformly to the most cells") {
    // Cells: A = {1 2}, B = {3 4}, C = {5 6}, D = {7 8}.
    // A is non-uniformly joined to C and D; B to nothing.
    AttributedGraph g = AttributedGraph::build(
        8, {{1, 5, 0}, {2, 6, 0}, {1, 7, 0}, {2, 8, 0}});
    OrderedPartition pi = OrderedPartition::parse("[3 4 | 1 2 | 5 6 | 7 8]");
    int s = select_on(g, pi, std::make_unique<SelectFirstLargestMostJoined>());
    CHECK(cell_at(pi, s) == std::vector<Vertex>{1, 2});
}

TEST_CASE("FLM reduces to FL when nothing is non-uniformly joined") {
    AttributedGraph g = AttributedGraph::build(6, {});
    OrderedPartition pi = OrderedPartition::parse("[1 2 | 3 4 | 5 6]");
    int s = select_on(g, pi, std::make_unique<SelectFirstLargestMostJoined>());
    int fl = select_on(g, pi, std::make_unique<SelectFirstLargest>());
    CHECK(s == fl);
    CHECK(cell_at(pi, s) == std::vector<Vertex>{1, 2});
}

TEST_CASE("FLM on a cycle picks the single candidate cell") {
    AttributedGraph c6 = testutil::cycle_graph(6);
    OrderedPartition pi = OrderedPartition::unit(6);
    int s = select_on(c6, pi, std::make_unique<SelectFirstLargestMostJoined>());
    CHECK(s == 1);
    CHECK(pi.cell_size(s) == 6);
}

TEST_CASE("selection is isomorphism invariant") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 3 + static_cast<int>(rng() % 8);
        AttributedGraph g = testutil::random_graph(n, 0.4, rng);
        OrderedPartition pi = OrderedPartition::unit(n);
        wl1_refine(g, pi, pi.cell_starts());
        if (pi.discrete())
            continue;
        Permutation gamma = random_permutation(n, rng);
        AttributedGraph gg = apply_permutation(g, gamma);
        OrderedPartition pig = testutil::permuted_partition(pi, gamma);

        for (int which = 0; which < 3; ++which) {
            auto make = [&]() -> std::unique_ptr<Visitor> {
                if (which == 0)
                    return std::make_unique<SelectFirst>();
                if (which == 1)
                    return std::make_unique<SelectFirstLargest>();
                return std::make_unique<SelectFirstLargestMostJoined>();
            };
            std::vector<Vertex> sel = cell_at(pi, select_on(g, pi, make()));
            std::vector<Vertex> sel_img = cell_at(pig, select_on(gg, pig, make()));
            std::vector<Vertex> mapped;
            for (Vertex v : sel)
                mapped.push_back(gamma(v));
            std::sort(mapped.begin(), mapped.end());
            CHECK(sel_img == mapped); // T(G^gamma, pi^gamma) = T(G, pi)^gamma
            CHECK(sel.size() >= 2);
        }
    }
}

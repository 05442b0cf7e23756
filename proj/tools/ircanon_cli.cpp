// Command line frontend: canonization runs with repetition checking, the
// brute-force oracle, a graph generator for desk-scale families, and search
// tree visualization.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "ircanon/ircanon.hpp"

namespace {

ircanon::AttributedGraph read_graph(const std::string& path) {
    if (path == "-")
        return ircanon::parse_dimacs(std::cin);
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    return ircanon::parse_dimacs(in);
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
}

struct CanonCli {
    std::string input = "-";
    std::string traversal = "dfs";
    std::string cell = "f";
    std::string invariants = "none";
    std::uint64_t memory_limit = 0;
    int reps = 1;
    std::uint64_t seed = 1;
    int exp_paths = 1;
    bool no_aut = false;
    bool no_size2 = false;
    bool no_deg1 = false;
    bool stats = false;
    std::string dot_path;
    std::string alloc_path;

    ircanon::RunConfig config() const {
        ircanon::RunConfig cfg;
        cfg.traversal = ircanon::parse_traversal(traversal);
        cfg.selector = ircanon::parse_selector(cell);
        cfg.set_invariants(invariants);
        cfg.memory_limit = memory_limit;
        cfg.exp_paths_per_level = exp_paths;
        cfg.aut_pruner = !no_aut;
        cfg.implicit_size2 = !no_size2;
        cfg.degree_one = !no_deg1;
        return cfg;
    }

    void add_flags(CLI::App& app) {
        app.add_option("input", input, "input graph file in DIMACS form, '-' for stdin");
        app.add_option("--traversal", traversal, "dfs | bfs-exp | bfs-exp-m");
        app.add_option("--cell", cell, "target cell selector: f | fl | flm");
        app.add_option("--invariants", invariants, "subset of pl,q,t (comma separated) or none");
        app.add_option("--memory-limit", memory_limit, "frontier memory limit in bytes (bfs-exp-m)");
        app.add_option("--exp-paths", exp_paths, "experimental paths per level (bfs traversals)");
        app.add_flag("--no-aut-pruner", no_aut, "disable automorphism pruning");
        app.add_flag("--no-implicit-size2", no_size2, "disable the size-2 implicit visitor");
        app.add_flag("--no-degree1", no_deg1, "disable the degree-1 refiner");
    }
};

int cmd_canon(const CanonCli& opt) {
    ircanon::AttributedGraph g = read_graph(opt.input);
    ircanon::RunConfig cfg = opt.config();
    std::mt19937_64 rng(opt.seed);
    std::optional<ircanon::AttributedGraph> agreed;
    bool agree = true;
    for (int r = 1; r <= opt.reps; ++r) {
        ircanon::Permutation relabel = ircanon::random_permutation(g.vertex_count(), rng);
        ircanon::AttributedGraph permuted = ircanon::apply_permutation(g, relabel);
        ircanon::RunConfig run_cfg = cfg;
        run_cfg.with_stats = r == 1 && (opt.stats || !opt.dot_path.empty());
        run_cfg.with_alloc_trace = r == 1 && !opt.alloc_path.empty();
        ircanon::SuiteHandles handles;
        ircanon::VisitorSuite suite = ircanon::build_suite(run_cfg, &handles);
        auto t0 = std::chrono::steady_clock::now();
        ircanon::RunReport report = ircanon::canonicalize(permuted, suite);
        auto t1 = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        std::cerr << "rep " << r << ": " << ms << " ms\n";
        ircanon::AttributedGraph form = ircanon::canonical_form(permuted, report);
        if (!agreed)
            agreed = form;
        else if (!representation_equal(form, *agreed)) {
            agree = false;
            std::cout << "rep " << r << ": CANONICAL FORM MISMATCH\n"
                      << "  expected digest 0x" << std::hex << representation_digest(*agreed)
                      << ", got 0x" << representation_digest(form) << std::dec << "\n";
        }
        if (r == 1) {
            // The permutation mapping the ORIGINAL input to canonical indices
            // is relabel * report.canonical.
            ircanon::Permutation full = compose(relabel, report.canonical);
            std::cout << "canonical permutation: " << full.to_cycle_string() << "\n";
            std::cout << "canonical digest: 0x" << std::hex << representation_digest(form)
                      << std::dec << "\n";
            std::cout << "nodes created: " << report.nodes_created << "\n";
            std::cout << "max allocated: " << report.max_allocated << "\n";
            std::cout << "automorphism generators: " << report.generators.size() << "\n";
            for (const auto& gen : report.generators)
                std::cout << "  " << gen.to_cycle_string() << "\n";
            if (opt.stats) {
                for (const auto& [k, v] : report.visitor_stats)
                    std::cout << "stat " << k << " = " << v << "\n";
            }
            if (!opt.dot_path.empty() && handles.stats) {
                std::ostringstream os;
                handles.stats->write_dot(os);
                write_text(opt.dot_path, os.str());
            }
            if (!opt.alloc_path.empty() && handles.alloc) {
                std::ostringstream os;
                handles.alloc->write(os);
                write_text(opt.alloc_path, os.str());
            }
        }
    }
    std::cout << "reps agree: " << (agree ? "yes" : "NO") << "\n";
    return agree ? 0 : 1;
}

int cmd_viz(const CanonCli& opt, const std::string& out_path) {
    ircanon::AttributedGraph g = read_graph(opt.input);
    ircanon::RunConfig cfg = opt.config();
    cfg.with_stats = true;
    ircanon::SuiteHandles handles;
    ircanon::VisitorSuite suite = ircanon::build_suite(cfg, &handles);
    ircanon::canonicalize(g, suite);
    std::ostringstream os;
    handles.stats->write_dot(os);
    write_text(out_path, os.str());
    return 0;
}

int cmd_oracle(const std::string& input) {
    ircanon::AttributedGraph g = read_graph(input);
    ircanon::AttributedGraph canon = ircanon::brute_canon(g);
    std::cout << "c brute-force canonical form\n";
    ircanon::write_dimacs(std::cout, canon);
    std::cout << "c digest 0x" << std::hex << representation_digest(canon) << std::dec << "\n";
    if (g.vertex_count() <= 8) {
        auto auts = ircanon::brute_aut(g);
        std::cout << "c |Aut| = " << auts.size() << "\n";
        for (const auto& a : auts)
            if (!a.is_identity())
                std::cout << "c aut " << a.to_cycle_string() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"individualization-refinement graph canonization"};
    app.require_subcommand(1);

    CanonCli canon_opt;
    CLI::App* canon = app.add_subcommand("canon", "canonize a graph, repeated on random relabelings");
    canon_opt.add_flags(*canon);
    canon->add_option("--reps", canon_opt.reps, "number of random-relabeling repetitions");
    canon->add_option("--seed", canon_opt.seed, "seed for the relabeling generator");
    canon->add_flag("--stats", canon_opt.stats, "print visitor statistics");
    canon->add_option("--dot", canon_opt.dot_path, "write the search tree of the first run as DOT");
    canon->add_option("--alloc-trace", canon_opt.alloc_path,
                      "write the node allocation trace of the first run");

    CanonCli viz_opt;
    std::string viz_out = "-";
    CLI::App* viz = app.add_subcommand("viz", "canonize once and emit the search tree as DOT");
    viz_opt.add_flags(*viz);
    viz->add_option("--out", viz_out, "output path, '-' for stdout");

    std::string oracle_input = "-";
    CLI::App* oracle = app.add_subcommand("oracle", "brute-force canonical form and automorphisms");
    oracle->add_option("input", oracle_input, "input graph file, '-' for stdin");

    CLI::App* gen = app.add_subcommand("gen", "generate a graph in DIMACS form");
    std::string family = "gnp";
    int gn = 10;
    double gp = 0.3;
    int gd = 3;
    std::string offsets = "1,2";
    std::uint64_t gseed = 1;
    int vattrs = 1;
    int eattrs = 1;
    std::string gen_out = "-";
    gen->add_option("family", family, "gnp | regular | circulant | union | cunion");
    gen->add_option("--n", gn, "vertex count");
    gen->add_option("--p", gp, "edge probability (gnp, union, cunion)");
    gen->add_option("--d", gd, "degree (regular)");
    gen->add_option("--offsets", offsets, "circulant offsets, comma separated");
    gen->add_option("--seed", gseed, "generator seed");
    gen->add_option("--vertex-attrs", vattrs, "random vertex attribute palette size");
    gen->add_option("--edge-attrs", eattrs, "random edge attribute palette size");
    gen->add_option("--out", gen_out, "output path, '-' for stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (canon->parsed())
            return cmd_canon(canon_opt);
        if (viz->parsed())
            return cmd_viz(viz_opt, viz_out);
        if (oracle->parsed())
            return cmd_oracle(oracle_input);
        if (gen->parsed()) {
            std::mt19937_64 rng(gseed);
            ircanon::AttributedGraph g;
            if (family == "gnp") {
                g = ircanon::gen_gnp(gn, gp, rng);
            } else if (family == "regular") {
                g = ircanon::gen_regular(gn, gd, rng);
            } else if (family == "circulant") {
                std::vector<int> offs;
                std::stringstream ss(offsets);
                for (std::string item; std::getline(ss, item, ',');)
                    offs.push_back(std::stoi(item));
                g = ircanon::gen_circulant(gn, offs);
            } else if (family == "union") {
                ircanon::AttributedGraph h = ircanon::gen_gnp(gn, gp, rng);
                g = ircanon::gen_disjoint_union(h, h);
            } else if (family == "cunion") {
                ircanon::AttributedGraph h = ircanon::gen_gnp(gn, gp, rng);
                g = ircanon::gen_disjoint_union(h, ircanon::gen_complement(h));
            } else {
                throw std::invalid_argument("unknown family '" + family + "'");
            }
            if (vattrs > 1)
                g = ircanon::with_random_vertex_attrs(g, vattrs, rng);
            if (eattrs > 1)
                g = ircanon::with_random_edge_attrs(g, eattrs, rng);
            std::ostringstream os;
            ircanon::write_dimacs(os, g);
            write_text(gen_out, os.str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

#include <CLI11.hpp>
#include <json.hpp>
#include <fstream>
#include <iostream>

#include "specsym/oracle.hpp"
#include "specsym/pipeline.hpp"

using namespace specsym;

namespace {

struct GlobalOpts {
    int K = 4;
    Tolerances tol;
    bool json = false;
    bool dump_bases = false;
    unsigned seed = 0;
    int jobs = 1;
    bool dev = false;
};

void add_globals(CLI::App& app, GlobalOpts& o) {
    app.add_option("--K", o.K, "small-cell / small-subspace threshold")->check(CLI::PositiveNumber);
    app.add_option("--eps-eig", o.tol.eps_eig, "eigenvalue grouping tolerance");
    app.add_option("--eps-vec", o.tol.eps_vec, "vector comparison tolerance");
    app.add_option("--eps-rank", o.tol.eps_rank, "rank decision tolerance");
    app.add_flag("--json", o.json, "emit json");
    app.add_flag("--dump-bases", o.dump_bases, "include subspace bases in reports");
    app.add_option("--seed", o.seed, "seed for fixture randomness");
    app.add_option("--jobs", o.jobs, "parallel candidate trials (accepted; analyses are deterministic)");
    app.add_flag("--dev", o.dev, "enable developer commands");
}

void print_partition(const Partition& p, std::ostream& os) {
    for (const auto& c : p.cells()) {
        os << "{";
        for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
        os << "}";
    }
    os << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"spectral analysis of graph automorphism structure"};
    app.require_subcommand(1);
    GlobalOpts o;
    add_globals(app, o);

    std::string path, path_b, out_path;
    int vert_u = 0, vert_v = 0, stabilize = -1;
    bool all_systems = false, family = false, order_flag = false;

    auto* analyze = app.add_subcommand("analyze", "co-refinement analysis (partitions + splits)");
    analyze->add_option("graph", path)->required();
    analyze->add_option("--out", out_path, "write json report to a file");

    auto* orbits = app.add_subcommand("orbits", "orbit partition, optionally of a point stabilizer");
    orbits->add_option("graph", path)->required();
    orbits->add_option("--stabilize", stabilize, "fix this vertex first");

    auto* generators = app.add_subcommand("generators", "generating set of the automorphism group");
    generators->add_option("graph", path)->required();
    generators->add_flag("--order", order_flag, "also print the group order");

    auto* blocks = app.add_subcommand("blocks", "block systems per orbit");
    blocks->add_option("graph", path)->required();
    blocks->add_flag("--all-systems", all_systems);
    blocks->add_flag("--family", family);

    auto* irreps_cmd = app.add_subcommand("irreps", "irreducible decomposition of eigenspaces");
    irreps_cmd->add_option("graph", path)->required();

    auto* auto_cmd = app.add_subcommand("auto", "automorphism mapping u to v, if any");
    auto_cmd->add_option("graph", path)->required();
    auto_cmd->add_option("u", vert_u)->required();
    auto_cmd->add_option("v", vert_v)->required();

    auto* iso = app.add_subcommand("iso", "isomorphism test between two graphs");
    iso->add_option("graphA", path)->required();
    iso->add_option("graphB", path_b)->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force reference (dev only)");
    oracle_cmd->add_option("graph", path)->required();

    auto* sag = app.add_subcommand("sag", "full structure report");
    sag->add_option("graph", path)->required();
    sag->add_option("--out", out_path, "write json report to a file");

    CLI11_PARSE(app, argc, argv);

    Graph g;
    if (!path.empty()) g = Graph::load_file(path);

    if (analyze->parsed()) {
        auto rep = run_algorithm4(g, o.K, o.tol);
        std::string js = report_to_json(rep);
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            f << js << "\n";
        }
        if (o.json || out_path.empty()) std::cout << js << "\n";
        return 0;
    }
    if (orbits->parsed()) {
        Analyzer an(g, o.K, o.tol);
        Partition p = stabilize >= 0 ? an.stabilizer_orbits(stabilize).orbits : an.orbits();
        if (o.json) std::cout << partition_to_json(p) << "\n";
        else print_partition(p, std::cout);
        return 0;
    }
    if (generators->parsed()) {
        Analyzer an(g, o.K, o.tol);
        const auto& gens = an.generating_set();
        if (o.json) {
            nlohmann::json j;
            auto arr = nlohmann::json::array();
            for (const auto& s : gens) arr.push_back(s.cycle_string());
            j["generators"] = arr;
            if (order_flag) j["order"] = group_order(gens, g.n());
            std::cout << j.dump(2) << "\n";
        } else {
            for (const auto& s : gens) std::cout << s.cycle_string() << "\n";
            if (order_flag) std::cout << "order " << group_order(gens, g.n()) << "\n";
        }
        return 0;
    }
    if (blocks->parsed()) {
        Analyzer an(g, o.K, o.tol);
        auto data = gather_orbit_data(an);
        nlohmann::json j = nlohmann::json::array();
        for (const auto& od : data) {
            nlohmann::json e;
            e["orbit"] = od.orbit;
            auto systems = nlohmann::json::array();
            for (const auto& sys : od.systems) systems.push_back(sys.blocks);
            e["systems"] = systems;
            if (family && od.orbit.size() > 1) {
                std::map<int, Partition> stab_parts;
                const Partition& base_parts = an.certified_orbits({od.base}).partition;
                for (int x : od.orbit) {
                    std::vector<std::vector<int>> cells;
                    for (const auto& c : base_parts.cells())
                        cells.push_back(od.adequate.to(x).apply_set(c));
                    stab_parts.emplace(x, Partition(g.n(), std::move(cells)));
                }
                auto fam = block_family(g, od.orbit, stab_parts, od.adequate, od.stab_gens, o.tol);
                e["family"] = fam.chain;
                auto verdicts = nlohmann::json::array();
                for (auto v : fam.level_verdicts)
                    verdicts.push_back(v == Primitivity::CaseConnected     ? "primitive-case-i"
                                       : v == Primitivity::CaseCyclicPrime ? "primitive-case-ii"
                                                                           : "imprimitive");
                e["level_verdicts"] = verdicts;
            }
            j.push_back(e);
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (irreps_cmd->parsed()) {
        auto r = run_sag(g, o.K, o.tol);
        nlohmann::json j = nlohmann::json::array();
        for (const auto& ird : r.irs) {
            nlohmann::json e;
            e["eigenvalue"] = ird.eigenvalue;
            auto dims = nlohmann::json::array();
            for (const auto& p : ird.parts) dims.push_back(p.dim());
            e["ir_dims"] = dims;
            j.push_back(e);
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (auto_cmd->parsed()) {
        Analyzer an(g, o.K, o.tol);
        auto phi = an.find_automorphism(vert_u, vert_v);
        if (phi) {
            if (o.json) {
                nlohmann::json j;
                j["automorphism"] = phi->cycle_string();
                j["image"] = phi->image();
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << phi->cycle_string() << "\n";
            }
        } else {
            std::cout << (o.json ? "{\"automorphism\":null}" : "not symmetric") << "\n";
        }
        return 0;
    }
    if (iso->parsed()) {
        Graph h = Graph::load_file(path_b);
        auto out = find_isomorphism(g, h, o.K, o.tol);
        if (o.json) std::cout << iso_to_json(out) << "\n";
        else if (out.isomorphic) std::cout << "isomorphic " << out.map->cycle_string() << "\n";
        else std::cout << "non-isomorphic (" << out.stage << ")\n";
        return 0;
    }
    if (oracle_cmd->parsed()) {
        if (!o.dev) {
            std::cerr << "oracle requires --dev\n";
            return 1;
        }
        auto r = oracle_analyze(g, 10, g.n() <= 16);
        nlohmann::json j;
        j["order"] = r.group_order;
        auto orbs = nlohmann::json::array();
        for (const auto& c : r.orbits.cells()) orbs.push_back(c);
        j["orbits"] = orbs;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (sag->parsed()) {
        auto r = run_sag(g, o.K, o.tol);
        std::string js = sag_to_json(g, r, o.dump_bases);
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            f << js << "\n";
        }
        std::cout << js << "\n";
        return 0;
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const AsymmetryError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const EigensolverError& e) {
        std::cerr << "eigensolver failure: " << e.what() << "\n";
        return 3;
    } catch (const CertificateError& e) {
        std::cerr << "internal certificate failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

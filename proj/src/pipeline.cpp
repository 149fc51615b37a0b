#include "specsym/pipeline.hpp"

#include <json.hpp>

namespace specsym {

using nlohmann::json;

std::vector<OrbitGroupData> gather_orbit_data(Analyzer& an) {
    std::vector<OrbitGroupData> out;
    const Partition& orbits = an.orbits();
    for (const auto& orbit : orbits.cells()) {
        OrbitGroupData od;
        od.base = orbit.front();
        od.orbit = orbit;
        if (orbit.size() == 1) {
            od.adequate.base = od.base;
            od.adequate.orbit = orbit;
            od.adequate.carrier.emplace(od.base, Permutation::identity(an.graph().n()));
            out.push_back(std::move(od));
            continue;
        }
        od.adequate = an.adequate_set(od.base, orbit);
        od.stab_gens = an.stabilizer_generating_set(od.base);

        std::map<int, Partition> stab_parts;
        const Partition& base_parts = an.certified_orbits({od.base}).partition;
        for (int x : orbit) {
            const Permutation& s = od.adequate.to(x);
            std::vector<std::vector<int>> cells;
            for (const auto& c : base_parts.cells()) cells.push_back(s.apply_set(c));
            stab_parts.emplace(x, Partition(an.graph().n(), std::move(cells)));
        }
        od.systems = all_block_systems_on_orbit(orbit, stab_parts, od.adequate, od.stab_gens);
        std::vector<Permutation> certs;
        for (const auto& [x, s] : od.adequate.carrier) certs.push_back(s);
        for (const auto& sys : od.systems)
            verify_block_system(an.graph(), sys, certs, an.tolerances());
        out.push_back(std::move(od));
    }
    return out;
}

SagResult run_sag(const Graph& g, int K, const Tolerances& tol) {
    SagResult r;
    r.tol = tol;
    Analyzer an(g, K, tol);
    r.analysis = an.analysis({});
    r.d = r.analysis.d;
    r.orbits = an.orbits();
    r.generators = an.generating_set();
    r.order = group_order(r.generators, g.n());
    r.orbit_data = gather_orbit_data(an);
    Decomposition dec = eigendecompose(g, tol);
    r.irs = decompose_into_irs(g, dec, r.orbit_data, tol);
    r.warnings = spectral_gap_warnings(g.spectral_matrix(), tol);
    return r;
}

namespace {

json partition_json(const Partition& p) {
    json cells = json::array();
    for (const auto& c : p.cells()) cells.push_back(c);
    return cells;
}

json permutation_json(const Permutation& s) {
    json j;
    j["image"] = s.image();
    j["cycles"] = s.cycle_string();
    return j;
}

} // namespace

std::string partition_to_json(const Partition& p) { return partition_json(p).dump(); }

std::string report_to_json(const AnalysisReport& rep) {
    json j;
    j["d"] = rep.d;
    j["terminal"] = rep.terminal;
    j["fixed_vertices"] = rep.fixed_vertices;
    json pairs = json::array();
    for (const auto& pr : rep.pairs) {
        json pj;
        pj["partition"] = partition_json(pr.partition);
        json parts = json::array();
        for (const auto& part : pr.decomposition.parts()) {
            json d;
            d["eigenvalue"] = part.eigenvalue;
            d["dim"] = part.space.dim();
            d["label"] = part.space.label();
            parts.push_back(d);
        }
        pj["decomposition"] = parts;
        pairs.push_back(pj);
    }
    j["pairs"] = pairs;
    json hist = json::array();
    for (const auto& h : rep.history) {
        static const char* names[] = {"f1_refined",  "f1_not_appropriate",
                                      "f1_no_strict", "f2_split",
                                      "f3_split",    "snapshot",
                                      "small_cell",  "individualize",
                                      "stop"};
        json e;
        e["kind"] = names[static_cast<int>(h.kind)];
        e["detail"] = h.detail;
        hist.push_back(e);
    }
    j["history"] = hist;
    return j.dump(2);
}

std::string sag_to_json(const Graph& g, const SagResult& r, bool dump_bases) {
    json j;
    j["n"] = g.n();
    j["orbits"] = partition_json(r.orbits);
    json gens = json::array();
    for (const auto& s : r.generators) gens.push_back(permutation_json(s));
    j["generators"] = gens;
    j["group_order"] = r.order;
    j["d"] = r.d;

    json systems = json::array();
    for (const auto& od : r.orbit_data)
        for (const auto& sys : od.systems) {
            json s;
            s["orbit"] = sys.orbit;
            s["blocks"] = sys.blocks;
            systems.push_back(s);
        }
    j["block_systems"] = systems;

    json irs = json::array();
    for (const auto& ird : r.irs) {
        json e;
        e["eigenvalue"] = ird.eigenvalue;
        json parts = json::array();
        for (size_t i = 0; i < ird.parts.size(); ++i) {
            json p;
            p["dim"] = ird.parts[i].dim();
            p["orbit"] = r.orbit_data[ird.orbit_of[i]].orbit;
            if (dump_bases) {
                json basis = json::array();
                for (int c = 0; c < ird.parts[i].dim(); ++c) {
                    json col = json::array();
                    for (int rr = 0; rr < ird.parts[i].ambient_dim(); ++rr)
                        col.push_back(ird.parts[i].basis()(rr, c));
                    basis.push_back(col);
                }
                p["basis"] = basis;
            }
            parts.push_back(p);
        }
        e["parts"] = parts;
        irs.push_back(e);
    }
    j["ir_decomposition"] = irs;

    j["tolerances_used"] = {{"eps_eig", r.tol.eps_eig},
                            {"eps_vec", r.tol.eps_vec},
                            {"eps_rank", r.tol.eps_rank}};
    j["warnings"] = r.warnings;
    return j.dump(2);
}

std::string iso_to_json(const IsoOutcome& out) {
    json j;
    j["isomorphic"] = out.isomorphic;
    if (out.map) {
        j["map"] = out.map->image();
        j["cycles"] = out.map->cycle_string();
    } else {
        j["distinguishing_stage"] = out.stage;
    }
    return j.dump(2);
}

} // namespace specsym

#include "mcbnc/trajectory_io.hpp"

#include <cstdio>

#include <json.hpp>

#include "mcbnc/errors.hpp"
#include "mcbnc/metrics.hpp"

namespace mcbnc {

namespace {

using json = nlohmann::ordered_json;

json pair_json(const NodeSet& nodes, NodeId a, NodeId b) { return json::array({nodes.label(a), nodes.label(b)}); }

json cuts_json(const NodeSet& nodes, const std::vector<CutSet>& cuts) {
    json out = json::array();
    for (const CutSet& c : cuts) {
        json one = json::array();
        for (const Link& l : c) one.push_back(pair_json(nodes, l.a, l.b));
        out.push_back(std::move(one));
    }
    return out;
}

std::string decimal(const Rational& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", r.to_double());
    return buf;
}

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw InputError(std::string("trajectory JSON lacks '") + name + "'");
    return j.at(name);
}

NodeId node_of(const NodeSet& nodes, const json& j) {
    if (!j.is_string()) throw InputError("trajectory JSON: node label must be a string");
    return nodes.id(j.get<std::string>());
}

std::pair<NodeId, NodeId> pair_of(const NodeSet& nodes, const json& j) {
    if (!j.is_array() || j.size() != 2) throw InputError("trajectory JSON: expected a [u, v] pair");
    return {node_of(nodes, j[0]), node_of(nodes, j[1])};
}

Rational rational_of(const json& j) {
    if (!j.is_string()) throw InputError("trajectory JSON: score must be a \"p/q\" string");
    return Rational::parse(j.get<std::string>());
}

}  // namespace

std::string format_trajectory(const Trajectory& traj) {
    const NodeSet& nodes = traj.g_plus.nodes();
    json j;
    j["format"] = "mcbnc-trajectory";
    j["version"] = 1;
    j["nodes"] = nodes.labels();
    json sigma = json::array();
    for (NodeId v : traj.sigma.sequence()) sigma.push_back(nodes.label(v));
    j["sigma"] = std::move(sigma);
    j["k_max"] = traj.k_max;
    j["theta"] = traj.theta ? json(traj.theta->str()) : json(nullptr);
    json g_plus = json::array();
    for (const Arc& a : traj.g_plus.arcs()) g_plus.push_back(pair_json(nodes, a.from, a.to));
    j["g_plus"] = std::move(g_plus);

    json steps = json::array();
    for (const PruneStep& s : traj.steps) {
        json st;
        st["step"] = s.step_index;
        st["edge"] = pair_json(nodes, s.choice.from, s.choice.to);
        st["kind"] = s.choice.kind == EdgeKind::Directed ? "directed" : "undirected";
        json h = json::array();
        for (NodeId v : s.choice.h_set) h.push_back(nodes.label(v));
        st["h_set"] = std::move(h);
        st["psi_star"] = s.psi_star.str();
        st["psi_star_value"] = s.psi_star.to_double();
        st["per_graph_cuts"] = cuts_json(nodes, s.per_graph_cuts);
        st["skeleton_edges"] = s.skeleton_edges;
        st["treewidth_ub"] = s.treewidth_ub;
        st["input_edge_counts"] = s.input_edge_counts;
        steps.push_back(std::move(st));
    }
    j["steps"] = std::move(steps);
    j["stopped_at"] = traj.stopped_at ? json(traj.stopped_at->str()) : json(nullptr);

    json directed = json::array();
    for (const Arc& a : traj.final_state.directed_arcs()) directed.push_back(pair_json(nodes, a.from, a.to));
    json undirected = json::array();
    for (const Link& l : traj.final_state.undirected_links()) undirected.push_back(pair_json(nodes, l.a, l.b));
    j["final_state"] = {{"directed", std::move(directed)}, {"undirected", std::move(undirected)}};
    return j.dump(2) + "\n";
}

Trajectory parse_trajectory(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("trajectory JSON: ") + e.what());
    }
    try {
        if (field(j, "format") != "mcbnc-trajectory") throw InputError("not an mcbnc trajectory file");
        if (field(j, "version") != 1) throw InputError("unsupported trajectory version");

        NodeSet nodes(field(j, "nodes").get<std::vector<std::string>>());
        Trajectory t;
        std::vector<std::string> sigma = field(j, "sigma").get<std::vector<std::string>>();
        t.sigma = Ordering::from_labels(nodes, sigma);
        t.k_max = field(j, "k_max").get<int>();
        if (const json& th = field(j, "theta"); !th.is_null()) t.theta = rational_of(th);

        std::vector<Arc> arcs;
        for (const json& p : field(j, "g_plus")) {
            auto [a, b] = pair_of(nodes, p);
            arcs.push_back({a, b});
        }
        t.g_plus = Dag(nodes, arcs);

        for (const json& st : field(j, "steps")) {
            PruneStep s;
            s.step_index = field(st, "step").get<std::size_t>();
            auto [from, to] = pair_of(nodes, field(st, "edge"));
            s.choice.from = from;
            s.choice.to = to;
            const std::string kind = field(st, "kind").get<std::string>();
            if (kind != "directed" && kind != "undirected") throw InputError("unknown edge kind '" + kind + "'");
            s.choice.kind = kind == "directed" ? EdgeKind::Directed : EdgeKind::Undirected;
            for (const json& h : field(st, "h_set")) s.choice.h_set.push_back(node_of(nodes, h));
            std::sort(s.choice.h_set.begin(), s.choice.h_set.end());
            s.psi_star = rational_of(field(st, "psi_star"));
            for (const json& cut : field(st, "per_graph_cuts")) {
                CutSet c;
                for (const json& p : cut) {
                    auto [a, b] = pair_of(nodes, p);
                    c.push_back(Link::of(a, b));
                }
                std::sort(c.begin(), c.end());
                s.per_graph_cuts.push_back(std::move(c));
            }
            s.skeleton_edges = field(st, "skeleton_edges").get<std::size_t>();
            s.treewidth_ub = field(st, "treewidth_ub").get<int>();
            s.input_edge_counts = field(st, "input_edge_counts").get<std::vector<std::size_t>>();
            t.steps.push_back(std::move(s));
        }
        if (const json& stop = field(j, "stopped_at"); !stop.is_null()) t.stopped_at = rational_of(stop);

        const json& fin = field(j, "final_state");
        std::vector<Arc> directed;
        for (const json& p : field(fin, "directed")) {
            auto [a, b] = pair_of(nodes, p);
            directed.push_back({a, b});
        }
        std::vector<Link> undirected;
        for (const json& p : field(fin, "undirected")) {
            auto [a, b] = pair_of(nodes, p);
            undirected.push_back(Link::of(a, b));
        }
        t.final_state = Pdag(nodes, directed, undirected);
        return t;
    } catch (const json::exception& e) {
        throw InputError(std::string("trajectory JSON: ") + e.what());
    }
}

std::string format_metrics_csv(const Trajectory& traj, std::span<const Dag> inputs, const Dag* gold) {
    std::string out = "step,psi_star,psi_star_value,theta,edges,treewidth_ub,mean_smhd_to_inputs";
    if (gold) out += ",smhd_to_gold";
    out += '\n';

    Rational running_max(0);
    Pdag cpdag = dag_to_cpdag(traj.g_plus);
    for (std::size_t t = 0; t <= traj.steps.size(); ++t) {
        Rational psi(0);
        if (t > 0) {
            psi = traj.steps[t - 1].psi_star;
            running_max = std::max(running_max, psi);
            cpdag = renormalize(apply_delete(cpdag, traj.steps[t - 1].choice));
        }
        const bool reachable = t == traj.steps.size() || running_max < traj.steps[t].psi_star;
        const Dag dag = pdag_to_dag(cpdag, &traj.sigma);
        const MetricsReport m = evaluate(dag, inputs, gold);

        out += std::to_string(t) + ',' + psi.str() + ',' + decimal(psi) + ',' +
               (reachable ? running_max.str() : std::string()) + ',' + std::to_string(m.edge_count) + ',' +
               std::to_string(m.treewidth_ub) + ',' + decimal(m.mean_smhd_to_inputs);
        if (gold) out += ',' + std::to_string(*m.smhd_to_gold);
        out += '\n';
    }
    return out;
}

}  // namespace mcbnc

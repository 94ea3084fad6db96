#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>

#include "mcbnc/consensus.hpp"
#include "mcbnc/errors.hpp"
#include "mcbnc/graph_io.hpp"
#include "mcbnc/metrics.hpp"
#include "mcbnc/synthgen.hpp"
#include "mcbnc/trajectory_io.hpp"

namespace mcbnc::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

/// Files of one command, written together or not at all.
class OutputSet {
public:
    explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}

    void add(const std::string& name, std::string content) { files_.emplace_back(name, std::move(content)); }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& f : files_) out.push_back(f.first);
        return out;
    }

    void commit() {
        std::vector<fs::path> written;
        bool created_dir = false;
        try {
            std::error_code ec;
            if (!fs::exists(dir_, ec)) {
                fs::create_directories(dir_);
                created_dir = true;
            } else if (!fs::is_directory(dir_)) {
                throw IoError("'" + dir_.string() + "' exists and is not a directory");
            }
            for (const auto& [name, content] : files_) {
                const fs::path path = dir_ / name;
                written.push_back(path);
                write_file(path, content);
            }
        } catch (const fs::filesystem_error& e) {
            roll_back(written, created_dir);
            throw IoError(e.what());
        } catch (...) {
            roll_back(written, created_dir);
            throw;
        }
    }

private:
    void roll_back(const std::vector<fs::path>& written, bool created_dir) {
        std::error_code ec;
        for (const fs::path& p : written) fs::remove(p, ec);
        if (created_dir) fs::remove(dir_, ec);
    }

    fs::path dir_;
    std::vector<std::pair<std::string, std::string>> files_;
};

/// Paths inside a manifest are stored relative to the directory it lives in.
std::string manifest_path(const fs::path& p, const fs::path& out_dir) {
    return fs::proximate(fs::absolute(p), fs::absolute(out_dir)).generic_string();
}

json optional_path(const std::optional<fs::path>& p, const fs::path& out_dir) {
    return p ? json(manifest_path(*p, out_dir)) : json(nullptr);
}

std::string manifest_text(const std::string& command, const std::vector<fs::path>& inputs, json config,
                          const OutputSet& outputs, const fs::path& out_dir) {
    json m;
    m["format"] = "mcbnc-manifest";
    m["version"] = 1;
    m["tool_version"] = kToolVersion;
    m["command"] = command;
    json in = json::array();
    for (const fs::path& p : inputs) in.push_back(manifest_path(p, out_dir));
    m["inputs"] = std::move(in);
    m["config"] = std::move(config);
    std::vector<std::string> names = outputs.names();
    names.push_back("manifest.json");
    m["outputs"] = names;
    return m.dump(2) + "\n";
}

std::vector<Dag> read_inputs(const std::vector<fs::path>& paths) {
    if (paths.empty()) throw InputError("at least one input graph is required");
    std::vector<Dag> graphs;
    for (const fs::path& p : paths) graphs.push_back(read_dag(p));
    for (std::size_t i = 1; i < graphs.size(); ++i) {
        try {
            require_same_nodes(graphs.front().nodes(), graphs[i].nodes());
        } catch (const InputError& e) {
            throw InputError(paths[i].string() + " vs " + paths.front().string() + ": " + e.what());
        }
    }
    return graphs;
}

std::optional<Ordering> read_ordering(const std::optional<fs::path>& path, const NodeSet& nodes) {
    if (!path) return std::nullopt;
    try {
        return parse_ordering(read_file(*path), nodes);
    } catch (const InputError& e) {
        throw InputError(path->string() + ": " + e.what());
    }
}

std::optional<Dag> read_gold(const std::optional<fs::path>& path, const NodeSet& nodes) {
    if (!path) return std::nullopt;
    Dag gold = read_dag(*path);
    require_same_nodes(nodes, gold.nodes());
    return gold;
}

/// Graph file that may hold a DAG or a PDAG; PDAGs are extended to a DAG.
Dag read_any_graph(const fs::path& path) {
    Pdag p = read_pdag(path);
    try {
        return pdag_to_dag(p);
    } catch (const StructuralError& e) {
        throw StructuralError(path.string() + ": " + e.what());
    }
}

std::string fixed(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

std::string csv_row(const std::string& csv, std::size_t index) {
    std::size_t start = 0;
    for (std::size_t i = 0; i < index; ++i) start = csv.find('\n', start) + 1;
    return csv.substr(start, csv.find('\n', start) - start);
}

}  // namespace

void cmd_synth(const SynthOptions& opt, std::ostream& log) {
    if (opt.n < 2) throw InputError("--n must be at least 2");
    if (opt.r < 1) throw InputError("--r must be at least 1");
    GenConstraints c = GenConstraints::for_nodes(opt.n);
    if (opt.max_parents) c.max_parents = *opt.max_parents;
    if (opt.max_children) c.max_children = *opt.max_children;
    if (opt.max_edges) c.max_edges = *opt.max_edges;
    if (opt.perturbations) c.perturbations = *opt.perturbations;
    if (clamp_constraints(opt.n, c))
        log << "warning: max edges clamped to " << c.max_edges << " for " << opt.n << " nodes\n";

    OutputSet files(opt.out);
    const Dag gold = random_dag(opt.n, c, opt.seed);
    files.add(opt.prefix + "_gold.graph", format_graph(gold));
    for (std::size_t i = 1; i <= opt.r; ++i)
        files.add(opt.prefix + "_" + std::to_string(i) + ".graph", format_graph(perturb(gold, c, opt.seed ^ i)));

    json config = {{"n", opt.n},
                   {"r", opt.r},
                   {"seed", opt.seed},
                   {"prefix", opt.prefix},
                   {"max_parents", c.max_parents},
                   {"max_children", c.max_children},
                   {"max_edges", c.max_edges},
                   {"perturbations", c.perturbations}};
    files.add("manifest.json", manifest_text("synth", {}, std::move(config), files, opt.out));
    files.commit();
    log << "wrote gold graph and " << opt.r << " perturbed graphs to " << opt.out.string() << "\n";
}

void cmd_fuse(const FuseOptions& opt, std::ostream& log) {
    FusionInput in;
    in.graphs = read_inputs(opt.inputs);
    in.ordering_override = read_ordering(opt.ordering, in.graphs.front().nodes());
    FusionResult fused = fuse(in);
    const NodeSet& nodes = fused.g_plus.nodes();

    OutputSet files(opt.out);
    files.add("fused.graph", format_graph(fused.g_plus));
    files.add("ordering.txt", format_ordering(fused.sigma, nodes));
    json config = {{"ordering", optional_path(opt.ordering, opt.out)}};
    files.add("manifest.json", manifest_text("fuse", opt.inputs, std::move(config), files, opt.out));
    files.commit();
    log << "fused " << in.graphs.size() << " graphs into " << fused.g_plus.num_arcs() << " edges\n";
}

void cmd_consensus(const ConsensusOptions& opt, std::ostream& log) {
    if (opt.theta.has_value() == opt.trajectory) throw InputError("give exactly one of --theta and --trajectory");
    if (opt.k_max < 0) throw InputError("--kmax must be non-negative");
    Config cfg;
    cfg.k_max = opt.k_max;
    if (opt.theta) {
        cfg.theta = Rational::parse(*opt.theta);
        if (*cfg.theta < Rational(0)) throw InputError("--theta must be non-negative");
    }

    FusionInput in;
    in.graphs = read_inputs(opt.inputs);
    const NodeSet& nodes = in.graphs.front().nodes();
    in.ordering_override = read_ordering(opt.ordering, nodes);
    const std::optional<Dag> gold = read_gold(opt.gold, nodes);

    RunResult r = run(in, cfg);

    OutputSet files(opt.out);
    files.add("consensus.graph", format_graph(r.consensus));
    files.add("consensus_cpdag.graph", format_graph(r.cpdag));
    files.add("trajectory.json", format_trajectory(r.trajectory));
    files.add("metrics.csv", format_metrics_csv(r.trajectory, in.graphs, gold ? &*gold : nullptr));
    json config = {{"theta", cfg.theta ? json(cfg.theta->str()) : json(nullptr)},
                   {"trajectory", opt.trajectory},
                   {"k_max", opt.k_max},
                   {"seed", nullptr},
                   {"ordering", optional_path(opt.ordering, opt.out)},
                   {"gold", optional_path(opt.gold, opt.out)}};
    files.add("manifest.json", manifest_text("consensus", opt.inputs, std::move(config), files, opt.out));
    files.commit();
    log << r.trajectory.steps.size() << " deletions, consensus has " << r.consensus.num_arcs() << " edges\n";
}

void cmd_select_theta(const SelectThetaOptions& opt, std::ostream& out) {
    Trajectory traj;
    try {
        traj = parse_trajectory(read_file(opt.trajectory));
    } catch (const InputError& e) {
        throw InputError(opt.trajectory.string() + ": " + e.what());
    }
    std::vector<Dag> inputs = read_inputs(opt.inputs);
    require_same_nodes(traj.g_plus.nodes(), inputs.front().nodes());
    const std::optional<Dag> gold = read_gold(opt.gold, inputs.front().nodes());

    ThetaSelection sel = select_theta(traj, inputs);
    const std::string csv = format_metrics_csv(traj, inputs, gold ? &*gold : nullptr);

    OutputSet files(opt.out);
    files.add("selected.graph", format_graph(sel.dag));
    files.add("selected_cpdag.graph", format_graph(sel.cpdag));
    json config = {{"trajectory_file", manifest_path(opt.trajectory, opt.out)},
                   {"gold", optional_path(opt.gold, opt.out)}};
    files.add("manifest.json", manifest_text("select-theta", opt.inputs, std::move(config), files, opt.out));
    files.commit();

    out << "theta: " << sel.theta.str() << "\n";
    out << "prefix: " << sel.prefix << "\n";
    out << csv_row(csv, 0) << "\n" << csv_row(csv, sel.prefix + 1) << "\n";
}

void cmd_metrics(const MetricsOptions& opt, std::ostream& out) {
    if (opt.format != "csv" && opt.format != "json") throw InputError("--format must be csv or json");
    if (opt.others.empty()) throw InputError("metrics needs at least two graphs");
    const Dag reference = read_any_graph(opt.reference);
    std::vector<Dag> others;
    for (const fs::path& p : opt.others) {
        others.push_back(read_any_graph(p));
        try {
            require_same_nodes(reference.nodes(), others.back().nodes());
        } catch (const InputError& e) {
            throw InputError(p.string() + " vs " + opt.reference.string() + ": " + e.what());
        }
    }

    struct Row {
        std::string name;
        int smhd;
        int edges;
        int treewidth;
    };
    std::vector<Row> rows;
    std::int64_t sum_smhd = 0, sum_edges = 0, sum_tw = 0;
    for (std::size_t i = 0; i < others.size(); ++i) {
        Row row{opt.others[i].generic_string(), smhd(reference, others[i]), static_cast<int>(others[i].num_arcs()),
                treewidth_upper(others[i])};
        sum_smhd += row.smhd;
        sum_edges += row.edges;
        sum_tw += row.treewidth;
        rows.push_back(std::move(row));
    }
    const auto count = static_cast<std::int64_t>(rows.size());
    const Rational mean_s(sum_smhd, count), mean_e(sum_edges, count), mean_t(sum_tw, count);

    if (opt.format == "csv") {
        out << "graph,smhd,edges,treewidth_ub\n";
        for (const Row& r : rows) out << r.name << ',' << r.smhd << ',' << r.edges << ',' << r.treewidth << '\n';
        out << "mean," << fixed(mean_s.to_double()) << ',' << fixed(mean_e.to_double()) << ','
            << fixed(mean_t.to_double()) << '\n';
        return;
    }
    json j;
    j["reference"] = opt.reference.generic_string();
    j["reference_edges"] = reference.num_arcs();
    j["reference_treewidth_ub"] = treewidth_upper(reference);
    json list = json::array();
    for (const Row& r : rows)
        list.push_back({{"graph", r.name}, {"smhd", r.smhd}, {"edges", r.edges}, {"treewidth_ub", r.treewidth}});
    j["rows"] = std::move(list);
    j["mean"] = {{"smhd", mean_s.str()}, {"edges", mean_e.str()}, {"treewidth_ub", mean_t.str()}};
    out << j.dump(2) << "\n";
}

void cmd_rerun(const fs::path& manifest, const std::optional<fs::path>& out, std::ostream& log) {
    json m;
    try {
        m = json::parse(read_file(manifest));
    } catch (const json::parse_error& e) {
        throw InputError(manifest.string() + ": " + e.what());
    }
    try {
        if (m.value("format", "") != "mcbnc-manifest") throw InputError(manifest.string() + ": not a manifest");
        const fs::path base = manifest.parent_path().empty() ? fs::path(".") : manifest.parent_path();
        const fs::path out_dir = out ? *out : base;
        auto resolve = [&](const json& p) { return base / p.get<std::string>(); };
        auto resolve_opt = [&](const json& p) -> std::optional<fs::path> {
            if (p.is_null()) return std::nullopt;
            return resolve(p);
        };
        std::vector<fs::path> inputs;
        for (const json& p : m.at("inputs")) inputs.push_back(resolve(p));
        const json& c = m.at("config");
        const std::string command = m.at("command").get<std::string>();

        if (command == "synth") {
            SynthOptions o;
            o.n = c.at("n").get<std::size_t>();
            o.r = c.at("r").get<std::size_t>();
            o.seed = c.at("seed").get<std::uint64_t>();
            o.prefix = c.at("prefix").get<std::string>();
            o.max_parents = c.at("max_parents").get<int>();
            o.max_children = c.at("max_children").get<int>();
            o.max_edges = c.at("max_edges").get<int>();
            o.perturbations = c.at("perturbations").get<int>();
            o.out = out_dir;
            cmd_synth(o, log);
        } else if (command == "fuse") {
            cmd_fuse({inputs, resolve_opt(c.at("ordering")), out_dir}, log);
        } else if (command == "consensus") {
            ConsensusOptions o;
            o.inputs = inputs;
            if (!c.at("theta").is_null()) o.theta = c.at("theta").get<std::string>();
            o.trajectory = c.at("trajectory").get<bool>();
            o.k_max = c.at("k_max").get<int>();
            o.ordering = resolve_opt(c.at("ordering"));
            o.gold = resolve_opt(c.at("gold"));
            o.out = out_dir;
            cmd_consensus(o, log);
        } else if (command == "select-theta") {
            cmd_select_theta({resolve(c.at("trajectory_file")), inputs, resolve_opt(c.at("gold")), out_dir}, log);
        } else {
            throw InputError(manifest.string() + ": unknown command '" + command + "'");
        }
    } catch (const json::exception& e) {
        throw InputError(manifest.string() + ": " + e.what());
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Min-cut Bayesian network consensus", "mcbnc"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    SynthOptions synth;
    std::string synth_out;
    auto* s = app.add_subcommand("synth", "Generate a random gold DAG and r perturbed copies");
    s->add_option("--n", synth.n, "Number of nodes")->required();
    s->add_option("--r", synth.r, "Number of perturbed graphs")->required();
    s->add_option("--seed", synth.seed, "Random seed")->required();
    s->add_option("--out", synth_out, "Output directory")->required();
    s->add_option("--prefix", synth.prefix, "File name prefix")->capture_default_str();
    s->add_option("--max-parents", synth.max_parents, "Parent limit (default 3)");
    s->add_option("--max-children", synth.max_children, "Child limit (default 4)");
    s->add_option("--max-edges", synth.max_edges, "Edge limit (default 2.5 n)");
    s->add_option("--perturbations", synth.perturbations, "Edits per graph (default 0.75 n)");

    FuseOptions fuse_opt;
    std::vector<std::string> fuse_inputs;
    std::string fuse_ordering, fuse_out;
    auto* f = app.add_subcommand("fuse", "Fuse input DAGs into their union under a common ordering");
    f->add_option("inputs", fuse_inputs, "Input graph files")->required();
    f->add_option("--ordering", fuse_ordering, "Ordering file, one label per line");
    f->add_option("--out", fuse_out, "Output directory")->required();

    ConsensusOptions cons;
    std::vector<std::string> cons_inputs;
    std::string cons_theta, cons_ordering, cons_gold, cons_out;
    auto* c = app.add_subcommand("consensus", "Fuse and prune to a consensus DAG");
    c->add_option("inputs", cons_inputs, "Input graph files")->required();
    auto* theta_opt = c->add_option("--theta", cons_theta, "Pruning threshold (decimal or p/q)");
    auto* traj_flag = c->add_flag("--trajectory", cons.trajectory, "Prune until no edge is left");
    theta_opt->excludes(traj_flag);
    c->add_option("--kmax", cons.k_max, "Largest conditioning subset")->capture_default_str();
    c->add_option("--ordering", cons_ordering, "Ordering file, one label per line");
    c->add_option("--gold", cons_gold, "Gold graph for the metrics CSV");
    c->add_option("--out", cons_out, "Output directory")->required();

    SelectThetaOptions sel;
    std::vector<std::string> sel_inputs;
    std::string sel_traj, sel_gold, sel_out;
    auto* t = app.add_subcommand("select-theta", "Pick the threshold minimising mean SMHD to the inputs");
    t->add_option("--trajectory", sel_traj, "trajectory.json from a consensus run")->required();
    t->add_option("inputs", sel_inputs, "The original input graph files")->required();
    t->add_option("--gold", sel_gold, "Gold graph for the report row");
    t->add_option("--out", sel_out, "Output directory")->required();

    MetricsOptions met;
    std::vector<std::string> met_graphs;
    auto* mt = app.add_subcommand("metrics", "SMHD, edge count and treewidth bound against the first graph");
    mt->add_option("graphs", met_graphs, "Reference graph followed by the graphs to compare")->required();
    mt->add_option("--format", met.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    std::string rerun_manifest, rerun_out;
    auto* rr = app.add_subcommand("rerun", "Repeat the command recorded in a manifest");
    rr->add_option("manifest", rerun_manifest, "manifest.json")->required();
    rr->add_option("--out", rerun_out, "Output directory (default: the manifest's directory)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    auto to_paths = [](const std::vector<std::string>& v) { return std::vector<fs::path>(v.begin(), v.end()); };
    auto opt_path = [](const std::string& v) -> std::optional<fs::path> {
        if (v.empty()) return std::nullopt;
        return fs::path(v);
    };

    try {
        if (*s) {
            synth.out = synth_out;
            cmd_synth(synth, err);
        } else if (*f) {
            cmd_fuse({to_paths(fuse_inputs), opt_path(fuse_ordering), fuse_out}, err);
        } else if (*c) {
            cons.inputs = to_paths(cons_inputs);
            if (*theta_opt) cons.theta = cons_theta;
            cons.ordering = opt_path(cons_ordering);
            cons.gold = opt_path(cons_gold);
            cons.out = cons_out;
            cmd_consensus(cons, err);
        } else if (*t) {
            cmd_select_theta({sel_traj, to_paths(sel_inputs), opt_path(sel_gold), sel_out}, out);
        } else if (*mt) {
            if (met_graphs.size() < 2) throw InputError("metrics needs a reference graph and at least one other");
            met.reference = met_graphs.front();
            met.others.assign(met_graphs.begin() + 1, met_graphs.end());
            cmd_metrics(met, out);
        } else if (*rr) {
            cmd_rerun(rerun_manifest, opt_path(rerun_out), err);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace mcbnc::cli

#include "cli/cli.hpp"

#include <bippr/diffusion_weights.hpp>
#include <bippr/errors.hpp>
#include <bippr/estimator.hpp>
#include <bippr/exact.hpp>
#include <bippr/graph.hpp>
#include <bippr/monte_carlo.hpp>
#include <bippr/mstp.hpp>
#include <bippr/push.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <variant>

namespace bippr::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kPprNodeCap = 100'000;
constexpr std::size_t kMstpNodeCap = 10'000;

/// Bad flag values or unknown labels; exit 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A size guard tripped; exit 3.
class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Output helpers

using Cell = std::variant<std::monostate, std::string, double, std::int64_t>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string quoted = "\"";
    for (const char c : s) {
        quoted += c;
        if (c == '"') {
            quoted += '"';
        }
    }
    return quoted + "\"";
}

std::string render(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<T, std::string>) {
                return csv_escape(v);
            } else {
                return fmt::format("{}", v);
            }
        },
        cell);
}

Json to_json(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else {
                return v;
            }
        },
        cell);
}

void write_table(const Table& table, OutputFormat format, std::ostream& out) {
    if (format == OutputFormat::Csv) {
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            out << (i ? "," : "") << table.columns[i];
        }
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out << (i ? "," : "") << render(row[i]);
            }
            out << '\n';
        }
        return;
    }
    Json rows = Json::array();
    for (const auto& row : table.rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            obj[table.columns[i]] = to_json(row[i]);
        }
        rows.push_back(std::move(obj));
    }
    out << rows.dump(2) << '\n';
}

void flatten(const Json& j, const std::string& prefix, Table& table) {
    if (j.is_object() || j.is_array()) {
        std::size_t index = 0;
        for (auto it = j.begin(); it != j.end(); ++it, ++index) {
            const std::string key = j.is_object() ? it.key() : std::to_string(index);
            flatten(*it, prefix.empty() ? key : prefix + "." + key, table);
        }
        return;
    }
    table.columns.push_back(prefix);
    Cell cell;
    if (j.is_string()) {
        cell = j.get<std::string>();
    } else if (j.is_boolean()) {
        cell = std::int64_t{j.get<bool>() ? 1 : 0};
    } else if (j.is_number_integer() || j.is_number_unsigned()) {
        cell = j.get<std::int64_t>();
    } else if (j.is_number()) {
        cell = j.get<double>();
    }
    table.rows.front().push_back(cell);
}

/// Single records: pretty JSON, or a one-row CSV with dotted column names.
void write_record(const Json& record, OutputFormat format, std::ostream& out) {
    if (format == OutputFormat::Json) {
        out << record.dump(2) << '\n';
        return;
    }
    Table table;
    table.rows.emplace_back();
    flatten(record, "", table);
    write_table(table, format, out);
}

// ---------------------------------------------------------------------------
// Argument resolution

Graph load_graph(const RunConfig& cfg) {
    if (cfg.graph_path.empty()) {
        throw UsageError("--graph is required");
    }
    return load_edge_list(std::filesystem::path(cfg.graph_path), true);
}

NodeId resolve(const Graph& g, const std::string& label, const char* flag) {
    if (label.empty()) {
        throw UsageError(std::string(flag) + " is required");
    }
    const auto id = g.find(label);
    if (!id) {
        throw UsageError("unknown node label '" + label + "' for " + flag);
    }
    return *id;
}

double resolve_delta(const RunConfig& cfg, const Graph& g, NodeId t) {
    if (cfg.delta == "auto") {
        return significance_delta(g, t);
    }
    double value = 0.0;
    try {
        std::size_t used = 0;
        value = std::stod(cfg.delta, &used);
        if (used != cfg.delta.size()) {
            throw std::invalid_argument("trailing characters");
        }
    } catch (const std::exception&) {
        throw UsageError("--delta must be a positive number or 'auto'");
    }
    if (!(value > 0.0)) {
        throw UsageError("--delta must be positive");
    }
    return value;
}

Json params_json(const BipprParams& p) {
    Json j = Json::object();
    j["alpha"] = p.alpha;
    j["delta"] = p.delta;
    j["eps"] = p.eps;
    j["p_fail"] = p.p_fail;
    j["c"] = p.c;
    j["r_max"] = p.r_max;
    j["w"] = p.walks;
    return j;
}

Json sparse_json(const Graph& g, const SparseVector& v) {
    Json j = Json::object();
    for (const auto& [node, x] : v.sorted_entries()) {
        j[g.label(node)] = x;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_estimate(const RunConfig& cfg, OutputFormat format, std::ostream& out) {
    const Graph g = load_graph(cfg);
    const NodeId s = resolve(g, cfg.source, "--source");
    const NodeId t = resolve(g, cfg.target, "--target");
    g.require_walkable(t, "target");
    const double delta = resolve_delta(cfg, g, t);
    const BipprParams params =
        BipprParams::make(cfg.alpha, delta, cfg.eps, cfg.p_fail, g.degree(t), std::nullopt, cfg.r_max);
    const PreparedSource prepared(g, s, params.alpha, params.r_max);
    const PprEstimate est = prepared.query(t, params, RandomStream(cfg.seed, 0), cfg.threads);

    Json record = Json::object();
    record["source"] = g.label(s);
    record["target"] = g.label(t);
    record["estimate"] = est.value;
    record["push_term"] = est.push_term;
    record["walk_term"] = est.walk_term;
    record["params"] = params_json(params);
    record["work"] = {{"push_count", est.push_count},
                      {"degree_work", est.push_work},
                      {"walk_steps", est.walk_steps}};
    record["seed"] = cfg.seed;
    if (cfg.trace_push) {
        const PushResult& push = prepared.push();
        record["trace_push"] = {{"p", sparse_json(g, push.estimate)},
                                {"r", sparse_json(g, push.residual)},
                                {"push_count", push.push_count},
                                {"degree_work", push.degree_work}};
    }
    write_record(record, format, out);
    return kOk;
}

int cmd_exact(const RunConfig& cfg, OutputFormat format, std::ostream& out) {
    const Graph g = load_graph(cfg);
    const std::size_t cap = cfg.max_nodes.value_or(cfg.ell ? kMstpNodeCap : kPprNodeCap);
    if (g.num_nodes() > cap) {
        throw GuardError(fmt::format("graph has {} nodes, above the exact-solver cap of {}", g.num_nodes(), cap));
    }
    const NodeId s = resolve(g, cfg.source, "--source");
    const DenseVector values = cfg.ell ? exact_mstp(g, s, *cfg.ell)[*cfg.ell] : exact_ppr(g, cfg.alpha, s);

    std::vector<NodeId> order(g.num_nodes());
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        order[v] = v;
    }
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return values[a] > values[b]; });

    Table table{{"node", "value"}, {}};
    for (const NodeId v : order) {
        table.rows.push_back({g.label(v), values[v]});
    }
    write_table(table, format, out);
    return kOk;
}

struct BenchAccumulator {
    std::size_t known = 0;
    std::size_t violations = 0;
    double total_work = 0.0;
    std::size_t runs = 0;
};

NodeId random_walkable(const Graph& g, RandomStream& rng) {
    for (int attempt = 0; attempt < 10'000; ++attempt) {
        const auto v = static_cast<NodeId>(rng.below(g.num_nodes()));
        if (!g.is_isolated(v)) {
            return v;
        }
    }
    throw UsageError("could not find a non-isolated node");
}

int cmd_bench(const RunConfig& cfg, OutputFormat format, std::ostream& out) {
    const Graph g = load_graph(cfg);
    if (cfg.trials == 0) {
        throw UsageError("--trials must be at least 1");
    }
    if (g.num_edges() == 0) {
        throw UsageError("graph has no edges");
    }
    for (const auto& name : cfg.estimators) {
        if (name != "bippr" && name != "mc" && name != "push") {
            throw UsageError("unknown estimator '" + name + "'");
        }
    }
    // Missing source or target labels are drawn per trial.
    const NodeId kDraw = g.num_nodes();
    const NodeId fixed_s = cfg.source.empty() ? kDraw : resolve(g, cfg.source, "--source");
    const NodeId fixed_t = cfg.target.empty() ? kDraw : resolve(g, cfg.target, "--target");
    const bool oracle = g.num_nodes() <= cfg.max_nodes.value_or(kPprNodeCap);

    std::map<NodeId, DenseVector> truth_cache;
    std::optional<DenseVector> global;
    std::map<std::string, BenchAccumulator> summary;

    Table table;
    table.columns = {"trial", "estimator", "source", "target", "delta", "truth", "estimate",
                     "abs_error", "rel_error", "error_bound", "violated", "r_max", "push_count",
                     "degree_work", "walks", "walk_steps", "total_work", "push_bound",
                     "push_bound_global", "violation_rate", "mean_total_work", "work_ratio_vs_bippr"};
    if (cfg.timing) {
        table.columns.push_back("wall_ms");
    }

    const RandomStream pair_streams(cfg.seed, 0);
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        RandomStream pair_rng = pair_streams.split(trial);
        const NodeId s = fixed_s != kDraw ? fixed_s : random_walkable(g, pair_rng);
        const NodeId t = fixed_t != kDraw ? fixed_t : random_walkable(g, pair_rng);
        g.require_walkable(s, "source");
        g.require_walkable(t, "target");
        const double d_t = g.degree(t);
        const double delta = resolve_delta(cfg, g, t);

        std::optional<double> truth;
        if (oracle) {
            auto it = truth_cache.find(s);
            if (it == truth_cache.end()) {
                it = truth_cache.emplace(s, exact_ppr(g, cfg.alpha, s)).first;
            }
            truth = it->second[t];
        }

        for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
            const std::string& name = cfg.estimators[e];
            const RandomStream stream = RandomStream(cfg.seed, 1 + e).split(trial);
            const auto start = std::chrono::steady_clock::now();

            PprEstimate est;
            double r_max = 0.0;
            if (name == "bippr") {
                const BipprParams params =
                    BipprParams::make(cfg.alpha, delta, cfg.eps, cfg.p_fail, d_t, std::nullopt, cfg.r_max);
                est = estimate_ppr(g, s, t, params, stream, cfg.threads);
                r_max = params.r_max;
            } else if (name == "mc") {
                est = mc_estimate(g, s, t, cfg.alpha, mc_num_walks(delta, cfg.eps, cfg.p_fail), stream, cfg.threads);
            } else {
                // Residual threshold giving push-only error at most eps * delta.
                r_max = std::min(1.0, cfg.eps * delta / d_t);
                const PushResult push = approximate_pagerank(g, cfg.alpha, s, r_max);
                est.value = est.push_term = push.estimate.get(t);
                est.push_count = push.push_count;
                est.push_work = push.degree_work;
            }
            const double wall_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

            const double total_work = est.push_work + static_cast<double>(est.walk_steps + est.walks);
            const double bound = std::max(cfg.eps * truth.value_or(0.0), 2.0 * std::numbers::e * delta);
            std::vector<Cell> row(table.columns.size());
            row[0] = static_cast<std::int64_t>(trial);
            row[1] = name;
            row[2] = g.label(s);
            row[3] = g.label(t);
            row[4] = delta;
            row[6] = est.value;
            row[9] = bound;
            row[11] = r_max;
            row[12] = static_cast<std::int64_t>(est.push_count);
            row[13] = est.push_work;
            row[14] = static_cast<std::int64_t>(est.walks);
            row[15] = static_cast<std::int64_t>(est.walk_steps);
            row[16] = total_work;
            auto& acc = summary[name];
            ++acc.runs;
            acc.total_work += total_work;
            if (truth) {
                const double abs_error = std::abs(est.value - *truth);
                const bool violated = abs_error > bound;
                row[5] = *truth;
                row[7] = abs_error;
                row[8] = *truth > 0.0 ? Cell(abs_error / *truth) : Cell();
                row[10] = std::int64_t{violated ? 1 : 0};
                ++acc.known;
                acc.violations += violated ? 1 : 0;
                if (name == "push") {
                    if (!global) {
                        global = exact_global_pagerank(g, cfg.alpha);
                    }
                    row[17] = r_max * d_t;
                    row[18] = r_max * d_t * static_cast<double>(g.num_nodes()) * (*global)[t];
                }
            }
            if (cfg.timing) {
                row.back() = wall_ms;
            }
            table.rows.push_back(std::move(row));
        }
    }

    const double bippr_work =
        summary.contains("bippr") ? summary["bippr"].total_work / static_cast<double>(summary["bippr"].runs) : 0.0;
    for (const auto& name : cfg.estimators) {
        const auto& acc = summary[name];
        std::vector<Cell> row(table.columns.size());
        row[0] = std::string("summary");
        row[1] = name;
        const double mean_work = acc.total_work / static_cast<double>(acc.runs);
        if (acc.known > 0) {
            row[19] = static_cast<double>(acc.violations) / static_cast<double>(acc.known);
        }
        row[20] = mean_work;
        if (bippr_work > 0.0) {
            row[21] = mean_work / bippr_work;
        }
        table.rows.push_back(std::move(row));
    }
    write_table(table, format, out);
    return kOk;
}

int cmd_diffusion(const RunConfig& cfg, OutputFormat format, std::ostream& out) {
    const DiffusionFamily family = parse_family(cfg.family);
    const double param = family == DiffusionFamily::PageRank ? cfg.alpha : cfg.gamma;
    const Graph g = load_graph(cfg);
    const NodeId s = resolve(g, cfg.source, "--source");
    const NodeId t = resolve(g, cfg.target, "--target");
    g.require_walkable(t, "target");
    const double d_t = g.degree(t);
    const double delta = resolve_delta(cfg, g, t);

    const std::size_t ell_max = cfg.ell.value_or(choose_ell_max(family, param, cfg.trunc_tol));
    const DiffusionWeights weights = make_weights(family, param, ell_max);
    // No balancing rule exists for multi-level push; reuse the PPR choices.
    const double r_max = cfg.r_max.value_or(choose_r_max(cfg.eps, delta, d_t, cfg.p_fail));
    const std::uint64_t walks =
        cfg.walks.value_or(num_walks(chernoff_c(cfg.p_fail), d_t, r_max, cfg.eps, delta));

    const DiffusionEstimate est = estimate_diffusion(g, s, t, weights, r_max, walks, RandomStream(cfg.seed, 0),
                                                     {!cfg.independent_batches, cfg.threads});

    Json record = Json::object();
    record["source"] = g.label(s);
    record["target"] = g.label(t);
    record["family"] = std::string(family_name(family));
    record[family == DiffusionFamily::PageRank ? "alpha" : "gamma"] = param;
    record["value"] = est.value;
    record["trunc_bound"] = est.trunc_bound;
    record["ell_max"] = est.ell_max;
    record["r_max"] = r_max;
    record["walks_per_level"] = walks;
    record["shared_walks"] = !cfg.independent_batches;
    Json levels = Json::array();
    for (const auto& level : est.per_level) {
        levels.push_back({{"ell", level.ell}, {"alpha_ell", level.weight}, {"estimate", level.estimate}});
    }
    record["per_level"] = std::move(levels);
    record["work"] = {{"push_count", est.push_count},
                      {"degree_work", est.push_work},
                      {"walk_steps", est.walk_steps}};
    record["seed"] = cfg.seed;
    write_record(record, format, out);
    return kOk;
}

int cmd_validate(const RunConfig& cfg, OutputFormat format, std::ostream& out) {
    const Graph g = load_graph(cfg);
    const GraphReport report = validate(g);
    Json record = Json::object();
    record["nodes"] = report.num_nodes;
    record["edges"] = report.num_edges;
    record["isolated"] = report.num_isolated;
    record["self_loops"] = report.num_self_loops;
    record["total_weight"] = report.total_weight;
    record["degree_sum"] = report.degree_sum;
    record["symmetric"] = report.symmetric;
    record["positive_weights"] = report.positive_weights;
    record["degrees_consistent"] = report.degrees_consistent;
    record["degree_sum_consistent"] = report.degree_sum_consistent;
    record["ok"] = report.ok();
    write_record(record, format, out);
    return report.ok() ? kOk : kGuardExceeded;
}

void check_ranges(const RunConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
        throw UsageError("--alpha must lie in (0, 1)");
    }
    if (!(cfg.eps > 0.0 && cfg.eps <= 1.0)) {
        throw UsageError("--eps must lie in (0, 1]");
    }
    if (!(cfg.p_fail > 0.0 && cfg.p_fail < 1.0)) {
        throw UsageError("--pfail must lie in (0, 1)");
    }
    if (!(cfg.gamma > 0.0)) {
        throw UsageError("--gamma must be positive");
    }
    if (!(cfg.trunc_tol > 0.0 && cfg.trunc_tol <= 1.0)) {
        throw UsageError("--trunc-tol must lie in (0, 1]");
    }
    if (cfg.threads == 0) {
        throw UsageError("--threads must be at least 1");
    }
    if (cfg.r_max && !(*cfg.r_max > 0.0)) {
        throw UsageError("--r-max must be positive");
    }
    if (cfg.walks && *cfg.walks == 0) {
        throw UsageError("--walks must be positive");
    }
    if (cfg.delta != "auto") {
        // Parsed again per target; this only rejects malformed values early.
        try {
            if (!(std::stod(cfg.delta) > 0.0)) {
                throw UsageError("--delta must be positive");
            }
        } catch (const std::invalid_argument&) {
            throw UsageError("--delta must be a positive number or 'auto'");
        }
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string format_name;

    CLI::App app{"Bidirectional Personalized PageRank and graph-diffusion estimation"};
    app.name("bippr");
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--graph", cfg.graph_path, "Edge-list file");
    app.add_option("--alpha", cfg.alpha, "Teleport probability in (0,1)")->capture_default_str();
    app.add_option("--delta", cfg.delta, "Minimum probability threshold, or 'auto' for d_t/m")->capture_default_str();
    app.add_option("--eps", cfg.eps, "Relative error")->capture_default_str();
    app.add_option("--pfail", cfg.p_fail, "Failure probability")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Random seed")->envname("BIPPR_SEED")->capture_default_str();
    app.add_option("--trials", cfg.trials, "Benchmark trials")->capture_default_str();
    app.add_option("--source", cfg.source, "Source node label");
    app.add_option("--target", cfg.target, "Target node label");
    app.add_option("--estimator", cfg.estimators, "Estimators for bench: bippr,mc,push")->delimiter(',');
    app.add_option("--family", cfg.family, "Diffusion family: pagerank | heat-kernel")->capture_default_str();
    app.add_option("--gamma", cfg.gamma, "Heat-kernel gamma")->capture_default_str();
    app.add_option("--trunc-tol", cfg.trunc_tol, "Diffusion truncation tolerance")->capture_default_str();
    app.add_option("--threads", cfg.threads, "Worker threads")->capture_default_str();
    app.add_option("--format", format_name, "Output format: json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--ell", cfg.ell, "Walk length (exact: MSTP level; diffusion: ell_max override)");
    app.add_option("--max-nodes", cfg.max_nodes, "Node cap for the exact oracle");
    app.add_option("--r-max", cfg.r_max, "Override the residual threshold");
    app.add_option("--walks", cfg.walks, "Walks per level for diffusion");
    app.add_flag("--independent-batches", cfg.independent_batches, "Diffusion: fresh walks per level");
    app.add_flag("--trace-push", cfg.trace_push, "Estimate: dump the push state");
    app.add_flag("--timing", cfg.timing, "Bench: add a wall_ms column");

    app.add_subcommand("estimate", "Bidirectional estimate of pi_s[t] (JSON)");
    app.add_subcommand("exact", "Exact PPR or multi-step transition vector (CSV)");
    app.add_subcommand("bench", "Per-trial accuracy and work comparison (CSV)");
    app.add_subcommand("diffusion", "Bidirectional graph-diffusion estimate (JSON)");
    app.add_subcommand("validate", "Check graph invariants (JSON)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadArguments;
    }

    try {
        cfg.subcommand = app.get_subcommands().front()->get_name();
        if (!format_name.empty()) {
            cfg.format = format_name == "csv" ? OutputFormat::Csv : OutputFormat::Json;
        }
        check_ranges(cfg);
        const std::string& cmd = cfg.subcommand;
        if (cmd == "estimate") {
            return cmd_estimate(cfg, cfg.format.value_or(OutputFormat::Json), out);
        }
        if (cmd == "exact") {
            return cmd_exact(cfg, cfg.format.value_or(OutputFormat::Csv), out);
        }
        if (cmd == "bench") {
            return cmd_bench(cfg, cfg.format.value_or(OutputFormat::Csv), out);
        }
        if (cmd == "diffusion") {
            return cmd_diffusion(cfg, cfg.format.value_or(OutputFormat::Json), out);
        }
        return cmd_validate(cfg, cfg.format.value_or(OutputFormat::Json), out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const GuardError& e) {
        err << "error: " << e.what() << '\n';
        return kGuardExceeded;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kBadArguments;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kBadArguments;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"bippr"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace bippr::cli

// Experiment CLI: data generation, prize-collecting forests, model
// projections, benchmark experiments, parameter sweeps, and report
// aggregation over the library in include/graphda.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "graphda/graphda.hpp"

namespace gda = graphda;

namespace {

struct GlobalOptions {
    std::string config_path;
    std::uint64_t seed = 7;
    int trials = 20;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    std::string out = "results.csv";
};

std::vector<gda::LearnerKind> parse_methods(const std::string& csv) {
    std::vector<gda::LearnerKind> out;
    for (const std::string& name : gda::Config::split_list(csv))
        out.push_back(gda::learner_from_name(name));
    if (out.empty()) throw std::runtime_error("empty method list");
    return out;
}

// Values from the config file take precedence over command-line flags.
void apply_config(gda::ExperimentConfig& cfg, const GlobalOptions& global,
                  std::string& out_path) {
    cfg.seed = global.seed;
    cfg.trials = global.trials;
    cfg.threads = std::max(1, global.threads);
    out_path = global.out;
    if (global.config_path.empty()) return;
    gda::Config file = gda::Config::from_file(global.config_path);
    cfg.dataset = file.get("dataset", cfg.dataset);
    cfg.bench.rows = static_cast<int>(file.get_long("rows", cfg.bench.rows));
    cfg.bench.cols = static_cast<int>(file.get_long("cols", cfg.bench.cols));
    cfg.bench.subgraph_size =
        static_cast<int>(file.get_long("subgraph_size", cfg.bench.subgraph_size));
    cfg.bench.mu = file.get_double("mu", cfg.bench.mu);
    cfg.bench.n_train = static_cast<int>(file.get_long("n_train", cfg.bench.n_train));
    cfg.bench.n_validate =
        static_cast<int>(file.get_long("n_validate", cfg.bench.n_validate));
    cfg.bench.n_test = static_cast<int>(file.get_long("n_test", cfg.bench.n_test));
    cfg.trials = static_cast<int>(file.get_long("trials", cfg.trials));
    cfg.seed = static_cast<std::uint64_t>(file.get_long("seed", static_cast<long>(cfg.seed)));
    cfg.threads = static_cast<int>(file.get_long("threads", cfg.threads));
    cfg.components = static_cast<int>(file.get_long("components", cfg.components));
    cfg.digit = static_cast<int>(file.get_long("digit", cfg.digit));
    cfg.binarize_threshold =
        file.get_double("binarize_threshold", cfg.binarize_threshold);
    cfg.idx_images_path = file.get("idx_images", cfg.idx_images_path);
    if (file.has("strategy"))
        cfg.strategy = gda::wstar_strategy_from_name(file.get("strategy", ""));
    if (file.has("methods")) cfg.methods = parse_methods(file.get("methods", ""));
    out_path = file.get("out", out_path);
}

int cmd_gen_data(const gda::ExperimentConfig& cfg, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const auto path = [&](const std::string& name) {
        return (std::filesystem::path(out_dir) / name).string();
    };
    gda::Graph grid = gda::build_grid_graph(cfg.bench.rows, cfg.bench.cols, 1.0);
    gda::write_edge_list(path("graph.txt"), grid);
    if (cfg.dataset == "mnist-regression") {
        gda::TrialData data = gda::make_mnist_trial(cfg, grid, 0);
        gda::write_ground_truth(path("wstar.txt"), data.truth.wstar,
                                data.truth.support);
        gda::write_dataset_csv(path("train.csv"), data.train.samples());
        gda::write_dataset_csv(path("validate.csv"), data.validation.samples());
        gda::write_dataset_csv(path("test.csv"), data.test.samples());
    } else {
        gda::TrialData data =
            gda::make_benchmark_trial(grid, cfg.bench, cfg.seed, 0);
        gda::write_ground_truth(path("wstar.txt"), data.truth.wstar,
                                data.truth.support);
        gda::write_dataset_csv(path("train.csv"), data.train.samples());
        gda::write_dataset_csv(path("validate.csv"), data.validation.samples());
        gda::write_dataset_csv(path("test.csv"), data.test.samples());
    }
    std::cout << "wrote graph.txt, wstar.txt, train.csv, validate.csv, test.csv to "
              << out_dir << "\n";
    return 0;
}

int cmd_pcst(const std::string& instance_path, int components, double cost_scale,
             bool brute) {
    gda::PcstFile file = gda::read_pcst_file(instance_path);
    gda::Forest forest =
        brute ? gda::brute_force_pcst(file.graph, file.prizes, components, cost_scale)
              : gda::solve_pcst(file.graph, file.prizes, components, cost_scale);
    std::cout << "nodes:";
    for (int v : forest.nodes) std::cout << ' ' << v;
    std::cout << "\nedges:";
    for (int ei : forest.edges)
        std::cout << " (" << file.graph.edges()[ei].u << ','
                  << file.graph.edges()[ei].v << ')';
    std::cout << "\nobjective: "
              << gda::pcst_objective(file.graph, file.prizes, forest, cost_scale)
              << "\n";
    return 0;
}

int cmd_project(const std::string& graph_path, const std::string& vector_path,
                const std::string& mode, int sparsity, int components,
                double omega, int max_iter) {
    gda::DenseVector w = gda::read_vector(vector_path);
    gda::Support support;
    gda::DenseVector restricted;
    if (mode == "top-s") {
        support = gda::exact_top_s(w, sparsity);
        restricted = gda::restrict_to(w, support);
    } else {
        gda::Graph g = gda::read_edge_list(graph_path);
        if (static_cast<int>(w.size()) != g.node_count())
            throw std::runtime_error("vector length does not match the graph");
        gda::Projection pr =
            mode == "head"
                ? gda::head_project(w, g, sparsity, components, omega, max_iter)
                : gda::tail_project(w, g, sparsity, components, omega, max_iter);
        support = std::move(pr.support);
        restricted = std::move(pr.vector);
    }
    std::cout << "support:";
    for (int i : support) std::cout << ' ' << i;
    std::cout << "\nvector:\n";
    std::cout.precision(17);
    for (double x : restricted) std::cout << x << "\n";
    return 0;
}

int cmd_run(const gda::ExperimentConfig& cfg, const std::string& out_path) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<gda::ResultRow> rows = gda::run_benchmark_experiment(cfg);
    {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        gda::write_result_csv(out, rows);
    }
    auto agg = gda::aggregate_results(rows, cfg.methods);
    {
        std::ofstream out(out_path + ".agg.csv");
        gda::write_aggregate_csv(out, agg);
    }
    gda::print_aggregate_table(std::cout, agg);
    double total = 0.0;
    for (const gda::ResultRow& r : rows) total += r.seconds;
    std::cerr << "per-trial csv: " << out_path << "\naggregate csv: " << out_path
              << ".agg.csv\nlearner seconds (sum): " << total << ", wall: "
              << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                     .count()
              << "\n";
    return 0;
}

std::vector<long> parse_longs(const std::string& csv) {
    std::vector<long> out;
    for (const std::string& s : gda::Config::split_list(csv))
        out.push_back(std::stol(s));
    return out;
}

int cmd_sweep(const gda::ExperimentConfig& cfg, const std::string& kind,
              const std::string& values, const std::string& out_path) {
    std::vector<gda::SweepPoint> points;
    std::string x_name;
    if (kind == "sparsity") {
        std::vector<int> s_values;
        if (values.empty()) {
            s_values = gda::grids::benchmark_sparsity_values();
        } else {
            for (long v : parse_longs(values)) s_values.push_back(static_cast<int>(v));
        }
        points = gda::run_sparsity_sweep(cfg, s_values);
        x_name = "s";
    } else if (kind == "mu") {
        std::vector<double> mu_values;
        if (values.empty()) {
            for (int k = 1; k <= 10; ++k) mu_values.push_back(k / 10.0);
        } else {
            for (const std::string& s : gda::Config::split_list(values))
                mu_values.push_back(std::stod(s));
        }
        points = gda::run_mu_sweep(cfg, mu_values);
        x_name = "mu";
    } else if (kind == "samples") {
        std::vector<long> t_values = values.empty()
                                         ? std::vector<long>{100, 200, 300, 400, 500,
                                                             600, 700, 800, 900, 1000}
                                         : parse_longs(values);
        points = gda::run_sample_sweep(cfg, t_values);
        x_name = "t";
    } else if (kind == "mnist") {
        std::vector<long> n_values;
        if (values.empty())
            for (long n = 50; n <= 1000; n += 50) n_values.push_back(n);
        else
            n_values = parse_longs(values);
        points = gda::run_mnist_experiment(cfg, n_values);
        x_name = "n";
    } else {
        throw std::runtime_error("unknown sweep kind: " + kind);
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    gda::write_sweep_csv(out, x_name, points);
    std::cout << "sweep csv: " << out_path << "\n";
    return 0;
}

int cmd_tune(const gda::ExperimentConfig& cfg, const std::string& method,
             int trial) {
    const gda::LearnerKind kind = gda::learner_from_name(method);
    gda::Graph grid = gda::build_grid_graph(cfg.bench.rows, cfg.bench.cols, 1.0);
    const bool mnist = cfg.dataset == "mnist-regression";
    gda::TrialData data = mnist
                              ? gda::make_mnist_trial(cfg, grid, trial)
                              : gda::make_benchmark_trial(grid, cfg.bench, cfg.seed,
                                                          trial);
    const auto& s_values = mnist ? gda::grids::mnist_sparsity_values()
                                 : gda::grids::benchmark_sparsity_values();
    auto grid_points =
        gda::make_grid(kind, s_values, grid.node_count(), cfg.components);
    const gda::Graph* gptr = gda::learner_needs_graph(kind) ? &grid : nullptr;
    gda::TuneResult r = gda::tune(
        kind, grid_points, gptr, data.train, data.validation,
        mnist ? gda::LossKind::least_squares : gda::LossKind::logistic,
        cfg.threads);
    std::cout << "method: " << method << "\ntrial: " << trial
              << "\nbest index: " << r.best_index << "\nscore: " << r.best_score
              << "\ns: " << r.best.sparsity << "\ngamma: " << r.best.gamma
              << "\nlambda: " << r.best.lambda << "\nrho: " << r.best.rho
              << "\neta: " << r.best.eta << "\nalpha: " << r.best.alpha << "\n";
    return 0;
}

// Rebuild the aggregate table from a per-trial CSV produced by `run`.
int cmd_report(const std::string& in_path, const std::string& out_path) {
    std::ifstream in(in_path);
    if (!in) throw std::runtime_error("cannot open " + in_path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty csv");
    std::vector<gda::ResultRow> rows;
    std::vector<gda::LearnerKind> methods;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        gda::ResultRow r;
        auto next = [&]() {
            if (!std::getline(ss, cell, ',')) throw std::runtime_error("short row");
            return cell;
        };
        r.method = gda::learner_from_name(next());
        r.trial = std::stoi(next());
        r.hp.sparsity = std::stoi(next());
        r.hp.gamma = std::stod(next());
        r.hp.lambda = std::stod(next());
        r.hp.rho = std::stod(next());
        r.hp.eta = std::stod(next());
        r.hp.alpha = std::stod(next());
        r.feat_w.precision = std::stod(next());
        r.feat_w.recall = std::stod(next());
        r.feat_w.f1 = std::stod(next());
        r.feat_avg.precision = std::stod(next());
        r.feat_avg.recall = std::stod(next());
        r.feat_avg.f1 = std::stod(next());
        const double auc_w = std::stod(next());
        const double auc_avg = std::stod(next());
        if (!std::isnan(auc_w)) r.class_w.auc = auc_w;
        if (!std::isnan(auc_avg)) r.class_avg.auc = auc_avg;
        r.class_w.accuracy = std::stod(next());
        r.class_avg.accuracy = std::stod(next());
        r.online_miss_w = std::stol(next());
        r.online_miss_avg = std::stol(next());
        r.feat_w.nonzero_ratio = std::stod(next());
        r.feat_avg.nonzero_ratio = std::stod(next());
        if (std::find(methods.begin(), methods.end(), r.method) == methods.end())
            methods.push_back(r.method);
        rows.push_back(r);
    }
    auto agg = gda::aggregate_results(rows, methods);
    gda::print_aggregate_table(std::cout, agg);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        gda::write_aggregate_csv(out, agg);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"online dual averaging with graph-structured sparsity"};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--config", global.config_path,
                   "flat key=value config; entries override flags");
    app.add_option("--seed", global.seed, "base random seed");
    app.add_option("--trials", global.trials, "trial count");
    app.add_option("--threads", global.threads, "worker threads");
    app.add_option("--out", global.out, "output path");

    gda::ExperimentConfig cfg;
    std::string dataset = "benchmark", strategy = "constant";
    std::string methods_csv;

    auto add_data_flags = [&](CLI::App* sub) {
        sub->add_option("--dataset", dataset, "benchmark | mnist-regression");
        sub->add_option("--rows", cfg.bench.rows);
        sub->add_option("--cols", cfg.bench.cols);
        sub->add_option("--size", cfg.bench.subgraph_size, "true support size");
        sub->add_option("--mu", cfg.bench.mu, "signal strength");
        sub->add_option("--n-train", cfg.bench.n_train);
        sub->add_option("--n-validate", cfg.bench.n_validate);
        sub->add_option("--n-test", cfg.bench.n_test);
        sub->add_option("--methods", methods_csv, "comma-separated learner list");
        sub->add_option("--g", cfg.components, "component budget");
        sub->add_option("--digit", cfg.digit, "target digit (regression)");
        sub->add_option("--strategy", strategy,
                        "normalized | constant | gaussian (regression)");
        sub->add_option("--binarize-threshold", cfg.binarize_threshold);
        sub->add_option("--idx-images", cfg.idx_images_path,
                        "IDX image file; synthetic digits when absent");
    };

    auto* gen = app.add_subcommand("gen-data", "write a dataset to disk");
    std::string out_dir = "data";
    add_data_flags(gen);
    gen->add_option("--out-dir", out_dir);

    auto* pcst = app.add_subcommand("pcst", "solve a prize-collecting instance");
    std::string instance_path;
    int pcst_g = 1;
    double pcst_scale = 1.0;
    bool pcst_brute = false;
    pcst->add_option("--instance", instance_path, "edge list + prizes: block")
        ->required();
    pcst->add_option("--g", pcst_g, "component budget");
    pcst->add_option("--cost-scale", pcst_scale);
    pcst->add_flag("--brute-force", pcst_brute, "exhaustive solver (p <= 12)");

    auto* project = app.add_subcommand("project", "project a vector onto the model");
    std::string graph_path, vector_path, mode = "tail";
    int proj_s = 1, proj_g = 1, proj_iters = 20;
    double proj_omega = 0.1;
    project->add_option("--graph", graph_path, "edge-list file");
    project->add_option("--vector", vector_path, "one value per line")->required();
    project->add_option("--mode", mode, "head | tail | top-s")->required();
    project->add_option("--s", proj_s, "sparsity")->required();
    project->add_option("--g", proj_g);
    project->add_option("--omega", proj_omega);
    project->add_option("--max-iter", proj_iters);

    auto* run = app.add_subcommand("run", "benchmark experiment -> CSV");
    add_data_flags(run);

    auto* sweep = app.add_subcommand("sweep", "parameter sweeps -> CSV curves");
    std::string sweep_kind = "sparsity", sweep_values;
    add_data_flags(sweep);
    sweep->add_option("--kind", sweep_kind, "sparsity | mu | samples | mnist");
    sweep->add_option("--values", sweep_values, "comma-separated sweep values");

    auto* tune_cmd = app.add_subcommand("tune", "grid search for one method");
    std::string tune_method = "graphda";
    int tune_trial = 0;
    add_data_flags(tune_cmd);
    tune_cmd->add_option("--method", tune_method)->required();
    tune_cmd->add_option("--trial", tune_trial);

    auto* report = app.add_subcommand("report", "aggregate a per-trial CSV");
    std::string report_in, report_out;
    report->add_option("--in", report_in)->required();
    report->add_option("--agg-out", report_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        cfg.dataset = dataset;
        cfg.strategy = gda::wstar_strategy_from_name(strategy);
        if (!methods_csv.empty()) cfg.methods = parse_methods(methods_csv);
        std::string out_path;
        apply_config(cfg, global, out_path);

        if (gen->parsed()) return cmd_gen_data(cfg, out_dir);
        if (pcst->parsed()) return cmd_pcst(instance_path, pcst_g, pcst_scale, pcst_brute);
        if (project->parsed())
            return cmd_project(graph_path, vector_path, mode, proj_s, proj_g,
                               proj_omega, proj_iters);
        if (run->parsed()) return cmd_run(cfg, out_path);
        if (sweep->parsed()) return cmd_sweep(cfg, sweep_kind, sweep_values, out_path);
        if (tune_cmd->parsed()) return cmd_tune(cfg, tune_method, tune_trial);
        if (report->parsed()) return cmd_report(report_in, report_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

// mgcq: draw equilibrium samples from M/G/c FCFS queues by perfect
// simulation, validate them against closed forms, and tabulate run-times.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "mgcq/analysis.hpp"
#include "mgcq/runner.hpp"

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// short form for summary columns where full precision is just noise
std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string join_workload(const mgcq::WorkloadVector& w) {
    std::string s;
    for (int i = 0; i < w.servers(); ++i) {
        if (i) s += ';';
        s += fmt(w[i]);
    }
    return s;
}

std::string json_workload(const mgcq::WorkloadVector& w) {
    std::string s = "[";
    for (int i = 0; i < w.servers(); ++i) {
        if (i) s += ',';
        s += fmt(w[i]);
    }
    return s + "]";
}

// RFC-4180: wrap in quotes, double any embedded quote
std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

struct CliOptions {
    double lambda = 1.0;
    int c = 1;
    std::string service = "exp:1";
    int n = 1;
    std::uint64_t seed = 0;
    int algorithm = 2;
    std::string backoff = "binary";
    std::string out;
    std::string format = "csv";
    int threads = 1;
    std::uint64_t budget = mgcq::DominatingPath::kDefaultEventBudget;
    std::string dump_events;
    bool timings = false;
};

mgcq::RunConfig make_run_config(const CliOptions& o) {
    mgcq::RunConfig cfg{
        .params = {o.lambda, o.c, mgcq::ServiceDistribution::parse(o.service)},
        .algorithm = o.algorithm,
        .backoff = o.backoff == "stopping-time" ? mgcq::BackoffStrategy::stopping_time
                                                : mgcq::BackoffStrategy::binary,
        .base_seed = o.seed,
        .replications = o.n,
        .threads = o.threads,
        .event_budget = o.budget,
    };
    cfg.params.validate();
    return cfg;
}

std::vector<mgcq::ReplicationResult> run_all(const CliOptions& o, const mgcq::RunConfig& cfg) {
    if (o.dump_events.empty()) return mgcq::run_replications(cfg);

    // event dumping is inherently sequential: one merged log file
    std::ofstream dump(o.dump_events);
    if (!dump) throw std::runtime_error("cannot open " + o.dump_events);
    std::vector<mgcq::ReplicationResult> results(static_cast<std::size_t>(cfg.replications));
    for (int i = 0; i < cfg.replications; ++i) {
        auto& r = results[static_cast<std::size_t>(i)];
        r.seed = mgcq::substream_seed(cfg.base_seed, static_cast<std::uint64_t>(i),
                                      mgcq::StreamPurpose::replication);
        try {
            if (cfg.algorithm == 1)
                r.sample = mgcq::algorithm1(cfg.params, r.seed, cfg.event_budget, nullptr, &dump);
            else
                r.sample = mgcq::algorithm2(cfg.params, r.seed, cfg.backoff, cfg.event_budget,
                                            1.0, {}, &dump);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    }
    return results;
}

std::ostream& open_sink(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open " + path);
    return file;
}

// exit code 0 iff every replication succeeded; failures go to stderr as JSON
int report_failures(const std::vector<mgcq::ReplicationResult>& results) {
    int failures = 0;
    for (std::size_t i = 0; i < results.size(); ++i)
        if (!results[i].error.empty()) ++failures;
    if (failures == 0) return 0;
    std::cerr << "{\"failed\":" << failures << ",\"total\":" << results.size()
              << ",\"errors\":[";
    bool first = true;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (results[i].error.empty()) continue;
        if (!first) std::cerr << ',';
        first = false;
        std::cerr << "{\"replication\":" << i << ",\"error\":\"" << results[i].error << "\"}";
    }
    std::cerr << "]}\n";
    return 1;
}

int cmd_sample(const CliOptions& o) {
    auto cfg = make_run_config(o);
    auto results = run_all(o, cfg);

    std::ofstream file;
    std::ostream& out = open_sink(o.out, file);

    if (o.format == "csv") {
        out << "replication,seed,status,count,total_workload,workload,algorithm,"
               "horizon,rounds,events";
        if (o.timings) out << ",wall_us";
        out << "\r\n";
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto& r = results[i];
            out << i << ',' << r.seed << ',';
            if (r.sample) {
                const auto& s = *r.sample;
                out << "ok," << s.count << ',' << fmt(s.workload.total()) << ','
                    << csv_quote(join_workload(s.workload)) << ',' << s.diag.algorithm << ','
                    << fmt(s.diag.horizon) << ',' << s.diag.backoff_rounds << ','
                    << s.diag.events;
                if (o.timings) out << ',' << fmt(s.diag.wall_us);
            } else {
                out << "error,,,," << cfg.algorithm << ",,,";
                if (o.timings) out << ',';
            }
            out << "\r\n";
        }
    } else {
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto& r = results[i];
            out << "{\"replication\":" << i << ",\"seed\":" << r.seed;
            if (r.sample) {
                const auto& s = *r.sample;
                out << ",\"count\":" << s.count << ",\"total_workload\":"
                    << fmt(s.workload.total()) << ",\"workload\":" << json_workload(s.workload)
                    << ",\"algorithm\":" << s.diag.algorithm << ",\"horizon\":"
                    << fmt(s.diag.horizon) << ",\"rounds\":" << s.diag.backoff_rounds
                    << ",\"events\":" << s.diag.events;
                if (o.timings) out << ",\"wall_us\":" << fmt(s.diag.wall_us);
            } else {
                out << ",\"error\":\"" << r.error << "\"";
            }
            out << "}\n";
        }
    }
    return report_failures(results);
}

int cmd_validate(const CliOptions& o) {
    auto cfg = make_run_config(o);
    if (cfg.params.service.kind() != mgcq::DistKind::exponential)
        throw std::runtime_error("unsupported-validation: chi-squared check needs exp:<rate>");
    double mu = 1.0 / cfg.params.service.mean();

    auto results = run_all(o, cfg);
    std::vector<long> counts;
    for (const auto& r : results) {
        if (!r.sample) continue;
        auto k = static_cast<std::size_t>(r.sample->count);
        if (counts.size() <= k) counts.resize(k + 1, 0);
        ++counts[k];
    }

    auto pmf = mgcq::mmc_stationary(o.lambda, mu, o.c);
    auto chi = mgcq::chi_squared_gof(counts, pmf);

    std::ofstream file;
    std::ostream& out = open_sink(o.out, file);
    out << "{\"lambda\":" << fmt(o.lambda) << ",\"mu\":" << fmt(mu) << ",\"c\":" << o.c
        << ",\"n\":" << o.n << ",\"algorithm\":" << o.algorithm
        << ",\"statistic\":" << fmt(chi.statistic) << ",\"df\":" << chi.df
        << ",\"p_value\":" << fmt(chi.p_value) << ",\"observed\":[";
    for (std::size_t i = 0; i < chi.observed.size(); ++i)
        out << (i ? "," : "") << fmt(chi.observed[i]);
    out << "],\"expected\":[";
    for (std::size_t i = 0; i < chi.expected.size(); ++i)
        out << (i ? "," : "") << fmt(chi.expected[i]);
    out << "]}\n";
    return report_failures(results);
}

int cmd_bench(const CliOptions& o) {
    auto cfg = make_run_config(o);
    auto results = run_all(o, cfg);

    double sum_runtime = 0.0, sum_log2 = 0.0;
    long ok = 0;
    std::map<int, long> hist;  // floor(log2(horizon + 1)) bins
    for (const auto& r : results) {
        if (!r.sample) continue;
        ++ok;
        double h = r.sample->diag.horizon;
        sum_runtime += h;
        double l = std::log2(h + 1.0);
        sum_log2 += l;
        ++hist[static_cast<int>(std::floor(l))];
    }

    double rho = cfg.params.rho();
    double bound;
    if (o.algorithm == 1) {
        bound = mgcq::alg1_runtime_lower_bound(o.lambda, o.c, rho);
    } else if (cfg.params.service.kind() == mgcq::DistKind::exponential) {
        double mu = 1.0 / cfg.params.service.mean();
        auto pmf = mgcq::mmc_stationary(o.lambda, mu, o.c);
        bound = mgcq::alg2_runtime_heuristic(o.lambda, o.c, rho, pmf.mean_customers);
    } else {
        bound = std::numeric_limits<double>::quiet_NaN();
    }

    std::string hist_s;
    for (const auto& [bin, n] : hist) {
        if (!hist_s.empty()) hist_s += ';';
        hist_s += std::to_string(bin) + ":" + std::to_string(n);
    }

    std::ofstream file;
    std::ostream& out = open_sink(o.out, file);
    out << "lambda,c,rho,alg,n,errors,mean_runtime,mean_log2_runtime,bound,histogram\r\n";
    out << fmt(o.lambda) << ',' << o.c << ',' << fmt(rho) << ',' << o.algorithm << ',' << o.n
        << ',' << (o.n - ok) << ',' << fmt(ok ? sum_runtime / ok : 0.0) << ','
        << fmt(ok ? sum_log2 / ok : 0.0) << ',' << fmt6(bound) << ',' << csv_quote(hist_s)
        << "\r\n";
    return report_failures(results);
}

void add_common(CLI::App* cmd, CliOptions& o) {
    cmd->add_option("--lambda", o.lambda, "arrival rate")->required();
    cmd->add_option("--c", o.c, "number of servers")->required();
    cmd->add_option("--service", o.service,
                    "service distribution: exp:r | unif:a:b | det:d | erlang:k:r")
        ->required();
    cmd->add_option("--n", o.n, "replications")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", o.seed, "root seed");
    cmd->add_option("--alg", o.algorithm, "algorithm: 1 or 2")->check(CLI::Range(1, 2));
    cmd->add_option("--backoff", o.backoff, "binary | stopping-time")
        ->check(CLI::IsMember({"binary", "stopping-time"}));
    cmd->add_option("--out", o.out, "output path (default stdout)");
    cmd->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", o.threads, "worker threads (env MGCQ_THREADS)")
        ->envname("MGCQ_THREADS")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--budget", o.budget, "event budget per replication");
    cmd->add_option("--dump-events", o.dump_events,
                    "write the dominating process event log (JSON lines) here");
    cmd->add_flag("--timings", o.timings, "include wall-clock columns (non-deterministic)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"perfect sampler for stable M/G/c FCFS queues"};
    app.require_subcommand(1);

    CliOptions o;
    auto* sample = app.add_subcommand("sample", "draw equilibrium samples");
    auto* validate = app.add_subcommand("validate", "chi-squared check against M/M/c");
    auto* bench = app.add_subcommand("bench", "run-time summary table");
    add_common(sample, o);
    add_common(validate, o);
    add_common(bench, o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample->parsed()) return cmd_sample(o);
        if (validate->parsed()) return cmd_validate(o);
        return cmd_bench(o);
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"" << e.what() << "\"}\n";
        return 2;
    }
}

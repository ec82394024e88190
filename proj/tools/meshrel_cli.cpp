// meshrel: publication relatedness over a hierarchical controlled vocabulary.

#include "meshrel/benchmark.hpp"
#include "meshrel/error.hpp"
#include "meshrel/judgements.hpp"
#include "meshrel/pairwise.hpp"
#include "meshrel/parallel.hpp"
#include "meshrel/report.hpp"
#include "meshrel/text.hpp"
#include "meshrel/workspace.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

namespace {

using namespace meshrel;

struct DataOptions {
    std::string vocab;
    std::string corpus;
    std::string index;
    double ic_log_base = M_E;
    std::string ic_universe = "all";
    bool no_virtual_root = false;
    std::size_t cache_rows = 4096;
};

struct RunConfig {
    DataOptions data;
    int threads = 0;
    std::string measures = "all";
    std::string measure;
    std::string pairs;
    std::string qrels;
    std::uint64_t seed = 42;
    int iterations = 30;
    std::size_t sample_size = 10;
    double topic_threshold = 0.10;
    std::size_t bins = 50;
    std::string range;
    bool drop_unindexed = false;
    std::string out;
    std::string json_out;
    std::string histogram_out;
    std::string topics_out;
    std::string graph = "dic";
    std::string from;
    std::string to;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void add_data_options(CLI::App* cmd, DataOptions& d, bool allow_index = true)
{
    cmd->add_option("--vocab", d.vocab, "Vocabulary TSV: id<TAB>name<TAB>tree_number(;tree_number)*");
    cmd->add_option("--corpus", d.corpus, "Corpus TSV: doc_id<TAB>term[*][/qual,...](;...)*");
    if (allow_index)
        cmd->add_option("--index", d.index, "Binary index written by build-index (replaces --vocab/--corpus)");
    cmd->add_option("--ic-log-base", d.ic_log_base, "Logarithm base for information content (default e)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--ic-universe", d.ic_universe, "Terms summed in the IC denominator")
        ->check(CLI::IsMember({"all", "observed"}));
    cmd->add_flag("--no-virtual-root", d.no_virtual_root,
                  "Do not join top-level categories; cross-category distances become errors");
    cmd->add_option("--cache-rows", d.cache_rows, "Single-source distance rows kept per graph")
        ->check(CLI::PositiveNumber);
}

std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    return in;
}

// Wraps parse errors with the file name.
template <typename F>
auto with_file(const std::string& path, F&& f)
{
    try {
        return f();
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::unique_ptr<Workspace> load_workspace(const DataOptions& d)
{
    if (!d.index.empty()) {
        if (!d.vocab.empty() || !d.corpus.empty())
            throw UsageError("--index cannot be combined with --vocab/--corpus");
        return load_index(d.index, d.cache_rows);
    }
    if (d.vocab.empty())
        throw UsageError("--vocab is required (or --index)");
    if (d.corpus.empty())
        throw UsageError("--corpus is required (or --index)");
    auto vocab = with_file(d.vocab, [&] {
        auto in = open_input(d.vocab);
        return parse_vocabulary(in);
    });
    auto corpus = with_file(d.corpus, [&] {
        auto in = open_input(d.corpus);
        return parse_corpus(in, vocab);
    });
    Workspace::Options options;
    options.ic.log_base = d.ic_log_base;
    options.ic.universe = parse_ic_universe(d.ic_universe);
    options.graph.virtual_root = !d.no_virtual_root;
    options.cache_rows = d.cache_rows;
    return std::make_unique<Workspace>(std::move(vocab), std::move(corpus), options);
}

nlohmann::json data_config(const DataOptions& d, const Workspace& ws)
{
    nlohmann::json j;
    if (!d.index.empty()) {
        j["index"] = d.index;
    } else {
        j["vocab"] = d.vocab;
        j["corpus"] = d.corpus;
    }
    j["ic_log_base"] = ws.ic().options.log_base;
    j["ic_universe"] = std::string(to_string(ws.ic().options.universe));
    j["virtual_root"] = ws.options().graph.virtual_root;
    j["terms"] = ws.vocab().size();
    j["documents"] = ws.corpus().size();
    return j;
}

void echo_config(const std::string& subcommand, nlohmann::json config, int threads)
{
    config["subcommand"] = subcommand;
    config["threads"] = threads > 0 ? threads : thread_count();
    std::cerr << "# config: " << config.dump() << '\n';
}

// Output goes to the file when given, else stdout.
class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_)
                throw InputError("cannot open '" + path + "' for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::pair<double, double> parse_range(const std::string& s)
{
    const auto parts = text::split(s, ':');
    if (parts.size() != 2)
        throw UsageError("--range expects lo:hi");
    try {
        return {std::stod(std::string(parts[0])), std::stod(std::string(parts[1]))};
    } catch (const std::exception&) {
        throw UsageError("--range expects numeric lo:hi");
    }
}

TopicSet load_topics(const RunConfig& c)
{
    if (c.qrels.empty())
        throw UsageError("--qrels is required");
    const auto passages = with_file(c.qrels, [&] {
        auto in = open_input(c.qrels);
        return parse_qrels(in);
    });
    return filter_topics(aggregate_judgements(passages), c.topic_threshold);
}

int cmd_build_index(const RunConfig& c)
{
    if (!c.data.index.empty())
        throw UsageError("build-index reads --vocab/--corpus, not --index");
    if (c.out.empty())
        throw UsageError("--out is required");
    const auto ws = load_workspace(c.data);
    echo_config("build-index", data_config(c.data, *ws), c.threads);
    save_index(c.out, *ws);
    return 0;
}

int cmd_compute(const RunConfig& c)
{
    if (c.measure.empty())
        throw UsageError("--measure is required");
    if (c.pairs.empty())
        throw UsageError("--pairs is required");
    const auto spec = MeasureSpec::parse(c.measure);
    const auto ws = load_workspace(c.data);
    auto config = data_config(c.data, *ws);
    config["measure"] = spec.name();
    config["pairs"] = c.pairs;
    echo_config("compute", config, c.threads);

    std::vector<std::pair<std::string, std::string>> ids;
    std::vector<RecordPair> pairs;
    with_file(c.pairs, [&] {
        auto in = open_input(c.pairs);
        text::for_each_record(in, [&](std::size_t line, std::string_view rec) {
            const auto f = text::split(rec, '\t');
            if (f.size() != 2)
                throw ParseError(line, "expected doc_id<TAB>doc_id");
            const auto* a = ws->corpus().find(f[0]);
            const auto* b = ws->corpus().find(f[1]);
            if (a == nullptr || b == nullptr)
                throw ParseError(line, "unknown doc id '" + std::string(a == nullptr ? f[0] : f[1]) + "'");
            ids.emplace_back(f[0], f[1]);
            pairs.emplace_back(a, b);
        });
        return 0;
    });
    const auto scores = score_pairs(spec, pairs, ws->bundle());
    Output out(c.out);
    for (std::size_t i = 0; i < scores.size(); ++i) {
        out.stream() << ids[i].first << '\t' << ids[i].second << '\t' << text::format_double(scores[i].value)
                     << '\t' << to_string(scores[i].orientation) << '\n';
    }
    return 0;
}

nlohmann::json bench_config(const RunConfig& c, const Workspace& ws, const std::vector<MeasureSpec>& measures)
{
    auto config = data_config(c.data, ws);
    config["qrels"] = c.qrels;
    nlohmann::json names = nlohmann::json::array();
    for (const auto& m : measures)
        names.push_back(m.name());
    config["measures"] = names;
    config["seed"] = c.seed;
    config["iterations"] = c.iterations;
    config["sample_size"] = c.sample_size;
    config["topic_threshold"] = c.topic_threshold;
    config["bins"] = c.bins;
    if (!c.range.empty())
        config["range"] = c.range;
    config["drop_unindexed"] = c.drop_unindexed;
    return config;
}

BenchmarkOptions bench_options(const RunConfig& c)
{
    BenchmarkOptions o;
    o.sampling.seed = c.seed;
    o.sampling.iterations = c.iterations;
    o.sampling.sample_size = c.sample_size;
    o.histogram_bins = c.bins;
    o.drop_unindexed = c.drop_unindexed;
    if (!c.range.empty()) {
        std::tie(o.histogram_lo, o.histogram_hi) = parse_range(c.range);
        if (!(o.histogram_lo < o.histogram_hi))
            throw UsageError("--range needs lo < hi");
    }
    return o;
}

void warn_skipped(const BenchmarkReport& report)
{
    for (const auto& t : report.excluded_topics)
        std::cerr << "# excluded topic " << t.topic << " (share of grade 1/2 docs " << t.positive_ratio() << ")\n";
    if (report.dropped_judgements > 0)
        std::cerr << "# warning: dropped " << report.dropped_judgements << " judged docs missing from the corpus\n";
    if (!report.results.empty()) {
        for (const auto& t : report.results.front().test2.skipped_topics)
            std::cerr << "# warning: topic " << t << " has too few relevant/not-relevant docs for test 2; skipped\n";
    }
}

int cmd_bench(const RunConfig& c)
{
    const auto measures = parse_measure_list(c.measures);
    const auto options = bench_options(c);
    const auto ws = load_workspace(c.data);
    const auto topics = load_topics(c);
    const auto config = bench_config(c, *ws, measures);
    echo_config("bench", config, c.threads);

    const auto report = run_benchmark(measures, topics, ws->corpus(), ws->bundle(), options);
    warn_skipped(report);

    Output out(c.out);
    write_report_tsv(out.stream(), report);
    if (!c.json_out.empty()) {
        Output json(c.json_out);
        json.stream() << report_json(report, config).dump(2) << '\n';
    }
    if (!c.histogram_out.empty()) {
        Output hist(c.histogram_out);
        write_histograms_tsv(hist.stream(), report);
    }
    if (!c.topics_out.empty()) {
        Output topics_file(c.topics_out);
        write_topic_table(topics_file.stream(), report);
    }
    return 0;
}

int cmd_histogram(const RunConfig& c)
{
    const auto measures = parse_measure_list(c.measures);
    const auto options = bench_options(c);
    const auto ws = load_workspace(c.data);
    const auto topics = load_topics(c);
    echo_config("histogram", bench_config(c, *ws, measures), c.threads);

    Output out(c.out);
    bool header = true;
    for (const auto& m : measures) {
        const auto matrices =
            build_topic_matrices(m, topics, ws->corpus(), ws->bundle(), options.drop_unindexed, nullptr);
        std::vector<double> pooled;
        test1_from_matrices(matrices, &pooled);
        auto [lo, hi] = default_histogram_range(m.orientation());
        if (options.histogram_lo < options.histogram_hi) {
            lo = options.histogram_lo;
            hi = options.histogram_hi;
        }
        write_histogram_tsv(out.stream(), m.name(), density_histogram(pooled, options.histogram_bins, lo, hi),
                            header);
        header = false;
    }
    return 0;
}

int cmd_dump_ic(const RunConfig& c)
{
    const auto ws = load_workspace(c.data);
    echo_config("dump-ic", data_config(c.data, *ws), c.threads);
    Output out(c.out);
    write_ic_dump(out.stream(), ws->vocab(), ws->ic());
    return 0;
}

int cmd_term_distance(const RunConfig& c)
{
    if (c.from.empty() || c.to.empty())
        throw UsageError("--from and --to are required");
    const auto variant = c.graph == "unit" ? GraphVariant::Unit : GraphVariant::DeltaIc;
    const auto ws = load_workspace(c.data);
    auto config = data_config(c.data, *ws);
    config["graph"] = c.graph;
    echo_config("term-distance", config, c.threads);
    const auto a = ws->vocab().index_of(c.from);
    const auto b = ws->vocab().index_of(c.to);
    const auto bundle = ws->bundle();
    const double d = term_distance(ws->graph(variant), *bundle.cache_for(variant), a, b);
    Output out(c.out);
    out.stream() << c.from << '\t' << c.to << '\t' << text::format_double(d) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"meshrel: publication relatedness over a hierarchical controlled vocabulary"};
    app.require_subcommand(1);
    RunConfig c;
    app.add_option("--threads", c.threads, "Upper bound on worker threads (output does not depend on it)")
        ->check(CLI::NonNegativeNumber);

    auto* build = app.add_subcommand("build-index", "Parse inputs, compute IC, and persist a binary index");
    add_data_options(build, c.data, false);
    build->add_option("--out", c.out, "Index file to write")->required();

    auto* compute_cmd = app.add_subcommand("compute", "Score document pairs with one measure");
    add_data_options(compute_cmd, c.data);
    compute_cmd->add_option("--measure", c.measure,
                            "boudreau|ahlgren|dist{0..3}:unit|dist{0..3}:dic")->required();
    compute_cmd->add_option("--pairs", c.pairs, "doc_id<TAB>doc_id per line")->required();
    compute_cmd->add_option("--out", c.out, "Output TSV (default stdout)");

    auto add_bench_options = [&](CLI::App* cmd) {
        add_data_options(cmd, c.data);
        cmd->add_option("--qrels", c.qrels, "Relevance TSV: topic_id<TAB>doc_id<TAB>grade")->required();
        cmd->add_option("--measures", c.measures, "Comma-separated measures or 'all'")->capture_default_str();
        cmd->add_option("--topic-threshold", c.topic_threshold,
                        "Minimum share of grade 1/2 docs for a topic to be kept")->capture_default_str()
            ->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--bins", c.bins, "Histogram bins")->capture_default_str()->check(CLI::PositiveNumber);
        cmd->add_option("--range", c.range, "Histogram range lo:hi (default 0:0.5 similarity, 0:17.5 distance)");
        cmd->add_flag("--drop-unindexed", c.drop_unindexed, "Ignore judged docs that are missing from the corpus");
        cmd->add_option("--out", c.out, "Output TSV (default stdout)");
    };

    auto* bench = app.add_subcommand("bench", "Run both benchmark tests for the selected measures");
    add_bench_options(bench);
    bench->add_option("--seed", c.seed, "Sampling seed")->capture_default_str();
    bench->add_option("--iterations", c.iterations, "Sampling iterations per topic")->capture_default_str()
        ->check(CLI::PositiveNumber);
    bench->add_option("--sample-size", c.sample_size, "Docs sampled per grade and iteration")->capture_default_str()
        ->check(CLI::PositiveNumber);
    bench->add_option("--json", c.json_out, "Machine-readable report with config");
    bench->add_option("--histogram-out", c.histogram_out, "Histogram TSV for all measures");
    bench->add_option("--topics-out", c.topics_out, "Per-topic grade counts TSV");

    auto* hist = app.add_subcommand("histogram", "Score distribution over rr and nr-r pairs");
    add_bench_options(hist);

    auto* dump = app.add_subcommand("dump-ic", "Write term_id, frequency, subtree mass and IC");
    add_data_options(dump, c.data);
    dump->add_option("--out", c.out, "Output TSV (default stdout)");

    auto* dist = app.add_subcommand("term-distance", "Shortest-path length between two terms");
    add_data_options(dist, c.data);
    dist->add_option("--graph", c.graph, "unit or dic")->capture_default_str()->check(CLI::IsMember({"unit", "dic"}));
    dist->add_option("--from", c.from, "Term id")->required();
    dist->add_option("--to", c.to, "Term id")->required();
    dist->add_option("--out", c.out, "Output (default stdout)");

    CLI11_PARSE(app, argc, argv);
    set_thread_count(c.threads);

    try {
        if (build->parsed())
            return cmd_build_index(c);
        if (compute_cmd->parsed())
            return cmd_compute(c);
        if (bench->parsed())
            return cmd_bench(c);
        if (hist->parsed())
            return cmd_histogram(c);
        if (dump->parsed())
            return cmd_dump_ic(c);
        return cmd_term_distance(c);
    } catch (const UsageError& e) {
        std::cerr << "meshrel: " << e.what() << "\n\n";
        for (auto* sub : app.get_subcommands())
            std::cerr << sub->help();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "meshrel: error: " << e.what() << '\n';
        return 1;
    }
}

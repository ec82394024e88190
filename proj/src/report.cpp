#include "meshrel/report.hpp"

#include "meshrel/text.hpp"

#include <fmt/format.h>

#include <ostream>

namespace meshrel {

void write_report_tsv(std::ostream& out, const BenchmarkReport& report)
{
    out << "measure\tmean_nrr\tmean_rr\tcliffs_d\ttp\tfp\ttn\tfn\tprecision\trecall\tmcc\n";
    for (const auto& r : report.results) {
        const auto& cm = r.test2.confusion;
        out << fmt::format("{}\t{:.6f}\t{:.6f}\t{:.6f}\t{}\t{}\t{}\t{}\t{:.6f}\t{:.6f}\t{:.6f}\n",
                           r.measure.name(), r.test1.mean_nrr, r.test1.mean_rr, r.test1.delta, cm.tp, cm.fp,
                           cm.tn, cm.fn, r.metrics.precision, r.metrics.recall, r.metrics.mcc);
    }
}

namespace {

nlohmann::json topic_json(const TopicCounts& t)
{
    return {{"topic", t.topic},
            {"not_relevant", t.not_relevant},
            {"possibly_relevant", t.possibly_relevant},
            {"relevant", t.relevant},
            {"not_relevant_ratio", t.not_relevant_ratio()}};
}

} // namespace

nlohmann::json report_json(const BenchmarkReport& report, const nlohmann::json& config)
{
    nlohmann::json j;
    j["config"] = config;
    j["seed"] = report.options.sampling.seed;
    j["iterations"] = report.options.sampling.iterations;
    j["sample_size"] = report.options.sampling.sample_size;
    j["dropped_judgements"] = report.dropped_judgements;
    j["included_topics"] = nlohmann::json::array();
    for (const auto& t : report.included_topics)
        j["included_topics"].push_back(topic_json(t));
    j["excluded_topics"] = nlohmann::json::array();
    for (const auto& t : report.excluded_topics)
        j["excluded_topics"].push_back(topic_json(t));

    j["measures"] = nlohmann::json::array();
    for (const auto& r : report.results) {
        const auto& cm = r.test2.confusion;
        j["measures"].push_back({
            {"measure", r.measure.name()},
            {"orientation", std::string(to_string(r.measure.orientation()))},
            {"mean_nrr", r.test1.mean_nrr},
            {"mean_rr", r.test1.mean_rr},
            {"n_nrr", r.test1.n_nrr},
            {"n_rr", r.test1.n_rr},
            {"cliffs_d", r.test1.delta},
            {"tp", cm.tp},
            {"fp", cm.fp},
            {"tn", cm.tn},
            {"fn", cm.fn},
            {"precision", r.metrics.precision},
            {"recall", r.metrics.recall},
            {"mcc", r.metrics.mcc},
            {"skipped_topics", r.test2.skipped_topics},
            {"degenerate_pairs", r.degenerate_pairs},
            {"histogram_overflow", r.histogram.overflow},
        });
    }
    return j;
}

void write_histogram_tsv(std::ostream& out, std::string_view measure, const Histogram& h, bool header)
{
    if (header)
        out << "measure\tbin_lo\tbin_hi\tcount\tdensity\n";
    for (std::size_t k = 0; k < h.counts.size(); ++k) {
        out << measure << '\t' << text::format_double(h.bin_lo(k)) << '\t' << text::format_double(h.bin_hi(k))
            << '\t' << h.counts[k] << '\t' << text::format_double(h.density(k)) << '\n';
    }
    const double share = h.total == 0 ? 0.0 : static_cast<double>(h.overflow) / static_cast<double>(h.total);
    out << measure << '\t' << text::format_double(h.hi) << "\tinf\t" << h.overflow << '\t'
        << text::format_double(share) << '\n';
}

void write_histograms_tsv(std::ostream& out, const BenchmarkReport& report)
{
    bool header = true;
    for (const auto& r : report.results) {
        write_histogram_tsv(out, r.measure.name(), r.histogram, header);
        header = false;
    }
}

void write_topic_table(std::ostream& out, const BenchmarkReport& report)
{
    out << "topic\tnot_relevant\tpossibly_relevant\trelevant\tratio_not_relevant\n";
    for (const auto& t : report.included_topics) {
        out << fmt::format("{}\t{}\t{}\t{}\t{:.3f}\n", t.topic, t.not_relevant, t.possibly_relevant, t.relevant,
                           t.not_relevant_ratio());
    }
}

} // namespace meshrel

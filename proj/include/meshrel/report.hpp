#pragma once

#include "meshrel/benchmark.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string_view>

namespace meshrel {

/// Header plus one row per measure:
/// measure mean_nrr mean_rr cliffs_d tp fp tn fn precision recall mcc
void write_report_tsv(std::ostream& out, const BenchmarkReport& report);

/// Same fields at full precision, plus topic counts, seed and `config`.
nlohmann::json report_json(const BenchmarkReport& report, const nlohmann::json& config);

/// `measure<TAB>bin_lo<TAB>bin_hi<TAB>count<TAB>density` per bin. A final row
/// per measure with bin_hi = inf holds the out-of-range count and, in the
/// density column, its share of all values.
void write_histogram_tsv(std::ostream& out, std::string_view measure, const Histogram& h, bool header = true);
void write_histograms_tsv(std::ostream& out, const BenchmarkReport& report);

/// Per-topic grade counts for retained topics.
void write_topic_table(std::ostream& out, const BenchmarkReport& report);

} // namespace meshrel

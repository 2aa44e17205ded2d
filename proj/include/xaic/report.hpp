// Report emitters: ranking and matrix tables in three output formats,
// sensitivity CSV and summary, and the golden score-table reproduction.
#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "xaic/catalog.hpp"
#include "xaic/sensitivity.hpp"

namespace xaic {

enum class OutputFormat { Text, Csv, Records };

std::optional<OutputFormat> output_format_from_key(std::string_view k);

/// Half-up rounding to hundredths, returned as an integer count of cents.
std::int64_t round_half_up_cents(double value);
/// "0.80", "1.00", ...
std::string format_cents(std::int64_t cents);
std::string format_2dp(double value);
/// Shortest round-trippable-enough form for machine outputs (15 significant digits).
std::string format_full(double value);

struct Cell {
    std::string text;
    std::optional<double> number;  // rendered at 2 decimals in text, full precision otherwise
    std::optional<long long> integer;

    static Cell str(std::string s) { return {std::move(s), std::nullopt, std::nullopt}; }
    static Cell num(double v) { return {{}, v, std::nullopt}; }
    static Cell count(long long v) { return {std::to_string(v), std::nullopt, v}; }
};

struct Column {
    std::string key;    // CSV header / record field
    std::string label;  // text header
};

struct RenderedTable {
    std::string title;
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> footnotes;  // text format only
};

void render(const RenderedTable& table, OutputFormat format, std::ostream& out);

/// Top-k ranking view. Inadmissible methods never appear.
RenderedTable ranking_table(std::span<const MethodProfile> catalog, const RegulationProfile& r,
                            Target target, std::optional<std::size_t> top_k);

/// Full matrix view: every method, with an admissibility column.
RenderedTable matrix_table(std::span<const MethodProfile> catalog, const RegulationProfile& r);

// ---------------------------------------------------------------------------
// Sensitivity output

/// Columns: delta, regulation, target, method, score.
void write_sensitivity_csv(const SensitivityReport& report,
                           std::span<const MethodProfile> catalog,
                           std::span<const RegulationProfile> regulations, std::ostream& out);

void write_sensitivity_summary(const SensitivityReport& report,
                               std::span<const RegulationProfile> regulations, std::ostream& out);

// ---------------------------------------------------------------------------
// Golden score table

struct GoldenEntry {
    std::string regulation;
    Target target;
    std::string method;
    std::int64_t cents;     // expected score in hundredths
    std::size_t position;   // 1-based position in the published top-3 row
};

/// The 32 published (provision, target, method, score) cells.
std::span<const GoldenEntry> golden_expectation();

struct CellCheck {
    GoldenEntry expected;
    bool found = false;  // method admissible and ranked
    double actual = 0.0;
    std::int64_t actual_cents = 0;
    std::size_t rank = 0;
    std::size_t tie_size = 0;
    bool ok = false;
    std::string reason;  // empty when ok
};

struct ReproductionReport {
    std::vector<CellCheck> cells;

    std::size_t matched() const;
    bool all_match() const { return matched() == cells.size(); }
};

/// Recomputes every golden cell from `dataset`. A cell matches when the
/// rounded score is equal and the published position falls inside the
/// method's tie band [rank, rank + tie_size - 1].
ReproductionReport reproduce(const Dataset& dataset);

void write_reproduction(const ReproductionReport& report, std::ostream& out);

}  // namespace xaic

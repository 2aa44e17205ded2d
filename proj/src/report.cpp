#include "xaic/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include <json.hpp>

namespace xaic {

std::optional<OutputFormat> output_format_from_key(std::string_view k) {
    if (k == "text") return OutputFormat::Text;
    if (k == "csv") return OutputFormat::Csv;
    if (k == "records") return OutputFormat::Records;
    return std::nullopt;
}

std::int64_t round_half_up_cents(double value) {
    // Scores are ratios of small rationals; the slack absorbs binary
    // representation error at exact half-cent boundaries (e.g. 0.875).
    return static_cast<std::int64_t>(std::floor(value * 100.0 + 0.5 + 1e-9));
}

std::string format_cents(std::int64_t cents) {
    const bool negative = cents < 0;
    const std::int64_t a = negative ? -cents : cents;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%lld.%02lld", negative ? "-" : "",
                  static_cast<long long>(a / 100), static_cast<long long>(a % 100));
    return buf;
}

std::string format_2dp(double value) { return format_cents(round_half_up_cents(value)); }

std::string format_full(double value) {
    if (value == 0.0) value = 0.0;  // drop negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", value);
    return buf;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

void render_text(const RenderedTable& t, std::ostream& out) {
    std::vector<std::vector<std::string>> grid;
    grid.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        std::vector<std::string> line;
        for (const auto& c : row) line.push_back(c.number ? format_2dp(*c.number) : c.text);
        grid.push_back(std::move(line));
    }
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        width[i] = t.columns[i].label.size();
        for (const auto& line : grid) width[i] = std::max(width[i], line[i].size());
    }
    auto emit = [&](const std::vector<std::string>& cells, const std::vector<bool>& numeric) {
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const std::string pad(width[i] - cells[i].size(), ' ');
            if (i) line += "  ";
            line += numeric[i] ? pad + cells[i] : cells[i] + pad;
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << '\n';
    };

    std::vector<bool> numeric(t.columns.size(), false);
    if (!t.rows.empty()) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            numeric[i] = t.rows.front()[i].number.has_value();
        }
    }
    if (!t.title.empty()) out << t.title << '\n';
    std::vector<std::string> header;
    for (const auto& c : t.columns) header.push_back(c.label);
    emit(header, numeric);
    std::size_t total = 0;
    for (std::size_t w : width) total += w;
    out << std::string(total + 2 * (width.empty() ? 0 : width.size() - 1), '-') << '\n';
    for (const auto& line : grid) emit(line, numeric);
    for (const auto& f : t.footnotes) out << "* " << f << '\n';
}

void render_csv(const RenderedTable& t, std::ostream& out) {
    std::vector<std::string> header;
    for (const auto& c : t.columns) header.push_back(csv_field(c.key));
    out << join(header, ",") << '\n';
    for (const auto& row : t.rows) {
        std::vector<std::string> cells;
        for (const auto& c : row) cells.push_back(c.number ? format_full(*c.number) : csv_field(c.text));
        out << join(cells, ",") << '\n';
    }
}

void render_records(const RenderedTable& t, std::ostream& out) {
    for (const auto& row : t.rows) {
        nlohmann::ordered_json rec;
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            const auto& c = row[i];
            if (c.number) {
                rec[t.columns[i].key] = *c.number;
            } else if (c.integer) {
                rec[t.columns[i].key] = *c.integer;
            } else {
                rec[t.columns[i].key] = c.text;
            }
        }
        out << rec.dump() << '\n';
    }
}

}  // namespace

void render(const RenderedTable& table, OutputFormat format, std::ostream& out) {
    switch (format) {
    case OutputFormat::Text: render_text(table, out); break;
    case OutputFormat::Csv: render_csv(table, out); break;
    case OutputFormat::Records: render_records(table, out); break;
    }
}

RenderedTable ranking_table(std::span<const MethodProfile> catalog, const RegulationProfile& r,
                            Target target, std::optional<std::size_t> top_k) {
    const auto ranking = rank_methods(catalog, r, target, top_k);
    RenderedTable t;
    t.title = r.label + " - " + std::string(display_name(target)) +
              (top_k ? " (top " + std::to_string(*top_k) + ")" : std::string(" (all)"));
    t.columns = {{"rank", "Rank"}, {"method", "Method"}, {"score", "Score"},
                 {"tied_with", "Tied with"}};
    std::map<std::size_t, std::vector<std::string>> ties;
    for (const auto& e : ranking) {
        t.rows.push_back({Cell::count(static_cast<long long>(e.rank)), Cell::str(e.method), Cell::num(e.score),
                          Cell::str(join(e.tied_with, ";"))});
        if (!e.tied_with.empty()) ties[e.rank].push_back(e.method);
    }
    for (const auto& [rank, names] : ties) {
        t.footnotes.push_back("tie at rank " + std::to_string(rank) + ": " + join(names, ", "));
    }
    if (ranking.empty()) t.footnotes.push_back("no admissible method");
    return t;
}

RenderedTable matrix_table(std::span<const MethodProfile> catalog, const RegulationProfile& r) {
    RenderedTable t;
    t.title = r.label + " - compliance matrix";
    t.columns = {{"regulation", "Regulation"}, {"method", "Method"}, {"admissible", "Admissible"}};
    const auto required = r.required_categories();
    for (Category c : required) {
        t.columns.push_back({std::string(key(c)), std::string(display_name(c))});
    }
    t.columns.push_back({"overall", "Overall"});
    bool any_inadmissible = false;
    for (const auto& m : catalog) {
        const auto res = compliance_score(m, r);
        std::vector<Cell> row{Cell::str(r.id), Cell::str(m.name),
                              Cell::str(res.admissible ? "yes" : "no")};
        for (Category c : required) row.push_back(Cell::num(res.category_weights.at(c)));
        row.push_back(Cell::num(res.overall));
        t.rows.push_back(std::move(row));
        any_inadmissible = any_inadmissible || !res.admissible;
    }
    if (any_inadmissible) {
        t.footnotes.push_back(
            "admissible = no: scope or stage does not match the provision; overall forced to 0");
    }
    return t;
}

void write_sensitivity_csv(const SensitivityReport& report,
                           std::span<const MethodProfile> catalog,
                           std::span<const RegulationProfile> regulations, std::ostream& out) {
    out << "delta,regulation,target,method,score\n";
    for (std::size_t i = 0; i < report.deltas.size(); ++i) {
        const std::string delta = format_full(report.deltas[i]);
        for (const auto& r : regulations) {
            for (Target t : targets_for(r)) {
                for (const auto& m : catalog) {
                    out << delta << ',' << csv_field(r.id) << ',' << key(t) << ','
                        << csv_field(m.name) << ',' << format_full(report.at(m.name, r.id, t)[i])
                        << '\n';
                }
            }
        }
    }
}

void write_sensitivity_summary(const SensitivityReport& report,
                               std::span<const RegulationProfile> regulations, std::ostream& out) {
    out << "grid: [" << format_full(report.grid.min) << ", " << format_full(report.grid.max)
        << "], " << report.deltas.size() << " points\n";
    out << "constancy (regulation, category):\n";
    std::size_t varying = 0;
    for (const auto& r : regulations) {
        for (Category c : r.required_categories()) {
            const bool constant = report.constancy.at({r.id, c});
            varying += constant ? 0 : 1;
            out << "  " << r.id << ' ' << key(c) << ": " << (constant ? "constant" : "varies")
                << '\n';
        }
    }
    out << "non-constant pairs: " << varying << '\n';
    out << "ranking stability (regulation, target):\n";
    std::size_t unstable = 0;
    for (const auto& r : regulations) {
        for (Target t : targets_for(r)) {
            const auto& v = report.ranking_stable.at({r.id, t});
            out << "  " << r.id << ' ' << key(t) << ": ";
            if (v.stable) {
                out << "stable\n";
            } else {
                ++unstable;
                out << "unstable (at delta " << format_full(v.swap->delta) << ", "
                    << v.swap->below << " overtakes " << v.swap->above << ")\n";
            }
        }
    }
    if (unstable == 0) {
        out << "rankings stable for all targets\n";
    } else {
        out << "unstable rankings: " << unstable << '\n';
    }
    if (report.first_divergence) {
        const auto& d = *report.first_divergence;
        out << "first divergence: delta " << format_full(d.delta) << ", " << d.regulation << ' '
            << key(d.target) << ", " << d.below << " / " << d.above << '\n';
    }
}

std::span<const GoldenEntry> golden_expectation() {
    using T = Target;
    static const std::vector<GoldenEntry> entries{
        {"art86", T::Robustness, "SHAP", 80, 1},
        {"art86", T::Robustness, "RuleFit", 60, 2},
        {"art86", T::Faithfulness, "SHAP", 100, 1},
        {"art86", T::Faithfulness, "RuleSHAP", 80, 2},
        {"art86", T::Faithfulness, "CEM", 80, 3},
        {"art86", T::Complexity, "Anchors", 100, 1},
        {"art86", T::Complexity, "CEM", 80, 2},
        {"art86", T::Complexity, "DiCE", 80, 3},
        {"art86", T::Overall, "SHAP", 80, 1},
        {"art86", T::Overall, "Anchors", 68, 2},
        {"art86", T::Overall, "RuleSHAP", 67, 3},
        {"art13-14", T::Robustness, "SHAP", 80, 1},
        {"art13-14", T::Robustness, "PDP", 70, 2},
        {"art13-14", T::Robustness, "RuleFit", 60, 3},
        {"art13-14", T::Faithfulness, "SHAP", 88, 1},
        {"art13-14", T::Faithfulness, "RuleSHAP", 80, 2},
        {"art13-14", T::Faithfulness, "CEM", 78, 3},
        {"art13-14", T::Overall, "SHAP", 84, 1},
        {"art13-14", T::Overall, "RuleSHAP", 70, 2},
        {"art13-14", T::Overall, "PDP", 65, 3},
        {"art11-annex4", T::Robustness, "SHAP", 80, 1},
        {"art11-annex4", T::Robustness, "PDP", 70, 2},
        {"art11-annex4", T::Robustness, "RuleFit", 60, 3},
        {"art11-annex4", T::Faithfulness, "SHAP", 87, 1},
        {"art11-annex4", T::Faithfulness, "RuleSHAP", 80, 2},
        {"art11-annex4", T::Faithfulness, "RuleFit", 67, 3},
        {"art11-annex4", T::Complexity, "Decision Trees", 100, 1},
        {"art11-annex4", T::Complexity, "RuleFit", 80, 2},
        {"art11-annex4", T::Complexity, "RuleSHAP", 80, 3},
        {"art11-annex4", T::Overall, "SHAP", 76, 1},
        {"art11-annex4", T::Overall, "RuleSHAP", 73, 2},
        {"art11-annex4", T::Overall, "PDP", 70, 3},
    };
    return entries;
}

std::size_t ReproductionReport::matched() const {
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [](const CellCheck& c) { return c.ok; }));
}

ReproductionReport reproduce(const Dataset& dataset) {
    ReproductionReport report;
    const auto& methods = dataset.methods.methods;
    for (const auto& g : golden_expectation()) {
        CellCheck cell;
        cell.expected = g;
        const auto* reg = dataset.regulations.find(g.regulation);
        if (reg == nullptr) {
            cell.reason = "regulation missing from dataset";
            report.cells.push_back(std::move(cell));
            continue;
        }
        std::vector<RankingEntry> ranking;
        try {
            ranking = rank_methods(methods, *reg, g.target);
        } catch (const Error& e) {
            cell.reason = e.what();
            report.cells.push_back(std::move(cell));
            continue;
        }
        auto it = std::find_if(ranking.begin(), ranking.end(),
                               [&](const RankingEntry& e) { return e.method == g.method; });
        if (it == ranking.end()) {
            cell.reason = dataset.methods.find(g.method) ? "method not admissible"
                                                         : "method missing from dataset";
            report.cells.push_back(std::move(cell));
            continue;
        }
        cell.found = true;
        cell.actual = it->score;
        cell.actual_cents = round_half_up_cents(it->score);
        cell.rank = it->rank;
        cell.tie_size = it->tied_with.size() + 1;
        if (cell.actual_cents != g.cents) {
            cell.reason = "score differs";
        } else if (g.position < cell.rank || g.position > cell.rank + cell.tie_size - 1) {
            cell.reason = "rank " + std::to_string(cell.rank) + " outside published position " +
                          std::to_string(g.position);
        } else {
            cell.ok = true;
        }
        report.cells.push_back(std::move(cell));
    }
    return report;
}

void write_reproduction(const ReproductionReport& report, std::ostream& out) {
    for (const auto& c : report.cells) {
        const auto& g = c.expected;
        out << (c.ok ? "ok    " : "FAIL  ") << g.regulation << ' ' << key(g.target) << ' '
            << g.method << ": expected " << format_cents(g.cents) << " (position " << g.position
            << ")";
        if (c.found) {
            out << ", got " << format_cents(c.actual_cents) << " (rank " << c.rank;
            if (c.tie_size > 1) out << ", tie of " << c.tie_size;
            out << ")";
        }
        if (!c.ok) out << " - " << c.reason;
        out << '\n';
    }
    out << report.matched() << '/' << report.cells.size() << " cells match\n";
}

}  // namespace xaic

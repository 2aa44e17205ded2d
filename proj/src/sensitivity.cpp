#include "xaic/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace xaic {

void DeltaGrid::validate() const {
    if (!std::isfinite(min) || !std::isfinite(max)) throw DomainError("grid bounds must be finite");
    if (!(min <= 0.0 && 0.0 <= max)) throw DomainError("grid must satisfy min <= 0 <= max");
    if (steps < 1) throw DomainError("grid needs at least one step");
    if (steps == 1 && !(min == 0.0 && max == 0.0)) {
        throw DomainError("a single-step grid is only valid for min == max == 0");
    }
    (void)zero_index();
}

std::vector<double> DeltaGrid::points() const {
    if (steps == 1) return {0.0};
    const int last = steps - 1;
    std::vector<double> out(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        out[static_cast<std::size_t>(i)] = (min * (last - i) + max * i) / last;
    }
    // Snap the point nearest zero; reject grids that skip it.
    const double span = max - min;
    auto nearest = std::min_element(out.begin(), out.end(), [](double a, double b) {
        return std::abs(a) < std::abs(b);
    });
    if (std::abs(*nearest) > 1e-9 * std::max(span, 1.0)) {
        std::ostringstream msg;
        msg << "grid [" << min << ", " << max << "] with " << steps
            << " steps does not contain delta = 0";
        throw DomainError(msg.str());
    }
    *nearest = 0.0;
    return out;
}

std::size_t DeltaGrid::zero_index() const {
    const auto pts = points();
    return static_cast<std::size_t>(std::find(pts.begin(), pts.end(), 0.0) - pts.begin());
}

double clamp_lambda(double lambda, double delta) {
    return std::min(std::max(lambda + delta, 0.0), 1.0);
}

LambdaVector perturbed_lambdas(const RegulationProfile& r, double delta) {
    LambdaVector out = nominal_lambdas(r);
    for (Category c : r.required_categories()) {
        for (SubProperty s : sub_properties_of(c)) {
            out[index_of(s)] = clamp_lambda(out[index_of(s)], delta);
        }
    }
    return out;
}

namespace {

std::string describe_vacuous(const std::string& regulation, Category category, double delta) {
    std::ostringstream msg;
    msg << "vacuous category '" << key(category) << "' under regulation '" << regulation
        << "' at delta = " << delta;
    return msg.str();
}

bool is_constant(const std::vector<double>& values) {
    if (values.empty()) return true;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return *hi - *lo <= kConstancyTolerance;
}

}  // namespace

SweepVacuousError::SweepVacuousError(std::string regulation, Category category, double delta)
    : Error(describe_vacuous(regulation, category, delta)),
      regulation_(std::move(regulation)),
      category_(category),
      delta_(delta) {}

const std::vector<double>& SensitivityReport::at(const std::string& method,
                                                 const std::string& regulation,
                                                 Target target) const {
    auto it = series.find(SeriesKey{method, regulation, target});
    if (it == series.end()) {
        throw Error("no series for (" + method + ", " + regulation + ", " +
                    std::string(key(target)) + ")");
    }
    return it->second;
}

SensitivityReport sweep(std::span<const MethodProfile> catalog,
                        std::span<const RegulationProfile> regulations, const DeltaGrid& grid) {
    grid.validate();
    SensitivityReport report;
    report.grid = grid;
    report.deltas = grid.points();
    const std::size_t n = report.deltas.size();

    for (const auto& r : regulations) {
        const auto targets = targets_for(r);
        for (const auto& m : catalog) {
            report.admissible[{m.name, r.id}] = procedural_fit(m, r);
            for (Target t : targets) report.series[SeriesKey{m.name, r.id, t}].resize(n);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double delta = report.deltas[i];
            const LambdaVector lambdas = perturbed_lambdas(r, delta);
            for (const auto& m : catalog) {
                ComplianceResult res;
                try {
                    res = compliance_score(m, r, lambdas);
                } catch (const VacuousCategoryError& e) {
                    throw SweepVacuousError(r.id, e.category(), delta);
                }
                for (Target t : targets) {
                    report.series[SeriesKey{m.name, r.id, t}][i] = target_score(res, t);
                }
            }
        }
        for (Category c : r.required_categories()) {
            bool constant = true;
            for (const auto& m : catalog) {
                constant = constant && is_constant(report.at(m.name, r.id, target_of(c)));
            }
            report.constancy[{r.id, c}] = constant;
        }
    }

    report.ranking_stable = stability_verdict(report);
    for (const auto& [k, verdict] : report.ranking_stable) {
        if (!verdict.swap) continue;
        const double d = verdict.swap->delta;
        if (!report.first_divergence || std::abs(d) < std::abs(report.first_divergence->delta)) {
            report.first_divergence = verdict.swap;
        }
    }
    return report;
}

StabilityVerdict ranking_stability(const std::vector<double>& deltas,
                                   const std::vector<std::string>& methods,
                                   const std::vector<std::vector<double>>& series,
                                   const std::string& regulation, Target target) {
    const std::size_t m = methods.size();
    std::vector<std::size_t> order(deltas.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double da = std::abs(deltas[a]);
        const double db = std::abs(deltas[b]);
        if (da != db) return da < db;
        return deltas[a] < deltas[b];
    });

    // seen[i][j]: method i strictly ahead of method j at some visited point.
    std::vector<std::vector<bool>> seen(m, std::vector<bool>(m, false));
    for (std::size_t g : order) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                if (i == j) continue;
                if (series[i][g] - series[j][g] > kTieTolerance && seen[j][i]) {
                    return {false, OrderSwap{deltas[g], regulation, target, methods[j], methods[i]}};
                }
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                if (i != j && series[i][g] - series[j][g] > kTieTolerance) seen[i][j] = true;
            }
        }
    }
    return {};
}

std::map<std::pair<std::string, Target>, StabilityVerdict> stability_verdict(
    const SensitivityReport& report) {
    // Collect (regulation, target) -> admissible method series.
    struct Group {
        std::vector<std::string> methods;
        std::vector<std::vector<double>> series;
    };
    std::map<std::pair<std::string, Target>, Group> groups;
    for (const auto& [k, values] : report.series) {
        auto& g = groups[{k.regulation, k.target}];
        auto adm = report.admissible.find({k.method, k.regulation});
        if (adm == report.admissible.end() || !adm->second) continue;
        g.methods.push_back(k.method);
        g.series.push_back(values);
    }
    std::map<std::pair<std::string, Target>, StabilityVerdict> out;
    for (const auto& [k, g] : groups) {
        out[k] = ranking_stability(report.deltas, g.methods, g.series, k.first, k.second);
    }
    return out;
}

}  // namespace xaic

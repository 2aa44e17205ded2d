// Sensitivity of compliance scores to the legal strength factors: every
// strength factor of a provision's required categories is shifted by a
// scalar delta, clamped to [0,1], and the scores recomputed over a grid.
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "xaic/scoring.hpp"

namespace xaic {

/// Evenly spaced delta values from `min` to `max`. Always contains 0.
struct DeltaGrid {
    double min = -0.2;
    double max = 0.2;
    int steps = 41;

    /// Throws DomainError unless min <= 0 <= max and 0 falls on a grid point.
    /// A single step is allowed only for the degenerate grid min == max == 0.
    void validate() const;
    /// Grid values; the zero point is exactly 0.0.
    std::vector<double> points() const;
    std::size_t zero_index() const;
};

double clamp_lambda(double lambda, double delta);

/// Strength factors of `r` shifted by `delta`. Sub-properties of categories
/// the provision does not require keep their nominal (zero) factor.
LambdaVector perturbed_lambdas(const RegulationProfile& r, double delta);

/// Raised when a delta makes a required category's factors sum to zero.
class SweepVacuousError : public Error {
public:
    SweepVacuousError(std::string regulation, Category category, double delta);

    const std::string& regulation() const { return regulation_; }
    Category category() const { return category_; }
    double delta() const { return delta_; }

private:
    std::string regulation_;
    Category category_;
    double delta_;
};

struct SeriesKey {
    std::string method;
    std::string regulation;
    Target target;

    auto operator<=>(const SeriesKey&) const = default;
};

/// A pair of methods whose strict order flips between two grid points.
struct OrderSwap {
    double delta = 0.0;  // grid point at which the contradiction appears
    std::string regulation;
    Target target = Target::Overall;
    std::string above;  // ahead of `below` at some grid point with smaller |delta|
    std::string below;  // ahead of `above` at `delta`
};

struct StabilityVerdict {
    bool stable = true;
    std::optional<OrderSwap> swap;
};

/// Constancy tolerance for a series (absolute).
inline constexpr double kConstancyTolerance = 1e-12;

struct SensitivityReport {
    DeltaGrid grid;
    std::vector<double> deltas;
    /// Category series are reported for every method; overall series are 0
    /// for inadmissible methods.
    std::map<SeriesKey, std::vector<double>> series;
    /// Admissibility per (method, regulation); independent of delta.
    std::map<std::pair<std::string, std::string>, bool> admissible;
    std::map<std::pair<std::string, Category>, bool> constancy;
    std::map<std::pair<std::string, Target>, StabilityVerdict> ranking_stable;
    /// Swap with the smallest |delta| over all (regulation, target) pairs.
    std::optional<OrderSwap> first_divergence;

    const std::vector<double>& at(const std::string& method, const std::string& regulation,
                                  Target target) const;
};

/// Recomputes every category weight and overall score at each grid point and
/// fills in constancy flags and ranking-stability verdicts.
SensitivityReport sweep(std::span<const MethodProfile> catalog,
                        std::span<const RegulationProfile> regulations,
                        const DeltaGrid& grid = {});

/// Ranking stability for one (regulation, target): the admissible methods'
/// strict order never reverses across the grid. Ties are compatible with
/// either order. Grid points are visited outward from delta = 0 (negative
/// side first at equal |delta|); the first point contradicting an order
/// already seen is reported.
StabilityVerdict ranking_stability(const std::vector<double>& deltas,
                                   const std::vector<std::string>& methods,
                                   const std::vector<std::vector<double>>& series,
                                   const std::string& regulation, Target target);

/// Verdicts for every (regulation, target) of a completed report.
std::map<std::pair<std::string, Target>, StabilityVerdict> stability_verdict(
    const SensitivityReport& report);

}  // namespace xaic

#include "xaic/scoring.hpp"

#include <algorithm>
#include <cmath>

namespace xaic {

bool RegulationProfile::requires_category(Category c) const {
    return required_sub_property_count(c) > 0;
}

std::vector<Category> RegulationProfile::required_categories() const {
    std::vector<Category> out;
    for (Category c : kCategories) {
        if (requires_category(c)) out.push_back(c);
    }
    return out;
}

std::size_t RegulationProfile::required_category_count() const {
    return required_categories().size();
}

std::size_t RegulationProfile::required_sub_property_count(Category c) const {
    auto subs = sub_properties_of(c);
    return static_cast<std::size_t>(std::count_if(
        subs.begin(), subs.end(), [&](SubProperty s) { return requirement(s).required(); }));
}

LambdaVector nominal_lambdas(const RegulationProfile& r) {
    LambdaVector out{};
    for (SubProperty s : kSubProperties) out[index_of(s)] = r.requirement(s).lambda();
    return out;
}

VacuousCategoryError::VacuousCategoryError(std::string regulation, Category category)
    : Error("vacuous category: strength factors of '" + std::string(key(category)) +
            "' sum to zero under regulation '" + regulation + "'"),
      regulation_(std::move(regulation)),
      category_(category) {}

CategoryNotRequiredError::CategoryNotRequiredError(const std::string& regulation,
                                                   Category category)
    : Error("category '" + std::string(key(category)) + "' is not required by regulation '" +
            regulation + "'") {}

double category_weight(const MethodProfile& a, const RegulationProfile& r, Category p,
                       const std::optional<LambdaVector>& lambdas) {
    if (!r.requires_category(p)) throw CategoryNotRequiredError(r.id, p);
    const LambdaVector lam = lambdas ? *lambdas : nominal_lambdas(r);

    // Every sub-property of the category takes part; not-required ones carry
    // lambda 0 at nominal strength. Unreported scores add 0 to the numerator.
    double numerator = 0.0;
    double denominator = 0.0;
    for (SubProperty s : sub_properties_of(p)) {
        const double l = lam[index_of(s)];
        if (const auto& raw = a.score(s)) numerator += l * normalize(*raw);
        denominator += l;
    }
    if (!(denominator > 0.0)) throw VacuousCategoryError(r.id, p);
    return numerator / denominator;
}

bool procedural_fit(const MethodProfile& a, const RegulationProfile& r) {
    return a.scope.intersects(r.scope) && a.stage.intersects(r.stage);
}

ComplianceResult compliance_score(const MethodProfile& a, const RegulationProfile& r,
                                  const std::optional<LambdaVector>& lambdas,
                                  const std::optional<CategoryPriorities>& priorities) {
    const auto required = r.required_categories();
    if (required.empty()) {
        throw Error("regulation '" + r.id + "' requires no property category");
    }

    ComplianceResult result;
    result.method = a.name;
    result.regulation = r.id;
    result.admissible = procedural_fit(a, r);

    double sum = 0.0;
    double weighted = 0.0;
    double priority_total = 0.0;
    for (Category c : required) {
        const double w = category_weight(a, r, c, lambdas);
        result.category_weights.emplace(c, w);
        sum += w;
        if (priorities) {
            const double pr = priorities->values[index_of(c)];
            if (pr < 0.0) throw DomainError("category priority must be non-negative");
            weighted += pr * w;
            priority_total += pr;
        }
    }

    double overall = sum / static_cast<double>(required.size());
    if (priorities) {
        if (!(priority_total > 0.0)) {
            throw DomainError("category priorities of required categories sum to zero");
        }
        overall = weighted / priority_total;
    }
    result.overall = result.admissible ? overall : 0.0;
    return result;
}

std::optional<Category> category_of(Target t) {
    if (t == Target::Overall) return std::nullopt;
    return static_cast<Category>(static_cast<std::uint8_t>(t));
}

Target target_of(Category c) { return static_cast<Target>(static_cast<std::uint8_t>(c)); }

std::string_view key(Target t) {
    if (auto c = category_of(t)) return key(*c);
    return "overall";
}

std::string_view display_name(Target t) {
    if (auto c = category_of(t)) return display_name(*c);
    return "Overall";
}

std::optional<Target> target_from_key(std::string_view k) {
    if (k == "overall" || k == "all") return Target::Overall;
    if (auto c = category_from_key(k)) return target_of(*c);
    return std::nullopt;
}

std::vector<Target> targets_for(const RegulationProfile& r) {
    std::vector<Target> out;
    for (Category c : r.required_categories()) out.push_back(target_of(c));
    out.push_back(Target::Overall);
    return out;
}

double target_score(const ComplianceResult& result, Target t) {
    if (auto c = category_of(t)) {
        auto it = result.category_weights.find(*c);
        if (it == result.category_weights.end()) {
            throw CategoryNotRequiredError(result.regulation, *c);
        }
        return it->second;
    }
    return result.overall;
}

std::vector<RankingEntry> rank_methods(std::span<const MethodProfile> catalog,
                                       const RegulationProfile& r, Target target,
                                       std::optional<std::size_t> top_k) {
    if (catalog.empty()) throw Error("cannot rank an empty catalog");
    if (auto c = category_of(target); c && !r.requires_category(*c)) {
        throw CategoryNotRequiredError(r.id, *c);
    }
    if (top_k && *top_k == 0) throw DomainError("top-k must be positive");

    struct Scored {
        std::string name;
        double score;
    };
    std::vector<Scored> scored;
    for (const auto& m : catalog) {
        if (!procedural_fit(m, r)) continue;
        scored.push_back({m.name, target_score(compliance_score(m, r), target)});
    }
    std::sort(scored.begin(), scored.end(), [](const Scored& x, const Scored& y) {
        if (x.score != y.score) return x.score > y.score;
        return x.name < y.name;
    });

    // Group consecutive near-equal scores into tie classes.
    std::vector<RankingEntry> out;
    std::size_t begin = 0;
    while (begin < scored.size()) {
        std::size_t end = begin + 1;
        while (end < scored.size() &&
               std::abs(scored[end - 1].score - scored[end].score) <= kTieTolerance) {
            ++end;
        }
        std::sort(scored.begin() + static_cast<std::ptrdiff_t>(begin),
                  scored.begin() + static_cast<std::ptrdiff_t>(end),
                  [](const Scored& x, const Scored& y) { return x.name < y.name; });
        const std::size_t rank = begin + 1;
        if (top_k && rank > *top_k) break;
        for (std::size_t i = begin; i < end; ++i) {
            RankingEntry e{rank, scored[i].name, scored[i].score, {}};
            for (std::size_t j = begin; j < end; ++j) {
                if (j != i) e.tied_with.push_back(scored[j].name);
            }
            out.push_back(std::move(e));
        }
        begin = end;
    }
    return out;
}

}  // namespace xaic

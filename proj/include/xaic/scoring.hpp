// Compliance scoring: per-category weights, the procedural-fit gate, the
// overall legislation-specific score, and deterministic rankings.
#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xaic/core.hpp"

namespace xaic {

/// An XAI method's expert profile. A missing score means "unreported".
struct MethodProfile {
    std::string name;
    std::array<std::optional<RawScore>, kSubPropertyCount> scores;
    ScopeSet scope;
    StageSet stage;
    std::map<SubProperty, std::string> notes;

    const std::optional<RawScore>& score(SubProperty s) const { return scores[index_of(s)]; }
    bool operator==(const MethodProfile&) const = default;
};

/// Explanation requirements of one legal provision.
struct RegulationProfile {
    std::string id;
    std::string label;
    std::array<RequirementStrength, kSubPropertyCount> requirements;
    ScopeSet scope;
    StageSet stage;

    const RequirementStrength& requirement(SubProperty s) const {
        return requirements[index_of(s)];
    }
    /// A category is required when at least one of its sub-properties is.
    bool requires_category(Category c) const;
    /// Required categories in declaration order.
    std::vector<Category> required_categories() const;
    /// Number of required categories.
    std::size_t required_category_count() const;
    /// Number of required sub-properties within `c`.
    std::size_t required_sub_property_count(Category c) const;

    bool operator==(const RegulationProfile&) const = default;
};

/// Effective strength factor per sub-property, indexed by SubProperty.
using LambdaVector = std::array<double, kSubPropertyCount>;

LambdaVector nominal_lambdas(const RegulationProfile& r);

/// Raised when a required category's strength factors sum to zero.
class VacuousCategoryError : public Error {
public:
    VacuousCategoryError(std::string regulation, Category category);

    const std::string& regulation() const { return regulation_; }
    Category category() const { return category_; }

private:
    std::string regulation_;
    Category category_;
};

/// Raised when ranking or weighting a category the provision does not require.
class CategoryNotRequiredError : public Error {
public:
    CategoryNotRequiredError(const std::string& regulation, Category category);
};

/// Relative priority of categories in the overall score. Entries for
/// categories a provision does not require are ignored; the rest are
/// renormalised to sum to one.
struct CategoryPriorities {
    std::array<double, kCategoryCount> values{1.0, 1.0, 1.0};
};

struct ComplianceResult {
    std::string method;
    std::string regulation;
    bool admissible = false;
    std::map<Category, double> category_weights;  // required categories only
    double overall = 0.0;
};

/// Weighted fraction of category `p`'s sub-properties the method satisfies.
/// Uses `lambdas` in place of the provision's nominal strengths when given.
double category_weight(const MethodProfile& a, const RegulationProfile& r, Category p,
                       const std::optional<LambdaVector>& lambdas = std::nullopt);

/// True iff the method's scope and stage each intersect the provision's.
bool procedural_fit(const MethodProfile& a, const RegulationProfile& r);

ComplianceResult compliance_score(const MethodProfile& a, const RegulationProfile& r,
                                  const std::optional<LambdaVector>& lambdas = std::nullopt,
                                  const std::optional<CategoryPriorities>& priorities = std::nullopt);

// ---------------------------------------------------------------------------
// Ranking

/// What a ranking orders by: one category weight or the overall score.
enum class Target : std::uint8_t { Faithfulness, Robustness, Complexity, Overall };

inline constexpr std::array<Target, 4> kTargets{
    Target::Faithfulness, Target::Robustness, Target::Complexity, Target::Overall};

std::optional<Category> category_of(Target t);
Target target_of(Category c);
std::string_view key(Target t);
std::string_view display_name(Target t);
/// Accepts category keys, "overall" and its alias "all".
std::optional<Target> target_from_key(std::string_view k);

/// Targets meaningful for a provision: its required categories, then Overall.
std::vector<Target> targets_for(const RegulationProfile& r);

/// Score used for ranking; category weight or overall.
double target_score(const ComplianceResult& result, Target t);

/// Two scores closer than this are treated as tied.
inline constexpr double kTieTolerance = 1e-12;

struct RankingEntry {
    std::size_t rank = 0;  // competition ranking: 1, 2, 2, 4, ...
    std::string method;
    double score = 0.0;
    std::vector<std::string> tied_with;
};

/// Ranks admissible methods. With `top_k`, every method tied with the k-th
/// entry is kept. Ties are listed by name.
std::vector<RankingEntry> rank_methods(std::span<const MethodProfile> catalog,
                                       const RegulationProfile& r, Target target,
                                       std::optional<std::size_t> top_k = std::nullopt);

}  // namespace xaic

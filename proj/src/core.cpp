#include "xaic/core.hpp"

#include <algorithm>

namespace xaic {

namespace {

constexpr std::array<SubProperty, 3> kFaithfulnessSubs{
    SubProperty::NoFalsePositives, SubProperty::NoFalseNegatives, SubProperty::Completeness};
constexpr std::array<SubProperty, 2> kRobustnessSubs{
    SubProperty::Stability, SubProperty::AdversarialRobustness};
constexpr std::array<SubProperty, 2> kComplexitySubs{
    SubProperty::Sparsity, SubProperty::LevelOfDetail};

constexpr std::array<std::string_view, kSubPropertyCount> kSubKeys{
    "no_fp", "no_fn", "completeness", "stability",
    "adversarial_robustness", "sparsity", "level_of_detail"};
constexpr std::array<std::string_view, kSubPropertyCount> kSubNames{
    "No FP", "No FN", "Completeness", "Stability",
    "Adv. Rob.", "Sparsity", "Level of Detail"};

constexpr std::array<std::string_view, kCategoryCount> kCategoryKeys{
    "faithfulness", "robustness", "complexity"};
constexpr std::array<std::string_view, kCategoryCount> kCategoryNames{
    "Faithfulness", "Robustness", "Complexity"};

constexpr std::array<std::string_view, 4> kStrengthKeys{
    "mandatory", "optional", "partial", "not_required"};

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::string_view, N>& keys, std::string_view k) {
    auto it = std::find(keys.begin(), keys.end(), k);
    if (it == keys.end()) return std::nullopt;
    return static_cast<E>(it - keys.begin());
}

}  // namespace

std::span<const SubProperty> sub_properties_of(Category c) {
    switch (c) {
    case Category::Faithfulness: return kFaithfulnessSubs;
    case Category::Robustness: return kRobustnessSubs;
    case Category::Complexity: return kComplexitySubs;
    }
    return {};
}

std::string_view key(SubProperty s) { return kSubKeys[index_of(s)]; }
std::string_view key(Category c) { return kCategoryKeys[index_of(c)]; }
std::string_view display_name(SubProperty s) { return kSubNames[index_of(s)]; }
std::string_view display_name(Category c) { return kCategoryNames[index_of(c)]; }

std::optional<SubProperty> sub_property_from_key(std::string_view k) {
    return lookup<SubProperty>(kSubKeys, k);
}

std::optional<Category> category_from_key(std::string_view k) {
    return lookup<Category>(kCategoryKeys, k);
}

std::string_view key(Strength s) { return kStrengthKeys[static_cast<std::size_t>(s)]; }

std::optional<Strength> strength_from_key(std::string_view k) {
    return lookup<Strength>(kStrengthKeys, k);
}

RawScore::RawScore(int value) : value_(value) {
    if (value < kMin || value > kMax) {
        throw DomainError("raw score " + std::to_string(value) + " outside [1, 5]");
    }
}

double normalize(int raw) { return normalize(RawScore(raw)); }

std::string_view key(Scope s) { return s == Scope::Local ? "local" : "global"; }
std::string_view key(Stage s) { return s == Stage::ExAnte ? "ex-ante" : "ex-post"; }

std::optional<Scope> scope_from_key(std::string_view k) {
    if (k == "local") return Scope::Local;
    if (k == "global") return Scope::Global;
    return std::nullopt;
}

std::optional<Stage> stage_from_key(std::string_view k) {
    if (k == "ex-ante") return Stage::ExAnte;
    if (k == "ex-post") return Stage::ExPost;
    return std::nullopt;
}

}  // namespace xaic

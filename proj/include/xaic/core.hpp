// Shared vocabulary: interpretability properties, legal requirement
// strengths, raw expert scores and the scope/stage descriptors used for the
// procedural-fit test.
#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace xaic {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised for values outside a type's domain (e.g. a raw score of 6).
class DomainError : public Error {
public:
    using Error::Error;
};

enum class Category : std::uint8_t { Faithfulness, Robustness, Complexity };

enum class SubProperty : std::uint8_t {
    NoFalsePositives,
    NoFalseNegatives,
    Completeness,
    Stability,
    AdversarialRobustness,
    Sparsity,
    LevelOfDetail,
};

inline constexpr std::size_t kCategoryCount = 3;
inline constexpr std::size_t kSubPropertyCount = 7;

inline constexpr std::array<Category, kCategoryCount> kCategories{
    Category::Faithfulness, Category::Robustness, Category::Complexity};

inline constexpr std::array<SubProperty, kSubPropertyCount> kSubProperties{
    SubProperty::NoFalsePositives, SubProperty::NoFalseNegatives,
    SubProperty::Completeness,     SubProperty::Stability,
    SubProperty::AdversarialRobustness, SubProperty::Sparsity,
    SubProperty::LevelOfDetail};

constexpr std::size_t index_of(SubProperty s) { return static_cast<std::size_t>(s); }
constexpr std::size_t index_of(Category c) { return static_cast<std::size_t>(c); }

constexpr Category category_of(SubProperty s) {
    switch (s) {
    case SubProperty::NoFalsePositives:
    case SubProperty::NoFalseNegatives:
    case SubProperty::Completeness:
        return Category::Faithfulness;
    case SubProperty::Stability:
    case SubProperty::AdversarialRobustness:
        return Category::Robustness;
    case SubProperty::Sparsity:
    case SubProperty::LevelOfDetail:
        return Category::Complexity;
    }
    return Category::Complexity;
}

/// Sub-properties of a category, in declaration order.
std::span<const SubProperty> sub_properties_of(Category c);

/// Machine keys used in documents and on the command line
/// ("no_fp", "adversarial_robustness", "faithfulness", ...).
std::string_view key(SubProperty s);
std::string_view key(Category c);
std::optional<SubProperty> sub_property_from_key(std::string_view k);
std::optional<Category> category_from_key(std::string_view k);

/// Human-readable labels for tables.
std::string_view display_name(SubProperty s);
std::string_view display_name(Category c);

// ---------------------------------------------------------------------------
// Legal strength

enum class Strength : std::uint8_t { Mandatory, Optional, Partial, NotRequired };

/// Strength factor: 1.0, 0.75, 0.5 and 0.0 respectively.
constexpr double lambda_of(Strength s) {
    switch (s) {
    case Strength::Mandatory: return 1.0;
    case Strength::Optional: return 0.75;
    case Strength::Partial: return 0.5;
    case Strength::NotRequired: return 0.0;
    }
    return 0.0;
}

std::string_view key(Strength s);
std::optional<Strength> strength_from_key(std::string_view k);

struct RequirementStrength {
    Strength level = Strength::NotRequired;
    std::string qualifier;  // e.g. "reasonable"; empty when absent

    double lambda() const { return lambda_of(level); }
    bool required() const { return level != Strength::NotRequired; }

    bool operator==(const RequirementStrength&) const = default;
};

// ---------------------------------------------------------------------------
// Raw scores

/// Expert rating on the 1..5 scale.
class RawScore {
public:
    static constexpr int kMin = 1;
    static constexpr int kMax = 5;

    explicit RawScore(int value);

    int value() const { return value_; }

    auto operator<=>(const RawScore&) const = default;

private:
    int value_;
};

/// Maps a raw score onto [0,1] as raw/5.
inline double normalize(RawScore raw) { return raw.value() / 5.0; }

/// Range-checked overload; throws DomainError outside 1..5.
double normalize(int raw);

// ---------------------------------------------------------------------------
// Scope / stage descriptors

enum class Scope : std::uint8_t { Local = 1, Global = 2 };
enum class Stage : std::uint8_t { ExAnte = 1, ExPost = 2 };

std::string_view key(Scope s);
std::string_view key(Stage s);
std::optional<Scope> scope_from_key(std::string_view k);
std::optional<Stage> stage_from_key(std::string_view k);

/// Non-empty subset of a two-valued descriptor vocabulary.
template <typename E>
class DescriptorSet {
public:
    DescriptorSet(std::initializer_list<E> items) {
        for (E e : items) bits_ |= static_cast<std::uint8_t>(e);
        if (bits_ == 0) throw DomainError("descriptor set must not be empty");
    }

    static DescriptorSet both() { return DescriptorSet(kAll); }

    bool contains(E e) const { return (bits_ & static_cast<std::uint8_t>(e)) != 0; }
    bool intersects(const DescriptorSet& other) const { return (bits_ & other.bits_) != 0; }
    bool is_both() const { return bits_ == kAll; }

    bool operator==(const DescriptorSet&) const = default;

private:
    static constexpr std::uint8_t kAll = 3;
    explicit DescriptorSet(std::uint8_t bits) : bits_(bits) {}
    std::uint8_t bits_ = 0;
};

using ScopeSet = DescriptorSet<Scope>;
using StageSet = DescriptorSet<Stage>;

inline constexpr std::array<Scope, 2> kScopes{Scope::Local, Scope::Global};
inline constexpr std::array<Stage, 2> kStages{Stage::ExAnte, Stage::ExPost};

}  // namespace xaic

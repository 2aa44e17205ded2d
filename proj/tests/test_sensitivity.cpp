#include <doctest.h>

#include <cmath>
#include <set>

#include "support/generators.hpp"
#include "support/naive_oracle.hpp"
#include "xaic/sensitivity.hpp"

using namespace xaic;

namespace {

const Dataset& data() { return builtin_dataset(); }
const std::vector<MethodProfile>& catalog() { return data().methods.methods; }
const std::vector<RegulationProfile>& regulations() { return data().regulations.regulations; }

const SensitivityReport& builtin_report() {
    static const SensitivityReport report = sweep(catalog(), regulations());
    return report;
}

std::size_t index_of_delta(const SensitivityReport& r, double delta) {
    for (std::size_t i = 0; i < r.deltas.size(); ++i) {
        if (std::abs(r.deltas[i] - delta) < 1e-12) return i;
    }
    FAIL("delta not on grid");
    return 0;
}

// Non-constant (provision, category) pairs over the default grid when
// not-required sub-properties are either kept at lambda 0 (and shifted with
// the others) or dropped from the category before shifting.
std::set<std::pair<std::string, int>> varying_pairs(bool keep_not_required) {
    std::set<std::pair<std::string, int>> out;
    const DeltaGrid grid;
    for (const auto& p : oracle::provisions()) {
        for (int c = 0; c < 3; ++c) {
            if (!oracle::category_required(p.lambda, c)) continue;
            for (const auto& m : oracle::methods()) {
                double lo = 2.0;
                double hi = -1.0;
                for (double d : grid.points()) {
                    double num = 0.0;
                    double den = 0.0;
                    for (int s = oracle::kFirst[c]; s < oracle::kFirst[c + 1]; ++s) {
                        if (!keep_not_required && p.lambda[s] == 0.0) continue;
                        const double l = std::min(std::max(p.lambda[s] + d, 0.0), 1.0);
                        num += l * m.scores[s] / 5.0;
                        den += l;
                    }
                    lo = std::min(lo, num / den);
                    hi = std::max(hi, num / den);
                }
                if (hi - lo > 1e-12) out.insert({p.id, c});
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("clamp_lambda") {
    CHECK(clamp_lambda(1.0, 0.2) == 1.0);
    CHECK(clamp_lambda(0.5, -0.2) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(clamp_lambda(0.0, -0.1) == 0.0);
    CHECK(clamp_lambda(0.75, 0.0) == 0.75);
}

TEST_CASE("default grid has 41 points including an exact zero") {
    const DeltaGrid grid;
    const auto pts = grid.points();
    REQUIRE(pts.size() == 41);
    CHECK(pts.front() == -0.2);
    CHECK(pts.back() == 0.2);
    CHECK(pts[20] == 0.0);
    CHECK(grid.zero_index() == 20);
    CHECK(pts[1] == doctest::Approx(-0.19).epsilon(1e-12));
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS((DeltaGrid{0.1, 0.2, 5}.validate()), DomainError);
    CHECK_THROWS_AS((DeltaGrid{-0.2, -0.1, 5}.validate()), DomainError);
    CHECK_THROWS_AS((DeltaGrid{-0.2, 0.1, 3}.validate()), DomainError);  // skips 0
    CHECK_THROWS_AS((DeltaGrid{-0.2, 0.2, 1}.validate()), DomainError);
    CHECK_THROWS_AS((DeltaGrid{-0.2, 0.2, 0}.validate()), DomainError);
    CHECK_NOTHROW((DeltaGrid{-0.0, 0.0, 1}.validate()));
    CHECK_NOTHROW((DeltaGrid{-0.3, 0.1, 5}.validate()));
    CHECK(DeltaGrid{-0.0, 0.0, 1}.points() == std::vector<double>{0.0});
}

TEST_CASE("sweep reproduces hand-evaluated points") {
    const auto& rep = builtin_report();
    const auto& anchors = rep.at("Anchors", "art86", Target::Robustness);
    CHECK(anchors[index_of_delta(rep, 0.2)] ==
          doctest::Approx((1.0 * 0.2 + 0.7 * 0.6) / 1.7).epsilon(1e-12));
    const auto& shap = rep.at("SHAP", "art13-14", Target::Faithfulness);
    CHECK(shap[index_of_delta(rep, -0.2)] ==
          doctest::Approx((0.55 * 1.0 + 0.8 * 1.0 + 0.55 * 0.6) / 1.9).epsilon(1e-12));
}

TEST_CASE("sweep at delta 0 equals the unperturbed scores bit for bit") {
    const auto& rep = builtin_report();
    const std::size_t z = rep.grid.zero_index();
    for (const auto& r : regulations()) {
        for (const auto& m : catalog()) {
            const auto res = compliance_score(m, r);
            for (Target t : targets_for(r)) {
                CHECK(rep.at(m.name, r.id, t)[z] == target_score(res, t));
            }
        }
    }
}

TEST_CASE("sweep matches the oracle at every grid point") {
    const auto& rep = builtin_report();
    for (const auto& om : oracle::methods()) {
        for (const auto& op : oracle::provisions()) {
            const auto& overall = rep.at(om.name, op.id, Target::Overall);
            for (std::size_t i = 0; i < rep.deltas.size(); ++i) {
                CHECK(std::abs(overall[i] - oracle::overall(om, op, rep.deltas[i])) <= 1e-12);
            }
        }
    }
}

TEST_CASE("constancy flags on the built-in data") {
    const auto& c = builtin_report().constancy;
    CHECK(c.size() == 8);
    CHECK(c.at({"art11-annex4", Category::Faithfulness}));
    CHECK(c.at({"art11-annex4", Category::Robustness}));
    CHECK(c.at({"art13-14", Category::Robustness}));
    CHECK_FALSE(c.at({"art86", Category::Faithfulness}));
    CHECK_FALSE(c.at({"art86", Category::Robustness}));
    CHECK_FALSE(c.at({"art86", Category::Complexity}));
    CHECK_FALSE(c.at({"art13-14", Category::Faithfulness}));
    CHECK_FALSE(c.at({"art11-annex4", Category::Complexity}));
}

TEST_CASE("only keeping not-required sub-properties at lambda 0 yields the five varying pairs") {
    const std::set<std::pair<std::string, int>> expected{
        {"art86", 0}, {"art86", 1}, {"art86", 2}, {"art13-14", 0}, {"art11-annex4", 2}};
    CHECK(varying_pairs(true) == expected);
    const std::set<std::pair<std::string, int>> dropped{{"art86", 1}, {"art13-14", 0}};
    CHECK(varying_pairs(false) == dropped);
}

TEST_CASE("rankings for the five varying category pairs stay stable") {
    const auto& v = builtin_report().ranking_stable;
    CHECK(v.at({"art86", Target::Faithfulness}).stable);
    CHECK(v.at({"art86", Target::Robustness}).stable);
    CHECK(v.at({"art86", Target::Complexity}).stable);
    CHECK(v.at({"art13-14", Target::Faithfulness}).stable);
    CHECK(v.at({"art11-annex4", Target::Complexity}).stable);
    CHECK(v.at({"art11-annex4", Target::Overall}).stable);
}

TEST_CASE("overall rankings of Art. 86 and Arts. 13-14 reorder within the grid") {
    const auto& v = builtin_report().ranking_stable;
    const auto& art86 = v.at({"art86", Target::Overall});
    REQUIRE_FALSE(art86.stable);
    // Anchors leads RuleSHAP by 1/90 at delta 0; the gap closes between
    // +0.07 and +0.08.
    CHECK(art86.swap->above == "Anchors");
    CHECK(art86.swap->below == "RuleSHAP");
    CHECK(art86.swap->delta == doctest::Approx(0.08).epsilon(1e-12));

    // ICE and DiCE tie at 0.61 for delta 0 and part in opposite directions.
    const auto& art13 = v.at({"art13-14", Target::Overall});
    REQUIRE_FALSE(art13.stable);
    CHECK(art13.swap->delta == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(std::set<std::string>{art13.swap->above, art13.swap->below} ==
          std::set<std::string>{"DiCE", "ICE"});

    REQUIRE(builtin_report().first_divergence.has_value());
    CHECK(builtin_report().first_divergence->regulation == "art13-14");
}

TEST_CASE("a partial-strength advantage can be reversed by negative delta") {
    // A wins only through the two partial sub-properties. The strict order
    // flips where (1+d)(-0.6) + (0.5+d)(1.4) = 0, i.e. d = -0.125.
    RegulationProfile r{"crafted", "Crafted", {}, ScopeSet::both(), StageSet::both()};
    r.requirements[index_of(SubProperty::NoFalsePositives)].level = Strength::Mandatory;
    r.requirements[index_of(SubProperty::NoFalseNegatives)].level = Strength::Partial;
    r.requirements[index_of(SubProperty::Completeness)].level = Strength::Partial;

    auto profile = [](std::string name, int fp, int fn, int comp) {
        MethodProfile m{std::move(name), {}, ScopeSet::both(), StageSet::both(), {}};
        m.scores.fill(RawScore(3));
        m.scores[index_of(SubProperty::NoFalsePositives)] = RawScore(fp);
        m.scores[index_of(SubProperty::NoFalseNegatives)] = RawScore(fn);
        m.scores[index_of(SubProperty::Completeness)] = RawScore(comp);
        return m;
    };
    const std::vector<MethodProfile> cat{profile("A", 2, 5, 5), profile("B", 5, 1, 2)};

    // Oracle: direct evaluation at the grid endpoints and at zero.
    CHECK(compliance_score(cat[0], r).overall == doctest::Approx(1.4 / 2.0).epsilon(1e-12));
    CHECK(compliance_score(cat[1], r).overall == doctest::Approx(1.3 / 2.0).epsilon(1e-12));
    const auto lam = perturbed_lambdas(r, -0.2);
    CHECK(compliance_score(cat[0], r, lam).overall == doctest::Approx(0.92 / 1.4).epsilon(1e-12));
    CHECK(compliance_score(cat[1], r, lam).overall == doctest::Approx(0.98 / 1.4).epsilon(1e-12));

    const std::vector<RegulationProfile> regs{r};
    const auto rep = sweep(cat, regs);
    const auto& v = rep.ranking_stable.at({"crafted", Target::Overall});
    REQUIRE_FALSE(v.stable);
    CHECK(v.swap->delta == doctest::Approx(-0.13).epsilon(1e-12));
    CHECK(v.swap->above == "A");
    CHECK(v.swap->below == "B");
    REQUIRE(rep.first_divergence.has_value());
    CHECK(rep.first_divergence->delta == doctest::Approx(-0.13).epsilon(1e-12));
}

TEST_CASE("a single-method catalog is always stable") {
    const std::vector<MethodProfile> one{data().methods.at("Anchors")};
    const auto rep = sweep(one, regulations());
    for (const auto& [k, v] : rep.ranking_stable) CHECK(v.stable);
    CHECK_FALSE(rep.first_divergence.has_value());
}

TEST_CASE("degenerate grid makes every series constant") {
    const auto rep = sweep(catalog(), regulations(), DeltaGrid{-0.0, 0.0, 1});
    CHECK(rep.deltas.size() == 1);
    for (const auto& [k, s] : rep.series) CHECK(s.size() == 1);
    for (const auto& [k, constant] : rep.constancy) CHECK(constant);
}

TEST_CASE("every series has one entry per grid point") {
    const auto& rep = builtin_report();
    for (const auto& [k, s] : rep.series) CHECK(s.size() == rep.deltas.size());
    CHECK(rep.series.size() == 10 * (4 + 3 + 4));
}

TEST_CASE("uniform equal factors cancel out") {
    gen::Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        RegulationProfile r{"u", "U", {}, ScopeSet::both(), StageSet::both()};
        const auto level = gen::coin(rng) ? Strength::Mandatory : Strength::Partial;
        for (auto& req : r.requirements) req.level = level;
        const auto m = gen::method(rng, "m", 0.1);
        const std::vector<MethodProfile> cat{m};
        const std::vector<RegulationProfile> regs{r};
        const auto rep = sweep(cat, regs);
        for (Category c : kCategories) CHECK(rep.constancy.at({"u", c}));
    }
}

TEST_CASE("not-required factors stay at zero for negative delta") {
    for (const auto& r : regulations()) {
        for (double d : DeltaGrid{}.points()) {
            if (d > 0.0) continue;
            const auto lam = perturbed_lambdas(r, d);
            for (SubProperty s : kSubProperties) {
                if (!r.requirement(s).required()) CHECK(lam[index_of(s)] == 0.0);
            }
        }
    }
    // Art. 11 complexity (sparsity 0, level of detail 1) is constant for d <= 0.
    const auto& rep = builtin_report();
    for (const auto& m : catalog()) {
        const auto& s = rep.at(m.name, "art11-annex4", Target::Complexity);
        for (std::size_t i = 0; i <= rep.grid.zero_index(); ++i) {
            CHECK(std::abs(s[i] - s.front()) <= kConstancyTolerance);
        }
    }
}

TEST_CASE("a grid that zeroes a required category raises a vacuous error") {
    const std::vector<RegulationProfile> regs{data().regulations.at("art86")};
    try {
        sweep(catalog(), regs, DeltaGrid{-1.0, 0.0, 11});
        FAIL("expected SweepVacuousError");
    } catch (const SweepVacuousError& e) {
        CHECK(e.regulation() == "art86");
        CHECK(e.delta() == -1.0);
    }
}

TEST_CASE("inadmissible methods have zero overall series but category series") {
    const auto& rep = builtin_report();
    for (double v : rep.at("PDP", "art86", Target::Overall)) CHECK(v == 0.0);
    CHECK(rep.at("PDP", "art86", Target::Robustness)[rep.grid.zero_index()] > 0.0);
    CHECK_FALSE(rep.admissible.at({"PDP", "art86"}));
}

// Randomized checks of the scoring invariants: boundedness, monotonicity in
// required scores, zero reward for silence, cardinality neutrality and the
// admissibility gate.
#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "support/generators.hpp"
#include "xaic/scoring.hpp"

namespace props {

struct Result {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::string first_failure;

    void fail(const std::string& what) {
        if (failures++ == 0) first_failure = what;
    }
    bool ok() const { return failures == 0; }
};

inline bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

inline Result boundedness(gen::Rng& rng, int cases) {
    Result r{"boundedness"};
    for (int i = 0; i < cases; ++i, ++r.cases) {
        const auto m = gen::method(rng, "m", 0.2);
        const auto reg = gen::regulation(rng, "r");
        const auto res = xaic::compliance_score(m, reg);
        bool ok = in_unit(res.overall);
        for (const auto& [c, w] : res.category_weights) ok = ok && in_unit(w);
        if (!ok) r.fail("case " + std::to_string(i));
    }
    return r;
}

inline Result monotonicity(gen::Rng& rng, int cases) {
    Result r{"required-score monotonicity"};
    for (int i = 0; i < cases; ++i, ++r.cases) {
        const auto reg = gen::regulation(rng, "r");
        auto m = gen::method(rng, "m", 0.2);
        const auto s = xaic::kSubProperties[static_cast<std::size_t>(gen::uniform_int(rng, 0, 6))];
        auto& slot = m.scores[xaic::index_of(s)];
        if (slot && slot->value() == 5) slot = xaic::RawScore(gen::uniform_int(rng, 1, 4));
        const auto before = xaic::compliance_score(m, reg);
        const int floor = slot ? slot->value() : 0;
        slot = xaic::RawScore(gen::uniform_int(rng, floor + 1, 5));
        const auto after = xaic::compliance_score(m, reg);

        const bool weighted = reg.requirement(s).lambda() > 0.0;
        bool ok = true;
        for (const auto& [c, w] : before.category_weights) {
            const double w2 = after.category_weights.at(c);
            ok = ok && (weighted ? w2 >= w : w2 == w);
        }
        ok = ok && (weighted ? after.overall >= before.overall : after.overall == before.overall);
        if (!ok) r.fail("case " + std::to_string(i) + " sub-property " + std::string(xaic::key(s)));
    }
    return r;
}

inline Result zero_for_silence(gen::Rng& rng, int cases) {
    Result r{"zero reward for silence"};
    for (int i = 0; i < cases; ++i, ++r.cases) {
        auto m = gen::method(rng, "silent", 1.0);
        const auto reg = gen::regulation(rng, "r");
        if (xaic::compliance_score(m, reg).overall != 0.0) r.fail("case " + std::to_string(i));
    }
    return r;
}

// Two provisions differing only in how many sub-properties of one category
// they require; a method scoring v on every required sub-property gets v.
inline Result cardinality_neutrality(gen::Rng& rng, int cases) {
    Result r{"cardinality neutrality"};
    for (int i = 0; i < cases; ++i, ++r.cases) {
        const auto cat = xaic::kCategories[static_cast<std::size_t>(gen::uniform_int(rng, 0, 2))];
        const auto subs = xaic::sub_properties_of(cat);
        const int raw = gen::uniform_int(rng, 1, 5);
        const double v = raw / 5.0;

        auto make = [&](std::size_t count) {
            xaic::RegulationProfile reg{"r" + std::to_string(count), "R", {},
                                        xaic::ScopeSet::both(), xaic::StageSet::both()};
            for (std::size_t k = 0; k < count; ++k) {
                reg.requirements[xaic::index_of(subs[k])].level =
                    gen::coin(rng) ? xaic::Strength::Mandatory : xaic::Strength::Optional;
            }
            return reg;
        };
        const auto one = make(1);
        const auto all = make(subs.size());

        auto m = gen::method(rng, "m");
        for (auto s : subs) m.scores[xaic::index_of(s)] = xaic::RawScore(raw);

        const double w1 = xaic::category_weight(m, one, cat);
        const double w2 = xaic::category_weight(m, all, cat);
        if (std::abs(w1 - v) > 1e-12 || std::abs(w2 - v) > 1e-12) {
            std::ostringstream ss;
            ss << "case " << i << ": v=" << v << " got " << w1 << " and " << w2;
            r.fail(ss.str());
        }
    }
    return r;
}

inline Result admissibility_gate(gen::Rng& rng, int cases) {
    Result r{"admissibility gate"};
    for (int i = 0; i < cases; ++i, ++r.cases) {
        auto m = gen::method(rng, "m");
        const auto reg = gen::regulation(rng, "r");
        const auto res = xaic::compliance_score(m, reg);
        const bool fit = m.scope.intersects(reg.scope) && m.stage.intersects(reg.stage);
        if (res.admissible != fit || (!fit && res.overall != 0.0)) {
            r.fail("case " + std::to_string(i));
        }
    }
    return r;
}

inline std::vector<Result> run_all(std::uint64_t seed, int cases) {
    gen::Rng rng(seed);
    return {boundedness(rng, cases), monotonicity(rng, cases), zero_for_silence(rng, cases),
            cardinality_neutrality(rng, cases), admissibility_gate(rng, cases)};
}

}  // namespace props

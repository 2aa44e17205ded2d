// Built-in dataset. Scores are expert ratings on a 1..5 scale; scope/stage
// descriptors drive the procedural-fit gate.
#include "xaic/catalog.hpp"

namespace xaic {

namespace {

constexpr std::string_view kMethods = R"({
  "format_version": "1",
  "methods": [
    {"name": "Decision Trees",
     "scores": {"no_fp": 2, "no_fn": 3, "completeness": 3, "stability": 1,
                "adversarial_robustness": 2, "sparsity": 3, "level_of_detail": 5},
     "scope": ["local", "global"], "stage": ["both"]},
    {"name": "RuleFit",
     "scores": {"no_fp": 3, "no_fn": 3, "completeness": 4, "stability": 3,
                "adversarial_robustness": 3, "sparsity": 2, "level_of_detail": 4},
     "scope": ["local", "global"], "stage": ["both"]},
    {"name": "RuleSHAP",
     "scores": {"no_fp": 4, "no_fn": 4, "completeness": 4, "stability": 3,
                "adversarial_robustness": 3, "sparsity": 3, "level_of_detail": 4},
     "scope": ["local", "global"], "stage": ["both"]},
    {"name": "PDP",
     "scores": {"no_fp": 3, "no_fn": 3, "completeness": 3, "stability": 4,
                "adversarial_robustness": 3, "sparsity": 2, "level_of_detail": 4},
     "scope": ["global"], "stage": ["ex-ante"]},
    {"name": "ICE",
     "scores": {"no_fp": 3, "no_fn": 4, "completeness": 2, "stability": 3,
                "adversarial_robustness": 3, "sparsity": 2, "level_of_detail": 4},
     "scope": ["local", "global"], "stage": ["both"]},
    {"name": "LIME",
     "scores": {"no_fp": 2, "no_fn": 2, "completeness": 2, "stability": 1,
                "adversarial_robustness": 1, "sparsity": 3, "level_of_detail": 2},
     "scope": ["local"], "stage": ["ex-post"]},
    {"name": "SHAP",
     "scores": {"no_fp": 5, "no_fn": 5, "completeness": 3, "stability": 4,
                "adversarial_robustness": 4, "sparsity": 3, "level_of_detail": 3},
     "scope": ["local", "global"], "stage": ["both"]},
    {"name": "Anchors",
     "scores": {"no_fp": 4, "no_fn": 3, "completeness": 3, "stability": 1,
                "adversarial_robustness": 3, "sparsity": 5, "level_of_detail": 3},
     "scope": ["local"], "stage": ["ex-post"]},
    {"name": "CEM",
     "scores": {"no_fp": 5, "no_fn": 3, "completeness": 4, "stability": 1,
                "adversarial_robustness": 4, "sparsity": 4, "level_of_detail": 3},
     "scope": ["local"], "stage": ["ex-post"]},
    {"name": "DiCE",
     "scores": {"no_fp": 5, "no_fn": 3, "completeness": 3, "stability": 1,
                "adversarial_robustness": 4, "sparsity": 4, "level_of_detail": 3},
     "scope": ["local"], "stage": ["ex-post"]}
  ]
}
)";

constexpr std::string_view kRegulations = R"({
  "format_version": "1",
  "regulations": [
    {"id": "art86", "label": "Art. 86",
     "requirements": {
       "no_fp": {"strength": "mandatory"},
       "no_fn": {"strength": "mandatory"},
       "completeness": {"strength": "not_required"},
       "stability": {"strength": "mandatory"},
       "adversarial_robustness": {"strength": "partial"},
       "sparsity": {"strength": "mandatory"},
       "level_of_detail": {"strength": "not_required"}},
     "scope": ["local"], "stage": ["ex-post"]},
    {"id": "art13-14", "label": "Arts. 13-14",
     "requirements": {
       "no_fp": {"strength": "optional", "qualifier": "preferable"},
       "no_fn": {"strength": "mandatory"},
       "completeness": {"strength": "optional", "qualifier": "reasonable"},
       "stability": {"strength": "mandatory"},
       "adversarial_robustness": {"strength": "mandatory"},
       "sparsity": {"strength": "not_required"},
       "level_of_detail": {"strength": "not_required"}},
     "scope": ["both"], "stage": ["both"]},
    {"id": "art11-annex4", "label": "Art. 11 & Annex IV",
     "requirements": {
       "no_fp": {"strength": "mandatory"},
       "no_fn": {"strength": "mandatory"},
       "completeness": {"strength": "mandatory"},
       "stability": {"strength": "mandatory"},
       "adversarial_robustness": {"strength": "mandatory"},
       "sparsity": {"strength": "not_required"},
       "level_of_detail": {"strength": "mandatory"}},
     "scope": ["global"], "stage": ["ex-ante"]}
  ]
}
)";

}  // namespace

std::string_view builtin_methods_text() { return kMethods; }
std::string_view builtin_regulations_text() { return kRegulations; }

const Dataset& builtin_dataset() {
    static const Dataset dataset{parse_method_catalog(kMethods),
                                 parse_regulation_set(kRegulations)};
    return dataset;
}

}  // namespace xaic

#include "xaic/catalog.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace xaic {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string join_diagnostics(const std::vector<Diagnostic>& diags) {
    std::string out = "invalid document";
    for (const auto& d : diags) out += "\n  " + d.str();
    return out;
}

std::string index_path(const std::string& base, std::size_t i) {
    return base + "[" + std::to_string(i) + "]";
}

std::string field_path(const std::string& base, std::string_view field) {
    return base.empty() ? std::string(field) : base + "." + std::string(field);
}

const char* type_name(const json& v) { return v.type_name(); }

json parse_text(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // Convert the byte offset into a 1-based line/column.
        const std::size_t byte = std::min<std::size_t>(e.byte, text.size() + 1);
        std::size_t line = 1;
        std::size_t column = 1;
        for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string detail = e.what();
        if (auto pos = detail.find("syntax error"); pos != std::string::npos) {
            detail = detail.substr(pos);
        }
        throw ParseError(line, column, detail);
    }
}

class Checker {
public:
    std::vector<Diagnostic> errors;
    std::vector<Diagnostic> warnings;

    void error(std::string path, std::string message) {
        errors.push_back({std::move(path), std::move(message)});
    }

    // Reports unknown and missing fields. Returns false if `v` is not an object.
    bool object_fields(const json& v, const std::string& path,
                       std::initializer_list<std::string_view> required,
                       std::initializer_list<std::string_view> optional = {}) {
        if (!v.is_object()) {
            error(path, std::string("expected object, found ") + type_name(v));
            return false;
        }
        for (const auto& [k, _] : v.items()) {
            const bool known =
                std::find(required.begin(), required.end(), k) != required.end() ||
                std::find(optional.begin(), optional.end(), k) != optional.end();
            if (!known) error(field_path(path, k), "unknown field");
        }
        for (std::string_view k : required) {
            if (!v.contains(std::string(k))) error(field_path(path, k), "missing required field");
        }
        return true;
    }

    std::optional<std::string> string_field(const json& v, const std::string& path,
                                            bool allow_empty = false) {
        if (!v.is_string()) {
            error(path, std::string("expected string, found ") + type_name(v));
            return std::nullopt;
        }
        auto s = v.get<std::string>();
        if (s.empty() && !allow_empty) {
            error(path, "must not be empty");
            return std::nullopt;
        }
        return s;
    }

    void format_version(const json& root) {
        if (!root.contains("format_version")) return;
        auto v = string_field(root["format_version"], "format_version");
        if (v && *v != kFormatVersion) {
            error("format_version", "unsupported format version '" + *v + "' (expected '" +
                                        std::string(kFormatVersion) + "')");
        }
    }

    template <typename E, typename FromKey>
    std::optional<DescriptorSet<E>> descriptor(const json& v, const std::string& path,
                                               FromKey from_key, std::string_view vocabulary) {
        std::vector<json> items;
        if (v.is_string()) {
            items.push_back(v);
        } else if (v.is_array()) {
            items.assign(v.begin(), v.end());
        } else {
            error(path, std::string("expected array of strings, found ") + type_name(v));
            return std::nullopt;
        }
        if (items.empty()) {
            error(path, "must not be empty");
            return std::nullopt;
        }
        std::vector<E> values;
        bool both = false;
        bool ok = true;
        for (std::size_t i = 0; i < items.size(); ++i) {
            const auto p = v.is_array() ? index_path(path, i) : path;
            if (!items[i].is_string()) {
                error(p, std::string("expected string, found ") + type_name(items[i]));
                ok = false;
                continue;
            }
            const auto s = items[i].get<std::string>();
            if (s == "both") {
                both = true;
            } else if (auto e = from_key(s)) {
                values.push_back(*e);
            } else {
                error(p, "unknown value '" + s + "' (expected " + std::string(vocabulary) + ")");
                ok = false;
            }
        }
        if (!ok) return std::nullopt;
        if (both || values.empty()) return DescriptorSet<E>::both();
        DescriptorSet<E> set{values.front()};
        for (E e : values) {
            if (!set.contains(e)) set = DescriptorSet<E>::both();
        }
        return set;
    }
};

std::optional<MethodProfile> read_method(Checker& ck, const json& v, const std::string& path) {
    if (!ck.object_fields(v, path, {"name", "scores", "scope", "stage"}, {"notes"})) {
        return std::nullopt;
    }
    const std::size_t errors_before = ck.errors.size();

    std::optional<std::string> name;
    if (v.contains("name")) name = ck.string_field(v["name"], field_path(path, "name"));

    std::array<std::optional<RawScore>, kSubPropertyCount> scores{};
    if (v.contains("scores")) {
        const auto sp = field_path(path, "scores");
        const json& s = v["scores"];
        if (ck.object_fields(s, sp, {"no_fp", "no_fn", "completeness", "stability",
                                     "adversarial_robustness", "sparsity", "level_of_detail"})) {
            for (SubProperty sub : kSubProperties) {
                const std::string k{key(sub)};
                if (!s.contains(k)) continue;
                const json& x = s[k];
                const auto xp = field_path(sp, k);
                if (x.is_string() && x.get<std::string>() == kUnreported) {
                    ck.warnings.push_back({xp, "score unreported; contributes 0 to the weight"});
                } else if (x.is_number_integer()) {
                    const auto raw = x.get<long long>();
                    if (raw < RawScore::kMin || raw > RawScore::kMax) {
                        ck.error(xp, "score " + std::to_string(raw) + " out of range [1, 5]");
                    } else {
                        scores[index_of(sub)] = RawScore(static_cast<int>(raw));
                    }
                } else {
                    ck.error(xp, std::string("expected integer 1..5 or \"") +
                                     std::string(kUnreported) + "\", found " + x.dump());
                }
            }
        }
    }

    std::optional<ScopeSet> scope;
    if (v.contains("scope")) {
        scope = ck.descriptor<Scope>(v["scope"], field_path(path, "scope"), scope_from_key,
                                     "local, global or both");
    }
    std::optional<StageSet> stage;
    if (v.contains("stage")) {
        stage = ck.descriptor<Stage>(v["stage"], field_path(path, "stage"), stage_from_key,
                                     "ex-ante, ex-post or both");
    }

    std::map<SubProperty, std::string> notes;
    if (v.contains("notes")) {
        const auto np = field_path(path, "notes");
        const json& n = v["notes"];
        if (!n.is_object()) {
            ck.error(np, std::string("expected object, found ") + type_name(n));
        } else {
            for (const auto& [k, text] : n.items()) {
                auto sub = sub_property_from_key(k);
                if (!sub) {
                    ck.error(field_path(np, k), "unknown sub-property");
                    continue;
                }
                if (auto t = ck.string_field(text, field_path(np, k), true)) notes[*sub] = *t;
            }
        }
    }

    if (ck.errors.size() != errors_before || !name || !scope || !stage) return std::nullopt;
    return MethodProfile{*name, scores, *scope, *stage, std::move(notes)};
}

std::optional<RegulationProfile> read_regulation(Checker& ck, const json& v,
                                                 const std::string& path) {
    if (!ck.object_fields(v, path, {"id", "label", "requirements", "scope", "stage"})) {
        return std::nullopt;
    }
    const std::size_t errors_before = ck.errors.size();

    std::optional<std::string> id;
    if (v.contains("id")) id = ck.string_field(v["id"], field_path(path, "id"));
    std::optional<std::string> label;
    if (v.contains("label")) label = ck.string_field(v["label"], field_path(path, "label"));

    std::array<RequirementStrength, kSubPropertyCount> reqs{};
    if (v.contains("requirements")) {
        const auto rp = field_path(path, "requirements");
        const json& rq = v["requirements"];
        if (ck.object_fields(rq, rp, {"no_fp", "no_fn", "completeness", "stability",
                                      "adversarial_robustness", "sparsity", "level_of_detail"})) {
            for (SubProperty sub : kSubProperties) {
                const std::string k{key(sub)};
                if (!rq.contains(k)) continue;
                const auto xp = field_path(rp, k);
                const json& x = rq[k];
                if (!ck.object_fields(x, xp, {"strength"}, {"qualifier"})) continue;
                if (x.contains("strength")) {
                    if (auto s = ck.string_field(x["strength"], field_path(xp, "strength"))) {
                        if (auto level = strength_from_key(*s)) {
                            reqs[index_of(sub)].level = *level;
                        } else {
                            ck.error(field_path(xp, "strength"),
                                     "unknown strength '" + *s +
                                         "' (expected mandatory, optional, partial or "
                                         "not_required)");
                        }
                    }
                }
                if (x.contains("qualifier")) {
                    if (auto q = ck.string_field(x["qualifier"], field_path(xp, "qualifier"))) {
                        reqs[index_of(sub)].qualifier = *q;
                    }
                }
            }
        }
    }

    std::optional<ScopeSet> scope;
    if (v.contains("scope")) {
        scope = ck.descriptor<Scope>(v["scope"], field_path(path, "scope"), scope_from_key,
                                     "local, global or both");
    }
    std::optional<StageSet> stage;
    if (v.contains("stage")) {
        stage = ck.descriptor<Stage>(v["stage"], field_path(path, "stage"), stage_from_key,
                                     "ex-ante, ex-post or both");
    }

    if (ck.errors.size() != errors_before || !id || !label || !scope || !stage) {
        return std::nullopt;
    }
    return RegulationProfile{*id, *label, reqs, *scope, *stage};
}

template <typename Record, typename Reader>
std::vector<Record> read_array(Checker& ck, const json& root, const char* field, Reader reader) {
    std::vector<Record> out;
    if (!root.contains(field)) return out;
    const json& arr = root[field];
    if (!arr.is_array()) {
        ck.error(field, std::string("expected array, found ") + type_name(arr));
        return out;
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (auto rec = reader(ck, arr[i], index_path(field, i))) out.push_back(std::move(*rec));
    }
    return out;
}

template <typename E, std::size_t N>
ordered_json descriptor_json(const DescriptorSet<E>& set, const std::array<E, N>& vocabulary) {
    ordered_json arr = ordered_json::array();
    for (E e : vocabulary) {
        if (set.contains(e)) arr.push_back(std::string(key(e)));
    }
    return arr;
}

std::string dump(const ordered_json& j) {
    return j.dump(2, ' ', false, json::error_handler_t::strict) + "\n";
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& detail)
    : Error("parse error at line " + std::to_string(line) + ", column " +
            std::to_string(column) + ": " + detail),
      line_(line),
      column_(column) {}

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : Error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

const MethodProfile* MethodCatalogDocument::find(std::string_view name) const {
    auto it = std::find_if(methods.begin(), methods.end(),
                           [&](const MethodProfile& m) { return m.name == name; });
    return it == methods.end() ? nullptr : &*it;
}

const MethodProfile& MethodCatalogDocument::at(std::string_view name) const {
    if (const auto* m = find(name)) return *m;
    throw Error("unknown method '" + std::string(name) + "'");
}

const RegulationProfile* RegulationSetDocument::find(std::string_view id) const {
    auto it = std::find_if(regulations.begin(), regulations.end(),
                           [&](const RegulationProfile& r) { return r.id == id; });
    return it == regulations.end() ? nullptr : &*it;
}

const RegulationProfile& RegulationSetDocument::at(std::string_view id) const {
    if (const auto* r = find(id)) return *r;
    throw Error("unknown regulation '" + std::string(id) + "'");
}

std::vector<Diagnostic> validate(const MethodCatalogDocument& doc) {
    std::vector<Diagnostic> out;
    if (doc.format_version != kFormatVersion) {
        out.push_back({"format_version", "unsupported format version '" + doc.format_version + "'"});
    }
    if (doc.methods.empty()) out.push_back({"methods", "catalog contains no methods"});
    std::set<std::string> seen;
    for (std::size_t i = 0; i < doc.methods.size(); ++i) {
        const auto& m = doc.methods[i];
        const auto p = field_path(index_path("methods", i), "name");
        if (m.name.empty()) out.push_back({p, "must not be empty"});
        if (!seen.insert(m.name).second) {
            out.push_back({p, "duplicate method name '" + m.name + "'"});
        }
    }
    return out;
}

std::vector<Diagnostic> validate(const RegulationSetDocument& doc) {
    std::vector<Diagnostic> out;
    if (doc.format_version != kFormatVersion) {
        out.push_back({"format_version", "unsupported format version '" + doc.format_version + "'"});
    }
    if (doc.regulations.empty()) out.push_back({"regulations", "set contains no regulations"});
    std::set<std::string> seen;
    for (std::size_t i = 0; i < doc.regulations.size(); ++i) {
        const auto& r = doc.regulations[i];
        const auto base = index_path("regulations", i);
        if (r.id.empty()) out.push_back({field_path(base, "id"), "must not be empty"});
        if (r.label.empty()) out.push_back({field_path(base, "label"), "must not be empty"});
        if (!seen.insert(r.id).second) {
            out.push_back({field_path(base, "id"), "duplicate regulation id '" + r.id + "'"});
        }
        if (r.required_category_count() == 0) {
            out.push_back({field_path(base, "requirements"),
                           "every sub-property is not_required; regulation '" + r.id +
                               "' requires nothing"});
        }
    }
    return out;
}

MethodCatalogDocument parse_method_catalog(std::string_view text) {
    const json root = parse_text(text);
    Checker ck;
    MethodCatalogDocument doc;
    if (ck.object_fields(root, "", {"format_version", "methods"})) {
        ck.format_version(root);
        doc.methods = read_array<MethodProfile>(ck, root, "methods", read_method);
        if (ck.errors.empty()) {
            for (auto& d : validate(doc)) ck.errors.push_back(std::move(d));
        }
    }
    if (!ck.errors.empty()) throw ValidationError(std::move(ck.errors));
    doc.warnings = std::move(ck.warnings);
    return doc;
}

RegulationSetDocument parse_regulation_set(std::string_view text) {
    const json root = parse_text(text);
    Checker ck;
    RegulationSetDocument doc;
    if (ck.object_fields(root, "", {"format_version", "regulations"})) {
        ck.format_version(root);
        doc.regulations = read_array<RegulationProfile>(ck, root, "regulations", read_regulation);
        if (ck.errors.empty()) {
            for (auto& d : validate(doc)) ck.errors.push_back(std::move(d));
        }
    }
    if (!ck.errors.empty()) throw ValidationError(std::move(ck.errors));
    return doc;
}

DocumentKind detect_document_kind(std::string_view text) {
    const json root = parse_text(text);
    const bool has_methods = root.is_object() && root.contains("methods");
    const bool has_regulations = root.is_object() && root.contains("regulations");
    if (has_methods == has_regulations) {
        throw ValidationError(std::vector<Diagnostic>{
            {"", "document must contain exactly one of 'methods' or 'regulations'"}});
    }
    return has_methods ? DocumentKind::MethodCatalog : DocumentKind::RegulationSet;
}

std::string serialize(const MethodCatalogDocument& doc) {
    ordered_json root;
    root["format_version"] = doc.format_version;
    root["methods"] = ordered_json::array();
    for (const auto& m : doc.methods) {
        ordered_json rec;
        rec["name"] = m.name;
        ordered_json scores;
        for (SubProperty s : kSubProperties) {
            const std::string k{key(s)};
            if (const auto& raw = m.score(s)) {
                scores[k] = raw->value();
            } else {
                scores[k] = std::string(kUnreported);
            }
        }
        rec["scores"] = std::move(scores);
        rec["scope"] = descriptor_json(m.scope, kScopes);
        rec["stage"] = descriptor_json(m.stage, kStages);
        if (!m.notes.empty()) {
            ordered_json notes;
            for (SubProperty s : kSubProperties) {
                if (auto it = m.notes.find(s); it != m.notes.end()) {
                    notes[std::string(key(s))] = it->second;
                }
            }
            rec["notes"] = std::move(notes);
        }
        root["methods"].push_back(std::move(rec));
    }
    return dump(root);
}

std::string serialize(const RegulationSetDocument& doc) {
    ordered_json root;
    root["format_version"] = doc.format_version;
    root["regulations"] = ordered_json::array();
    for (const auto& r : doc.regulations) {
        ordered_json rec;
        rec["id"] = r.id;
        rec["label"] = r.label;
        ordered_json reqs;
        for (SubProperty s : kSubProperties) {
            const auto& req = r.requirement(s);
            ordered_json entry;
            entry["strength"] = std::string(key(req.level));
            if (!req.qualifier.empty()) entry["qualifier"] = req.qualifier;
            reqs[std::string(key(s))] = std::move(entry);
        }
        rec["requirements"] = std::move(reqs);
        rec["scope"] = descriptor_json(r.scope, kScopes);
        rec["stage"] = descriptor_json(r.stage, kStages);
        root["regulations"].push_back(std::move(rec));
    }
    return dump(root);
}

}  // namespace xaic

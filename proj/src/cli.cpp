#include "xaic/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "xaic/report.hpp"

namespace xaic::cli {

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << content;
}

struct Options {
    std::string methods_path;
    std::string regulations_path;
    std::string format = "text";
    bool strict = false;
    std::string top = "3";
    std::string regulation;
    std::string target = "overall";
    double delta_min = -0.2;
    double delta_max = 0.2;
    int steps = 41;
    std::string out_path;
    std::vector<std::string> paths;
    std::string export_kind;
};

// Loads the requested documents, falling back to the built-in dataset.
Dataset load_dataset(const Options& opt, std::ostream& err) {
    Dataset ds = builtin_dataset();
    if (!opt.methods_path.empty()) {
        ds.methods = parse_method_catalog(read_file(opt.methods_path));
        for (const auto& w : ds.methods.warnings) err << opt.methods_path << ": warning: " << w.str() << '\n';
        if (opt.strict && !ds.methods.warnings.empty()) {
            throw ValidationError(ds.methods.warnings);
        }
    }
    if (!opt.regulations_path.empty()) {
        ds.regulations = parse_regulation_set(read_file(opt.regulations_path));
    }
    return ds;
}

OutputFormat parse_format(const std::string& s) {
    if (auto f = output_format_from_key(s)) return *f;
    throw UsageError("unknown format '" + s + "' (expected text, csv or records)");
}

std::optional<std::size_t> parse_top(const std::string& s) {
    if (s == "all") return std::nullopt;
    std::size_t pos = 0;
    long long k = 0;
    try {
        k = std::stoll(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || k <= 0) {
        throw UsageError("--top expects a positive integer or 'all', got '" + s + "'");
    }
    return static_cast<std::size_t>(k);
}

const RegulationProfile& find_regulation(const Dataset& ds, const std::string& id) {
    if (const auto* r = ds.regulations.find(id)) return *r;
    std::string known;
    for (const auto& r : ds.regulations.regulations) known += (known.empty() ? "" : ", ") + r.id;
    throw UsageError("unknown regulation '" + id + "' (known: " + known + ")");
}

Target find_target(const RegulationProfile& r, const std::string& name) {
    auto t = target_from_key(name);
    if (!t) throw UsageError("unknown target '" + name + "'");
    if (auto c = category_of(*t); c && !r.requires_category(*c)) {
        throw UsageError("category '" + name + "' is not required by regulation '" + r.id + "'");
    }
    return *t;
}

void emit(const Options& opt, const std::string& content, std::ostream& out) {
    if (opt.out_path.empty()) {
        out << content;
    } else {
        write_file(opt.out_path, content);
    }
}

int cmd_validate(const Options& opt, std::ostream& out, std::ostream& err) {
    bool ok = true;
    for (const auto& path : opt.paths) {
        try {
            const std::string text = read_file(path);
            std::vector<Diagnostic> warnings;
            std::string summary;
            if (detect_document_kind(text) == DocumentKind::MethodCatalog) {
                auto doc = parse_method_catalog(text);
                warnings = doc.warnings;
                summary = std::to_string(doc.methods.size()) + " methods";
            } else {
                auto doc = parse_regulation_set(text);
                summary = std::to_string(doc.regulations.size()) + " regulations";
            }
            for (const auto& w : warnings) err << path << ": warning: " << w.str() << '\n';
            const bool failed = opt.strict && !warnings.empty();
            ok = ok && !failed;
            out << path << ": " << (failed ? "invalid (strict: warnings present), " : "ok, ")
                << summary << ", " << warnings.size() << " warning(s)\n";
        } catch (const UsageError&) {
            throw;
        } catch (const ValidationError& e) {
            ok = false;
            for (const auto& d : e.diagnostics()) err << path << ": error: " << d.str() << '\n';
            out << path << ": invalid\n";
        } catch (const Error& e) {
            ok = false;
            err << path << ": error: " << e.what() << '\n';
            out << path << ": invalid\n";
        }
    }
    return ok ? kExitOk : kExitFailure;
}

int cmd_rank(const Options& opt, std::ostream& out, std::ostream& err) {
    const auto format = parse_format(opt.format);
    const auto top = parse_top(opt.top);
    const Dataset ds = load_dataset(opt, err);
    const auto& r = find_regulation(ds, opt.regulation);
    const Target t = find_target(r, opt.target);
    std::ostringstream ss;
    render(ranking_table(ds.methods.methods, r, t, top), format, ss);
    emit(opt, ss.str(), out);
    return kExitOk;
}

int cmd_score(const Options& opt, std::ostream& out, std::ostream& err) {
    const auto format = parse_format(opt.format);
    const Dataset ds = load_dataset(opt, err);
    std::vector<const RegulationProfile*> regs;
    if (opt.regulation.empty()) {
        for (const auto& r : ds.regulations.regulations) regs.push_back(&r);
    } else {
        regs.push_back(&find_regulation(ds, opt.regulation));
    }
    std::ostringstream ss;
    for (std::size_t i = 0; i < regs.size(); ++i) {
        const auto table = matrix_table(ds.methods.methods, *regs[i]);
        if (format == OutputFormat::Text && i > 0) ss << '\n';
        // Machine formats differ in columns per regulation; each gets its own header.
        render(table, format, ss);
    }
    emit(opt, ss.str(), out);
    return kExitOk;
}

int cmd_sensitivity(const Options& opt, std::ostream& out, std::ostream& err) {
    const Dataset ds = load_dataset(opt, err);
    const DeltaGrid grid{opt.delta_min, opt.delta_max, opt.steps};
    try {
        grid.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    SensitivityReport report;
    try {
        report = sweep(ds.methods.methods, ds.regulations.regulations, grid);
    } catch (const SweepVacuousError& e) {
        err << "error: " << e.what() << '\n';
        return kExitComputation;
    }
    std::ostringstream csv;
    write_sensitivity_csv(report, ds.methods.methods, ds.regulations.regulations, csv);
    if (opt.out_path.empty()) {
        out << csv.str();
        write_sensitivity_summary(report, ds.regulations.regulations, err);
    } else {
        write_file(opt.out_path, csv.str());
        write_sensitivity_summary(report, ds.regulations.regulations, out);
    }
    return kExitOk;
}

int cmd_reproduce(const Options& opt, std::ostream& out, std::ostream& err) {
    const Dataset ds = load_dataset(opt, err);
    const auto report = reproduce(ds);
    write_reproduction(report, out);
    return report.all_match() ? kExitOk : kExitFailure;
}

int cmd_export(const Options& opt, std::ostream& out) {
    const auto& ds = builtin_dataset();
    if (opt.export_kind == "methods") {
        emit(opt, serialize(ds.methods), out);
    } else if (opt.export_kind == "regulations") {
        emit(opt, serialize(ds.regulations), out);
    } else {
        throw UsageError("export-builtin expects 'methods' or 'regulations'");
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Score XAI methods against AI Act explanation requirements", "xaic"};
    app.require_subcommand(1);

    auto add_data = [&](CLI::App* sub) {
        sub->add_option("--methods", opt.methods_path, "Method catalog document (default: built-in)");
        sub->add_option("--regulations", opt.regulations_path,
                        "Regulation set document (default: built-in)");
        sub->add_flag("--strict", opt.strict, "Treat warnings as errors");
    };

    auto* validate_cmd = app.add_subcommand("validate", "Validate catalog or regulation documents");
    validate_cmd->add_option("paths", opt.paths, "Documents to validate")->required();
    validate_cmd->add_flag("--strict", opt.strict, "Treat warnings as errors");

    auto* rank_cmd = app.add_subcommand("rank", "Rank admissible methods for one provision");
    add_data(rank_cmd);
    rank_cmd->add_option("--regulation,-r", opt.regulation, "Regulation id")->required();
    rank_cmd->add_option("--target,-t", opt.target,
                         "faithfulness, robustness, complexity or overall")
        ->capture_default_str();
    rank_cmd->add_option("--top", opt.top, "Number of ranks to show, or 'all'")->capture_default_str();
    rank_cmd->add_option("--format", opt.format, "text, csv or records")->capture_default_str();
    rank_cmd->add_option("--out", opt.out_path, "Write output to a file");

    auto* score_cmd = app.add_subcommand("score", "Full compliance matrix");
    add_data(score_cmd);
    score_cmd->add_option("--regulation,-r", opt.regulation, "Restrict to one regulation id");
    score_cmd->add_option("--format", opt.format, "text, csv or records")->capture_default_str();
    score_cmd->add_option("--out", opt.out_path, "Write output to a file");

    auto* sens_cmd = app.add_subcommand("sensitivity", "Sweep strength factors over a delta grid");
    add_data(sens_cmd);
    sens_cmd->add_option("--delta-min", opt.delta_min)->capture_default_str();
    sens_cmd->add_option("--delta-max", opt.delta_max)->capture_default_str();
    sens_cmd->add_option("--steps", opt.steps)->capture_default_str();
    sens_cmd->add_option("--out", opt.out_path,
                         "CSV output path (summary then goes to stdout; otherwise CSV to stdout "
                         "and summary to stderr)");

    auto* repro_cmd = app.add_subcommand("reproduce", "Check the published score table");
    add_data(repro_cmd);

    auto* export_cmd = app.add_subcommand("export-builtin", "Print a built-in document");
    export_cmd->add_option("kind", opt.export_kind, "methods or regulations")->required();
    export_cmd->add_option("--out", opt.out_path, "Write to a file");

    std::vector<std::string> argv_storage{"xaic"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*validate_cmd) return cmd_validate(opt, out, err);
        if (*rank_cmd) return cmd_rank(opt, out, err);
        if (*score_cmd) return cmd_score(opt, out, err);
        if (*sens_cmd) return cmd_sensitivity(opt, out, err);
        if (*repro_cmd) return cmd_reproduce(opt, out, err);
        if (*export_cmd) return cmd_export(opt, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const ValidationError& e) {
        for (const auto& d : e.diagnostics()) err << "error: " << d.str() << '\n';
        return kExitFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitComputation;
    }
    return kExitUsage;
}

}  // namespace xaic::cli

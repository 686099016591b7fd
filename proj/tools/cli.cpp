#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "rfl/classification.hpp"
#include "rfl/depth.hpp"
#include "rfl/error.hpp"
#include "rfl/forbidden.hpp"
#include "rfl/report.hpp"
#include "rfl/source.hpp"

namespace rfl::cli {

namespace {

struct Options {
    std::string file;
    std::string alpha;
    std::string alphabet = "01";
    bool json = false;
    bool tsv = false;
    bool emit_source = false;
    bool dot = false;
    bool strict = false;
    bool require_positive_pi = false;
    std::size_t n = 0;
    std::size_t n_max = 8;
    std::size_t cap_members = 4096;
    std::size_t cap_total = 65536;
    int jobs = 0;
};

// Unreadable files are usage errors; malformed content is an analysis error.
Source read_source(const std::string& path) {
    std::ifstream probe(path);
    if (!probe) throw CLI::ValidationError("cannot read input file '" + path + "'");
    return load_source(path);
}

void warn_if_not_factorial(const Source& src, std::ostream& err) {
    auto f = check_factorial(src);
    if (!f.is_factorial)
        err << "warning: the language is not factorial (factor '"
            << src.alphabet().format(f.counterexample->word) << "' read from node '"
            << src.name(f.counterexample->from)
            << "' is missing); results about the complexity classes assume a factorial language\n";
}

std::string join_names(const Source& src, const std::vector<NodeId>& nodes) {
    std::string s;
    for (NodeId q : nodes) s += (s.empty() ? "" : " ") + src.name(q);
    return s.empty() ? "-" : s;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
    const Source src = read_source(o.file);
    const auto rep = validate(src);
    const auto fact = check_factorial(src);
    if (o.json) {
        Json j;
        j["tool"] = kToolName;
        j["version"] = kToolVersion;
        j["source"] = source_summary_json(src);
        j["validation"] = validation_json(src, rep);
        j["factoriality"] = factoriality_json(src, fact);
        out << j.dump(2) << '\n';
    } else {
        out << "deterministic: yes\n"
            << "t-reduced: " << (rep.is_t_reduced ? "yes" : "no") << '\n'
            << "unreachable: " << join_names(src, rep.unreachable_nodes) << '\n'
            << "non-terminal: " << join_names(src, rep.non_terminal_nodes) << '\n'
            << "factorial: " << (fact.is_factorial ? "yes" : "no") << '\n';
        if (fact.counterexample)
            out << "counterexample: '" << src.alphabet().format(fact.counterexample->word)
                << "' from node " << src.name(fact.counterexample->from) << '\n';
    }
    if (!fact.is_factorial) warn_if_not_factorial(src, err);
    if (o.strict && (!rep.is_t_reduced || !fact.is_factorial)) return kAnalysis;
    return kOk;
}

int cmd_classify(const Options& o, std::ostream& out, std::ostream& err) {
    const Source src = read_source(o.file);
    warn_if_not_factorial(src, err);
    ReportOptions ro;
    ro.dependence.require_positive_path = o.require_positive_pi;
    const auto c = classify(src, ro.dependence);
    if (o.json) {
        out << full_report(src, ro).dump(2) << '\n';
        return kOk;
    }
    out << "class: " << to_string(c.class_id) << '\n'
        << "simple: " << (c.simple ? "yes" : "no") << '\n'
        << "independent simple: " << (c.simple_independent ? "yes" : "no") << '\n'
        << "cl: " << (c.cl ? std::to_string(*c.cl) : std::string("-")) << '\n'
        << "finite: " << (c.finite ? "yes" : "no") << '\n'
        << "complement empty: " << (c.complement_empty ? "yes" : "no") << '\n';
    for (DepthKind k : kDepthKinds)
        out << "H_" << to_string(k) << ": " << to_string(c.predicted[static_cast<std::size_t>(k)]) << '\n';
    if (!c.factorial) out << "caveat: the language is not factorial\n";
    return kOk;
}

int cmd_enumerate(const Options& o, std::ostream& out, std::ostream&) {
    const Source src = read_source(o.file);
    for (const Word& w : enumerate(src, o.n)) out << (w.empty() ? "λ" : src.alphabet().format(w)) << '\n';
    return kOk;
}

int cmd_count(const Options& o, std::ostream& out, std::ostream&) {
    const Source src = read_source(o.file);
    out << count_words(src, o.n) << '\n';
    return kOk;
}

int cmd_depths(const Options& o, std::ostream& out, std::ostream& err) {
    const Source src = read_source(o.file);
    warn_if_not_factorial(src, err);
    depth::set_thread_count(o.jobs);
    depth::OracleLimits limits;
    limits.cap_members = o.cap_members;
    limits.cap_total = o.cap_total;
    const auto table = depth::depth_report(src, o.n_max, limits);
    if (o.json) {
        Json j;
        j["tool"] = kToolName;
        j["version"] = kToolVersion;
        j["source"] = source_summary_json(src);
        j["depths"] = depth_table_json(table);
        out << j.dump(2) << '\n';
    } else {
        out << depth::to_tsv(table);
    }
    if (!table.complete()) {
        err << "note: some cells exceeded a cap and were omitted\n";
        if (o.strict) return kAnalysis;
    }
    return kOk;
}

int cmd_forbidden(const Options& o, std::ostream& out, std::ostream&) {
    std::vector<char> symbols(o.alphabet.begin(), o.alphabet.end());
    Alphabet sigma(symbols);
    const Word alpha = sigma.parse_word(o.alpha);
    const Source src = build_avoidance_source({alpha, sigma});
    if (o.emit_source) {
        out << to_text(src);
        return kOk;
    }
    if (o.dot) {
        out << to_dot(src);
        return kOk;
    }
    const auto c = classify(src);
    std::optional<ComplexityClass> closed;
    if (sigma.size() == 2) closed = classify_forbidden(alpha, sigma);
    if (o.json) {
        Json j;
        j["tool"] = kToolName;
        j["version"] = kToolVersion;
        j["alpha"] = o.alpha;
        j["closed_form_class"] = closed ? Json(std::string(to_string(*closed))) : Json(nullptr);
        j["source"] = source_summary_json(src);
        j["classification"] = classification_json(src, c);
        out << j.dump(2) << '\n';
        return kOk;
    }
    out << "alpha: " << o.alpha << '\n' << "class: " << to_string(c.class_id) << '\n';
    if (closed) out << "closed form: " << to_string(*closed) << '\n';
    return kOk;
}

int cmd_dot(const Options& o, std::ostream& out, std::ostream&) {
    out << to_dot(read_source(o.file));
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Regular factorial languages: classification and decision-tree depths", kToolName};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    auto file_arg = [&](CLI::App* sub) { sub->add_option("file", o.file, "source description")->required(); };

    auto* validate_cmd = app.add_subcommand("validate", "check determinism, t-reducedness and factoriality");
    file_arg(validate_cmd);
    validate_cmd->add_flag("--json", o.json, "JSON output");
    validate_cmd->add_flag("--strict", o.strict, "exit 2 unless t-reduced and factorial");

    auto* classify_cmd = app.add_subcommand("classify", "complexity class and predicted depth growth");
    file_arg(classify_cmd);
    classify_cmd->add_flag("--json", o.json, "full JSON report");
    classify_cmd->add_flag("--require-positive-pi", o.require_positive_pi,
                           "dependence paths between anchors must have length >= 1");

    auto* enumerate_cmd = app.add_subcommand("enumerate", "list L(n)");
    file_arg(enumerate_cmd);
    enumerate_cmd->add_option("-n,--n", o.n, "word length")->required();

    auto* count_cmd = app.add_subcommand("count", "print |L(n)|");
    file_arg(count_cmd);
    count_cmd->add_option("-n,--n", o.n, "word length")->required();

    auto* depths_cmd = app.add_subcommand("depths", "exact decision-tree depths for n = 1..n-max");
    file_arg(depths_cmd);
    depths_cmd->add_option("--n-max", o.n_max, "largest word length")->capture_default_str();
    depths_cmd->add_flag("--tsv", o.tsv, "TSV output (default)");
    depths_cmd->add_flag("--json", o.json, "JSON output");
    depths_cmd->add_option("--cap-members", o.cap_members, "largest |L(n)| for rd/ra")->capture_default_str();
    depths_cmd->add_option("--cap-total", o.cap_total, "largest |Sigma|^n for md/ma")->capture_default_str();
    depths_cmd->add_flag("--strict", o.strict, "exit 2 when a cell is omitted");
    depths_cmd->add_option("--jobs", o.jobs, "worker threads (0 = runtime default)");

    auto* forbidden_cmd = app.add_subcommand("forbidden", "avoidance source for one forbidden word");
    forbidden_cmd->add_option("alpha", o.alpha, "forbidden word")->required();
    forbidden_cmd->add_option("--alphabet", o.alphabet, "alphabet symbols")->capture_default_str();
    forbidden_cmd->add_flag("--emit-source", o.emit_source, "print the source description");
    forbidden_cmd->add_flag("--dot", o.dot, "print DOT");
    forbidden_cmd->add_flag("--json", o.json, "JSON output");

    auto* dot_cmd = app.add_subcommand("dot", "render a source as DOT");
    file_arg(dot_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*validate_cmd) return cmd_validate(o, out, err);
        if (*classify_cmd) return cmd_classify(o, out, err);
        if (*enumerate_cmd) return cmd_enumerate(o, out, err);
        if (*count_cmd) return cmd_count(o, out, err);
        if (*depths_cmd) return cmd_depths(o, out, err);
        if (*forbidden_cmd) return cmd_forbidden(o, out, err);
        if (*dot_cmd) return cmd_dot(o, out, err);
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kAnalysis;
    }
    return kUsage;
}

}  // namespace rfl::cli

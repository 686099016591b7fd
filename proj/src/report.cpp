#include "rfl/report.hpp"

#include "rfl/error.hpp"

namespace rfl {

namespace {

Json node_names(const Source& src, const std::vector<NodeId>& nodes) {
    Json arr = Json::array();
    for (NodeId q : nodes) arr.push_back(src.name(q));
    return arr;
}

Json optional_count(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json source_summary_json(const Source& src) {
    Json alphabet = Json::array();
    for (char c : src.alphabet().symbols()) alphabet.push_back(std::string(1, c));
    Json j;
    j["alphabet"] = alphabet;
    j["nodes"] = src.node_count();
    j["edges"] = src.edge_count();
    j["initial"] = src.name(src.initial());
    j["text"] = to_text(src);
    return j;
}

Json validation_json(const Source& src, const ValidationReport& rep) {
    Json j;
    j["deterministic"] = rep.is_deterministic;
    j["t_reduced"] = rep.is_t_reduced;
    j["unreachable"] = node_names(src, rep.unreachable_nodes);
    j["non_terminal"] = node_names(src, rep.non_terminal_nodes);
    j["notes"] = rep.notes;
    return j;
}

Json factoriality_json(const Source& src, const FactorialityReport& rep) {
    Json j;
    j["factorial"] = rep.is_factorial;
    if (rep.counterexample) {
        j["counterexample"] = {{"from", src.name(rep.counterexample->from)},
                               {"word", src.alphabet().format(rep.counterexample->word)}};
    } else {
        j["counterexample"] = nullptr;
    }
    return j;
}

Json cycle_json(const Source& src, const Cycle& c) {
    Json j;
    j["nodes"] = node_names(src, c.nodes);
    j["letters"] = src.alphabet().format(c.letters);
    return j;
}

Json dependence_json(const Source& src, const DependenceWitness& w) {
    Json j;
    j["type"] = "dependent";
    j["c1"] = cycle_json(src, w.c1);
    j["c2"] = cycle_json(src, w.c2);
    j["v1"] = src.name(w.v1);
    j["v2"] = src.name(w.v2);
    j["pi"] = src.alphabet().format(w.pi);
    j["pi_length"] = w.pi_length();
    j["r"] = w.r;
    return j;
}

Json witness_family_json(const Source& src, const WitnessFamily& f) {
    const auto& sigma = src.alphabet();
    Json j;
    j["kind"] = f.kind == WitnessKind::NotSimple ? "not_simple" : "dependent_simple";
    j["anchor"] = src.name(f.anchor);
    j["c1"] = cycle_json(src, f.c1);
    j["c2"] = cycle_json(src, f.c2);
    j["alpha"] = sigma.format(f.alpha);
    j["a"] = f.a();
    j["base"] = sigma.format(f.base);
    j["deviant"] = sigma.format(f.deviant);
    j["block_length"] = f.block_length;
    return j;
}

Json classification_json(const Source& src, const Classification& c) {
    Json j;
    j["class"] = std::string(to_string(c.class_id));
    j["simple"] = c.simple;
    j["independent_simple"] = c.simple_independent;
    j["cl"] = optional_count(c.cl);
    j["finite"] = c.finite;
    j["complement_empty"] = c.complement_empty;
    Json pred;
    for (DepthKind k : kDepthKinds)
        pred[std::string(to_string(k))] = std::string(to_string(c.predicted[static_cast<std::size_t>(k)]));
    j["predicted"] = pred;
    if (const auto* dep = std::get_if<DependenceWitness>(&c.witness)) {
        j["witness"] = dependence_json(src, *dep);
    } else if (const auto* comp = std::get_if<NotSimpleComponent>(&c.witness)) {
        j["witness"] = {{"type", "not_simple"}, {"component", node_names(src, comp->nodes)}};
    } else {
        j["witness"] = nullptr;
    }
    if (!c.factorial)
        j["caveat"] = "the language is not factorial; the class results assume a factorial language";
    return j;
}

Json depth_table_json(const depth::DepthTable& table) {
    Json rows = Json::array();
    for (const auto& r : table.rows) {
        Json row;
        row["n"] = r.n;
        row["size"] = r.lang_size;
        for (DepthKind k : kDepthKinds) {
            auto idx = static_cast<std::size_t>(k);
            row["h_" + std::string(to_string(k))] = optional_count(r.h[idx]);
            row["H_" + std::string(to_string(k))] = optional_count(r.H[idx]);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json full_report(const Source& src, const ReportOptions& opts) {
    Json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["source"] = source_summary_json(src);
    const auto rep = validate(src);
    j["validation"] = validation_json(src, rep);
    j["factoriality"] = factoriality_json(src, check_factorial(src));
    if (rep.is_t_reduced) {
        const auto c = classify(src, opts.dependence);
        j["classification"] = classification_json(src, c);
        if (!c.simple_independent)
            j["hardness_witness"] = witness_family_json(src, hardness_witness(src, opts.dependence));
    } else {
        j["classification"] = nullptr;
        j["classification_skipped"] = "classification requires a t-reduced source";
    }
    if (opts.depth_n_max) {
        const auto table = depth::depth_report(src, *opts.depth_n_max, opts.limits, opts.exec);
        j["depths"] = depth_table_json(table);
        j["depth_notes"] =
            "nondeterministic depths are maximum minimum certificates; omitted cells exceeded a cap";
    }
    return j;
}

}  // namespace rfl

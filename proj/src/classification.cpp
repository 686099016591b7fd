#include "rfl/classification.hpp"

#include "rfl/error.hpp"

namespace rfl {

std::string_view to_string(GrowthClass g) noexcept {
    switch (g) {
        case GrowthClass::Constant: return "O(1)";
        case GrowthClass::Logarithmic: return "Theta(log n)";
        case GrowthClass::Linear: return "Theta(n)";
    }
    return "?";
}

std::string_view to_string(ComplexityClass c) noexcept {
    switch (c) {
        case ComplexityClass::F1: return "F1";
        case ComplexityClass::F2: return "F2";
        case ComplexityClass::F3: return "F3";
        case ComplexityClass::F4: return "F4";
        case ComplexityClass::F5: return "F5";
    }
    return "?";
}

std::string_view to_string(DepthKind k) noexcept {
    switch (k) {
        case DepthKind::rd: return "rd";
        case DepthKind::ra: return "ra";
        case DepthKind::md: return "md";
        case DepthKind::ma: return "ma";
    }
    return "?";
}

GrowthProfile predicted_growth(ComplexityClass c) noexcept {
    using G = GrowthClass;
    // (rd, ra, md, ma)
    switch (c) {
        case ComplexityClass::F1: return {G::Constant, G::Constant, G::Constant, G::Constant};
        case ComplexityClass::F2: return {G::Constant, G::Constant, G::Linear, G::Linear};
        case ComplexityClass::F3: return {G::Logarithmic, G::Constant, G::Linear, G::Linear};
        case ComplexityClass::F4: return {G::Linear, G::Linear, G::Linear, G::Linear};
        case ComplexityClass::F5: return {G::Linear, G::Linear, G::Constant, G::Constant};
    }
    return {};
}

Classification classify(const Source& src, const DependenceOptions& opts) {
    require_t_reduced(src, "classification");
    Classification out;
    out.factorial = check_factorial(src).is_factorial;
    out.finite = is_finite(src);
    out.complement_empty = is_complement_empty(src);

    auto cond = condense(src);
    auto simple = is_simple(cond);
    out.simple = simple.simple;
    if (simple.simple) {
        out.cl = cyclic_length(src);
        if (auto dep = is_dependent(src, opts)) {
            out.witness = std::move(*dep);
        } else {
            out.simple_independent = true;
        }
    } else {
        out.witness = NotSimpleComponent{cond.components[*simple.offending_component]};
    }

    if (out.simple_independent) {
        out.class_id = *out.cl == 0   ? ComplexityClass::F1
                       : *out.cl == 1 ? ComplexityClass::F2
                                      : ComplexityClass::F3;
    } else {
        // Any dependent or non-simple source contains a cycle.
        if (out.finite) throw Error("internal: source that is not independent simple generates a finite language");
        out.class_id = out.complement_empty ? ComplexityClass::F5 : ComplexityClass::F4;
    }
    out.predicted = predicted_growth(out.class_id);
    return out;
}

std::size_t ra_constant_bound(const Source& src, const DependenceOptions& opts) {
    if (!is_simple(src).simple || is_dependent(src, opts))
        throw PreconditionError("the constant bound applies to independent simple sources only");
    const std::size_t d = src.node_count();
    return d * (4 * d + 1);
}

}  // namespace rfl

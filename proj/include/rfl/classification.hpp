#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <variant>

#include "rfl/source.hpp"
#include "rfl/structure.hpp"

namespace rfl {

enum class GrowthClass { Constant, Logarithmic, Linear };

/// "O(1)", "Theta(log n)" or "Theta(n)".
std::string_view to_string(GrowthClass g) noexcept;

enum class ComplexityClass { F1 = 1, F2, F3, F4, F5 };

std::string_view to_string(ComplexityClass c) noexcept;

/// The four depth functions, in report order.
enum class DepthKind { rd, ra, md, ma };
inline constexpr std::array<DepthKind, 4> kDepthKinds{DepthKind::rd, DepthKind::ra, DepthKind::md,
                                                      DepthKind::ma};
std::string_view to_string(DepthKind k) noexcept;

/// Predicted growth of the smoothed depths, indexed by DepthKind.
using GrowthProfile = std::array<GrowthClass, 4>;

GrowthProfile predicted_growth(ComplexityClass c) noexcept;

/// A component that contains an edge but is not a single elementary cycle.
struct NotSimpleComponent {
    std::vector<NodeId> nodes;
};

using ClassWitness = std::variant<std::monostate, DependenceWitness, NotSimpleComponent>;

struct Classification {
    ComplexityClass class_id = ComplexityClass::F1;
    bool simple = false;
    bool simple_independent = false;
    std::optional<std::size_t> cl;  // only for simple sources
    bool complement_empty = false;
    bool finite = false;
    bool factorial = true;  // results about the classes assume a factorial language
    GrowthProfile predicted{};
    ClassWitness witness;
};

/// Throws PreconditionError unless the source is t-reduced.
Classification classify(const Source& src, const DependenceOptions& opts = {});

/// d(4d+1) with d the node count: an upper bound on the nondeterministic
/// recognition depth of an independent simple source.
/// Throws PreconditionError otherwise.
std::size_t ra_constant_bound(const Source& src, const DependenceOptions& opts = {});

}  // namespace rfl

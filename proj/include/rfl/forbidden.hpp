#pragma once

// Languages given by a single forbidden factor.

#include "rfl/classification.hpp"
#include "rfl/source.hpp"

namespace rfl {

struct ForbiddenSpec {
    Word alpha;  // nonempty
    Alphabet alphabet;
};

/// Name of the node for a proper prefix of alpha ("λ" for the empty prefix).
std::string prefix_node_name(const Alphabet& sigma, const Word& prefix);

/// The avoidance source I(alpha): nodes are the proper prefixes of alpha, and
/// reading a letter moves to the longest proper prefix that is a suffix of
/// what has been read. The one transition that would complete alpha is absent.
Source build_avoidance_source(const ForbiddenSpec& spec);

/// Closed-form class of L(alpha) over {0,1}: F2 for |alpha| = 1, F3 for 01/10,
/// F4 otherwise. Throws PreconditionError for other alphabets or empty alpha.
ComplexityClass classify_forbidden(const Word& alpha, const Alphabet& sigma);

/// Letterwise complement over {0,1}.
Word complement_word(const Word& alpha, const Alphabet& sigma);

}  // namespace rfl

#include "rfl/forbidden.hpp"

#include "rfl/error.hpp"

namespace rfl {

std::string prefix_node_name(const Alphabet& sigma, const Word& prefix) {
    return prefix.empty() ? std::string("λ") : sigma.format(prefix);
}

Source build_avoidance_source(const ForbiddenSpec& spec) {
    const Word& alpha = spec.alpha;
    const std::size_t n = alpha.size();
    const std::size_t k = spec.alphabet.size();
    if (n == 0) throw PreconditionError("forbidden word must be nonempty");
    for (Letter a : alpha)
        if (a >= k) throw Error("forbidden word uses a letter outside the alphabet");

    // Failure function: fail[i] = length of the longest proper border of alpha[0..i).
    std::vector<std::size_t> fail(n + 1, 0);
    for (std::size_t i = 2; i <= n; ++i) {
        std::size_t j = fail[i - 1];
        while (j > 0 && alpha[j] != alpha[i - 1]) j = fail[j];
        fail[i] = alpha[j] == alpha[i - 1] ? j + 1 : 0;
    }
    // delta[i][b]: length of the longest prefix of alpha that is a suffix of alpha[0..i)+b.
    std::vector<std::size_t> delta(n * k, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t b = 0; b < k; ++b) {
            if (alpha[i] == b)
                delta[i * k + b] = i + 1;
            else
                delta[i * k + b] = i == 0 ? 0 : delta[fail[i] * k + b];
        }

    std::vector<std::string> names;
    std::vector<NodeId> terminal;
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back(prefix_node_name(spec.alphabet, Word(alpha.begin(), alpha.begin() + static_cast<std::ptrdiff_t>(i))));
        terminal.push_back(static_cast<NodeId>(i));
    }
    std::vector<Source::Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t b = 0; b < k; ++b) {
            std::size_t j = delta[i * k + b];
            if (j == n) continue;  // reading b here completes alpha
            edges.push_back({static_cast<NodeId>(i), static_cast<Letter>(b), static_cast<NodeId>(j)});
        }
    return Source(spec.alphabet, std::move(names), 0, std::move(terminal), edges);
}

namespace {

void require_binary(const Word& alpha, const Alphabet& sigma) {
    if (sigma.size() != 2) throw PreconditionError("operation is defined over a binary alphabet only");
    for (Letter a : alpha)
        if (a > 1) throw Error("letter outside the binary alphabet");
}

}  // namespace

ComplexityClass classify_forbidden(const Word& alpha, const Alphabet& sigma) {
    require_binary(alpha, sigma);
    if (alpha.empty()) throw PreconditionError("forbidden word must be nonempty");
    if (alpha.size() == 1) return ComplexityClass::F2;
    if (alpha.size() == 2 && alpha[0] != alpha[1]) return ComplexityClass::F3;
    return ComplexityClass::F4;
}

Word complement_word(const Word& alpha, const Alphabet& sigma) {
    require_binary(alpha, sigma);
    Word out(alpha);
    for (Letter& a : out) a = static_cast<Letter>(1 - a);
    return out;
}

}  // namespace rfl

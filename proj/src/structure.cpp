#include "rfl/structure.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "rfl/error.hpp"

namespace rfl {

bool Cycle::contains(NodeId v) const noexcept {
    return std::find(nodes.begin(), nodes.end(), v) != nodes.end();
}

// ---- condensation --------------------------------------------------------

Condensation condense(const Source& src) {
    const std::size_t n = src.node_count();
    const std::size_t k = src.alphabet().size();
    constexpr std::size_t kUnset = SIZE_MAX;

    // Iterative Tarjan from the initial node.
    std::vector<std::size_t> index(n, kUnset), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<NodeId> stack;
    std::vector<std::vector<NodeId>> sccs;
    std::size_t counter = 0;

    struct Frame {
        NodeId node;
        std::size_t next_letter;
    };
    std::vector<Frame> call{{src.initial(), 0}};
    index[static_cast<std::size_t>(src.initial())] = low[static_cast<std::size_t>(src.initial())] = counter++;
    stack.push_back(src.initial());
    on_stack[static_cast<std::size_t>(src.initial())] = true;

    while (!call.empty()) {
        Frame& f = call.back();
        auto v = static_cast<std::size_t>(f.node);
        if (f.next_letter < k) {
            NodeId t = src.next(f.node, static_cast<Letter>(f.next_letter++));
            if (t == kNoNode) continue;
            auto w = static_cast<std::size_t>(t);
            if (index[w] == kUnset) {
                index[w] = low[w] = counter++;
                stack.push_back(t);
                on_stack[w] = true;
                call.push_back({t, 0});
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
            continue;
        }
        if (low[v] == index[v]) {
            std::vector<NodeId> comp;
            NodeId x;
            do {
                x = stack.back();
                stack.pop_back();
                on_stack[static_cast<std::size_t>(x)] = false;
                comp.push_back(x);
            } while (x != f.node);
            std::sort(comp.begin(), comp.end());
            sccs.push_back(std::move(comp));
        }
        call.pop_back();
        if (!call.empty()) {
            auto u = static_cast<std::size_t>(call.back().node);
            low[u] = std::min(low[u], low[v]);
        }
    }

    // Tarjan emits sinks first.
    std::reverse(sccs.begin(), sccs.end());

    Condensation cond;
    cond.component_of.assign(n, SIZE_MAX);
    for (std::size_t c = 0; c < sccs.size(); ++c)
        for (NodeId q : sccs[c]) cond.component_of[static_cast<std::size_t>(q)] = c;
    cond.components = std::move(sccs);
    cond.initial_component = cond.component_of[static_cast<std::size_t>(src.initial())];

    const std::size_t m = cond.components.size();
    cond.is_cycle_component.assign(m, false);
    cond.has_edge.assign(m, false);
    std::vector<std::size_t> out_inside(n, 0), in_inside(n, 0);
    for (const auto& e : src.edges()) {
        std::size_t cf = cond.component_of[static_cast<std::size_t>(e.from)];
        std::size_t ct = cond.component_of[static_cast<std::size_t>(e.to)];
        if (cf == SIZE_MAX) continue;
        if (cf == ct) {
            cond.has_edge[cf] = true;
            ++out_inside[static_cast<std::size_t>(e.from)];
            ++in_inside[static_cast<std::size_t>(e.to)];
        } else {
            cond.dag_edges.emplace_back(cf, ct);
        }
    }
    std::sort(cond.dag_edges.begin(), cond.dag_edges.end());
    cond.dag_edges.erase(std::unique(cond.dag_edges.begin(), cond.dag_edges.end()), cond.dag_edges.end());

    // Strongly connected with in/out degree exactly one everywhere = one cycle.
    for (std::size_t c = 0; c < m; ++c) {
        if (!cond.has_edge[c]) continue;
        cond.is_cycle_component[c] = std::all_of(
            cond.components[c].begin(), cond.components[c].end(), [&](NodeId q) {
                return out_inside[static_cast<std::size_t>(q)] == 1 && in_inside[static_cast<std::size_t>(q)] == 1;
            });
    }
    return cond;
}

SimpleResult is_simple(const Condensation& cond) {
    for (std::size_t c = 0; c < cond.components.size(); ++c)
        if (cond.has_edge[c] && !cond.is_cycle_component[c]) return {false, c};
    return {true, std::nullopt};
}

SimpleResult is_simple(const Source& src) { return is_simple(condense(src)); }

namespace {

void require_simple(const Condensation& cond, const char* what) {
    if (!is_simple(cond).simple)
        throw PreconditionError(std::string(what) + " is only defined for simple sources");
}

// Cycle through the nodes of a cycle-shaped component, starting at its
// earliest-declared node.
Cycle trace_cycle(const Source& src, const Condensation& cond, std::size_t comp) {
    Cycle c;
    NodeId start = cond.components[comp].front();
    NodeId v = start;
    do {
        for (std::size_t a = 0; a < src.alphabet().size(); ++a) {
            NodeId t = src.next(v, static_cast<Letter>(a));
            if (t != kNoNode && cond.component_of[static_cast<std::size_t>(t)] == comp) {
                c.nodes.push_back(v);
                c.letters.push_back(static_cast<Letter>(a));
                v = t;
                break;
            }
        }
    } while (v != start);
    return c;
}

std::size_t position_on(const Cycle& c, NodeId v) {
    auto it = std::find(c.nodes.begin(), c.nodes.end(), v);
    if (it == c.nodes.end()) throw PreconditionError("node does not lie on the cycle");
    return static_cast<std::size_t>(it - c.nodes.begin());
}

// Rotate a closed walk so it starts at its earliest-declared node.
Cycle canonical(Cycle c) {
    auto it = std::min_element(c.nodes.begin(), c.nodes.end());
    auto shift = it - c.nodes.begin();
    std::rotate(c.nodes.begin(), c.nodes.begin() + shift, c.nodes.end());
    std::rotate(c.letters.begin(), c.letters.begin() + shift, c.letters.end());
    return c;
}

}  // namespace

std::vector<Cycle> elementary_cycles(const Source& src) {
    auto cond = condense(src);
    require_simple(cond, "elementary cycle extraction");
    std::vector<Cycle> out;
    for (std::size_t c = 0; c < cond.components.size(); ++c)
        if (cond.is_cycle_component[c]) out.push_back(trace_cycle(src, cond, c));
    std::sort(out.begin(), out.end(),
              [](const Cycle& x, const Cycle& y) { return x.nodes.front() < y.nodes.front(); });
    return out;
}

std::size_t cyclic_length(const Source& src) {
    auto cond = condense(src);
    require_simple(cond, "cyclic length");
    const std::size_t m = cond.components.size();
    // Components are topologically ordered and all reachable from the first.
    std::vector<std::size_t> best(m, 0);
    std::vector<std::vector<std::size_t>> preds(m);
    for (auto [from, to] : cond.dag_edges) preds[to].push_back(from);
    std::size_t answer = 0;
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t in = 0;
        for (std::size_t p : preds[c]) in = std::max(in, best[p]);
        best[c] = in + (cond.is_cycle_component[c] ? 1 : 0);
        answer = std::max(answer, best[c]);
    }
    return answer;
}

Word periodic_prefix(const Cycle& c, NodeId v, std::size_t k) {
    std::size_t start = position_on(c, v);
    Word w(k);
    for (std::size_t i = 0; i < k; ++i) w[i] = c.letters[(start + i) % c.length()];
    return w;
}

std::size_t min_period(const Cycle& c, NodeId v) {
    const std::size_t p = c.length();
    const Word w = periodic_prefix(c, v, p);
    for (std::size_t d = 1; d < p; ++d) {
        if (p % d != 0) continue;
        bool ok = true;
        for (std::size_t i = d; i < p && ok; ++i) ok = w[i] == w[i - d];
        if (ok) return d;
    }
    return p;
}

namespace {

// Shortest path word from `from` to `to` whose length is divisible by r.
std::optional<Word> divisible_path(const Source& src, NodeId from, NodeId to, std::size_t r,
                                   bool positive) {
    const std::size_t n = src.node_count();
    const std::size_t k = src.alphabet().size();
    constexpr std::size_t kRoot = SIZE_MAX;
    struct Visit {
        std::size_t parent;  // kRoot for the start state
        Letter letter;
    };
    auto key = [r](NodeId q, std::size_t mod) { return static_cast<std::size_t>(q) * r + mod; };
    std::vector<std::int64_t> id(n * r, -1);
    std::vector<std::pair<NodeId, std::size_t>> states;
    std::vector<Visit> trail;
    auto push = [&](NodeId q, std::size_t mod, std::size_t parent, Letter a) {
        auto& slot = id[key(q, mod)];
        if (slot >= 0) return;
        slot = static_cast<std::int64_t>(states.size());
        states.emplace_back(q, mod);
        trail.push_back({parent, a});
    };

    // With `positive`, the start state is only entered again after an edge,
    // so the walk is seeded with the successors of `from`.
    std::size_t first = 0;
    if (positive) {
        push(from, 0, kRoot, 0);
        id[key(from, 0)] = -1;
        first = 1;
        for (std::size_t a = 0; a < k; ++a) {
            NodeId t = src.next(from, static_cast<Letter>(a));
            if (t != kNoNode) push(t, 1 % r, 0, static_cast<Letter>(a));
        }
    } else {
        push(from, 0, kRoot, 0);
    }
    for (std::size_t head = first; head < states.size(); ++head) {
        auto [q, mod] = states[head];
        if (q == to && mod == 0) {
            Word w;
            for (std::size_t v = head; trail[v].parent != kRoot; v = trail[v].parent)
                w.push_back(trail[v].letter);
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (std::size_t a = 0; a < k; ++a) {
            NodeId t = src.next(q, static_cast<Letter>(a));
            if (t != kNoNode) push(t, (mod + 1) % r, head, static_cast<Letter>(a));
        }
    }
    return std::nullopt;
}

std::vector<NodeId> sorted_nodes(const Cycle& c) {
    auto v = c.nodes;
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

std::optional<DependenceWitness> is_dependent(const Source& src, const DependenceOptions& opts) {
    auto cycles = elementary_cycles(src);
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        for (std::size_t j = 0; j < cycles.size(); ++j) {
            if (i == j) continue;
            const Cycle& c1 = cycles[i];
            const Cycle& c2 = cycles[j];
            const std::size_t l = std::lcm(c1.length(), c2.length());
            for (NodeId v1 : sorted_nodes(c1)) {
                const Word w1 = periodic_prefix(c1, v1, l);
                const std::size_t r = min_period(c1, v1);
                for (NodeId v2 : sorted_nodes(c2)) {
                    if (periodic_prefix(c2, v2, l) != w1) continue;
                    auto pi = divisible_path(src, v1, v2, r, opts.require_positive_path);
                    if (!pi) continue;
                    return DependenceWitness{c1, c2, v1, v2, std::move(*pi), r};
                }
            }
        }
    }
    return std::nullopt;
}

Word WitnessFamily::member(std::size_t i, std::optional<std::size_t> j) const {
    Word w = alpha;
    for (std::size_t b = 0; b < i; ++b) {
        const Word& block = (j && *j == b) ? deviant : base;
        w.insert(w.end(), block.begin(), block.end());
    }
    return w;
}

namespace {

Word repeat(const Word& w, std::size_t times) {
    Word out;
    out.reserve(w.size() * times);
    for (std::size_t t = 0; t < times; ++t) out.insert(out.end(), w.begin(), w.end());
    return out;
}

// Elementary cycle leaving v by the edge labeled `a` and returning along a
// shortest path.
Cycle cycle_through(const Source& src, NodeId v, Letter a) {
    NodeId t = src.next(v, a);
    auto back = shortest_path_word(src, t, v);
    Cycle c;
    c.nodes.push_back(v);
    c.letters.push_back(a);
    NodeId q = t;
    for (Letter b : *back) {
        c.nodes.push_back(q);
        c.letters.push_back(b);
        q = src.next(q, b);
    }
    return c;  // starts at v
}

}  // namespace

WitnessFamily hardness_witness(const Source& src, const DependenceOptions& opts) {
    require_t_reduced(src, "hardness witness construction");
    auto cond = condense(src);
    auto simple = is_simple(cond);
    WitnessFamily fam;

    if (!simple.simple) {
        // A node of the offending component with two internal out-edges lies
        // on two distinct elementary cycles.
        const std::size_t comp = *simple.offending_component;
        for (NodeId v : cond.components[comp]) {
            std::vector<Letter> inside;
            for (std::size_t a = 0; a < src.alphabet().size(); ++a) {
                NodeId t = src.next(v, static_cast<Letter>(a));
                if (t != kNoNode && cond.component_of[static_cast<std::size_t>(t)] == comp)
                    inside.push_back(static_cast<Letter>(a));
            }
            if (inside.size() < 2) continue;
            Cycle x = cycle_through(src, v, inside[0]);
            Cycle y = cycle_through(src, v, inside[1]);
            if (y.length() < x.length()) std::swap(x, y);
            const std::size_t b = x.length(), c = y.length();
            fam.kind = WitnessKind::NotSimple;
            fam.anchor = v;
            fam.alpha = *shortest_path_word(src, src.initial(), v);
            fam.deviant = repeat(x.letters, c);  // beta: c passes around C1
            fam.base = repeat(y.letters, b);     // gamma: b passes around C2
            fam.block_length = b * c;
            fam.c1 = canonical(std::move(x));
            fam.c2 = canonical(std::move(y));
            return fam;
        }
        throw Error("internal: non-simple component without a branching node");
    }

    auto dep = is_dependent(src, opts);
    if (!dep)
        throw PreconditionError("an independent simple source has no hardness witness family");
    const std::size_t r = dep->r;
    const std::size_t b = dep->c1.length() / r;
    const std::size_t c = dep->pi.size() / r;
    if (c == 0)
        throw PreconditionError("dependence path of length zero yields no witness family");
    const Word gamma = periodic_prefix(dep->c1, dep->v1, r);
    fam.kind = WitnessKind::DependentSimple;
    fam.anchor = dep->v1;
    fam.alpha = *shortest_path_word(src, src.initial(), dep->v1);
    fam.base = repeat(gamma, b * c);
    fam.deviant = dep->pi;
    const Word tail = repeat(gamma, c * (b - 1));
    fam.deviant.insert(fam.deviant.end(), tail.begin(), tail.end());
    fam.block_length = r * b * c;
    fam.c1 = dep->c1;
    fam.c2 = dep->c2;
    return fam;
}

}  // namespace rfl

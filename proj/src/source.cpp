#include "rfl/source.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

#include "rfl/error.hpp"

namespace rfl {

// ---- Alphabet ------------------------------------------------------------

Alphabet::Alphabet(std::vector<char> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.size() < 2)
        throw Error("alphabet must contain at least two symbols");
    if (symbols_.size() > 255)
        throw Error("alphabet is limited to 255 symbols");
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (symbols_[i] == symbols_[j])
                throw Error(std::string("duplicate alphabet symbol '") + symbols_[i] + "'");
}

std::optional<Letter> Alphabet::find(char c) const noexcept {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i] == c) return static_cast<Letter>(i);
    return std::nullopt;
}

Word Alphabet::parse_word(std::string_view text) const {
    Word w;
    w.reserve(text.size());
    for (char c : text) {
        auto a = find(c);
        if (!a) throw Error(std::string("letter '") + c + "' is not in the alphabet");
        w.push_back(*a);
    }
    return w;
}

std::string Alphabet::format(const Word& w) const {
    std::string s;
    s.reserve(w.size());
    for (Letter a : w) s.push_back(symbol(a));
    return s;
}

Alphabet binary_alphabet() { return Alphabet({'0', '1'}); }

// ---- Source --------------------------------------------------------------

Source::Source(Alphabet alphabet, std::vector<std::string> nodes, NodeId initial,
               std::vector<NodeId> terminal, const std::vector<Edge>& edges)
    : alphabet_(std::move(alphabet)), names_(std::move(nodes)), initial_(initial) {
    const auto n = static_cast<NodeId>(names_.size());
    if (n == 0) throw Error("a source needs at least one node");
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) throw Error("empty node name");
        for (std::size_t j = 0; j < i; ++j)
            if (names_[i] == names_[j]) throw Error("duplicate node '" + names_[i] + "'");
    }
    if (initial_ < 0 || initial_ >= n) throw Error("initial node is not declared");
    if (terminal.empty()) throw Error("terminal set must be nonempty");
    terminal_.assign(names_.size(), false);
    for (NodeId q : terminal) {
        if (q < 0 || q >= n) throw Error("terminal node is not declared");
        terminal_[static_cast<std::size_t>(q)] = true;
    }
    delta_.assign(names_.size() * alphabet_.size(), kNoNode);
    for (const Edge& e : edges) {
        if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
            throw Error("edge endpoint is not a declared node");
        if (e.letter >= alphabet_.size()) throw Error("edge letter is not in the alphabet");
        NodeId& slot = delta_[static_cast<std::size_t>(e.from) * alphabet_.size() + e.letter];
        if (slot != kNoNode)
            throw Error("duplicate edge (" + names_[static_cast<std::size_t>(e.from)] + ", " +
                        alphabet_.symbol(e.letter) + ")");
        slot = e.to;
    }
}

std::size_t Source::edge_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(delta_.begin(), delta_.end(),
                                                  [](NodeId t) { return t != kNoNode; }));
}

std::optional<NodeId> Source::find_node(std::string_view name) const noexcept {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<NodeId>(i);
    return std::nullopt;
}

std::vector<NodeId> Source::terminal_nodes() const {
    std::vector<NodeId> out;
    for (std::size_t i = 0; i < terminal_.size(); ++i)
        if (terminal_[i]) out.push_back(static_cast<NodeId>(i));
    return out;
}

NodeId Source::run(NodeId q, const Word& w) const noexcept {
    for (Letter a : w) {
        if (q == kNoNode || a >= alphabet_.size()) return kNoNode;
        q = next(q, a);
    }
    return q;
}

std::vector<Source::Edge> Source::edges() const {
    std::vector<Edge> out;
    for (std::size_t q = 0; q < names_.size(); ++q)
        for (std::size_t a = 0; a < alphabet_.size(); ++a) {
            NodeId t = delta_[q * alphabet_.size() + a];
            if (t != kNoNode) out.push_back({static_cast<NodeId>(q), static_cast<Letter>(a), t});
        }
    return out;
}

// ---- text format ---------------------------------------------------------

namespace {

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::string_view trim(std::string_view s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

struct RawEdge {
    std::size_t line;
    std::string from, letter, to;
};

}  // namespace

Source parse_source(std::string_view text) {
    std::optional<std::vector<std::string>> symbols, nodes, terminal;
    std::optional<std::string> initial;
    std::size_t alphabet_line = 0, nodes_line = 0, initial_line = 0, terminal_line = 0;
    std::vector<RawEdge> raw_edges;

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++lineno;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        auto colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError(lineno, "expected 'key: value'");
        std::string key(trim(line.substr(0, colon)));
        auto values = split_ws(line.substr(colon + 1));

        auto once = [&](bool present) {
            if (present) throw ParseError(lineno, "duplicate '" + key + "' section");
        };

        if (key == "alphabet") {
            once(symbols.has_value());
            symbols = values;
            alphabet_line = lineno;
        } else if (key == "nodes") {
            once(nodes.has_value());
            nodes = values;
            nodes_line = lineno;
        } else if (key == "initial") {
            once(initial.has_value());
            if (values.size() != 1) throw ParseError(lineno, "'initial' takes exactly one node");
            initial = values[0];
            initial_line = lineno;
        } else if (key == "terminal") {
            once(terminal.has_value());
            if (values.empty()) throw ParseError(lineno, "'terminal' needs 'all' or a node list");
            terminal = values;
            terminal_line = lineno;
        } else if (key == "edge") {
            if (values.size() != 3) throw ParseError(lineno, "'edge' takes: from letter to");
            raw_edges.push_back({lineno, values[0], values[1], values[2]});
        } else {
            throw ParseError(lineno, "unknown key '" + key + "'");
        }
    }

    if (!symbols) throw ParseError(0, "missing 'alphabet' section");
    if (!nodes) throw ParseError(0, "missing 'nodes' section");
    if (!initial) throw ParseError(0, "missing 'initial' section");
    if (!terminal) throw ParseError(0, "missing 'terminal' section");

    std::vector<char> chars;
    for (const auto& s : *symbols) {
        if (s.size() != 1) throw ParseError(alphabet_line, "symbol '" + s + "' is not a single character");
        chars.push_back(s[0]);
    }
    Alphabet alphabet;
    try {
        alphabet = Alphabet(std::move(chars));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(alphabet_line, e.what());
    }

    if (nodes->empty()) throw ParseError(nodes_line, "no nodes declared");
    for (std::size_t i = 0; i < nodes->size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if ((*nodes)[i] == (*nodes)[j])
                throw ParseError(nodes_line, "duplicate node '" + (*nodes)[i] + "'");

    auto node_index = [&](const std::string& name, std::size_t line) -> NodeId {
        for (std::size_t i = 0; i < nodes->size(); ++i)
            if ((*nodes)[i] == name) return static_cast<NodeId>(i);
        throw ParseError(line, "undeclared node '" + name + "'");
    };

    NodeId init = node_index(*initial, initial_line);
    std::vector<NodeId> term;
    if (terminal->size() == 1 && (*terminal)[0] == "all") {
        for (std::size_t i = 0; i < nodes->size(); ++i) term.push_back(static_cast<NodeId>(i));
    } else {
        for (const auto& t : *terminal) term.push_back(node_index(t, terminal_line));
    }

    std::vector<Source::Edge> edges;
    std::vector<NodeId> seen(nodes->size() * alphabet.size(), kNoNode);
    for (const auto& re : raw_edges) {
        NodeId from = node_index(re.from, re.line);
        NodeId to = node_index(re.to, re.line);
        if (re.letter.size() != 1 || !alphabet.find(re.letter[0]))
            throw ParseError(re.line, "undeclared symbol '" + re.letter + "'");
        Letter a = *alphabet.find(re.letter[0]);
        auto& slot = seen[static_cast<std::size_t>(from) * alphabet.size() + a];
        if (slot != kNoNode)
            throw ParseError(re.line, "duplicate edge (" + re.from + ", " + re.letter + ")");
        slot = to;
        edges.push_back({from, a, to});
    }
    return Source(std::move(alphabet), std::move(*nodes), init, std::move(term), edges);
}

Source load_source(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_source(ss.str());
}

std::string to_text(const Source& src) {
    std::ostringstream out;
    out << "alphabet:";
    for (char c : src.alphabet().symbols()) out << ' ' << c;
    out << "\nnodes:";
    for (std::size_t q = 0; q < src.node_count(); ++q) out << ' ' << src.name(static_cast<NodeId>(q));
    out << "\ninitial: " << src.name(src.initial()) << "\nterminal:";
    auto term = src.terminal_nodes();
    if (term.size() == src.node_count()) {
        out << " all";
    } else {
        for (NodeId q : term) out << ' ' << src.name(q);
    }
    out << '\n';
    for (const auto& e : src.edges())
        out << "edge: " << src.name(e.from) << ' ' << src.alphabet().symbol(e.letter) << ' '
            << src.name(e.to) << '\n';
    return out.str();
}

namespace {

std::string dot_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

std::string to_dot(const Source& src) {
    std::ostringstream out;
    out << "digraph source {\n  rankdir=LR;\n";
    for (std::size_t i = 0; i < src.node_count(); ++i) {
        auto q = static_cast<NodeId>(i);
        std::string label = src.name(q);
        if (q == src.initial()) label += " +";
        out << "  n" << i << " [label=\"" << dot_escape(label) << "\", shape="
            << (src.is_terminal(q) ? "doublecircle" : "circle") << "];\n";
    }
    for (const auto& e : src.edges())
        out << "  n" << e.from << " -> n" << e.to << " [label=\""
            << dot_escape(std::string(1, src.alphabet().symbol(e.letter))) << "\"];\n";
    out << "}\n";
    return out.str();
}

// ---- validation ----------------------------------------------------------

std::vector<bool> reachable_nodes(const Source& src) {
    std::vector<bool> seen(src.node_count(), false);
    std::deque<NodeId> queue{src.initial()};
    seen[static_cast<std::size_t>(src.initial())] = true;
    while (!queue.empty()) {
        NodeId q = queue.front();
        queue.pop_front();
        for (std::size_t a = 0; a < src.alphabet().size(); ++a) {
            NodeId t = src.next(q, static_cast<Letter>(a));
            if (t != kNoNode && !seen[static_cast<std::size_t>(t)]) {
                seen[static_cast<std::size_t>(t)] = true;
                queue.push_back(t);
            }
        }
    }
    return seen;
}

namespace {

// Nodes from which some terminal node is reachable.
std::vector<bool> coreachable_nodes(const Source& src) {
    const std::size_t n = src.node_count();
    std::vector<std::vector<NodeId>> preds(n);
    for (const auto& e : src.edges()) preds[static_cast<std::size_t>(e.to)].push_back(e.from);
    std::vector<bool> seen(n, false);
    std::deque<NodeId> queue;
    for (NodeId t : src.terminal_nodes()) {
        seen[static_cast<std::size_t>(t)] = true;
        queue.push_back(t);
    }
    while (!queue.empty()) {
        NodeId q = queue.front();
        queue.pop_front();
        for (NodeId p : preds[static_cast<std::size_t>(q)])
            if (!seen[static_cast<std::size_t>(p)]) {
                seen[static_cast<std::size_t>(p)] = true;
                queue.push_back(p);
            }
    }
    return seen;
}

std::vector<bool> useful_nodes(const Source& src) {
    auto r = reachable_nodes(src);
    auto c = coreachable_nodes(src);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] && c[i];
    return r;
}

}  // namespace

ValidationReport validate(const Source& src) {
    ValidationReport rep;
    auto reach = reachable_nodes(src);
    for (std::size_t i = 0; i < src.node_count(); ++i) {
        auto q = static_cast<NodeId>(i);
        if (!reach[i]) {
            rep.unreachable_nodes.push_back(q);
            rep.notes.push_back("node '" + src.name(q) + "' is unreachable from the initial node");
        }
        if (!src.is_terminal(q)) {
            rep.non_terminal_nodes.push_back(q);
            rep.notes.push_back("node '" + src.name(q) + "' is not terminal");
        }
    }
    rep.is_t_reduced = rep.unreachable_nodes.empty() && rep.non_terminal_nodes.empty();
    return rep;
}

void require_t_reduced(const Source& src, std::string_view operation) {
    auto rep = validate(src);
    if (!rep.is_t_reduced)
        throw PreconditionError(std::string(operation) + " requires a t-reduced source" +
                                (rep.notes.empty() ? "" : ": " + rep.notes.front()));
}

FactorialityReport check_factorial(const Source& src) {
    // A factor of a word of L_I is a word read along a path between two useful
    // nodes. Simulate such a read from every useful node q alongside a read
    // from q0; the language is factorial iff the q0 side always sits on a
    // terminal node.
    const std::size_t n = src.node_count();
    const std::size_t k = src.alphabet().size();
    const auto useful = useful_nodes(src);
    const std::size_t dead = n;

    for (std::size_t qi = 0; qi < n; ++qi) {
        if (!useful[qi]) continue;
        auto q = static_cast<NodeId>(qi);
        struct Visit {
            std::size_t parent;
            Letter letter;
        };
        std::vector<std::int64_t> index((n + 1) * n, -1);  // (s, p) -> visit id
        std::vector<std::pair<NodeId, std::size_t>> states;
        std::vector<Visit> trail;
        auto push = [&](NodeId p, std::size_t s, std::size_t parent, Letter a) {
            auto& slot = index[s * n + static_cast<std::size_t>(p)];
            if (slot >= 0) return false;
            slot = static_cast<std::int64_t>(states.size());
            states.emplace_back(p, s);
            trail.push_back({parent, a});
            return true;
        };
        push(q, static_cast<std::size_t>(src.initial()), SIZE_MAX, 0);
        for (std::size_t head = 0; head < states.size(); ++head) {
            auto [p, s] = states[head];
            if (s == dead || !src.is_terminal(static_cast<NodeId>(s))) {
                Word w;
                for (std::size_t v = head; trail[v].parent != SIZE_MAX; v = trail[v].parent)
                    w.push_back(trail[v].letter);
                std::reverse(w.begin(), w.end());
                return {false, FactorialityCounterexample{q, std::move(w)}};
            }
            for (std::size_t a = 0; a < k; ++a) {
                NodeId p2 = src.next(p, static_cast<Letter>(a));
                if (p2 == kNoNode || !useful[static_cast<std::size_t>(p2)]) continue;
                std::size_t s2 = dead;
                if (s != dead) {
                    NodeId t = src.next(static_cast<NodeId>(s), static_cast<Letter>(a));
                    if (t != kNoNode) s2 = static_cast<std::size_t>(t);
                }
                push(p2, s2, head, static_cast<Letter>(a));
            }
        }
    }
    return {true, std::nullopt};
}

// ---- language queries ----------------------------------------------------

bool contains(const Source& src, const Word& w) {
    for (Letter a : w)
        if (a >= src.alphabet().size()) throw Error("letter index outside the alphabet");
    NodeId q = src.run(src.initial(), w);
    return q != kNoNode && src.is_terminal(q);
}

bool contains(const Source& src, std::string_view w) {
    return contains(src, src.alphabet().parse_word(w));
}

namespace {

void check_length(std::size_t n, const EnumerationLimits& limits) {
    if (n > limits.max_length)
        throw CapExceeded("word length " + std::to_string(n) + " exceeds the limit of " +
                          std::to_string(limits.max_length));
}

// alive[r][q]: some word of length exactly r leads from q to a terminal node.
std::vector<std::vector<bool>> completion_table(const Source& src, std::size_t n) {
    const std::size_t m = src.node_count();
    std::vector<std::vector<bool>> alive(n + 1, std::vector<bool>(m, false));
    for (std::size_t q = 0; q < m; ++q) alive[0][q] = src.is_terminal(static_cast<NodeId>(q));
    for (std::size_t r = 1; r <= n; ++r)
        for (std::size_t q = 0; q < m; ++q)
            for (std::size_t a = 0; a < src.alphabet().size() && !alive[r][q]; ++a) {
                NodeId t = src.next(static_cast<NodeId>(q), static_cast<Letter>(a));
                alive[r][q] = t != kNoNode && alive[r - 1][static_cast<std::size_t>(t)];
            }
    return alive;
}

}  // namespace

std::vector<Word> enumerate(const Source& src, std::size_t n, const EnumerationLimits& limits) {
    check_length(n, limits);
    const auto alive = completion_table(src, n);
    std::vector<Word> out;
    Word cur;
    cur.reserve(n);
    auto dfs = [&](auto&& self, NodeId q) -> void {
        std::size_t left = n - cur.size();
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (std::size_t a = 0; a < src.alphabet().size(); ++a) {
            NodeId t = src.next(q, static_cast<Letter>(a));
            if (t == kNoNode || !alive[left - 1][static_cast<std::size_t>(t)]) continue;
            cur.push_back(static_cast<Letter>(a));
            self(self, t);
            cur.pop_back();
        }
    };
    if (alive[n][static_cast<std::size_t>(src.initial())]) dfs(dfs, src.initial());
    return out;
}

std::uint64_t count_words(const Source& src, std::size_t n, const EnumerationLimits& limits) {
    check_length(n, limits);
    const std::size_t m = src.node_count();
    std::vector<std::uint64_t> cur(m), nxt(m);
    for (std::size_t q = 0; q < m; ++q) cur[q] = src.is_terminal(static_cast<NodeId>(q)) ? 1 : 0;
    for (std::size_t r = 1; r <= n; ++r) {
        for (std::size_t q = 0; q < m; ++q) {
            std::uint64_t total = 0;
            for (std::size_t a = 0; a < src.alphabet().size(); ++a) {
                NodeId t = src.next(static_cast<NodeId>(q), static_cast<Letter>(a));
                if (t == kNoNode) continue;
                if (__builtin_add_overflow(total, cur[static_cast<std::size_t>(t)], &total))
                    throw CapExceeded("word count overflows 64 bits");
            }
            nxt[q] = total;
        }
        std::swap(cur, nxt);
    }
    return cur[static_cast<std::size_t>(src.initial())];
}

bool is_finite(const Source& src) {
    // Kahn's algorithm on the useful subgraph: finite iff it is acyclic.
    const auto useful = useful_nodes(src);
    const std::size_t n = src.node_count();
    std::vector<std::size_t> indeg(n, 0);
    std::size_t total = 0;
    for (const auto& e : src.edges())
        if (useful[static_cast<std::size_t>(e.from)] && useful[static_cast<std::size_t>(e.to)])
            ++indeg[static_cast<std::size_t>(e.to)];
    std::deque<NodeId> queue;
    for (std::size_t q = 0; q < n; ++q) {
        if (!useful[q]) continue;
        ++total;
        if (indeg[q] == 0) queue.push_back(static_cast<NodeId>(q));
    }
    std::size_t removed = 0;
    while (!queue.empty()) {
        NodeId q = queue.front();
        queue.pop_front();
        ++removed;
        for (std::size_t a = 0; a < src.alphabet().size(); ++a) {
            NodeId t = src.next(q, static_cast<Letter>(a));
            if (t == kNoNode || !useful[static_cast<std::size_t>(t)]) continue;
            if (--indeg[static_cast<std::size_t>(t)] == 0) queue.push_back(t);
        }
    }
    return removed == total;
}

bool is_complement_empty(const Source& src) {
    const auto reach = reachable_nodes(src);
    for (std::size_t q = 0; q < src.node_count(); ++q) {
        if (!reach[q]) continue;
        if (!src.is_terminal(static_cast<NodeId>(q))) return false;
        for (std::size_t a = 0; a < src.alphabet().size(); ++a)
            if (src.next(static_cast<NodeId>(q), static_cast<Letter>(a)) == kNoNode) return false;
    }
    return true;
}

std::optional<Word> shortest_path_word(const Source& src, NodeId from, NodeId to) {
    const std::size_t n = src.node_count();
    std::vector<std::pair<NodeId, Letter>> parent(n, {kNoNode, 0});
    std::vector<bool> seen(n, false);
    std::deque<NodeId> queue{from};
    seen[static_cast<std::size_t>(from)] = true;
    while (!queue.empty()) {
        NodeId q = queue.front();
        queue.pop_front();
        if (q == to) {
            Word w;
            for (NodeId v = to; v != from; v = parent[static_cast<std::size_t>(v)].first)
                w.push_back(parent[static_cast<std::size_t>(v)].second);
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (std::size_t a = 0; a < src.alphabet().size(); ++a) {
            NodeId t = src.next(q, static_cast<Letter>(a));
            if (t == kNoNode || seen[static_cast<std::size_t>(t)]) continue;
            seen[static_cast<std::size_t>(t)] = true;
            parent[static_cast<std::size_t>(t)] = {q, static_cast<Letter>(a)};
            queue.push_back(t);
        }
    }
    return std::nullopt;
}

}  // namespace rfl

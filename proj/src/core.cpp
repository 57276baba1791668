#include "homlab/core.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace homlab {

namespace {

std::string tuple_text(const std::vector<std::string>& t) {
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) out << ",";
        out << t[i];
    }
    out << ")";
    return out.str();
}

std::map<std::string, int> universe_index(const Structure& s) {
    std::map<std::string, int> index;
    for (size_t i = 0; i < s.universe.size(); ++i) index[s.universe[i]] = static_cast<int>(i);
    return index;
}

}  // namespace

bool Signature::has_symbol(const std::string& name) const {
    for (const auto& [sym, arity] : symbols)
        if (sym == name) return true;
    return false;
}

int Signature::arity_of(const std::string& name) const {
    for (const auto& [sym, arity] : symbols)
        if (sym == name) return arity;
    fail(errc::unknown_symbol, "no symbol named \"" + name + "\"");
}

int Structure::position(const std::string& id) const {
    for (size_t i = 0; i < universe.size(); ++i)
        if (universe[i] == id) return static_cast<int>(i);
    return -1;
}

std::vector<std::string> structure_violations(const Structure& s) {
    std::vector<std::string> out;

    if (s.signature.symbols.empty()) out.push_back("signature: empty symbol list");
    std::set<std::string> names;
    for (const auto& [name, arity] : s.signature.symbols) {
        if (!names.insert(name).second) out.push_back("signature: duplicate symbol \"" + name + "\"");
        if (arity < 1) out.push_back("signature: symbol \"" + name + "\" has arity < 1");
    }

    if (s.universe.empty()) out.push_back("universe: empty");
    std::set<std::string> seen;
    for (const auto& id : s.universe)
        if (!seen.insert(id).second) out.push_back("universe: duplicate element \"" + id + "\"");

    for (const auto& [name, tuples] : s.relations)
        if (!names.count(name)) out.push_back("relations: undeclared symbol \"" + name + "\"");
    for (const auto& [name, arity] : s.signature.symbols)
        if (!s.relations.count(name)) out.push_back("relations: missing entry for symbol \"" + name + "\"");

    for (const auto& [name, tuples] : s.relations) {
        if (!names.count(name)) continue;
        const int arity = s.signature.arity_of(name);
        for (const auto& t : tuples) {
            if (static_cast<int>(t.size()) != arity) {
                out.push_back("relation " + name + ": tuple " + tuple_text(t) +
                              ": arity mismatch (expected " + std::to_string(arity) + ")");
                continue;
            }
            for (const auto& e : t)
                if (!seen.count(e))
                    out.push_back("relation " + name + ": tuple " + tuple_text(t) +
                                  ": unknown element \"" + e + "\"");
        }
    }
    return out;
}

std::vector<std::string> homomorphism_violations(const Homomorphism& h) {
    std::vector<std::string> out;
    if (h.source.signature != h.target.signature) {
        out.push_back("signature mismatch between source and target");
        return out;
    }

    const auto target_index = universe_index(h.target);
    for (const auto& x : h.source.universe) {
        auto it = h.assignment.find(x);
        if (it == h.assignment.end()) {
            out.push_back("assignment: no image for element \"" + x + "\"");
        } else if (!target_index.count(it->second)) {
            out.push_back("assignment: image of \"" + x + "\" is not a target element: \"" +
                          it->second + "\"");
        }
    }
    if (!out.empty()) return out;

    for (const auto& [name, tuples] : h.source.relations) {
        auto target_rel = h.target.relations.find(name);
        for (const auto& t : tuples) {
            std::vector<std::string> image;
            image.reserve(t.size());
            for (const auto& e : t) image.push_back(h.assignment.at(e));
            if (target_rel == h.target.relations.end() || !target_rel->second.count(image))
                out.push_back("relation " + name + ": tuple " + tuple_text(t) +
                              " maps to " + tuple_text(image) + " which is not related");
        }
    }
    return out;
}

bool is_homomorphism(const Homomorphism& h) {
    return homomorphism_violations(h).empty();
}

Homomorphism checked_homomorphism(Structure source, Structure target,
                                  std::map<std::string, std::string> assignment) {
    Homomorphism h{std::move(source), std::move(target), std::move(assignment)};
    auto violations = homomorphism_violations(h);
    if (!violations.empty()) fail(errc::invalid_homomorphism, violations.front());
    return h;
}

Structure induced_substructure(const Structure& s, const std::set<std::string>& subset) {
    if (subset.empty()) fail(errc::empty_subset, "induced substructure needs a nonempty subset");
    for (const auto& id : subset)
        if (s.position(id) < 0) fail(errc::unknown_element, "\"" + id + "\" is not in the universe");

    Structure out;
    out.signature = s.signature;
    for (const auto& id : s.universe)
        if (subset.count(id)) out.universe.push_back(id);
    for (const auto& [name, tuples] : s.relations) {
        auto& dst = out.relations[name];
        for (const auto& t : tuples) {
            bool inside = true;
            for (const auto& e : t)
                if (!subset.count(e)) { inside = false; break; }
            if (inside) dst.insert(t);
        }
    }
    return out;
}

Structure product(const Structure& s1, const Structure& s2) {
    if (s1.signature != s2.signature)
        fail(errc::signature_mismatch, "product needs equal signatures");

    auto pair_id = [](const std::string& a, const std::string& b) {
        return "(" + a + "," + b + ")";
    };

    Structure out;
    out.signature = s1.signature;
    for (const auto& a : s1.universe)
        for (const auto& b : s2.universe) out.universe.push_back(pair_id(a, b));

    for (const auto& [name, arity] : s1.signature.symbols) {
        auto& dst = out.relations[name];
        for (const auto& t1 : s1.relations.at(name))
            for (const auto& t2 : s2.relations.at(name)) {
                std::vector<std::string> t;
                t.reserve(t1.size());
                for (size_t i = 0; i < t1.size(); ++i) t.push_back(pair_id(t1[i], t2[i]));
                dst.insert(std::move(t));
            }
    }
    return out;
}

Structure reachability_power(const Structure& s, const std::string& symbol, int length) {
    const int arity = s.signature.arity_of(symbol);
    if (arity != 2) fail(errc::not_binary, "symbol \"" + symbol + "\" has arity " + std::to_string(arity));
    if (length < 1) fail(errc::bad_n, "walk length must be positive");

    const int n = static_cast<int>(s.universe.size());
    const auto index = universe_index(s);
    std::vector<std::vector<char>> step(n, std::vector<char>(n, 0));
    for (const auto& t : s.relations.at(symbol))
        step[index.at(t[0])][index.at(t[1])] = 1;

    std::vector<std::vector<char>> acc = step;
    for (int l = 1; l < length; ++l) {
        std::vector<std::vector<char>> next(n, std::vector<char>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                if (acc[i][k])
                    for (int j = 0; j < n; ++j)
                        if (step[k][j]) next[i][j] = 1;
        acc = std::move(next);
    }

    Structure out;
    out.signature = Signature{{{symbol, 2}}};
    out.universe = s.universe;
    auto& dst = out.relations[symbol];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (acc[i][j]) dst.insert({s.universe[i], s.universe[j]});
    return out;
}

std::vector<std::vector<std::string>> connected_components(const Structure& s) {
    const int n = static_cast<int>(s.universe.size());
    const auto index = universe_index(s);
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);

    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a), b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };

    for (const auto& [name, tuples] : s.relations)
        for (const auto& t : tuples)
            for (size_t i = 1; i < t.size(); ++i) unite(index.at(t[0]), index.at(t[i]));

    std::map<int, std::vector<std::string>> blocks;
    for (int i = 0; i < n; ++i) blocks[find(i)].push_back(s.universe[i]);

    std::vector<std::vector<std::string>> out;
    out.reserve(blocks.size());
    for (auto& [root, members] : blocks) out.push_back(std::move(members));
    return out;
}

namespace {

// Backtracking search for a bijection preserving relations both ways.
// Candidates are filtered by per-position occurrence profiles first;
// partial assignments are checked incrementally on every tuple whose
// entries are fully decided.
struct IsoSearch {
    const Structure& s1;
    const Structure& s2;
    int n;
    std::map<std::string, int> idx1, idx2;
    // per symbol: integer tuples for both sides
    std::vector<std::vector<std::vector<int>>> rel1, rel2;
    std::vector<std::set<std::vector<int>>> rel2_set, rel1_set;
    // element -> list of (symbol, tuple index) it appears in
    std::vector<std::vector<std::pair<int, int>>> touching1, touching2;
    std::vector<std::vector<char>> candidate;
    std::vector<int> image, preimage;

    explicit IsoSearch(const Structure& a, const Structure& b) : s1(a), s2(b) {
        n = static_cast<int>(s1.universe.size());
        idx1 = universe_index(s1);
        idx2 = universe_index(s2);
        const int nsym = static_cast<int>(s1.signature.symbols.size());
        rel1.resize(nsym), rel2.resize(nsym);
        rel1_set.resize(nsym), rel2_set.resize(nsym);
        touching1.assign(n, {}), touching2.assign(n, {});
        for (int si = 0; si < nsym; ++si) {
            const auto& name = s1.signature.symbols[si].first;
            for (const auto& t : s1.relations.at(name)) {
                std::vector<int> it;
                for (const auto& e : t) it.push_back(idx1.at(e));
                for (int e : std::set<int>(it.begin(), it.end()))
                    touching1[e].push_back({si, static_cast<int>(rel1[si].size())});
                rel1_set[si].insert(it);
                rel1[si].push_back(std::move(it));
            }
            for (const auto& t : s2.relations.at(name)) {
                std::vector<int> it;
                for (const auto& e : t) it.push_back(idx2.at(e));
                for (int e : std::set<int>(it.begin(), it.end()))
                    touching2[e].push_back({si, static_cast<int>(rel2[si].size())});
                rel2_set[si].insert(it);
                rel2[si].push_back(std::move(it));
            }
        }
    }

    std::vector<std::vector<int>> profiles(const Structure& s,
                                           const std::vector<std::vector<std::vector<int>>>& rel) {
        std::vector<std::vector<int>> prof(s.universe.size());
        for (size_t si = 0; si < rel.size(); ++si) {
            const int arity = s.signature.symbols[si].second;
            for (auto& p : prof) p.resize(p.size() + arity, 0);
            for (const auto& t : rel[si])
                for (int pos = 0; pos < arity; ++pos) {
                    auto& p = prof[t[pos]];
                    p[p.size() - arity + pos] += 1;
                }
        }
        return prof;
    }

    bool prepare() {
        auto p1 = profiles(s1, rel1), p2 = profiles(s2, rel2);
        auto sorted1 = p1, sorted2 = p2;
        std::sort(sorted1.begin(), sorted1.end());
        std::sort(sorted2.begin(), sorted2.end());
        if (sorted1 != sorted2) return false;

        candidate.assign(n, std::vector<char>(n, 0));
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) candidate[u][v] = (p1[u] == p2[v]);
        return true;
    }

    bool consistent(int u) {
        // forward: fully-decided source tuples through u must land in rel2
        for (auto [si, ti] : touching1[u]) {
            const auto& t = rel1[si][ti];
            std::vector<int> img(t.size());
            bool full = true;
            for (size_t i = 0; i < t.size(); ++i) {
                if (image[t[i]] < 0) { full = false; break; }
                img[i] = image[t[i]];
            }
            if (full && !rel2_set[si].count(img)) return false;
        }
        // backward: fully-decided target tuples through image[u] must pull back
        for (auto [si, ti] : touching2[image[u]]) {
            const auto& t = rel2[si][ti];
            std::vector<int> pre(t.size());
            bool full = true;
            for (size_t i = 0; i < t.size(); ++i) {
                if (preimage[t[i]] < 0) { full = false; break; }
                pre[i] = preimage[t[i]];
            }
            if (full && !rel1_set[si].count(pre)) return false;
        }
        return true;
    }

    bool search(int depth, const std::vector<int>& order) {
        if (depth == n) return true;
        const int u = order[depth];
        for (int v = 0; v < n; ++v) {
            if (preimage[v] >= 0 || !candidate[u][v]) continue;
            image[u] = v;
            preimage[v] = u;
            if (consistent(u) && search(depth + 1, order)) return true;
            image[u] = -1;
            preimage[v] = -1;
        }
        return false;
    }

    std::optional<std::map<std::string, std::string>> run() {
        if (!prepare()) return std::nullopt;
        image.assign(n, -1), preimage.assign(n, -1);

        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return std::count(candidate[a].begin(), candidate[a].end(), 1) <
                   std::count(candidate[b].begin(), candidate[b].end(), 1);
        });

        if (!search(0, order)) return std::nullopt;
        std::map<std::string, std::string> out;
        for (int u = 0; u < n; ++u) out[s1.universe[u]] = s2.universe[image[u]];
        return out;
    }
};

}  // namespace

std::optional<Homomorphism> find_isomorphism(const Structure& s1, const Structure& s2, int budget) {
    if (s1.signature != s2.signature)
        fail(errc::signature_mismatch, "isomorphism search needs equal signatures");
    if (static_cast<int>(s1.universe.size()) > budget ||
        static_cast<int>(s2.universe.size()) > budget)
        fail(errc::budget_exceeded, "universe larger than isomorphism budget " + std::to_string(budget));

    if (s1.universe.size() != s2.universe.size()) return std::nullopt;
    for (const auto& [name, tuples] : s1.relations)
        if (tuples.size() != s2.relations.at(name).size()) return std::nullopt;

    IsoSearch search(s1, s2);
    auto assignment = search.run();
    if (!assignment) return std::nullopt;

    Homomorphism forward = checked_homomorphism(s1, s2, *assignment);
    std::map<std::string, std::string> back;
    for (const auto& [x, y] : *assignment) back[y] = x;
    checked_homomorphism(s2, s1, back);
    return forward;
}

Structure complete_graph(int n) {
    if (n < 1) fail(errc::bad_n, "complete graph needs n >= 1");
    Structure s;
    s.signature = Signature{{{"E", 2}}};
    for (int i = 0; i < n; ++i) s.universe.push_back(std::to_string(i));
    auto& rel = s.relations["E"];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) rel.insert({s.universe[i], s.universe[j]});
    return s;
}

Structure undirected_cycle(int n) {
    if (n < 3) fail(errc::bad_n, "undirected cycle needs n >= 3");
    Structure s;
    s.signature = Signature{{{"E", 2}}};
    for (int i = 0; i < n; ++i) s.universe.push_back(std::to_string(i));
    auto& rel = s.relations["E"];
    for (int i = 0; i < n; ++i) {
        rel.insert({s.universe[i], s.universe[(i + 1) % n]});
        rel.insert({s.universe[(i + 1) % n], s.universe[i]});
    }
    return s;
}

Structure undirected_path(int edges) {
    if (edges < 1) fail(errc::bad_n, "path needs at least one edge");
    Structure s;
    s.signature = Signature{{{"E", 2}}};
    for (int i = 0; i <= edges; ++i) s.universe.push_back(std::to_string(i));
    auto& rel = s.relations["E"];
    for (int i = 0; i < edges; ++i) {
        rel.insert({s.universe[i], s.universe[i + 1]});
        rel.insert({s.universe[i + 1], s.universe[i]});
    }
    return s;
}

Structure single_loop() {
    Structure s;
    s.signature = Signature{{{"E", 2}}};
    s.universe = {"0"};
    s.relations["E"] = {{"0", "0"}};
    return s;
}

}  // namespace homlab

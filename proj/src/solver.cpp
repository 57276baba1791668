#include "homlab/solver.hpp"

#include <algorithm>
#include <deque>

namespace homlab {

namespace {

// Integer-compiled instance shared by all solver entry points.
struct Instance {
    const Structure& b;
    const Structure& a;
    int nb = 0, na = 0;
    struct Rel {
        int symbol = 0;
        std::vector<std::vector<int>> src;  // tuples over source positions
        std::vector<std::vector<int>> tgt;  // tuples over target positions
        std::vector<char> repeated;         // src tuple mentions a variable twice
    };
    std::vector<Rel> rels;
    std::vector<std::vector<std::pair<int, int>>> touching;  // var -> (rel, tuple)

    Instance(const Structure& bb, const Structure& aa) : b(bb), a(aa) {
        if (b.signature != a.signature)
            fail(errc::signature_mismatch, "solver needs equal signatures");
        nb = static_cast<int>(b.universe.size());
        na = static_cast<int>(a.universe.size());

        std::map<std::string, int> bi, ai;
        for (int i = 0; i < nb; ++i) bi[b.universe[i]] = i;
        for (int i = 0; i < na; ++i) ai[a.universe[i]] = i;

        touching.assign(nb, {});
        for (size_t si = 0; si < b.signature.symbols.size(); ++si) {
            const auto& name = b.signature.symbols[si].first;
            Rel rel;
            rel.symbol = static_cast<int>(si);
            for (const auto& t : b.relations.at(name)) {
                std::vector<int> it;
                for (const auto& e : t) it.push_back(bi.at(e));
                const std::set<int> vars(it.begin(), it.end());
                rel.repeated.push_back(vars.size() < it.size() ? 1 : 0);
                rel.src.push_back(std::move(it));
            }
            for (const auto& t : a.relations.at(name)) {
                std::vector<int> it;
                for (const auto& e : t) it.push_back(ai.at(e));
                rel.tgt.push_back(std::move(it));
            }
            const int ri = static_cast<int>(rels.size());
            for (size_t ti = 0; ti < rel.src.size(); ++ti) {
                std::set<int> vars(rel.src[ti].begin(), rel.src[ti].end());
                for (int v : vars) touching[v].push_back({ri, static_cast<int>(ti)});
            }
            rels.push_back(std::move(rel));
        }
    }
};

using Domains = std::vector<std::vector<char>>;  // [var][value]

int domain_size(const Domains& dom, int var) {
    return static_cast<int>(std::count(dom[var].begin(), dom[var].end(), 1));
}

// Prunes until nothing changes. With stop_on_empty the first emptied domain
// aborts (search paths only need the verdict); otherwise emptiness cascades
// so the result is the true greatest fixpoint.
bool propagate(const Instance& inst, Domains& dom, std::deque<std::pair<int, int>> work,
               bool stop_on_empty) {
    std::set<std::pair<int, int>> queued(work.begin(), work.end());
    bool emptied = false;
    while (!work.empty()) {
        auto [ri, ti] = work.front();
        work.pop_front();
        queued.erase({ri, ti});
        const auto& t = inst.rels[ri].src[ti];
        const auto& tgt = inst.rels[ri].tgt;
        const bool repeated = inst.rels[ri].repeated[ti] != 0;
        const int arity = static_cast<int>(t.size());

        for (int pos = 0; pos < arity; ++pos) {
            const int var = t[pos];
            bool changed = false;
            for (int v = 0; v < inst.na; ++v) {
                if (!dom[var][v]) continue;
                bool supported = false;
                for (const auto& tt : tgt) {
                    if (tt[pos] != v) continue;
                    bool fits = true;
                    for (int j = 0; j < arity; ++j)
                        if (!dom[t[j]][tt[j]]) { fits = false; break; }
                    // a support is an assignment to the tuple's variables, so
                    // repeated variables must receive equal values
                    if (fits && repeated)
                        for (int j = 0; j < arity && fits; ++j)
                            for (int l = j + 1; l < arity; ++l)
                                if (t[j] == t[l] && tt[j] != tt[l]) { fits = false; break; }
                    if (fits) { supported = true; break; }
                }
                if (!supported) {
                    dom[var][v] = 0;
                    changed = true;
                }
            }
            if (changed) {
                if (domain_size(dom, var) == 0) {
                    emptied = true;
                    if (stop_on_empty) return false;
                }
                for (auto item : inst.touching[var])
                    if (queued.insert(item).second) work.push_back(item);
            }
        }
    }
    return !emptied;
}

bool propagate_all(const Instance& inst, Domains& dom, bool stop_on_empty) {
    std::deque<std::pair<int, int>> work;
    for (size_t ri = 0; ri < inst.rels.size(); ++ri)
        for (size_t ti = 0; ti < inst.rels[ri].src.size(); ++ti)
            work.push_back({static_cast<int>(ri), static_cast<int>(ti)});
    return propagate(inst, dom, std::move(work), stop_on_empty);
}

Domains full_domains(const Instance& inst) {
    return Domains(inst.nb, std::vector<char>(inst.na, 1));
}

DomainState to_state(const Instance& inst, const Domains& dom) {
    DomainState out;
    for (int x = 0; x < inst.nb; ++x) {
        auto& values = out.domains[inst.b.universe[x]];
        for (int v = 0; v < inst.na; ++v)
            if (dom[x][v]) values.push_back(inst.a.universe[v]);
    }
    return out;
}

// Assign var := v, then re-propagate from the tuples it touches.
bool assign(const Instance& inst, Domains& dom, int var, int v) {
    for (int u = 0; u < inst.na; ++u) dom[var][u] = (u == v);
    std::deque<std::pair<int, int>> work(inst.touching[var].begin(), inst.touching[var].end());
    return propagate(inst, dom, std::move(work), true);
}

Homomorphism hom_from_singletons(const Instance& inst, const Domains& dom) {
    std::map<std::string, std::string> assignment;
    for (int x = 0; x < inst.nb; ++x)
        for (int v = 0; v < inst.na; ++v)
            if (dom[x][v]) assignment[inst.b.universe[x]] = inst.a.universe[v];
    return checked_homomorphism(inst.b, inst.a, std::move(assignment));
}

bool search(const Instance& inst, Domains& dom) {
    int var = -1, best = -1;
    for (int x = 0; x < inst.nb; ++x) {
        const int size = domain_size(dom, x);
        if (size > 1 && (best < 0 || size < best)) { best = size, var = x; }
    }
    if (var < 0) return true;  // all singletons at a fixpoint: a solution

    for (int v = 0; v < inst.na; ++v) {
        if (!dom[var][v]) continue;
        Domains copy = dom;
        if (assign(inst, copy, var, v) && search(inst, copy)) {
            dom = std::move(copy);
            return true;
        }
    }
    return false;
}

void enumerate(const Instance& inst, Domains& dom, int var, long long limit,
               std::vector<std::map<std::string, std::string>>& out, bool& truncated) {
    if (truncated) return;
    if (var == inst.nb) {
        if (static_cast<long long>(out.size()) == limit) {
            truncated = true;
            return;
        }
        std::map<std::string, std::string> assignment;
        for (int x = 0; x < inst.nb; ++x)
            for (int v = 0; v < inst.na; ++v)
                if (dom[x][v]) assignment[inst.b.universe[x]] = inst.a.universe[v];
        out.push_back(std::move(assignment));
        return;
    }
    for (int v = 0; v < inst.na && !truncated; ++v) {
        if (!dom[var][v]) continue;
        Domains copy = dom;
        if (assign(inst, copy, var, v)) enumerate(inst, copy, var + 1, limit, out, truncated);
    }
}

}  // namespace

DomainState arc_consistency(const Structure& b, const Structure& a) {
    Instance inst(b, a);
    Domains dom = full_domains(inst);
    propagate_all(inst, dom, false);
    return to_state(inst, dom);
}

DomainState arc_consistency_refine(const Structure& b, const Structure& a,
                                   const DomainState& start) {
    Instance inst(b, a);
    Domains dom(inst.nb, std::vector<char>(inst.na, 0));
    for (int x = 0; x < inst.nb; ++x) {
        auto it = start.domains.find(b.universe[x]);
        if (it == start.domains.end()) continue;
        for (const auto& v : it->second) {
            const int vi = a.position(v);
            if (vi < 0) fail(errc::unknown_element, "domain value \"" + v + "\" not in target");
            dom[x][vi] = 1;
        }
    }
    propagate_all(inst, dom, false);
    return to_state(inst, dom);
}

std::optional<Homomorphism> hom_exists(const Structure& b, const Structure& a,
                                       const std::map<std::string, std::string>& pins) {
    Instance inst(b, a);
    Domains dom = full_domains(inst);
    for (const auto& [x, v] : pins) {
        const int xi = b.position(x);
        const int vi = a.position(v);
        if (xi < 0) fail(errc::unknown_element, "pinned element \"" + x + "\" not in source");
        if (vi < 0) fail(errc::unknown_element, "pinned value \"" + v + "\" not in target");
        for (int u = 0; u < inst.na; ++u) dom[xi][u] = (u == vi);
    }
    if (!propagate_all(inst, dom, true)) return std::nullopt;
    if (!search(inst, dom)) return std::nullopt;
    return hom_from_singletons(inst, dom);
}

Enumeration hom_enumerate(const Structure& b, const Structure& a, long long limit) {
    Enumeration out;
    if (limit < 0) fail(errc::bad_n, "enumeration limit must be nonnegative");
    Instance inst(b, a);
    Domains dom = full_domains(inst);
    if (!propagate_all(inst, dom, true)) return out;

    std::vector<std::map<std::string, std::string>> assignments;
    enumerate(inst, dom, 0, limit, assignments, out.truncated);
    out.homomorphisms.reserve(assignments.size());
    for (auto& assignment : assignments)
        out.homomorphisms.push_back(checked_homomorphism(b, a, std::move(assignment)));
    return out;
}

}  // namespace homlab

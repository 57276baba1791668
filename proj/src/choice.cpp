#include "homlab/choice.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace homlab {
namespace {

std::vector<std::vector<int>> symmetric_group(int m) {
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> perms;
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    return perms;
}

}  // namespace

std::vector<PermGroup> subgroups(int m, int max_degree) {
    if (m < 1) fail(errc::bad_n, "degree must be at least 1");
    if (m > max_degree || m > 6)
        fail(errc::budget_exceeded, "degree above the subgroup enumeration budget");

    const auto perms = symmetric_group(m);
    const int order = static_cast<int>(perms.size());
    std::map<std::vector<int>, int> rank;
    for (int i = 0; i < order; ++i) rank[perms[i]] = i;

    // composition table, (a*b)(x) = a(b(x)); the identity has rank 0
    std::vector<std::vector<int>> table(order, std::vector<int>(order));
    std::vector<int> composed(m);
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b) {
            for (int x = 0; x < m; ++x) composed[x] = perms[a][perms[b][x]];
            table[a][b] = rank.at(composed);
        }

    auto closure = [&](std::vector<char> mask) {
        std::vector<int> members, work;
        for (int i = 0; i < order; ++i)
            if (mask[i]) { members.push_back(i); work.push_back(i); }
        while (!work.empty()) {
            const int a = work.back();
            work.pop_back();
            for (size_t j = 0; j < members.size(); ++j)
                for (int c : {table[a][members[j]], table[members[j]][a]})
                    if (!mask[c]) {
                        mask[c] = 1;
                        members.push_back(c);
                        work.push_back(c);
                    }
        }
        return mask;
    };

    std::set<std::vector<char>> seen;
    std::vector<std::vector<char>> frontier;
    std::vector<char> trivial(order, 0);
    trivial[0] = 1;
    seen.insert(trivial);
    frontier.push_back(std::move(trivial));
    for (size_t head = 0; head < frontier.size(); ++head) {
        const std::vector<char> current = frontier[head];
        for (int g = 1; g < order; ++g) {
            if (current[g]) continue;
            std::vector<char> extended = current;
            extended[g] = 1;
            auto closed = closure(std::move(extended));
            if (seen.insert(closed).second) frontier.push_back(std::move(closed));
        }
    }

    std::vector<PermGroup> result;
    for (const auto& mask : seen) {
        PermGroup g{m, {}};
        for (int i = 0; i < order; ++i)
            if (mask[i]) g.elements.push_back(perms[i]);
        result.push_back(std::move(g));
    }
    std::sort(result.begin(), result.end(), [](const PermGroup& a, const PermGroup& b) {
        return a.elements.size() != b.elements.size()
                   ? a.elements.size() < b.elements.size()
                   : a.elements < b.elements;
    });
    return result;
}

bool fixed_point_free(const PermGroup& g) {
    for (int x = 0; x < g.degree; ++x) {
        bool fixed = true;
        for (const auto& perm : g.elements) fixed = fixed && perm[x] == x;
        if (fixed) return false;
    }
    return true;
}

bool gauntt_condition(int m, const std::set<int>& s,
                      const std::vector<PermGroup>& all_subgroups) {
    if (m < 2) fail(errc::bad_n, "m must be at least 2");
    if (all_subgroups.empty() || all_subgroups.front().degree != m)
        fail(errc::signature_mismatch, "subgroup list does not match the degree");
    const int cap = s.empty() ? 0 : *s.rbegin();

    auto contains = [](const PermGroup& outer, const PermGroup& inner) {
        return std::includes(outer.elements.begin(), outer.elements.end(),
                             inner.elements.begin(), inner.elements.end());
    };

    for (const auto& g : all_subgroups) {
        if (!fixed_point_free(g)) continue;
        bool satisfied = false;
        for (const auto& h : all_subgroups) {
            if (!fixed_point_free(h) || !contains(g, h)) continue;
            std::set<int> indices;
            for (const auto& sub : all_subgroups)
                if (sub.elements.size() < h.elements.size() && contains(h, sub))
                    indices.insert(static_cast<int>(h.elements.size() / sub.elements.size()));

            // index sums with repetition; targets below 2 are unreachable
            std::vector<char> reachable(cap + 1, 0);
            reachable[0] = 1;
            for (int sum = 1; sum <= cap; ++sum)
                for (int idx : indices)
                    if (idx <= sum && reachable[sum - idx]) { reachable[sum] = 1; break; }
            for (int target : s)
                if (target >= 2 && reachable[target]) { satisfied = true; break; }
            if (satisfied) break;
        }
        if (!satisfied) return false;
    }
    return true;
}

bool gauntt_condition(int m, const std::set<int>& s, int max_degree) {
    return gauntt_condition(m, s, subgroups(m, max_degree));
}

bool prime_sum_criterion(int m, int n) {
    if (m < 2 || n < 2) fail(errc::bad_n, "m and n must be at least 2");
    std::vector<int> large;  // primes above n, candidates for a counterexample
    for (int p = n + 1; p <= m; ++p) {
        bool prime = p >= 2;
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (prime) large.push_back(p);
    }
    // a partition of m into primes all above n refutes the criterion
    std::function<bool(int, size_t)> refutable = [&](int remaining, size_t from) {
        if (remaining == 0) return true;
        for (size_t i = from; i < large.size() && large[i] <= remaining; ++i)
            if (refutable(remaining - large[i], i)) return true;
        return false;
    };
    return !refutable(m, 0);
}

}  // namespace homlab

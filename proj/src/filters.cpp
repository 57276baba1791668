#include "homlab/filters.hpp"

#include <algorithm>
#include <iterator>
#include <string>

namespace homlab {

namespace {

void check_subset(const IndexSet& index_set, const std::vector<int>& subset) {
    for (size_t i = 0; i < subset.size(); ++i) {
        if (subset[i] < 0 || subset[i] >= index_set.size)
            fail(errc::unknown_element, "index " + std::to_string(subset[i]) + " outside the index set");
        if (i > 0 && subset[i] == subset[i - 1])
            fail(errc::parse_error, "duplicate index " + std::to_string(subset[i]));
    }
}

}  // namespace

FiniteFilter filter_from_base(IndexSet index_set, std::vector<int> base) {
    if (index_set.size < 1) fail(errc::bad_n, "index set must be nonempty");
    std::sort(base.begin(), base.end());
    check_subset(index_set, base);
    if (base.empty()) fail(errc::improper_filter, "a filter base must be nonempty");
    return FiniteFilter{index_set, std::move(base)};
}

FiniteFilter filter_from_generators(IndexSet index_set,
                                    const std::vector<std::vector<int>>& generators) {
    if (generators.empty()) fail(errc::parse_error, "generator list must be nonempty");
    std::vector<int> base = full_index_subset(index_set);
    for (auto gen : generators) {
        std::sort(gen.begin(), gen.end());
        check_subset(index_set, gen);
        base = subset_intersection(base, gen);
    }
    if (base.empty()) fail(errc::improper_filter, "generators have empty intersection");
    return FiniteFilter{index_set, std::move(base)};
}

bool filter_membership(const FiniteFilter& f, const std::vector<int>& subset) {
    auto sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    check_subset(f.index_set, sorted);
    return subset_contains(sorted, f.base);
}

bool is_ultrafilter(const FiniteFilter& f) {
    const bool by_base = f.base.size() == 1;

    // Cheap enough to replay the dichotomy definition directly on small
    // index sets; a disagreement would be an implementation bug.
    if (f.index_set.size <= 6) {
        bool by_pairs = true;
        const int n = f.index_set.size;
        for (int mask = 0; mask < (1 << n); ++mask) {
            std::vector<int> x, xc;
            for (int i = 0; i < n; ++i) (mask >> i & 1 ? x : xc).push_back(i);
            const bool in_x = subset_contains(x, f.base);
            const bool in_xc = subset_contains(xc, f.base);
            if (in_x == in_xc) { by_pairs = false; break; }
        }
        if (by_pairs != by_base)
            fail(errc::validation_failure, "ultrafilter characterizations disagree");
    }
    return by_base;
}

std::vector<FiniteFilter> extend_to_ultrafilter(const FiniteFilter& f) {
    std::vector<FiniteFilter> out;
    out.reserve(f.base.size());
    for (int i : f.base) out.push_back(FiniteFilter{f.index_set, {i}});
    return out;
}

bool subset_contains(const std::vector<int>& outer, const std::vector<int>& inner) {
    return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

std::vector<int> subset_intersection(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<int> subset_complement(const IndexSet& index_set, const std::vector<int>& a) {
    std::vector<int> out;
    size_t k = 0;
    for (int i = 0; i < index_set.size; ++i) {
        if (k < a.size() && a[k] == i) { ++k; continue; }
        out.push_back(i);
    }
    return out;
}

std::vector<int> full_index_subset(const IndexSet& index_set) {
    std::vector<int> out(index_set.size);
    for (int i = 0; i < index_set.size; ++i) out[i] = i;
    return out;
}

}  // namespace homlab

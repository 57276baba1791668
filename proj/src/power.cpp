#include "homlab/power.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace homlab {

namespace {

std::string join_digits(const Structure& base, const std::vector<int>& digits) {
    std::ostringstream out;
    for (size_t i = 0; i < digits.size(); ++i) {
        if (i) out << ",";
        out << base.universe[digits[i]];
    }
    return out.str();
}

// a^b with overflow saturation, for budget checks only.
long long checked_pow(long long a, long long b, long long cap) {
    long long r = 1;
    for (long long i = 0; i < b; ++i) {
        if (r > cap / std::max<long long>(a, 1)) return cap + 1;
        r *= a;
    }
    return r;
}

bool advance_odometer(std::vector<int>& digits, int radix) {
    for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
        if (++digits[i] < radix) return true;
        digits[i] = 0;
    }
    return false;
}

}  // namespace

int TolerantPower::carrier_position(const std::string& id) const {
    return carrier.position(id);
}

const std::vector<int>& TolerantPower::digits_of(const std::string& id) const {
    const int pos = carrier.position(id);
    if (pos < 0) fail(errc::unknown_element, "\"" + id + "\" is not a carrier element");
    return element_digits[pos];
}

std::string TolerantPower::id_for_digits(const std::vector<int>& digits) const {
    if (static_cast<int>(digits.size()) != filter.index_set.size)
        fail(errc::bad_n, "digit vector length differs from the index set size");
    for (int d : digits)
        if (d < 0 || d >= static_cast<int>(base_structure.universe.size()))
            fail(errc::unknown_element, "digit outside the base universe");
    return join_digits(base_structure, digits);
}

TolerantPower tolerant_power(const Structure& a, const FiniteFilter& f, long long budget) {
    const long long na = static_cast<long long>(a.universe.size());
    const long long ni = f.index_set.size;
    const long long nbase = static_cast<long long>(f.base.size());

    const long long carrier_size = checked_pow(na, ni, budget);
    if (carrier_size > budget)
        fail(errc::budget_exceeded, "carrier would have " + std::to_string(na) + "^" +
                                        std::to_string(ni) + " elements (budget " +
                                        std::to_string(budget) + ")");

    // Membership depends only on the base coordinates: a tuple is related
    // exactly when every base coordinate reads a related base-structure
    // tuple. So the relation decomposes as independent choices of a base
    // tuple per base coordinate times free extensions, which gives an exact
    // tuple count for the budget check before anything is enumerated.
    const long long free_count = checked_pow(na, ni - nbase, budget);
    for (const auto& [name, arity] : a.signature.symbols) {
        const long long ntuples = static_cast<long long>(a.relations.at(name).size());
        long long total = checked_pow(ntuples, nbase, budget);
        for (int j = 0; j < arity && total <= budget; ++j) {
            if (free_count > 0 && total > budget / std::max<long long>(free_count, 1))
                total = budget + 1;
            else
                total *= free_count;
        }
        if (total > budget)
            fail(errc::budget_exceeded, "relation " + name + " would have more than " +
                                            std::to_string(budget) + " tuples");
    }

    TolerantPower p;
    p.base_structure = a;
    p.filter = f;
    p.carrier.signature = a.signature;

    std::vector<int> digits(ni, 0);
    do {
        p.carrier.universe.push_back(join_digits(a, digits));
        p.element_digits.push_back(digits);
    } while (advance_odometer(digits, static_cast<int>(na)));

    const auto non_base = subset_complement(f.index_set, f.base);
    for (const auto& [name, arity] : a.signature.symbols) {
        auto& dst = p.carrier.relations[name];
        std::vector<std::vector<std::string>> base_tuples(a.relations.at(name).begin(),
                                                          a.relations.at(name).end());
        if (base_tuples.empty()) continue;

        // choice[k] = which base tuple coordinate k of the base reads
        std::vector<int> choice(f.base.size(), 0);
        do {
            std::vector<std::vector<int>> fixed(arity, std::vector<int>(ni, 0));
            for (size_t k = 0; k < f.base.size(); ++k) {
                const auto& t = base_tuples[choice[k]];
                for (int j = 0; j < arity; ++j) fixed[j][f.base[k]] = a.position(t[j]);
            }
            // free digits: arity * |non_base| positions
            std::vector<int> free_digits(arity * non_base.size(), 0);
            do {
                auto full = fixed;
                size_t idx = 0;
                for (int j = 0; j < arity; ++j)
                    for (int i : non_base) full[j][i] = free_digits[idx++];
                std::vector<std::string> tuple;
                tuple.reserve(arity);
                for (int j = 0; j < arity; ++j) tuple.push_back(join_digits(a, full[j]));
                dst.insert(std::move(tuple));
            } while (advance_odometer(free_digits, static_cast<int>(na)));
        } while (advance_odometer(choice, static_cast<int>(base_tuples.size())));
    }
    for (const auto& [name, arity] : a.signature.symbols) p.carrier.relations[name];
    return p;
}

std::vector<int> agreement_set(const TolerantPower& p, const std::string& symbol,
                               const std::vector<std::string>& tuple) {
    const int arity = p.base_structure.signature.arity_of(symbol);
    if (static_cast<int>(tuple.size()) != arity)
        fail(errc::bad_n, "tuple length differs from the arity of " + symbol);
    std::vector<const std::vector<int>*> digits;
    digits.reserve(tuple.size());
    for (const auto& id : tuple) digits.push_back(&p.digits_of(id));

    const auto& rel = p.base_structure.relations.at(symbol);
    std::vector<int> out;
    for (int i = 0; i < p.filter.index_set.size; ++i) {
        std::vector<std::string> coordinate;
        coordinate.reserve(tuple.size());
        for (const auto* d : digits) coordinate.push_back(p.base_structure.universe[(*d)[i]]);
        if (rel.count(coordinate)) out.push_back(i);
    }
    return out;
}

bool power_tuple_related(const TolerantPower& p, const std::string& symbol,
                         const std::vector<std::string>& tuple) {
    return filter_membership(p.filter, agreement_set(p, symbol, tuple));
}

AgreementQuotient quotient_by_agreement(const TolerantPower& p) {
    AgreementQuotient q;
    q.power = p;

    // class key = restriction to the filter base
    std::map<std::vector<int>, int> class_of_key;
    std::vector<int> class_of_element(p.carrier.universe.size());
    for (size_t pos = 0; pos < p.carrier.universe.size(); ++pos) {
        std::vector<int> key;
        key.reserve(p.filter.base.size());
        for (int i : p.filter.base) key.push_back(p.element_digits[pos][i]);
        auto [it, fresh] = class_of_key.insert({key, static_cast<int>(q.classes.size())});
        if (fresh) q.classes.push_back({});
        class_of_element[pos] = it->second;
        q.classes[it->second].push_back(p.carrier.universe[pos]);
    }

    q.quotient.signature = p.carrier.signature;
    for (const auto& members : q.classes) q.quotient.universe.push_back(members.front());

    std::map<std::string, std::string> projection;
    for (size_t pos = 0; pos < p.carrier.universe.size(); ++pos)
        projection[p.carrier.universe[pos]] = q.classes[class_of_element[pos]].front();

    for (const auto& [name, tuples] : p.carrier.relations) {
        auto& dst = q.quotient.relations[name];
        for (const auto& t : tuples) {
            std::vector<std::string> image;
            image.reserve(t.size());
            for (const auto& e : t) image.push_back(projection.at(e));
            dst.insert(std::move(image));
        }
    }

    q.projection = checked_homomorphism(p.carrier, q.quotient, std::move(projection));
    return q;
}

Homomorphism ultrafilter_hom(const TolerantPower& p, const FiniteFilter& u) {
    if (u.index_set != p.filter.index_set)
        fail(errc::signature_mismatch, "ultrafilter lives on a different index set");
    if (!is_ultrafilter(u)) fail(errc::not_ultrafilter, "filter base is not a singleton");
    if (!subset_contains(p.filter.base, u.base))
        fail(errc::not_containing, "ultrafilter does not contain the power's filter");

    const int i0 = u.base.front();
    std::map<std::string, std::string> assignment;
    for (size_t pos = 0; pos < p.carrier.universe.size(); ++pos)
        assignment[p.carrier.universe[pos]] =
            p.base_structure.universe[p.element_digits[pos][i0]];
    return checked_homomorphism(p.carrier, p.base_structure, std::move(assignment));
}

CharacteristicFunction characteristic_function(const TolerantPower& p,
                                               const std::vector<int>& subset) {
    if (p.base_structure.universe.size() < 2)
        fail(errc::bad_n, "characteristic functions need at least two base elements");
    auto sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> digits(p.filter.index_set.size, 0);
    for (int i : sorted) {
        if (i < 0 || i >= p.filter.index_set.size)
            fail(errc::unknown_element, "index " + std::to_string(i) + " outside the index set");
        digits[i] = 1;
    }
    return CharacteristicFunction{std::move(sorted), p.id_for_digits(digits)};
}

std::string constant_element(const TolerantPower& p, int value_position) {
    if (value_position < 0 || value_position >= static_cast<int>(p.base_structure.universe.size()))
        fail(errc::unknown_element, "no base element at position " + std::to_string(value_position));
    return p.id_for_digits(std::vector<int>(p.filter.index_set.size, value_position));
}

CanonicalEmbedding canonical_embedding(const Structure& b, const Structure& a,
                                       long long budget) {
    if (b.signature != a.signature)
        fail(errc::signature_mismatch, "embedding needs equal signatures");

    const long long nb = static_cast<long long>(b.universe.size());
    const long long na = static_cast<long long>(a.universe.size());
    const long long index_count = checked_pow(na, nb, budget);
    if (index_count > budget)
        fail(errc::budget_exceeded, "index set would have " + std::to_string(na) + "^" +
                                        std::to_string(nb) + " maps (budget " +
                                        std::to_string(budget) + ")");

    CanonicalEmbedding e;
    e.source = b;
    e.target = a;

    std::vector<int> digits(nb, 0);
    do {
        e.index_maps.push_back(digits);
    } while (advance_odometer(digits, static_cast<int>(na)));
    const IndexSet index_set{static_cast<int>(e.index_maps.size())};

    // One generator per source tuple: the indices whose map satisfies it.
    std::vector<std::vector<int>> generators;
    std::map<std::string, int> bpos;
    for (size_t i = 0; i < b.universe.size(); ++i) bpos[b.universe[i]] = static_cast<int>(i);
    for (const auto& [name, tuples] : b.relations) {
        const auto& target_rel = a.relations.at(name);
        for (const auto& t : tuples) {
            std::vector<int> gen;
            for (size_t i = 0; i < e.index_maps.size(); ++i) {
                std::vector<std::string> image;
                image.reserve(t.size());
                for (const auto& x : t)
                    image.push_back(a.universe[e.index_maps[i][bpos.at(x)]]);
                if (target_rel.count(image)) gen.push_back(static_cast<int>(i));
            }
            generators.push_back(std::move(gen));
        }
    }
    if (generators.empty()) generators.push_back(full_index_subset(index_set));
    e.filter = filter_from_generators(index_set, generators);

    // psi(x) = the function i -> i(x), encoded like a carrier element.
    std::map<std::string, std::string> assignment;
    std::vector<std::string> image_universe;
    std::vector<std::vector<int>> image_digits;
    for (size_t x = 0; x < b.universe.size(); ++x) {
        std::vector<int> fd(e.index_maps.size());
        for (size_t i = 0; i < e.index_maps.size(); ++i) fd[i] = e.index_maps[i][x];
        std::string id = join_digits(a, fd);
        assignment[b.universe[x]] = id;
        if (std::find(image_universe.begin(), image_universe.end(), id) == image_universe.end()) {
            image_universe.push_back(id);
            image_digits.push_back(std::move(fd));
        }
    }

    // Induced substructure of the (unmaterialized) carrier on psi's image:
    // tuples are those whose agreement set contains the filter base.
    e.image.signature = b.signature;
    e.image.universe = image_universe;
    for (const auto& [name, arity] : b.signature.symbols) {
        auto& dst = e.image.relations[name];
        const auto& target_rel = a.relations.at(name);
        std::vector<int> pick(arity, 0);
        do {
            bool related = true;
            for (int i : e.filter.base) {
                std::vector<std::string> coordinate;
                coordinate.reserve(arity);
                for (int j = 0; j < arity; ++j)
                    coordinate.push_back(a.universe[image_digits[pick[j]][i]]);
                if (!target_rel.count(coordinate)) { related = false; break; }
            }
            if (related) {
                std::vector<std::string> tuple;
                tuple.reserve(arity);
                for (int j = 0; j < arity; ++j) tuple.push_back(image_universe[pick[j]]);
                dst.insert(std::move(tuple));
            }
        } while (advance_odometer(pick, static_cast<int>(image_universe.size())));
    }

    e.psi = checked_homomorphism(b, e.image, std::move(assignment));
    return e;
}

Homomorphism embedding_round_trip(const CanonicalEmbedding& e, const FiniteFilter& u) {
    if (u.index_set != e.filter.index_set)
        fail(errc::signature_mismatch, "ultrafilter lives on a different index set");
    if (!is_ultrafilter(u)) fail(errc::not_ultrafilter, "filter base is not a singleton");
    if (!subset_contains(e.filter.base, u.base))
        fail(errc::not_containing, "ultrafilter does not contain the embedding filter");

    const auto& i0 = e.index_maps[u.base.front()];
    std::map<std::string, std::string> assignment;
    for (size_t x = 0; x < e.source.universe.size(); ++x)
        assignment[e.source.universe[x]] = e.target.universe[i0[x]];
    return checked_homomorphism(e.source, e.target, std::move(assignment));
}

Evaluation evaluation_hom(const TolerantPower& p, const std::set<std::string>& elements) {
    Structure sub = induced_substructure(p.carrier, elements);

    std::vector<int> support = full_index_subset(p.filter.index_set);
    for (const auto& [name, tuples] : sub.relations)
        for (const auto& t : tuples)
            support = subset_intersection(support, agreement_set(p, name, t));
    if (support.empty())
        fail(errc::validation_failure, "common support of a related piece cannot be empty");

    const int i0 = support.front();
    std::map<std::string, std::string> assignment;
    for (const auto& id : sub.universe)
        assignment[id] = p.base_structure.universe[p.digits_of(id)[i0]];
    return Evaluation{std::move(support),
                      checked_homomorphism(std::move(sub), p.base_structure, std::move(assignment))};
}

Homomorphism push_hom_to_quotient(const AgreementQuotient& q, const Homomorphism& phi) {
    if (phi.source.universe != q.power.carrier.universe)
        fail(errc::invalid_homomorphism, "coloring must map the carrier");
    auto violations = homomorphism_violations(phi);
    if (!violations.empty()) fail(errc::invalid_homomorphism, violations.front());

    std::map<std::string, std::string> assignment;
    for (const auto& members : q.classes) {
        int least = static_cast<int>(phi.target.universe.size());
        for (const auto& member : members)
            least = std::min(least, phi.target.position(phi.assignment.at(member)));
        assignment[members.front()] = phi.target.universe[least];
    }
    return checked_homomorphism(q.quotient, phi.target, std::move(assignment));
}

bool lex_sum_check(const TolerantPower& p, long long exhaustive_limit) {
    // classes via restriction to the base, computed from digits so the check
    // is meaningful even on a tampered carrier
    std::map<std::vector<int>, std::vector<std::string>> classes;
    std::map<std::string, const std::vector<int>*> key_of;
    for (size_t pos = 0; pos < p.carrier.universe.size(); ++pos) {
        std::vector<int> key;
        key.reserve(p.filter.base.size());
        for (int i : p.filter.base) key.push_back(p.element_digits[pos][i]);
        auto [it, fresh] = classes.insert({std::move(key), {}});
        it->second.push_back(p.carrier.universe[pos]);
        key_of[p.carrier.universe[pos]] = &it->first;
    }
    auto class_of = [&](const std::string& id) -> const std::vector<std::string>& {
        return classes.at(*key_of.at(id));
    };

    long long work = 0;
    for (const auto& [name, tuples] : p.carrier.relations)
        for (const auto& t : tuples)
            for (const auto& e : t) work += static_cast<long long>(class_of(e).size());

    if (work <= exhaustive_limit) {
        for (const auto& [name, tuples] : p.carrier.relations)
            for (const auto& t : tuples)
                for (size_t j = 0; j < t.size(); ++j)
                    for (const auto& substitute : class_of(t[j])) {
                        auto tt = t;
                        tt[j] = substitute;
                        if (!tuples.count(tt)) return false;
                    }
        return true;
    }

    std::mt19937 rng(2024);
    for (const auto& [name, tuples] : p.carrier.relations) {
        if (tuples.empty()) continue;
        std::vector<std::vector<std::string>> list(tuples.begin(), tuples.end());
        for (long long trial = 0; trial < exhaustive_limit; ++trial) {
            const auto& t = list[rng() % list.size()];
            const size_t j = rng() % t.size();
            const auto& members = class_of(t[j]);
            auto tt = t;
            tt[j] = members[rng() % members.size()];
            if (!tuples.count(tt)) return false;
        }
    }
    return true;
}

}  // namespace homlab

#include "ladlab/hypotheses.hpp"

#include <limits>
#include <string>

#include "ladlab/errors.hpp"

namespace ladlab {
namespace {

std::uint64_t choose3(std::uint64_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }
std::uint64_t choose2(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

void check_class(int n) {
    if (n < 3) throw EmptyInput("H_n is empty for n < 3");
    check_dimension(n);
}

}  // namespace

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

std::uint64_t count_monomials(int n) {
    if (n < 3) throw EmptyInput("H_n is empty for n < 3");
    return 8 * choose3(static_cast<std::uint64_t>(n));
}

BigInt count_dnfs(int n, std::uint64_t t) {
    const std::uint64_t a = count_monomials(n);
    if (t < 1 || t > a) {
        throw RangeError("term count t=" + std::to_string(t) + " outside [1, " + std::to_string(a) + "]");
    }
    return binomial(a, t);
}

ClassCounts class_counts(int n, std::uint64_t t) { return ClassCounts{count_monomials(n), count_dnfs(n, t)}; }

std::vector<CubicMonomial> enumerate_monomials(int n) {
    check_class(n);
    std::vector<CubicMonomial> out;
    out.reserve(count_monomials(n));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                for (unsigned pol = 0; pol < 8; ++pol) out.push_back(CubicMonomial::from_bits(i, j, k, pol));
    return out;
}

MonomialId monomial_to_id(int n, const CubicMonomial& m) {
    check_class(n);
    if (m.max_var() > n) throw DimensionError("monomial variable exceeds n");
    const auto un = static_cast<std::uint64_t>(n);
    const auto i = static_cast<std::uint64_t>(m.vars()[0]);
    const auto j = static_cast<std::uint64_t>(m.vars()[1]);
    const auto k = static_cast<std::uint64_t>(m.vars()[2]);
    // Triples whose first element is < i, then pairs after i whose first element is < j.
    const std::uint64_t rank = (choose3(un) - choose3(un - i + 1)) + (choose2(un - i) - choose2(un - j + 1)) + (k - j - 1);
    return MonomialId{static_cast<std::uint32_t>(rank * 8 + m.polarity_bits())};
}

CubicMonomial monomial_from_id(int n, MonomialId id) {
    check_class(n);
    if (id.value >= count_monomials(n)) {
        throw RangeError("monomial id " + std::to_string(id.value) + " out of range for n=" + std::to_string(n));
    }
    const auto un = static_cast<std::uint64_t>(n);
    std::uint64_t rank = id.value / 8;
    int i = 1;
    while (rank >= choose2(un - static_cast<std::uint64_t>(i))) {
        rank -= choose2(un - static_cast<std::uint64_t>(i));
        ++i;
    }
    int j = i + 1;
    while (rank >= un - static_cast<std::uint64_t>(j)) {
        rank -= un - static_cast<std::uint64_t>(j);
        ++j;
    }
    const int k = j + 1 + static_cast<int>(rank);
    return CubicMonomial::from_bits(i, j, k, id.value % 8);
}

std::uint64_t dnf_rank(std::span<const MonomialId> ids) {
    BigInt rank = 0;
    for (std::size_t q = 0; q < ids.size(); ++q) {
        if (q > 0 && !(ids[q - 1] < ids[q])) throw std::invalid_argument("dnf_rank needs strictly increasing ids");
        rank += binomial(ids[q].value, q + 1);
    }
    if (rank > std::numeric_limits<std::uint64_t>::max()) throw RangeError("DNF rank exceeds 64 bits");
    return static_cast<std::uint64_t>(rank);
}

std::vector<MonomialId> dnf_ids_from_rank(std::uint64_t rank, int t) {
    if (t < 1) throw RangeError("term count must be positive");
    std::vector<MonomialId> ids(static_cast<std::size_t>(t));
    BigInt r = rank;
    std::uint64_t upper = std::numeric_limits<std::uint32_t>::max();
    for (int q = t; q >= 1; --q) {
        // Largest c < upper with C(c, q) <= r, by bisection.
        std::uint64_t lo = static_cast<std::uint64_t>(q - 1);
        std::uint64_t hi = upper;
        while (hi - lo > 1) {
            const std::uint64_t mid = lo + (hi - lo) / 2;
            if (binomial(mid, static_cast<std::uint64_t>(q)) <= r) lo = mid;
            else hi = mid;
        }
        ids[static_cast<std::size_t>(q - 1)] = MonomialId{static_cast<std::uint32_t>(lo)};
        r -= binomial(lo, static_cast<std::uint64_t>(q));
        upper = lo;
    }
    return ids;
}

DnfEnumeration enumerate_dnfs(int n, int t, std::uint64_t budget, std::uint64_t start) {
    check_class(n);
    if (t < 1) throw RangeError("term count must be positive");
    const std::uint64_t a = count_monomials(n);
    const BigInt total = count_dnfs(n, static_cast<std::uint64_t>(t));

    DnfEnumeration out;
    if (BigInt{start} >= total) return out;

    const auto monomials = enumerate_monomials(n);
    std::vector<std::uint32_t> c(static_cast<std::size_t>(t));
    {
        const auto first = dnf_ids_from_rank(start, t);
        for (std::size_t q = 0; q < c.size(); ++q) c[q] = first[q].value;
    }

    BigInt produced = start;
    while (out.ids.size() < budget) {
        std::vector<MonomialId> ids;
        std::vector<CubicMonomial> terms;
        ids.reserve(c.size());
        terms.reserve(c.size());
        for (auto v : c) {
            ids.push_back(MonomialId{v});
            terms.push_back(monomials[v]);
        }
        out.ids.push_back(std::move(ids));
        out.formulas.emplace_back(std::move(terms));
        ++produced;
        if (produced >= total) return out;

        // Next t-subset in colex order.
        std::size_t q = 0;
        while (q + 1 < c.size() && c[q] + 1 == c[q + 1]) ++q;
        ++c[q];
        for (std::size_t r = 0; r < q; ++r) c[r] = static_cast<std::uint32_t>(r);
        if (c.back() >= a) return out;
    }
    out.truncated = true;
    return out;
}

}  // namespace ladlab

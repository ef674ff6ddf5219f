#pragma once

// The hypothesis classes H_n (cubic monomials) and H_n^(t) (DNFs of t
// distinct cubic monomials): canonical ids, enumeration, exact counts.
//
// Canonical monomial order: variable triples (i, j, k) lexicographically,
// then the polarity triple read as a 3-bit number with a_i as the high bit.
// So id = 8 * lex_rank(i, j, k) + polarity_bits.

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ladlab/boolcore.hpp"

namespace ladlab {

using BigInt = boost::multiprecision::cpp_int;

struct MonomialId {
    std::uint32_t value = 0;
    friend constexpr auto operator<=>(MonomialId, MonomialId) = default;
};

BigInt binomial(std::uint64_t n, std::uint64_t k);

// A(n;3) = 8 * C(n,3). Throws EmptyInput for n < 3.
std::uint64_t count_monomials(int n);

// B(n;t,3) = C(A(n;3), t), exact. Throws RangeError unless 1 <= t <= A(n;3).
BigInt count_dnfs(int n, std::uint64_t t);

struct ClassCounts {
    std::uint64_t monomials = 0;  // A(n;3)
    BigInt dnfs;                  // B(n;t,3)
};

ClassCounts class_counts(int n, std::uint64_t t);

std::vector<CubicMonomial> enumerate_monomials(int n);

CubicMonomial monomial_from_id(int n, MonomialId id);
MonomialId monomial_to_id(int n, const CubicMonomial& m);

// Colex rank of a strictly increasing id set: sum over positions q of C(id_q, q+1).
std::uint64_t dnf_rank(std::span<const MonomialId> ids);

// Inverse of dnf_rank for t-subsets.
std::vector<MonomialId> dnf_ids_from_rank(std::uint64_t rank, int t);

struct DnfEnumeration {
    std::vector<std::vector<MonomialId>> ids;  // strictly increasing per formula
    std::vector<DnfFormula> formulas;
    bool truncated = false;
};

// t-subsets of H_n in colex order of their id sets, starting at colex rank
// `start` and yielding at most `budget` formulas. `truncated` is set when the
// class has formulas past the last one yielded.
DnfEnumeration enumerate_dnfs(int n, int t, std::uint64_t budget, std::uint64_t start = 0);

}  // namespace ladlab

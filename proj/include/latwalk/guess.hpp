#pragma once

#include <optional>
#include <vector>

#include "latwalk/matrix.hpp"
#include "latwalk/shift_operator.hpp"
#include "latwalk/walks.hpp"

namespace latwalk {

enum class FitStatus { FITTED, VERIFIED, REFUTED };

enum class AnsatzStructure {
    NONE,
    // R = R0(n,N) + a R1(a,b,n,A,B,N) + b R2(b,n,A,B,N) with R0 != 0.
    // As a linear constraint: coefficient monomials constant in the space
    // variables are allowed only on pure-time-shift terms.
    QUASI,
};

struct Ansatz {
    std::vector<std::vector<int>> support;  // shift exponent vectors, all >= 0
    int coeff_total_degree = 0;
    AnsatzStructure structure = AnsatzStructure::NONE;
};

// Half-open index window [begin, end).
struct Window {
    long begin = 0;
    long end = 0;
    long size() const { return end - begin; }
};

struct Candidate {
    ShiftOperator op;
    Window fit;
    Window heldout;
    FitStatus status = FitStatus::FITTED;
    bool heldout_vacuous = false;  // VERIFIED over an empty held-out window
};

// Fits sum_{i<=order} p_i(n) f(n+i) = 0, deg p_i <= degree, on the earliest
// indices and verifies on the latest 25%. Returns none when the fit system
// has full column rank; UsageError when the sequence is too short
// (required: (order+1)(degree+1) + order + 5 terms).
std::optional<Candidate> fit_univariate(const std::vector<Int>& seq, int order, int degree);

// Tries (order, degree) pairs in increasing order and returns the first
// VERIFIED candidate. Pairs with insufficient data are skipped (and counted).
struct UnivariateSearchResult {
    std::optional<Candidate> found;
    int tried = 0;
    int skipped_insufficient = 0;
    int refuted = 0;
};
UnivariateSearchResult search_univariate(const std::vector<Int>& seq, int order_max,
                                         int degree_max);

// Support pattern of a return sequence: period = gcd of gaps between
// nonzero entries, and the re-indexed nonzero subsequence.
struct SupportPattern {
    long period = 1;
    std::vector<Int> subseq;
};
SupportPattern extract_support(const std::vector<Int>& seq);

// Table cells the fit system is evaluated at.
struct TablePoint {
    int m = 0;
    std::vector<long> n;
};

// One row per window point, one column per (shift, coefficient-monomial)
// unknown surviving the structural filter; entry = monomial value at the
// point times the table value at the shifted point.
RatMatrix build_fit_system(const WalkTable& t, const Ansatz& a,
                           const std::vector<TablePoint>& window);

// Fits the structured ansatz on a fully retained table over (n; a, b),
// discards nullspace vectors with vanishing pure-shift block (R0 = 0), and
// verifies survivors on a disjoint held-out window. Returns the minimal
// verified candidate or none.
std::optional<Candidate> fit_quasi(const WalkTable& t, const Ansatz& a);

// Substitutes a = b = 0; the structured shape makes all space-shift terms
// vanish, leaving the univariate R0(n,N).
ShiftOperator specialize(const Candidate& c);

// Applies the candidate operator to the sequence over the window; VERIFIED
// iff every residual is zero.
FitStatus verify_heldout(Candidate& c, const std::vector<Int>& seq, const Window& window);

}  // namespace latwalk

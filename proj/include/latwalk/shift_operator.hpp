#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "latwalk/poly.hpp"
#include "latwalk/walks.hpp"

namespace latwalk {

// Finite sum of terms p(v) * G^e where v is the ordered index-variable
// tuple, G the matching tuple of shift generators and e an integer exponent
// vector (negative exponents allowed). Normal form keeps every polynomial
// coefficient to the LEFT of its shift monomial; moving a monomial with
// exponent e across p(v) substitutes v -> v + e.
class ShiftOperator {
  public:
    using TermMap = std::map<std::vector<int>, Poly>;

    ShiftOperator() = default;
    ShiftOperator(std::vector<std::string> index_vars, std::vector<std::string> gens);

    const std::vector<std::string>& index_vars() const { return vars_; }
    const std::vector<std::string>& gens() const { return gens_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const std::vector<int>& shift, const Poly& coeff);
    void add_term(const std::vector<int>& shift, const Rat& coeff);

    ShiftOperator operator+(const ShiftOperator& o) const;
    ShiftOperator operator-(const ShiftOperator& o) const;
    ShiftOperator operator-() const;
    ShiftOperator operator*(const ShiftOperator& o) const;
    bool operator==(const ShiftOperator& o) const;

    // Max total degree over coefficient polynomials; -1 for zero.
    int coeff_degree() const;
    bool has_constant_coeffs() const;

    // Substitute constants for a subset of index variables; terms whose
    // coefficient vanishes are dropped.
    ShiftOperator substitute(const std::vector<std::pair<size_t, Rat>>& assignments) const;

    // Restrict to the named generators/variables (the others must no longer
    // occur in any shift exponent or coefficient).
    ShiftOperator project(const std::vector<size_t>& keep) const;

    // Every coefficient cleared to integer content 1, positive grlex lead.
    ShiftOperator normalized() const;

    std::string to_string() const;
    // Multi-line format round-tripping to_string() plus header lines, e.g.
    //   vars: m,n1,n2
    //   gens: M,N1,N2
    //   (1) + (-1)*M^-1*N1 + ...
    std::string to_text() const;
    static ShiftOperator from_text(const std::string& text);

  private:
    void check_compatible(const ShiftOperator& o) const;

    std::vector<std::string> vars_;
    std::vector<std::string> gens_;
    TermMap terms_;
};

// x*y - y*x.
ShiftOperator commutator(const ShiftOperator& x, const ShiftOperator& y);

// True iff all spatial shift exponents are >= 0. Generator `time_gen` (the
// walk-length shift, default index 0) is exempt.
bool is_good(const ShiftOperator& x, size_t time_gen = 0);

// Q = 1 - M^{-1} sum_s N^{-s}, over vars (m, n1..nd), gens (M, N1..Nd).
ShiftOperator transfer_operator(const StepSet& steps);

struct ResidualCell {
    int m = 0;
    std::vector<long> n;
    Int value;
};

struct ResidualReport {
    size_t cells_checked = 0;
    std::vector<ResidualCell> nonzero;  // capped; see max_witnesses
    size_t nonzero_total = 0;
    bool all_zero() const { return nonzero_total == 0; }
};

// Evaluates sum p(m,n) F(m+e0; n+e') at every domain cell; F is the table
// with zero extension outside the region and for m < 0. Throws UsageError
// when a referenced cell cannot be resolved.
ResidualReport apply_operator(const ShiftOperator& x, const WalkTable& t,
                              const std::function<bool(int, const std::vector<long>&)>& domain,
                              size_t max_witnesses = 16);

// Largest/smallest time-shift exponent across terms (0 for the zero operator).
int max_time_shift(const ShiftOperator& x);

struct ReductionChain {
    ShiftOperator Q;
    // (P_i, R_i) pairs with R_i = P_i; the chain ends when the next
    // commutator vanishes.
    std::vector<std::pair<ShiftOperator, ShiftOperator>> pairs;
    std::vector<bool> good;         // is_good(R_i)
    int first_not_good = -1;        // index of the first non-good R_i, or -1
    size_t depth() const { return pairs.size(); }
};

// Q must have constant coefficients. Builds P_0 = P, P_{i+1} = [Q, P_i]
// until zero; the identity Q P_i = R_i Q + P_{i+1} then holds with
// R_i = P_i. Goodness of each R_i is reported, never enforced.
ReductionChain reduction_chain(const ShiftOperator& Q, const ShiftOperator& P,
                               bool require_good = false);

struct Certificate {
    ReductionChain chain;
    bool identities_ok = false;
    bool base_ok = false;       // m=0 slice of the table is the delta at the origin
    bool valid = false;
    // one report per chain member, over region cells with m >= 1
    std::vector<ResidualReport> region_residuals;
    // informational: residuals on out-of-region cells adjacent to the region
    std::vector<ResidualReport> boundary_residuals;
    std::string witness;  // human-readable first failure, empty when valid
};

// Enumerates the walk, builds the chain against transfer_operator(steps),
// and applies every P_i to the table. VALID iff the operator identities
// hold, all in-region residuals (m >= 1) vanish, and the initial slice is
// the delta.
Certificate certify(const ShiftOperator& P, const StepSet& steps, const Region& region,
                    int m_max);

// Residuals of a univariate operator (vars {n}, gens {N}) applied to a
// sequence; positions n with n + max shift beyond the data are skipped.
std::vector<std::pair<long, Int>> apply_to_sequence(const ShiftOperator& x,
                                                    const std::vector<Int>& seq, long n_begin,
                                                    long n_end);

}  // namespace latwalk

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latwalk/rational.hpp"
#include "latwalk/walks.hpp"

namespace latwalk {

// Rising factorial a(a+1)...(a+n-1); empty product 1.
Rat pochhammer(const Rat& a, long n);

// One Pochhammer factor (offset)_{n - shift + length_delta}.
struct PochFactor {
    Rat offset;
    int length_delta = 0;
};

// Hypergeometric product formula for a return-count sequence: the value at
// walk length period*n is prefactor * base^(n-shift) * prod num / prod den.
// A `binomial` form instead evaluates 4^n C(3n,n) / ((n+1)(2n+1)).
struct ClosedForm {
    int period = 1;
    int shift = 0;  // formulas stated in n-1 use shift 1 and apply for n >= 1
    bool zero = false;
    bool binomial = false;
    Rat prefactor = 1;
    Rat base = 1;
    std::vector<PochFactor> num;
    std::vector<PochFactor> den;
};

struct CatalogEntry {
    std::string key;
    StepSet steps;
    Region region;
    ClosedForm form;
};

struct Catalog {
    std::map<std::string, CatalogEntry> entries;  // "1".."11", "kreweras", "gessel"
    int version = 0;

    const CatalogEntry& at(const std::string& key) const;
};

// Loads the versioned JSON catalog; path defaults to the file shipped with
// the build.
Catalog load_catalog(const std::string& path = "");
std::string default_catalog_path();

// Exact integer value of the formula at n; for shifted forms n=0 means the
// empty walk and evaluates to 1. Throws IntegrityError on a non-integer.
Int eval_closed_form(const ClosedForm& cf, long n);

struct VerifyMismatch {
    long n = 0;  // sequence index (walk length period*n), or walk length m for zero rows
    Int expected;
    Int actual;
};

struct VerifyReport {
    std::string key;
    long points_checked = 0;
    std::vector<VerifyMismatch> mismatches;
    bool ok() const { return mismatches.empty(); }
};

// Compares the closed form against F(period*n; origin) for n = 0..n_max,
// or against 0 at every walk length 1..m_max for zero rows.
VerifyReport verify_entry(const CatalogEntry& entry, const WalkTable& t, long n_max);

// Young-Frobenius-MacMahon count of chamber walks to a weakly decreasing
// shape: prod_{i<j}(n_i-n_j+j-i) * (sum n_i)! / prod_i (n_i+d-i)!.
Int ballot_count(const std::vector<long>& shape);

}  // namespace latwalk

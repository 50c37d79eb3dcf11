#pragma once

#include <map>
#include <string>
#include <vector>

#include "latwalk/rational.hpp"

namespace latwalk {

// Graded lexicographic order on exponent vectors.
struct GrlexLess {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const;
};

// Sparse multivariate polynomial with rational coefficients over a fixed,
// ordered variable list. Canonical: no zero coefficients are stored and
// terms are kept in grlex order, so operator== is structural equality.
class Poly {
  public:
    using TermMap = std::map<std::vector<int>, Rat, GrlexLess>;

    Poly() = default;
    explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static Poly constant(std::vector<std::string> vars, const Rat& c);
    // The monomial c * vars[i]^1.
    static Poly variable(std::vector<std::string> vars, size_t i, const Rat& c = 1);

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Max total degree; -1 for the zero polynomial.
    int degree() const;

    void add_term(const std::vector<int>& exps, const Rat& coeff);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rat& c) const;
    bool operator==(const Poly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }

    Rat eval(const std::vector<Rat>& point) const;
    // Substitute vars[i] -> vars[i] + delta[i] (integer shifts).
    Poly shifted(const std::vector<int>& delta) const;
    // Substitute the given variables by constants; result keeps the full
    // variable list (the substituted variables simply no longer occur).
    Poly substitute(const std::vector<std::pair<size_t, Rat>>& assignments) const;

    // Scale so all coefficients are integers with content 1 and the grlex-
    // leading coefficient is positive. Zero polynomial is left alone.
    Poly normalized_integral() const;

    std::string to_string() const;
    // Parses sums of monomials like "2*n^2 - 3*m*n + 1" over the given vars.
    static Poly parse(const std::vector<std::string>& vars, const std::string& text);

  private:
    void check_same_vars(const Poly& o) const;

    std::vector<std::string> vars_;
    TermMap terms_;
};

inline Poly operator*(const Rat& c, const Poly& p) { return p * c; }

}  // namespace latwalk

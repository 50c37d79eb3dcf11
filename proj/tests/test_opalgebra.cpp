#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "latwalk/shift_operator.hpp"

using namespace latwalk;

namespace {

const std::vector<std::string> kVars{"m", "n1", "n2"};
const std::vector<std::string> kGens{"M", "N1", "N2"};

ShiftOperator parse_op(const std::string& body) {
    return ShiftOperator::from_text("vars: m,n1,n2\ngens: M,N1,N2\n" + body);
}

ShiftOperator kreweras_Q() { return transfer_operator(parse_steps("-1,0;0,-1;1,1")); }

ShiftOperator random_operator(std::mt19937_64& rng, int max_terms, int max_degree,
                              bool nonneg_space = false) {
    std::uniform_int_distribution<int> shift(-2, 2), nterm(1, max_terms), coef(-5, 5),
        expo(0, max_degree);
    ShiftOperator op(kVars, kGens);
    int terms = nterm(rng);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> e{shift(rng), shift(rng), shift(rng)};
        if (nonneg_space) {
            e[1] = std::abs(e[1]);
            e[2] = std::abs(e[2]);
        }
        Poly p(kVars);
        int ex0 = expo(rng), ex1 = expo(rng), ex2 = 0;
        if (ex0 + ex1 > max_degree) ex1 = 0;
        p.add_term({ex0, ex1, ex2}, Rat(coef(rng)));
        if (p.is_zero()) p.add_term({0, 0, 0}, Rat(1));
        op.add_term(e, p);
    }
    if (op.is_zero()) op.add_term({0, 0, 0}, Rat(1));
    return op;
}

// Evaluate an operator against an arbitrary discrete function (for the
// composition homomorphism check).
using Fn = std::function<std::optional<Int>(int, const std::vector<long>&)>;

std::optional<Rat> eval_at(const ShiftOperator& op, const Fn& f, int m,
                           const std::vector<long>& n) {
    std::vector<Rat> point;
    point.emplace_back(m);
    for (long c : n) point.emplace_back(c);
    Rat sum = 0;
    for (const auto& [e, p] : op.terms()) {
        std::vector<long> sn(n.size());
        for (size_t i = 0; i < n.size(); ++i) sn[i] = n[i] + e[i + 1];
        auto v = f(m + e[0], sn);
        if (!v) return std::nullopt;
        if (*v != 0) sum += p.eval(point) * Rat(*v);
    }
    return sum;
}

}  // namespace

TEST_CASE("normalization commutation rule") {
    // N*n -> (n+1)*N, in one variable for legibility
    ShiftOperator N({"n"}, {"N"});
    N.add_term({1}, Rat(1));
    ShiftOperator n({"n"}, {"N"});
    n.add_term({0}, Poly::parse({"n"}, "n"));
    ShiftOperator expect({"n"}, {"N"});
    expect.add_term({1}, Poly::parse({"n"}, "n+1"));
    CHECK(N * n == expect);

    // M^-1 * m -> (m-1) * M^-1
    ShiftOperator Minv({"m"}, {"M"});
    Minv.add_term({-1}, Rat(1));
    ShiftOperator mm({"m"}, {"M"});
    mm.add_term({0}, Poly::parse({"m"}, "m"));
    ShiftOperator expect2({"m"}, {"M"});
    expect2.add_term({-1}, Poly::parse({"m"}, "m-1"));
    CHECK(Minv * mm == expect2);
}

TEST_CASE("commutators") {
    ShiftOperator N({"n"}, {"N"});
    N.add_term({1}, Rat(1));
    ShiftOperator n({"n"}, {"N"});
    n.add_term({0}, Poly::parse({"n"}, "n"));
    CHECK(commutator(N, n) == N);

    ShiftOperator Q = kreweras_Q();
    ShiftOperator c(kVars, kGens);
    c.add_term({0, 0, 0}, Rat(7));
    CHECK(commutator(Q, c).is_zero());
}

TEST_CASE("commutator with constant-coefficient Q drops the degree") {
    std::mt19937_64 rng(404);
    ShiftOperator Q = kreweras_Q();
    int nontrivial = 0;
    for (int rep = 0; rep < 200; ++rep) {
        ShiftOperator P = random_operator(rng, 3, 3);
        if (P.coeff_degree() < 1) continue;
        ++nontrivial;
        CHECK(commutator(Q, P).coeff_degree() < P.coeff_degree());
    }
    CHECK(nontrivial > 100);
}

TEST_CASE("associativity in normal form") {
    std::mt19937_64 rng(911);
    for (int rep = 0; rep < 60; ++rep) {
        ShiftOperator x = random_operator(rng, 3, 2);
        ShiftOperator y = random_operator(rng, 3, 2);
        ShiftOperator z = random_operator(rng, 3, 2);
        CHECK((x * y) * z == x * (y * z));
    }
}

TEST_CASE("goodness matches the worked examples") {
    CHECK(is_good(parse_op("(1) + (-1)*M^-1*N1^2 + (-1)*M^-2*N2")));
    CHECK_FALSE(is_good(parse_op("(1) + (-1)*M^-1*N1^-1")));
    CHECK(is_good(ShiftOperator(kVars, kGens)));  // zero operator, vacuously
}

TEST_CASE("transfer operators") {
    CHECK(kreweras_Q() == parse_op("(1) + (-1)*M^-1*N1 + (-1)*M^-1*N2 + (-1)*M^-1*N1^-1*N2^-1"));
    ShiftOperator g = transfer_operator(parse_steps("-1,0;1,0;-1,-1;1,1"));
    CHECK(g == parse_op("(1) + (-1)*M^-1*N1 + (-1)*M^-1*N1^-1 + (-1)*M^-1*N1*N2 + "
                        "(-1)*M^-1*N1^-1*N2^-1"));
    ShiftOperator d1 = transfer_operator(parse_steps("-1;1"));
    CHECK(d1 == ShiftOperator::from_text("vars: m,n1\ngens: M,N1\n"
                                         "(1) + (-1)*M^-1*N1 + (-1)*M^-1*N1^-1"));
}

TEST_CASE("operator text round trip") {
    std::mt19937_64 rng(77);
    for (int rep = 0; rep < 40; ++rep) {
        ShiftOperator op = random_operator(rng, 4, 2);
        CHECK(ShiftOperator::from_text(op.to_text()) == op);
    }
    CHECK(ShiftOperator::from_text("vars: m,n1,n2\ngens: M,N1,N2\n0").is_zero());
    CHECK_THROWS_AS(ShiftOperator::from_text("(1)*M"), UsageError);
    CHECK_THROWS_AS(parse_op("(1)*X^2"), UsageError);
}

TEST_CASE("apply: Q annihilates the table on the region, delta at the origin") {
    StepSet s = parse_steps("-1,0;0,-1;1,1");
    Region q = parse_region("quadrant", 2);
    WalkTable t = enumerate_walks(s, q, 12);
    ShiftOperator Q = kreweras_Q();
    auto rep = apply_operator(Q, t, [&](int m, const std::vector<long>& n) {
        return m >= 1 && t.in_region(n);
    });
    CHECK(rep.all_zero());
    CHECK(rep.cells_checked > 0);

    auto delta = apply_operator(Q, t, [&](int m, const std::vector<long>& n) {
        return m == 0 && n == std::vector<long>{0, 0};
    });
    REQUIRE(delta.nonzero_total == 1);
    CHECK(delta.nonzero[0].value == 1);

    ShiftOperator zero(kVars, kGens);
    CHECK(apply_operator(zero, t, [](int, const std::vector<long>&) { return true; }).all_zero());
}

TEST_CASE("apply rejects unresolvable references") {
    StepSet s = parse_steps("-1,0;0,-1;1,1");
    WalkTable t = enumerate_walks(s, parse_region("quadrant", 2), 4);
    // M (forward shift) at m = m_max needs a slice beyond the table
    ShiftOperator fwd = parse_op("(1)*M");
    CHECK_THROWS_AS(apply_operator(fwd, t,
                                   [&](int m, const std::vector<long>& n) {
                                       return m == t.m_max() && n == std::vector<long>{0, 0};
                                   }),
                    UsageError);
}

TEST_CASE("application composes like multiplication") {
    StepSet s = parse_steps("-1,0;0,-1;1,1");
    Region q = parse_region("quadrant", 2);
    WalkTable t = enumerate_walks(s, q, 10);
    Fn table_fn = [&](int m, const std::vector<long>& n) { return t.lookup(m, n); };

    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<long> cm(1, 6), cn(0, 3);
    for (int rep = 0; rep < 10; ++rep) {
        // nonnegative spatial exponents so no out-of-region reads occur
        ShiftOperator x = random_operator(rng, 3, 2, /*nonneg_space=*/true);
        ShiftOperator y = random_operator(rng, 3, 2, /*nonneg_space=*/true);
        ShiftOperator xy = x * y;
        Fn y_of_f = [&](int m, const std::vector<long>& n) -> std::optional<Int> {
            auto v = eval_at(y, table_fn, m, n);
            if (!v) return std::nullopt;
            return Int(v->get_num());  // integer coefficients on integer data
        };
        for (int k = 0; k < 50; ++k) {
            int m = static_cast<int>(cm(rng));
            std::vector<long> n{cn(rng), cn(rng)};
            auto lhs = eval_at(xy, table_fn, m, n);
            auto rhs = eval_at(x, y_of_f, m, n);
            if (lhs && rhs) CHECK(*lhs == *rhs);
        }
    }
}

TEST_CASE("reduction chains terminate and verify") {
    ShiftOperator Q = kreweras_Q();

    // constant-coefficient P commutes with Q immediately
    ShiftOperator c = parse_op("(3)*N1 + (2)");
    ReductionChain ch0 = reduction_chain(Q, c);
    CHECK(ch0.pairs.size() == 1);
    CHECK(commutator(Q, c).is_zero());

    // P = n1 N1 + n2 N2: two chain members, identities exact
    ShiftOperator P = parse_op("(n1)*N1 + (n2)*N2");
    ReductionChain ch = reduction_chain(Q, P);
    CHECK(ch.pairs.size() == 2);
    for (size_t i = 0; i < ch.pairs.size(); ++i) {
        ShiftOperator next = (i + 1 < ch.pairs.size()) ? ch.pairs[i + 1].first
                                                       : ShiftOperator(kVars, kGens);
        CHECK(Q * ch.pairs[i].first == ch.pairs[i].second * Q + next);
    }

    // chain length is bounded by coefficient degree + 1
    std::mt19937_64 rng(31337);
    for (int rep = 0; rep < 50; ++rep) {
        ShiftOperator R = random_operator(rng, 3, 3);
        ReductionChain chr = reduction_chain(Q, R);
        CHECK(static_cast<int>(chr.pairs.size()) <= std::max(0, R.coeff_degree()) + 1);
    }

    CHECK_THROWS_AS(reduction_chain(parse_op("(n1)*M"), P), UsageError);
}

TEST_CASE("certify accepts Q and rejects a mutation") {
    StepSet s = parse_steps("-1,0;0,-1;1,1");
    Region q = parse_region("quadrant", 2);
    Certificate ok = certify(kreweras_Q(), s, q, 10);
    CHECK(ok.valid);
    CHECK(ok.identities_ok);
    CHECK(ok.base_ok);
    CHECK(ok.witness.empty());

    // perturb one coefficient by +1
    ShiftOperator bad = kreweras_Q();
    bad.add_term({-1, 1, 0}, Rat(1));
    Certificate no = certify(bad, s, q, 10);
    CHECK_FALSE(no.valid);
    CHECK_FALSE(no.witness.empty());
    REQUIRE_FALSE(no.region_residuals.empty());
    CHECK(no.region_residuals[0].nonzero_total > 0);
}

TEST_CASE("transfer operator annihilates every catalog step set") {
    std::vector<const char*> sets{"0,1;1,1;1,0",    "0,1;1,1;-1,-1", "0,1;1,1;1,-1",
                                  "0,1;0,-1;1,-1",  "-1,0;0,-1;1,1", "0,1;1,0;-1,-1",
                                  "-1,0;0,1;1,-1",  "0,1;-1,-1;1,-1", "-1,0;1,1;1,-1",
                                  "-1,1;0,1;1,-1",  "-1,1;1,1;1,-1", "-1,0;1,0;-1,-1;1,1"};
    Region q = parse_region("quadrant", 2);
    for (const char* txt : sets) {
        StepSet s = parse_steps(txt);
        WalkTable t = enumerate_walks(s, q, 12);
        ShiftOperator Q = transfer_operator(s);
        auto rep = apply_operator(Q, t, [&](int m, const std::vector<long>& n) {
            return m >= 1 && t.in_region(n);
        });
        CHECK(rep.all_zero());
    }
}

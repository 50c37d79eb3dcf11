#include "latwalk/guess.hpp"

#include <algorithm>
#include <numeric>

#include "latwalk/errors.hpp"

namespace latwalk {

namespace {

// One fit-system column: a shift monomial paired with one coefficient monomial.
struct Column {
    size_t shift_idx;
    std::vector<int> mono;  // exponents over the index variables
    bool pure_time_shift;   // no space shift
    bool space_free_mono;   // monomial constant in the space variables
};

void enumerate_monomials(size_t nvars, int total_degree, std::vector<int>& cur, size_t pos,
                         int used, std::vector<std::vector<int>>& out) {
    if (pos == nvars) {
        out.push_back(cur);
        return;
    }
    for (int e = 0; e + used <= total_degree; ++e) {
        cur[pos] = e;
        enumerate_monomials(nvars, total_degree, cur, pos + 1, used + e, out);
    }
    cur[pos] = 0;
}

std::vector<Column> enumerate_columns(const Ansatz& a, size_t nvars) {
    std::vector<std::vector<int>> monos;
    std::vector<int> cur(nvars, 0);
    enumerate_monomials(nvars, a.coeff_total_degree, cur, 0, 0, monos);
    std::vector<Column> cols;
    std::vector<std::vector<int>> support = a.support;
    std::sort(support.begin(), support.end());
    for (size_t s = 0; s < support.size(); ++s) {
        bool pure = true;
        for (size_t i = 1; i < support[s].size(); ++i)
            if (support[s][i] != 0) pure = false;
        for (const auto& m : monos) {
            bool space_free = true;
            for (size_t i = 1; i < m.size(); ++i)
                if (m[i] != 0) space_free = false;
            if (a.structure == AnsatzStructure::QUASI && !pure && space_free) continue;
            cols.push_back({s, m, pure, space_free});
        }
    }
    return cols;
}

ShiftOperator operator_from_vector(const std::vector<Rat>& v, const std::vector<Column>& cols,
                                   const std::vector<std::vector<int>>& support,
                                   const std::vector<std::string>& vars,
                                   const std::vector<std::string>& gens) {
    ShiftOperator op(vars, gens);
    for (size_t c = 0; c < cols.size(); ++c) {
        if (v[c] == 0) continue;
        Poly p(vars);
        p.add_term(cols[c].mono, v[c]);
        op.add_term(support[cols[c].shift_idx], p);
    }
    return op;
}

}  // namespace

SupportPattern extract_support(const std::vector<Int>& seq) {
    std::vector<long> nz;
    for (size_t i = 0; i < seq.size(); ++i)
        if (seq[i] != 0) nz.push_back(static_cast<long>(i));
    SupportPattern sp;
    if (nz.empty()) return sp;
    if (nz.size() == 1) {
        sp.period = 0;  // no repetition observed
        sp.subseq = {seq[static_cast<size_t>(nz[0])]};
        return sp;
    }
    long g = 0;
    for (size_t k = 1; k < nz.size(); ++k) g = std::gcd(g, nz[k] - nz[0]);
    sp.period = g;
    for (long i = nz[0]; i < static_cast<long>(seq.size()); i += g)
        sp.subseq.push_back(seq[static_cast<size_t>(i)]);
    return sp;
}

std::optional<Candidate> fit_univariate(const std::vector<Int>& seq, int order, int degree) {
    if (order < 1 || degree < 0) throw UsageError("fit_univariate: order >= 1, degree >= 0");
    const long T = static_cast<long>(seq.size());
    const long required = static_cast<long>(order + 1) * (degree + 1) + order + 5;
    if (T < required)
        throw UsageError("fit_univariate: need at least " + std::to_string(required) +
                         " terms, have " + std::to_string(T));
    const long hold = std::max<long>(1, T / 4);
    Window fitw{0, T - hold}, hw{T - hold, T};

    const size_t ncols = static_cast<size_t>(order + 1) * static_cast<size_t>(degree + 1);
    const long nrows = fitw.end - order;
    RatMatrix m(static_cast<size_t>(nrows), ncols);
    for (long n = 0; n < nrows; ++n) {
        size_t c = 0;
        for (int i = 0; i <= order; ++i) {
            Rat npow = 1;
            for (int j = 0; j <= degree; ++j) {
                m.at(static_cast<size_t>(n), c++) = npow * Rat(seq[static_cast<size_t>(n + i)]);
                npow *= n;
            }
        }
    }
    auto basis = nullspace(m);
    if (basis.empty()) return std::nullopt;

    // prefer lowest effective order, then degree, then fewest terms
    auto score = [&](const std::vector<Rat>& v) {
        int effL = 0, effD = 0, terms = 0;
        for (int i = 0; i <= order; ++i) {
            for (int j = 0; j <= degree; ++j) {
                if (v[static_cast<size_t>(i * (degree + 1) + j)] != 0) {
                    effL = std::max(effL, i);
                    effD = std::max(effD, j);
                    ++terms;
                }
            }
        }
        return std::make_tuple(effL, effD, terms);
    };
    size_t best = 0;
    for (size_t k = 1; k < basis.size(); ++k)
        if (score(basis[k]) < score(basis[best])) best = k;

    std::vector<std::string> vars{"n"}, gens{"N"};
    ShiftOperator op(vars, gens);
    for (int i = 0; i <= order; ++i) {
        Poly p(vars);
        for (int j = 0; j <= degree; ++j) {
            const Rat& c = basis[best][static_cast<size_t>(i * (degree + 1) + j)];
            if (c != 0) p.add_term({j}, c);
        }
        if (!p.is_zero()) op.add_term({i}, p);
    }
    Candidate cand;
    cand.op = op.normalized();
    cand.fit = fitw;
    cand.heldout = hw;
    // soundness: zero residual on fit AND held-out windows
    Window full{0, T};
    verify_heldout(cand, seq, full);
    return cand;
}

UnivariateSearchResult search_univariate(const std::vector<Int>& seq, int order_max,
                                         int degree_max) {
    UnivariateSearchResult res;
    for (int L = 1; L <= order_max; ++L) {
        for (int D = 0; D <= degree_max; ++D) {
            try {
                ++res.tried;
                auto cand = fit_univariate(seq, L, D);
                if (cand && cand->status == FitStatus::VERIFIED) {
                    res.found = std::move(cand);
                    return res;
                }
                if (cand) ++res.refuted;
            } catch (const UsageError&) {
                ++res.skipped_insufficient;
            }
        }
    }
    return res;
}

FitStatus verify_heldout(Candidate& c, const std::vector<Int>& seq, const Window& window) {
    if (window.size() <= 0) {
        c.heldout_vacuous = true;
        c.status = FitStatus::VERIFIED;
        return c.status;
    }
    auto bad = apply_to_sequence(c.op, seq, window.begin, window.end);
    c.status = bad.empty() ? FitStatus::VERIFIED : FitStatus::REFUTED;
    return c.status;
}

RatMatrix build_fit_system(const WalkTable& t, const Ansatz& a,
                           const std::vector<TablePoint>& window) {
    if (a.support.empty()) throw UsageError("ansatz support must be nonempty");
    const size_t d = t.steps().dim;
    std::vector<std::vector<int>> support = a.support;
    std::sort(support.begin(), support.end());
    for (const auto& s : support) {
        if (s.size() != d + 1) throw UsageError("ansatz shift arity must match table dimension+1");
        for (int e : s)
            if (e < 0) throw UsageError("ansatz shifts must be nonnegative");
    }
    auto cols = enumerate_columns(a, d + 1);
    RatMatrix m(window.size(), cols.size());
    for (size_t r = 0; r < window.size(); ++r) {
        const auto& pt = window[r];
        std::vector<Rat> point;
        point.emplace_back(pt.m);
        for (long x : pt.n) point.emplace_back(x);
        // table values at all shifted references, one per support element
        std::vector<Int> vals(support.size());
        std::vector<long> sn(d);
        for (size_t s = 0; s < support.size(); ++s) {
            for (size_t i = 0; i < d; ++i) sn[i] = pt.n[i] + support[s][i + 1];
            auto v = t.lookup(pt.m + support[s][0], sn);
            if (!v)
                throw UsageError("build_fit_system: unresolvable reference at window row " +
                                 std::to_string(r));
            vals[s] = std::move(*v);
        }
        for (size_t c = 0; c < cols.size(); ++c) {
            if (vals[cols[c].shift_idx] == 0) continue;
            Rat mono = 1;
            for (size_t i = 0; i < cols[c].mono.size(); ++i)
                for (int k = 0; k < cols[c].mono[i]; ++k) mono *= point[i];
            m.at(r, c) = mono * Rat(vals[cols[c].shift_idx]);
        }
    }
    return m;
}

std::optional<Candidate> fit_quasi(const WalkTable& t, const Ansatz& a) {
    if (a.structure != AnsatzStructure::QUASI)
        throw UsageError("fit_quasi: ansatz must carry the QUASI structure");
    if (!t.retained()) throw UsageError("fit_quasi: table must retain all slices");
    const size_t d = t.steps().dim;

    std::vector<std::string> vars{"n"}, gens{"N"};
    const char* space_names[] = {"a", "b", "c", "d", "e"};
    const char* space_gens[] = {"A", "B", "C", "D", "E"};
    if (d > 5) throw UsageError("fit_quasi: at most 5 space dimensions supported");
    for (size_t i = 0; i < d; ++i) {
        vars.push_back(space_names[i]);
        gens.push_back(space_gens[i]);
    }

    std::vector<std::vector<int>> support = a.support;
    std::sort(support.begin(), support.end());
    auto cols = enumerate_columns(a, d + 1);

    // QUASI must admit at least one pure-time, space-free unknown
    bool has_r0 = std::any_of(cols.begin(), cols.end(), [](const Column& c) {
        return c.pure_time_shift && c.space_free_mono;
    });
    if (!has_r0) throw UsageError("QUASI ansatz admits no pure R0 term");

    // all table points where every shifted reference resolves
    std::vector<TablePoint> pts;
    for (int m = 0; m <= t.m_max(); ++m) {
        for (size_t idx = 0; idx < t.cells_per_slice(); ++idx) {
            std::vector<long> n = t.decode(idx);
            if (!t.in_region(n)) continue;
            bool ok = true;
            std::vector<long> sn(d);
            for (const auto& s : support) {
                for (size_t i = 0; i < d; ++i) sn[i] = n[i] + s[i + 1];
                if (!t.lookup(m + s[0], sn)) {
                    ok = false;
                    break;
                }
            }
            if (ok) pts.push_back({m, std::move(n)});
        }
    }

    const size_t want_fit = cols.size() + 60;
    if (pts.size() < cols.size() + 10)
        throw UsageError("fit_quasi: table provides " + std::to_string(pts.size()) +
                         " usable points for " + std::to_string(cols.size()) + " unknowns");
    size_t split = pts.size() - std::max<size_t>(1, pts.size() / 4);
    std::vector<TablePoint> fitpts(pts.begin(),
                                   pts.begin() + static_cast<long>(std::min(split, want_fit)));
    std::vector<TablePoint> heldpts(pts.begin() + static_cast<long>(split), pts.end());

    RatMatrix sys = build_fit_system(t, a, fitpts);
    auto basis = nullspace(sys);
    if (basis.empty()) return std::nullopt;

    std::optional<Candidate> best;
    size_t best_terms = 0;
    for (const auto& v : basis) {
        // hard filter: R0 != 0
        bool r0 = false;
        for (size_t c = 0; c < cols.size(); ++c)
            if (cols[c].pure_time_shift && cols[c].space_free_mono && v[c] != 0) r0 = true;
        if (!r0) continue;
        ShiftOperator op = operator_from_vector(v, cols, support, vars, gens).normalized();
        // verify on the disjoint held-out window
        bool zero = true;
        std::vector<long> sn(d);
        for (const auto& pt : heldpts) {
            std::vector<Rat> point;
            point.emplace_back(pt.m);
            for (long x : pt.n) point.emplace_back(x);
            Rat sum = 0;
            for (const auto& [e, p] : op.terms()) {
                for (size_t i = 0; i < d; ++i) sn[i] = pt.n[i] + e[i + 1];
                auto val = t.lookup(pt.m + e[0], sn);
                if (*val != 0) sum += p.eval(point) * Rat(*val);
            }
            if (sum != 0) {
                zero = false;
                break;
            }
        }
        if (!zero) continue;
        size_t terms = op.terms().size();
        if (!best || terms < best_terms) {
            Candidate cand;
            cand.op = std::move(op);
            cand.fit = {0, static_cast<long>(fitpts.size())};
            cand.heldout = {static_cast<long>(split), static_cast<long>(pts.size())};
            cand.status = FitStatus::VERIFIED;
            cand.heldout_vacuous = heldpts.empty();
            best = std::move(cand);
            best_terms = terms;
        }
    }
    return best;
}

ShiftOperator specialize(const Candidate& c) {
    const auto& vars = c.op.index_vars();
    if (vars.size() < 2)
        throw UsageError("specialize: candidate lacks the QUASI multi-index structure");
    std::vector<std::pair<size_t, Rat>> zeros;
    for (size_t i = 1; i < vars.size(); ++i) zeros.emplace_back(i, Rat(0));
    ShiftOperator sub = c.op.substitute(zeros);
    // surviving terms must be pure time shifts (their space coefficients
    // were divisible by a space variable and have vanished)
    for (const auto& [e, p] : sub.terms())
        for (size_t i = 1; i < e.size(); ++i)
            if (e[i] != 0)
                throw UsageError("specialize: candidate is not quasi-structured (live space "
                                 "shift after substitution)");
    ShiftOperator r0 = sub.project({0});
    if (r0.is_zero()) throw InternalError("specialize: R0 vanished despite the fit filter");
    return r0.normalized();
}

}  // namespace latwalk

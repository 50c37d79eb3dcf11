#include "latwalk/shift_operator.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "latwalk/errors.hpp"

namespace latwalk {

ShiftOperator::ShiftOperator(std::vector<std::string> index_vars, std::vector<std::string> gens)
    : vars_(std::move(index_vars)), gens_(std::move(gens)) {
    if (vars_.size() != gens_.size())
        throw UsageError("operator: one generator per index variable required");
}

void ShiftOperator::add_term(const std::vector<int>& shift, const Poly& coeff) {
    if (shift.size() != gens_.size()) throw UsageError("operator: shift vector length mismatch");
    if (coeff.vars() != vars_) throw UsageError("operator: coefficient variable list mismatch");
    if (coeff.is_zero()) return;
    auto it = terms_.find(shift);
    if (it == terms_.end()) {
        terms_.emplace(shift, coeff);
    } else {
        it->second = it->second + coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void ShiftOperator::add_term(const std::vector<int>& shift, const Rat& coeff) {
    add_term(shift, Poly::constant(vars_, coeff));
}

void ShiftOperator::check_compatible(const ShiftOperator& o) const {
    if (vars_ != o.vars_ || gens_ != o.gens_)
        throw UsageError("operator: mismatched index variables or generators");
}

ShiftOperator ShiftOperator::operator+(const ShiftOperator& o) const {
    check_compatible(o);
    ShiftOperator r = *this;
    for (const auto& [e, p] : o.terms_) r.add_term(e, p);
    return r;
}

ShiftOperator ShiftOperator::operator-(const ShiftOperator& o) const { return *this + (-o); }

ShiftOperator ShiftOperator::operator-() const {
    ShiftOperator r(vars_, gens_);
    for (const auto& [e, p] : terms_) r.terms_.emplace(e, -p);
    return r;
}

ShiftOperator ShiftOperator::operator*(const ShiftOperator& o) const {
    check_compatible(o);
    ShiftOperator r(vars_, gens_);
    for (const auto& [ea, pa] : terms_) {
        for (const auto& [eb, pb] : o.terms_) {
            // p(v) G^ea q(v) G^eb = p(v) q(v+ea) G^(ea+eb)
            std::vector<int> e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, pa * pb.shifted(ea));
        }
    }
    return r;
}

bool ShiftOperator::operator==(const ShiftOperator& o) const {
    return vars_ == o.vars_ && gens_ == o.gens_ && terms_ == o.terms_;
}

int ShiftOperator::coeff_degree() const {
    int d = -1;
    for (const auto& [e, p] : terms_) d = std::max(d, p.degree());
    return d;
}

bool ShiftOperator::has_constant_coeffs() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return t.second.is_constant(); });
}

ShiftOperator ShiftOperator::substitute(
    const std::vector<std::pair<size_t, Rat>>& assignments) const {
    ShiftOperator r(vars_, gens_);
    for (const auto& [e, p] : terms_) r.add_term(e, p.substitute(assignments));
    return r;
}

ShiftOperator ShiftOperator::project(const std::vector<size_t>& keep) const {
    std::vector<std::string> nvars, ngens;
    for (size_t i : keep) {
        nvars.push_back(vars_.at(i));
        ngens.push_back(gens_.at(i));
    }
    ShiftOperator r(nvars, ngens);
    for (const auto& [e, p] : terms_) {
        std::vector<int> ne;
        for (size_t i : keep) ne.push_back(e[i]);
        // dropped generators must not occur
        for (size_t i = 0; i < e.size(); ++i) {
            if (std::find(keep.begin(), keep.end(), i) == keep.end() && e[i] != 0)
                throw UsageError("operator projection drops a live generator " + gens_[i]);
        }
        Poly np(nvars);
        for (const auto& [pe, c] : p.terms()) {
            std::vector<int> npe;
            for (size_t i : keep) npe.push_back(pe[i]);
            for (size_t i = 0; i < pe.size(); ++i) {
                if (std::find(keep.begin(), keep.end(), i) == keep.end() && pe[i] != 0)
                    throw UsageError("operator projection drops a live variable " + vars_[i]);
            }
            np.add_term(npe, c);
        }
        r.add_term(ne, np);
    }
    return r;
}

ShiftOperator ShiftOperator::normalized() const {
    if (terms_.empty()) return *this;
    Int den_lcm = 1;
    for (const auto& [e, p] : terms_)
        for (const auto& [pe, c] : p.terms())
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    Int content = 0;
    for (const auto& [e, p] : terms_) {
        for (const auto& [pe, c] : p.terms()) {
            Int scaled = c.get_num() * (den_lcm / c.get_den());
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled.get_mpz_t());
        }
    }
    Rat scale(den_lcm, content);
    scale.canonicalize();
    // sign: grlex-leading coefficient of the highest shift term positive
    const Poly& lead = terms_.rbegin()->second;
    if (lead.terms().rbegin()->second * scale < 0) scale = -scale;
    ShiftOperator r(vars_, gens_);
    for (const auto& [e, p] : terms_) r.add_term(e, p * scale);
    return r;
}

std::string ShiftOperator::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, p] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << p.to_string() << ")";
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "*" << gens_[i];
            if (e[i] != 1) os << "^" << e[i];
        }
    }
    return os.str();
}

std::string ShiftOperator::to_text() const {
    std::ostringstream os;
    os << "vars:";
    for (size_t i = 0; i < vars_.size(); ++i) os << (i ? "," : " ") << vars_[i];
    os << "\ngens:";
    for (size_t i = 0; i < gens_.size(); ++i) os << (i ? "," : " ") << gens_[i];
    os << "\n" << to_string() << "\n";
    return os.str();
}

namespace {

std::vector<std::string> split_names(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t a = tok.find_first_not_of(" \t");
        size_t b = tok.find_last_not_of(" \t");
        if (a == std::string::npos) throw UsageError("empty name in list: " + s);
        out.push_back(tok.substr(a, b - a + 1));
    }
    return out;
}

}  // namespace

ShiftOperator ShiftOperator::from_text(const std::string& text) {
    std::stringstream ss(text);
    std::string line, body;
    std::vector<std::string> vars, gens;
    while (std::getline(ss, line)) {
        if (line.rfind("vars:", 0) == 0) {
            vars = split_names(line.substr(5));
        } else if (line.rfind("gens:", 0) == 0) {
            gens = split_names(line.substr(5));
        } else if (line.find_first_not_of(" \t\r") != std::string::npos) {
            body += line;
        }
    }
    if (vars.empty() || gens.empty())
        throw UsageError("operator text needs 'vars:' and 'gens:' header lines");
    ShiftOperator op(vars, gens);
    if (body.find_first_not_of(" \t") == std::string::npos || body == "0") return op;

    // split the sum at top-level '+'/'-' (never inside parentheses)
    size_t i = 0;
    while (i < body.size()) {
        while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
        if (i >= body.size()) break;
        int sign = 1;
        while (i < body.size() && (body[i] == '+' || body[i] == '-' ||
                                   std::isspace(static_cast<unsigned char>(body[i])))) {
            if (body[i] == '-') sign = -sign;
            ++i;
        }
        if (i >= body.size() || body[i] != '(')
            throw UsageError("operator term must start with a parenthesized coefficient near '" +
                             body.substr(i, 20) + "'");
        int depth = 0;
        size_t j = i;
        for (; j < body.size(); ++j) {
            if (body[j] == '(') ++depth;
            if (body[j] == ')' && --depth == 0) break;
        }
        if (depth != 0) throw UsageError("unbalanced parentheses in operator text");
        Poly coeff = Poly::parse(vars, body.substr(i + 1, j - i - 1));
        if (sign < 0) coeff = -coeff;
        i = j + 1;
        std::vector<int> shift(gens.size(), 0);
        while (i < body.size()) {
            while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
            if (i >= body.size() || body[i] != '*') break;
            ++i;
            while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
            size_t k = i;
            while (k < body.size() &&
                   (std::isalnum(static_cast<unsigned char>(body[k])) || body[k] == '_'))
                ++k;
            std::string name = body.substr(i, k - i);
            auto it = std::find(gens.begin(), gens.end(), name);
            if (it == gens.end()) throw UsageError("unknown generator '" + name + "'");
            i = k;
            int e = 1;
            if (i < body.size() && body[i] == '^') {
                ++i;
                size_t p0 = i;
                if (i < body.size() && body[i] == '-') ++i;
                while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i;
                if (i == p0) throw UsageError("expected exponent after '^'");
                e = std::stoi(body.substr(p0, i - p0));
            }
            shift[static_cast<size_t>(it - gens.begin())] += e;
        }
        op.add_term(shift, coeff);
    }
    return op;
}

ShiftOperator commutator(const ShiftOperator& x, const ShiftOperator& y) {
    return x * y - y * x;
}

bool is_good(const ShiftOperator& x, size_t time_gen) {
    for (const auto& [e, p] : x.terms())
        for (size_t i = 0; i < e.size(); ++i)
            if (i != time_gen && e[i] < 0) return false;
    return true;
}

ShiftOperator transfer_operator(const StepSet& steps) {
    std::vector<std::string> vars{"m"}, gens{"M"};
    for (size_t i = 1; i <= steps.dim; ++i) {
        vars.push_back("n" + std::to_string(i));
        gens.push_back("N" + std::to_string(i));
    }
    ShiftOperator q(vars, gens);
    q.add_term(std::vector<int>(vars.size(), 0), Rat(1));
    for (const auto& s : steps.steps) {
        std::vector<int> e(vars.size(), 0);
        e[0] = -1;
        for (size_t i = 0; i < steps.dim; ++i) e[i + 1] = -s[i];
        q.add_term(e, Rat(-1));
    }
    return q;
}

int max_time_shift(const ShiftOperator& x) {
    int mx = 0;
    for (const auto& [e, p] : x.terms()) mx = std::max(mx, e.empty() ? 0 : e[0]);
    return mx;
}

ResidualReport apply_operator(const ShiftOperator& x, const WalkTable& t,
                              const std::function<bool(int, const std::vector<long>&)>& domain,
                              size_t max_witnesses) {
    const size_t d = t.steps().dim;
    if (x.index_vars().size() != d + 1)
        throw UsageError("operator arity does not match table dimension");
    ResidualReport rep;
    const long cells = static_cast<long>(t.cells_per_slice());
    std::string error;
    for (int m = 0; m <= t.m_max(); ++m) {
        std::vector<ResidualCell> local;
        size_t checked = 0, bad = 0;
#pragma omp parallel
        {
            std::vector<ResidualCell> mine;
            size_t mychecked = 0, mybad = 0;
            std::string myerror;
#pragma omp for schedule(static) nowait
            for (long idx = 0; idx < cells; ++idx) {
                if (!myerror.empty()) continue;
                std::vector<long> n = t.decode(static_cast<size_t>(idx));
                if (!domain(m, n)) continue;
                std::vector<Rat> point;
                point.reserve(d + 1);
                point.emplace_back(m);
                for (long c : n) point.emplace_back(c);
                Rat sum = 0;
                std::vector<long> sn(d);
                for (const auto& [e, p] : x.terms()) {
                    for (size_t i = 0; i < d; ++i) sn[i] = n[i] + e[i + 1];
                    auto v = t.lookup(m + e[0], sn);
                    if (!v) {
                        std::ostringstream os;
                        os << "apply: unresolvable reference F(" << m + e[0] << ";";
                        for (size_t i = 0; i < d; ++i) os << (i ? "," : " ") << sn[i];
                        os << ")";
                        myerror = os.str();
                        break;
                    }
                    if (*v != 0) sum += p.eval(point) * Rat(*v);
                }
                if (!myerror.empty()) continue;
                ++mychecked;
                if (sum != 0) {
                    ++mybad;
                    // residuals of integer-coefficient operators on integer
                    // data are integers; keep the numerator of the reduced value
                    if (mine.size() < max_witnesses) mine.push_back({m, n, sum.get_num()});
                }
            }
#pragma omp critical
            {
                checked += mychecked;
                bad += mybad;
                if (!myerror.empty() && error.empty()) error = myerror;
                for (auto& w : mine)
                    if (local.size() < max_witnesses) local.push_back(std::move(w));
            }
        }
        if (!error.empty()) throw UsageError(error);
        rep.cells_checked += checked;
        rep.nonzero_total += bad;
        for (auto& w : local)
            if (rep.nonzero.size() < max_witnesses) rep.nonzero.push_back(std::move(w));
    }
    return rep;
}

ReductionChain reduction_chain(const ShiftOperator& Q, const ShiftOperator& P,
                               bool /*require_good*/) {
    if (!Q.has_constant_coeffs())
        throw UsageError("reduction_chain: Q must have constant coefficients");
    ReductionChain chain;
    chain.Q = Q;
    ShiftOperator cur = P;
    int limit = std::max(0, P.coeff_degree()) + 1;
    for (int i = 0; i <= limit && !cur.is_zero(); ++i) {
        if (i == limit)
            throw InternalError("reduction chain failed to terminate within degree+1 steps");
        ShiftOperator next = commutator(Q, cur);
        if (!next.is_zero() && next.coeff_degree() >= cur.coeff_degree() &&
            cur.coeff_degree() >= 0)
            throw InternalError("commutator with constant-coefficient Q failed to drop degree");
        chain.pairs.emplace_back(cur, cur);  // R_i = P_i
        bool g = is_good(cur);
        chain.good.push_back(g);
        if (!g && chain.first_not_good < 0)
            chain.first_not_good = static_cast<int>(chain.pairs.size()) - 1;
        cur = std::move(next);
    }
    return chain;
}

Certificate certify(const ShiftOperator& P, const StepSet& steps, const Region& region,
                    int m_max) {
    Certificate cert;
    ShiftOperator Q = transfer_operator(steps);
    if (P.index_vars() != Q.index_vars())
        throw UsageError("certify: operator must be over (m, n1..nd) for this step set");
    cert.chain = reduction_chain(Q, P);

    // Q P_i = R_i Q + P_{i+1} with R_i = P_i, P_{i+1} = [Q, P_i]
    cert.identities_ok = true;
    for (size_t i = 0; i < cert.chain.pairs.size(); ++i) {
        const ShiftOperator& Pi = cert.chain.pairs[i].first;
        const ShiftOperator& Ri = cert.chain.pairs[i].second;
        ShiftOperator Pnext = (i + 1 < cert.chain.pairs.size())
                                  ? cert.chain.pairs[i + 1].first
                                  : ShiftOperator(Q.index_vars(), Q.gens());
        if (!(Q * Pi == Ri * Q + Pnext)) {
            cert.identities_ok = false;
            cert.witness = "operator identity failed at chain index " + std::to_string(i);
            break;
        }
    }

    EnumerateOptions opts;
    WalkTable t = enumerate_walks(steps, region, m_max, opts);

    // base condition: slice 0 is the delta at the origin
    cert.base_ok = true;
    std::vector<long> origin(steps.dim, 0);
    for (size_t idx = 0; idx < t.cells_per_slice() && cert.base_ok; ++idx) {
        std::vector<long> n = t.decode(idx);
        const Int& v = t.cell(0, n);
        if (v != ((n == origin) ? 1 : 0)) {
            cert.base_ok = false;
            cert.witness = "initial slice is not the delta at the origin";
        }
    }

    bool residual_ok = true;
    for (size_t i = 0; i < cert.chain.pairs.size(); ++i) {
        const ShiftOperator& Pi = cert.chain.pairs[i].first;
        int reserve = max_time_shift(Pi);
        auto in_domain = [&](int m, const std::vector<long>& n) {
            return m >= 1 && m + reserve <= m_max && t.in_region(n);
        };
        ResidualReport rep = apply_operator(Pi, t, in_domain);
        if (!rep.all_zero() && residual_ok) {
            residual_ok = false;
            std::ostringstream os;
            os << "nonzero residual of chain member " << i << " at (m=" << rep.nonzero[0].m;
            for (long c : rep.nonzero[0].n) os << "," << c;
            os << ") value " << rep.nonzero[0].value.get_str();
            cert.witness = os.str();
        }
        cert.region_residuals.push_back(std::move(rep));

        // informational: just-outside-region cells with an in-region neighbor
        auto on_boundary = [&](int m, const std::vector<long>& n) {
            if (m < 1 || m + reserve > m_max || t.in_region(n)) return false;
            std::vector<long> nb = n;
            for (size_t k = 0; k < nb.size(); ++k) {
                for (long dlt : {-1L, 1L}) {
                    nb[k] = n[k] + dlt;
                    bool ok = t.in_box(nb) && t.in_region(nb);
                    nb[k] = n[k];
                    if (ok) return true;
                }
            }
            return false;
        };
        cert.boundary_residuals.push_back(apply_operator(Pi, t, on_boundary));
    }

    cert.valid = cert.identities_ok && cert.base_ok && residual_ok;
    return cert;
}

std::vector<std::pair<long, Int>> apply_to_sequence(const ShiftOperator& x,
                                                    const std::vector<Int>& seq, long n_begin,
                                                    long n_end) {
    if (x.index_vars().size() != 1) throw UsageError("apply_to_sequence: univariate operator required");
    int maxshift = 0, minshift = 0;
    for (const auto& [e, p] : x.terms()) {
        maxshift = std::max(maxshift, e[0]);
        minshift = std::min(minshift, e[0]);
    }
    if (minshift < 0) throw UsageError("apply_to_sequence: negative shifts unsupported");
    std::vector<std::pair<long, Int>> nonzero;
    for (long n = n_begin; n < n_end; ++n) {
        if (n + maxshift >= static_cast<long>(seq.size())) break;
        Rat sum = 0;
        for (const auto& [e, p] : x.terms())
            sum += p.eval({Rat(n)}) * Rat(seq[static_cast<size_t>(n + e[0])]);
        if (sum != 0) nonzero.emplace_back(n, sum.get_num());
    }
    return nonzero;
}

}  // namespace latwalk

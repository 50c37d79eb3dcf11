#include "latwalk/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace latwalk {

bool GrlexLess::operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    long da = std::accumulate(a.begin(), a.end(), 0L);
    long db = std::accumulate(b.begin(), b.end(), 0L);
    if (da != db) return da < db;
    return a < b;
}

Poly Poly::constant(std::vector<std::string> vars, const Rat& c) {
    Poly p(std::move(vars));
    p.add_term(std::vector<int>(p.vars_.size(), 0), c);
    return p;
}

Poly Poly::variable(std::vector<std::string> vars, size_t i, const Rat& c) {
    Poly p(std::move(vars));
    std::vector<int> e(p.vars_.size(), 0);
    e.at(i) = 1;
    p.add_term(e, c);
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

int Poly::degree() const {
    if (terms_.empty()) return -1;
    // grlex: last term has maximal total degree
    const auto& e = terms_.rbegin()->first;
    return static_cast<int>(std::accumulate(e.begin(), e.end(), 0L));
}

void Poly::add_term(const std::vector<int>& exps, const Rat& coeff) {
    if (exps.size() != vars_.size()) throw UsageError("poly: exponent vector length mismatch");
    for (int e : exps)
        if (e < 0) throw UsageError("poly: negative exponent");
    if (coeff == 0) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

void Poly::check_same_vars(const Poly& o) const {
    if (vars_ != o.vars_) throw UsageError("poly: mismatched variable lists");
}

Poly Poly::operator+(const Poly& o) const {
    check_same_vars(o);
    Poly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    Poly r(vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    check_same_vars(o);
    Poly r(vars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            std::vector<int> e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Poly Poly::operator*(const Rat& c) const {
    Poly r(vars_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

Rat Poly::eval(const std::vector<Rat>& point) const {
    if (point.size() != vars_.size()) throw UsageError("poly: evaluation point length mismatch");
    Rat sum = 0;
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) t *= rat_pow(point[i], e[i]);
        sum += t;
    }
    return sum;
}

Poly Poly::shifted(const std::vector<int>& delta) const {
    if (delta.size() != vars_.size()) throw UsageError("poly: shift vector length mismatch");
    Poly r(vars_);
    for (const auto& [e, c] : terms_) {
        Poly t = Poly::constant(vars_, c);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            Poly lin = Poly::variable(vars_, i);
            lin.add_term(std::vector<int>(vars_.size(), 0), Rat(delta[i]));
            for (int k = 0; k < e[i]; ++k) t = t * lin;
        }
        r = r + t;
    }
    return r;
}

Poly Poly::substitute(const std::vector<std::pair<size_t, Rat>>& assignments) const {
    Poly r(vars_);
    for (const auto& [e, c] : terms_) {
        Rat coeff = c;
        std::vector<int> rest = e;
        for (const auto& [i, val] : assignments) {
            if (e.at(i) != 0) coeff *= rat_pow(val, e[i]);
            rest[i] = 0;
        }
        r.add_term(rest, coeff);
    }
    return r;
}

Poly Poly::normalized_integral() const {
    if (terms_.empty()) return *this;
    Int den_lcm = 1;
    for (const auto& [e, c] : terms_)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    Int content = 0;
    for (const auto& [e, c] : terms_) {
        Int scaled = c.get_num() * (den_lcm / c.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled.get_mpz_t());
    }
    Rat scale(den_lcm, content);
    scale.canonicalize();
    if (terms_.rbegin()->second * scale < 0) scale = -scale;
    return *this * scale;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // print grlex-descending so the leading term comes first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        Rat c = it->second;
        if (first) {
            if (c < 0) { os << "-"; c = -c; }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        bool any_var = std::any_of(it->first.begin(), it->first.end(), [](int e) { return e != 0; });
        bool wrote = false;
        if (c != 1 || !any_var) {
            os << rat_to_string(c);
            wrote = true;
        }
        for (size_t i = 0; i < it->first.size(); ++i) {
            int e = it->first[i];
            if (e == 0) continue;
            if (wrote) os << "*";
            os << vars_[i];
            if (e != 1) os << "^" << e;
            wrote = true;
        }
    }
    return os.str();
}

namespace {

struct PolyLexer {
    const std::string& s;
    size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
};

}  // namespace

Poly Poly::parse(const std::vector<std::string>& vars, const std::string& text) {
    PolyLexer lx{text};
    Poly result(vars);
    auto fail = [&](const std::string& why) {
        throw UsageError("poly parse error at position " + std::to_string(lx.i) + ": " + why);
    };
    while (!lx.eof()) {
        int sign = 1;
        while (lx.peek() == '+' || lx.peek() == '-') {
            if (lx.peek() == '-') sign = -sign;
            ++lx.i;
        }
        Rat coeff = sign;
        std::vector<int> exps(vars.size(), 0);
        bool have_factor = false;
        while (true) {
            char c = lx.peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                size_t j = lx.i;
                while (j < text.size() &&
                       (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/'))
                    ++j;
                coeff *= rat_from_string(text.substr(lx.i, j - lx.i));
                lx.i = j;
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                size_t j = lx.i;
                while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                           text[j] == '_'))
                    ++j;
                std::string name = text.substr(lx.i, j - lx.i);
                lx.i = j;
                auto it = std::find(vars.begin(), vars.end(), name);
                if (it == vars.end()) fail("unknown variable '" + name + "'");
                int e = 1;
                if (lx.peek() == '^') {
                    ++lx.i;
                    lx.skip_ws();
                    size_t k = lx.i;
                    while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
                    if (k == lx.i) fail("expected exponent");
                    e = std::stoi(text.substr(lx.i, k - lx.i));
                    lx.i = k;
                }
                exps[static_cast<size_t>(it - vars.begin())] += e;
            } else {
                fail("expected coefficient or variable");
            }
            have_factor = true;
            if (lx.peek() == '*') {
                ++lx.i;
                continue;
            }
            break;
        }
        if (!have_factor) fail("empty term");
        result.add_term(exps, coeff);
        char c = lx.peek();
        if (c != '\0' && c != '+' && c != '-') fail("unexpected character");
    }
    return result;
}

}  // namespace latwalk

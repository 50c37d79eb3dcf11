#include "latwalk/matrix.hpp"

#include <algorithm>

#include "latwalk/errors.hpp"

namespace latwalk {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

uint64_t mpz_mod_u64(const Int& z, uint64_t p) {
    Int m = z % Int(p);
    if (m < 0) m += Int(p);
    return m.get_ui();
}

}  // namespace

size_t rank_mod_prime(const RatMatrix& m, uint64_t p) {
    std::vector<std::vector<uint64_t>> a(m.rows(), std::vector<uint64_t>(m.cols()));
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) {
            const Rat& q = m.at(i, j);
            uint64_t den = mpz_mod_u64(q.get_den(), p);
            if (den == 0) throw RetryablePrimeError("prime divides an entry denominator");
            a[i][j] = mulmod(mpz_mod_u64(q.get_num(), p), powmod(den, p - 2, p), p);
        }
    }
    size_t rank = 0;
    for (size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        size_t piv = rank;
        while (piv < m.rows() && a[piv][c] == 0) ++piv;
        if (piv == m.rows()) continue;
        std::swap(a[rank], a[piv]);
        uint64_t inv = powmod(a[rank][c], p - 2, p);
        for (size_t i = rank + 1; i < m.rows(); ++i) {
            if (a[i][c] == 0) continue;
            uint64_t f = mulmod(a[i][c], inv, p);
            for (size_t j = c; j < m.cols(); ++j) {
                uint64_t sub = mulmod(f, a[rank][j], p);
                a[i][j] = (a[i][j] >= sub) ? a[i][j] - sub : a[i][j] + p - sub;
            }
        }
        ++rank;
    }
    return rank;
}

std::vector<std::vector<Rat>> nullspace(const RatMatrix& m) {
    const size_t R = m.rows(), C = m.cols();
    if (C == 0) return {};

    // Modular pre-pass: full column rank mod p implies full exact rank.
    if (R >= C) {
        for (uint64_t p : kModularPrimes) {
            try {
                if (rank_mod_prime(m, p) == C) return {};
                break;
            } catch (const RetryablePrimeError&) {
                continue;
            }
        }
    }

    // Clear each row to integers.
    std::vector<std::vector<Int>> a(R, std::vector<Int>(C));
    for (size_t i = 0; i < R; ++i) {
        Int l = 1;
        for (size_t j = 0; j < C; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
        for (size_t j = 0; j < C; ++j) a[i][j] = m.at(i, j).get_num() * (l / m.at(i, j).get_den());
    }

    // Bareiss fraction-free forward elimination.
    std::vector<size_t> pivot_col;
    Int prev = 1;
    size_t r = 0;
    for (size_t c = 0; c < C && r < R; ++c) {
        size_t piv = r;
        while (piv < R && a[piv][c] == 0) ++piv;
        if (piv == R) continue;
        std::swap(a[r], a[piv]);
        for (size_t i = r + 1; i < R; ++i) {
            for (size_t j = c + 1; j < C; ++j) {
                Int t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        pivot_col.push_back(c);
        ++r;
    }

    // Back-substitution over the rationals, one basis vector per free column.
    std::vector<bool> is_pivot(C, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (size_t f = 0; f < C; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(C, Rat(0));
        v[f] = 1;
        for (size_t k = pivot_col.size(); k-- > 0;) {
            size_t pc = pivot_col[k];
            Rat s = 0;
            for (size_t j = pc + 1; j < C; ++j)
                if (v[j] != 0 && a[k][j] != 0) s += Rat(a[k][j]) * v[j];
            v[pc] = -s / Rat(a[k][pc]);
            v[pc].canonicalize();
        }
        // normalize: first nonzero entry 1
        for (size_t j = 0; j < C; ++j) {
            if (v[j] != 0) {
                Rat lead = v[j];
                for (size_t k2 = j; k2 < C; ++k2) {
                    v[k2] /= lead;
                    v[k2].canonicalize();
                }
                break;
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace latwalk

#include "latwalk/formulas.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "latwalk/errors.hpp"

#ifndef LATWALK_CATALOG_PATH
#define LATWALK_CATALOG_PATH "data/catalog.json"
#endif

namespace latwalk {

Rat pochhammer(const Rat& a, long n) {
    if (n < 0) throw UsageError("pochhammer: n must be >= 0");
    Rat r = 1;
    Rat term = a;
    for (long k = 0; k < n; ++k) {
        r *= term;
        term += 1;
    }
    return r;
}

const CatalogEntry& Catalog::at(const std::string& key) const {
    auto it = entries.find(key);
    if (it == entries.end()) throw UsageError("no catalog entry '" + key + "'");
    return it->second;
}

std::string default_catalog_path() { return LATWALK_CATALOG_PATH; }

Catalog load_catalog(const std::string& path) {
    std::string p = path.empty() ? default_catalog_path() : path;
    std::ifstream in(p);
    if (!in) throw UsageError("cannot open catalog file: " + p);
    nlohmann::json j;
    in >> j;
    Catalog cat;
    cat.version = j.at("version").get<int>();
    for (const auto& [key, e] : j.at("entries").items()) {
        CatalogEntry entry;
        entry.key = key;
        entry.steps = parse_steps(e.at("steps").get<std::string>());
        entry.region = parse_region(e.at("region").get<std::string>(), entry.steps.dim);
        const auto& f = e.at("form");
        entry.form.period = f.at("period").get<int>();
        entry.form.zero = f.value("zero", false);
        entry.form.binomial = f.value("binomial", false);
        entry.form.shift = f.value("shift", 0);
        if (!entry.form.zero && !entry.form.binomial) {
            entry.form.prefactor = rat_from_string(f.at("prefactor").get<std::string>());
            entry.form.base = rat_from_string(f.at("base").get<std::string>());
            auto read_list = [](const nlohmann::json& arr) {
                std::vector<PochFactor> out;
                for (const auto& x : arr)
                    out.push_back({rat_from_string(x.at(0).get<std::string>()),
                                   x.at(1).get<int>()});
                return out;
            };
            entry.form.num = read_list(f.at("num"));
            entry.form.den = read_list(f.at("den"));
        }
        cat.entries.emplace(key, std::move(entry));
    }
    return cat;
}

Int eval_closed_form(const ClosedForm& cf, long n) {
    if (n < 0) throw UsageError("eval_closed_form: n must be >= 0");
    if (cf.zero) return n == 0 ? Int(1) : Int(0);
    if (n < cf.shift) return 1;  // empty walk below the formula's range
    if (cf.binomial) {
        // 4^n C(3n,n) / ((n+1)(2n+1))
        Int num = int_pow(2, static_cast<unsigned long>(2 * n)) *
                  binomial(Int(3 * n), static_cast<unsigned long>(n));
        Int den = Int(n + 1) * Int(2 * n + 1);
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (r != 0) throw IntegrityError("closed form evaluated to a non-integer");
        return q;
    }
    long k = n - cf.shift;
    Rat v = cf.prefactor * rat_pow(cf.base, k);
    for (const auto& pf : cf.num) v *= pochhammer(pf.offset, k + pf.length_delta);
    for (const auto& pf : cf.den) {
        Rat d = pochhammer(pf.offset, k + pf.length_delta);
        if (d == 0) throw IntegrityError("closed form denominator vanished");
        v /= d;
    }
    if (v.get_den() != 1)
        throw IntegrityError("closed form evaluated to a non-integer at n=" + std::to_string(n));
    if (v < 0) throw IntegrityError("closed form evaluated to a negative value");
    return v.get_num();
}

VerifyReport verify_entry(const CatalogEntry& entry, const WalkTable& t, long n_max) {
    VerifyReport rep;
    rep.key = entry.key;
    const auto& seq = t.return_counts();
    if (entry.form.zero) {
        // verified per walk length, starting at 1 (the empty walk counts 1)
        for (long m = 1; m <= static_cast<long>(t.m_max()); ++m) {
            ++rep.points_checked;
            if (seq[static_cast<size_t>(m)] != 0)
                rep.mismatches.push_back({m, Int(0), seq[static_cast<size_t>(m)]});
        }
        return rep;
    }
    if (static_cast<long>(t.m_max()) < entry.form.period * n_max)
        throw UsageError("verify_entry: table does not cover period*n_max walk lengths");
    for (long n = 0; n <= n_max; ++n) {
        Int expect = eval_closed_form(entry.form, n);
        const Int& got = seq[static_cast<size_t>(entry.form.period * n)];
        ++rep.points_checked;
        if (expect != got) rep.mismatches.push_back({n, expect, got});
    }
    // off-period walk lengths must be 0
    for (long m = 1; m <= static_cast<long>(t.m_max()); ++m) {
        if (m % entry.form.period == 0) continue;
        ++rep.points_checked;
        if (seq[static_cast<size_t>(m)] != 0)
            rep.mismatches.push_back({m, Int(0), seq[static_cast<size_t>(m)]});
    }
    return rep;
}

Int ballot_count(const std::vector<long>& shape) {
    const long d = static_cast<long>(shape.size());
    if (d == 0) throw UsageError("ballot_count: empty shape");
    long total = 0;
    for (long i = 0; i < d; ++i) {
        if (shape[i] < 0 || (i + 1 < d && shape[i] < shape[i + 1]))
            throw UsageError("ballot_count: shape must be weakly decreasing and nonnegative");
        total += shape[i];
    }
    Int num = factorial(static_cast<unsigned long>(total));
    for (long i = 0; i < d; ++i)
        for (long j = i + 1; j < d; ++j) num *= Int(shape[i] - shape[j] + j - i);
    Int den = 1;
    for (long i = 0; i < d; ++i)
        den *= factorial(static_cast<unsigned long>(shape[i] + d - 1 - i));
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (r != 0) throw IntegrityError("ballot formula evaluated to a non-integer");
    return q;
}

}  // namespace latwalk

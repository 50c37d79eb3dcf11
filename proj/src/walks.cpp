#include "latwalk/walks.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "latwalk/errors.hpp"

namespace latwalk {

bool Region::contains(const std::vector<long>& n) const {
    for (const auto& c : constraints) {
        long dot = 0;
        for (size_t i = 0; i < c.coeffs.size(); ++i) dot += c.coeffs[i] * n[i];
        if (dot < c.bound) return false;
    }
    return true;
}

namespace {

std::vector<long> parse_long_list(const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        long v;
        try {
            v = std::stol(tok, &pos);
        } catch (const std::exception&) {
            throw UsageError("bad integer '" + tok + "' in '" + s + "'");
        }
        while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos != tok.size()) throw UsageError("bad integer '" + tok + "' in '" + s + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("empty integer list in '" + s + "'");
    return out;
}

}  // namespace

StepSet parse_steps(const std::string& text) {
    StepSet s;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
        auto v = parse_long_list(tok);
        std::vector<int> step(v.begin(), v.end());
        if (!s.steps.empty() && step.size() != s.dim)
            throw UsageError("step dimension mismatch in '" + text + "'");
        s.dim = step.size();
        s.steps.push_back(std::move(step));
    }
    if (s.steps.empty()) throw UsageError("empty step set");
    for (size_t i = 0; i < s.steps.size(); ++i)
        for (size_t j = i + 1; j < s.steps.size(); ++j)
            if (s.steps[i] == s.steps[j]) throw UsageError("duplicate step in '" + text + "'");
    return s;
}

Region parse_region(const std::string& text, size_t dim) {
    Region r;
    if (text.empty() || text == "none") return r;
    auto orthant = [&](size_t d) {
        Region reg;
        for (size_t i = 0; i < d; ++i) {
            Constraint c;
            c.coeffs.assign(d, 0);
            c.coeffs[i] = 1;
            reg.constraints.push_back(std::move(c));
        }
        return reg;
    };
    if (text == "quadrant") {
        if (dim != 2) throw UsageError("preset 'quadrant' needs dimension 2");
        return orthant(2);
    }
    if (text == "halfline") {
        if (dim != 1) throw UsageError("preset 'halfline' needs dimension 1");
        return orthant(1);
    }
    if (text == "octant3d") {
        if (dim != 3) throw UsageError("preset 'octant3d' needs dimension 3");
        return orthant(3);
    }
    if (text.rfind("ballot:", 0) == 0) {
        size_t d = std::stoul(text.substr(7));
        if (d != dim) throw UsageError("preset '" + text + "' disagrees with dimension");
        // n1 >= n2 >= ... >= nd >= 0
        for (size_t i = 0; i + 1 < d; ++i) {
            Constraint c;
            c.coeffs.assign(d, 0);
            c.coeffs[i] = 1;
            c.coeffs[i + 1] = -1;
            r.constraints.push_back(std::move(c));
        }
        Constraint last;
        last.coeffs.assign(d, 0);
        last.coeffs[d - 1] = 1;
        r.constraints.push_back(std::move(last));
        return r;
    }
    std::stringstream ss(text);
    std::string atom;
    while (std::getline(ss, atom, ';')) {
        auto ge = atom.find(">=");
        if (ge == std::string::npos) throw UsageError("region atom missing '>=': " + atom);
        Constraint c;
        auto coeffs = parse_long_list(atom.substr(0, ge));
        if (coeffs.size() != dim) throw UsageError("region atom has wrong dimension: " + atom);
        c.coeffs = std::move(coeffs);
        c.bound = std::stol(atom.substr(ge + 2));
        r.constraints.push_back(std::move(c));
    }
    std::vector<long> origin(dim, 0);
    if (!r.contains(origin)) throw UsageError("region excludes the origin");
    return r;
}

std::string steps_to_string(const StepSet& s) {
    std::ostringstream os;
    for (size_t i = 0; i < s.steps.size(); ++i) {
        if (i) os << ";";
        for (size_t j = 0; j < s.dim; ++j) {
            if (j) os << ",";
            os << s.steps[i][j];
        }
    }
    return os.str();
}

std::string region_to_string(const Region& r) {
    std::ostringstream os;
    for (size_t i = 0; i < r.constraints.size(); ++i) {
        if (i) os << ";";
        for (size_t j = 0; j < r.constraints[i].coeffs.size(); ++j) {
            if (j) os << ",";
            os << r.constraints[i].coeffs[j];
        }
        os << ">=" << r.constraints[i].bound;
    }
    return os.str();
}

WalkTable::WalkTable(StepSet steps, Region region, int m_max, const EnumerateOptions& opts)
    : steps_(std::move(steps)), region_(std::move(region)), m_max_(m_max),
      retained_(opts.retain_all) {
    const size_t d = steps_.dim;
    if (m_max < 0) throw UsageError("m_max must be >= 0");
    std::vector<long> origin(d, 0);
    if (!region_.contains(origin)) throw UsageError("region excludes the origin");

    lo_.assign(d, 0);
    hi_.assign(d, 0);
    for (size_t i = 0; i < d; ++i) {
        int smin = 0, smax = 0;
        for (const auto& s : steps_.steps) {
            smin = std::min(smin, s[i]);
            smax = std::max(smax, s[i]);
        }
        hi_[i] = static_cast<long>(m_max) * smax;
        lo_[i] = static_cast<long>(m_max) * smin;
        // tighten with single-variable region constraints like n_i >= b
        for (const auto& c : region_.constraints) {
            bool single = c.coeffs[i] > 0;
            for (size_t j = 0; single && j < d; ++j)
                if (j != i && c.coeffs[j] != 0) single = false;
            if (single) {
                long implied = (c.bound >= 0) ? (c.bound + c.coeffs[i] - 1) / c.coeffs[i]
                                              : c.bound / c.coeffs[i];
                lo_[i] = std::max(lo_[i], implied);
            }
        }
    }

    stride_.assign(d, 1);
    cells_ = 1;
    for (size_t i = d; i-- > 0;) {
        stride_[i] = cells_;
        size_t extent = static_cast<size_t>(hi_[i] - lo_[i] + 1);
        if (extent == 0 || cells_ > opts.max_cells / extent) {
            std::ostringstream os;
            os << "table box exceeds memory budget (" << opts.max_cells << " cells): dims";
            for (size_t j = 0; j < d; ++j) os << " [" << lo_[j] << "," << hi_[j] << "]";
            throw ResourceError(os.str());
        }
        cells_ *= extent;
    }
    size_t resident = retained_ ? static_cast<size_t>(m_max_) + 1 : 2;
    if (resident > 0 && cells_ > opts.max_cells / resident) {
        std::ostringstream os;
        os << "table (" << resident << " slices of " << cells_
           << " cells) exceeds memory budget; box dims";
        for (size_t j = 0; j < d; ++j) os << " [" << lo_[j] << "," << hi_[j] << "]";
        throw ResourceError(os.str());
    }
}

bool WalkTable::in_box(const std::vector<long>& n) const {
    for (size_t i = 0; i < n.size(); ++i)
        if (n[i] < lo_[i] || n[i] > hi_[i]) return false;
    return true;
}

bool WalkTable::unreachable(int m, const std::vector<long>& n) const {
    for (size_t i = 0; i < n.size(); ++i) {
        int smin = 0, smax = 0;
        for (const auto& s : steps_.steps) {
            smin = std::min(smin, s[i]);
            smax = std::max(smax, s[i]);
        }
        if (n[i] > static_cast<long>(m) * smax || n[i] < static_cast<long>(m) * smin) return true;
    }
    return false;
}

size_t WalkTable::encode(const std::vector<long>& n) const {
    size_t idx = 0;
    for (size_t i = 0; i < n.size(); ++i) idx += stride_[i] * static_cast<size_t>(n[i] - lo_[i]);
    return idx;
}

std::vector<long> WalkTable::decode(size_t idx) const {
    std::vector<long> n(lo_.size());
    for (size_t i = 0; i < n.size(); ++i) {
        n[i] = lo_[i] + static_cast<long>(idx / stride_[i]);
        idx %= stride_[i];
    }
    return n;
}

std::optional<Int> WalkTable::lookup(int m, const std::vector<long>& n) const {
    if (m < 0) return Int(0);
    if (!in_region(n)) return Int(0);
    if (unreachable(m, n)) return Int(0);
    if (m > m_max_) return std::nullopt;
    if (!in_box(n)) return std::nullopt;
    if (!retained_ && m < m_max_ - 1) return std::nullopt;
    return cell(m, n);
}

const Int& WalkTable::cell(int m, const std::vector<long>& n) const {
    size_t slice = retained_ ? static_cast<size_t>(m) : static_cast<size_t>(m & 1);
    return slices_[slice][encode(n)];
}

void WalkTable::fill(bool parallel) {
    const size_t d = steps_.dim;
    size_t nslices = retained_ ? static_cast<size_t>(m_max_) + 1 : std::min(m_max_ + 1, 2);
    slices_.assign(nslices, {});
    for (auto& s : slices_) s.assign(cells_, Int(0));

    std::vector<long> origin(d, 0);
    slices_[0][encode(origin)] = 1;
    returns_.assign(static_cast<size_t>(m_max_) + 1, Int(0));
    returns_[0] = 1;

    for (int m = 1; m <= m_max_; ++m) {
        auto& cur = slices_[retained_ ? static_cast<size_t>(m) : static_cast<size_t>(m & 1)];
        const auto& prev = slices_[retained_ ? static_cast<size_t>(m - 1)
                                             : static_cast<size_t>((m - 1) & 1)];
        if (!retained_) std::fill(cur.begin(), cur.end(), Int(0));
        const long ncells = static_cast<long>(cells_);
#pragma omp parallel for schedule(static) if (parallel)
        for (long idx = 0; idx < ncells; ++idx) {
            std::vector<long> n = decode(static_cast<size_t>(idx));
            if (!in_region(n)) continue;
            if (unreachable(m, n)) continue;
            Int sum = 0;
            std::vector<long> p(d);
            for (const auto& s : steps_.steps) {
                for (size_t i = 0; i < d; ++i) p[i] = n[i] - s[i];
                if (!in_box(p)) continue;  // out of box implies unreachable at m-1
                if (!in_region(p)) continue;
                sum += prev[encode(p)];
            }
            cur[static_cast<size_t>(idx)] = std::move(sum);
        }
        returns_[static_cast<size_t>(m)] = cur[encode(origin)];
    }
}

WalkTable enumerate_walks(const StepSet& steps, const Region& region, int m_max,
                          const EnumerateOptions& opts) {
    WalkTable t(steps, region, m_max, opts);
    t.fill(opts.parallel);
    return t;
}

std::vector<Int> return_sequence(const WalkTable& t) { return t.return_counts(); }

Int total_count(const StepSet& steps, int m) {
    if (m < 0) throw UsageError("total_count: m must be >= 0");
    return int_pow(Int(steps.steps.size()), static_cast<unsigned long>(m));
}

Region refine(const StepSet& steps, const Region& region) {
    Region out;
    for (const auto& c : region.constraints) {
        Constraint rc;
        rc.bound = c.bound;
        for (const auto& s : steps.steps) {
            long dot = 0;
            for (size_t i = 0; i < steps.dim; ++i) dot += c.coeffs[i] * s[i];
            rc.coeffs.push_back(dot);
        }
        out.constraints.push_back(std::move(rc));
    }
    return out;
}

RefinedTable::RefinedTable(size_t r, Region region_refined, int total_max, size_t max_cells)
    : r_(r), region_(std::move(region_refined)), total_max_(total_max) {
    if (total_max < 0) throw UsageError("total_max must be >= 0");
    size_t extent = static_cast<size_t>(total_max) + 1;
    stride_.assign(r_, 1);
    size_t cells = 1;
    for (size_t i = r_; i-- > 0;) {
        stride_[i] = cells;
        if (cells > max_cells / extent)
            throw ResourceError("refined table exceeds memory budget (r=" + std::to_string(r_) +
                                ", total_max=" + std::to_string(total_max) + ")");
        cells *= extent;
    }
    counts_.assign(cells, Int(0));
}

Int RefinedTable::f(const std::vector<long>& A) const {
    if (A.size() != r_) throw UsageError("refined table: index length mismatch");
    long total = 0;
    for (long a : A) {
        if (a < 0) return 0;
        total += a;
    }
    if (total > total_max_) throw UsageError("refined table: index beyond table depth");
    if (!region_.contains(A)) return 0;
    size_t idx = 0;
    for (size_t i = 0; i < r_; ++i) idx += stride_[i] * static_cast<size_t>(A[i]);
    return counts_[idx];
}

RefinedTable refined_enumerate(const StepSet& steps, const Region& region, int total_max,
                               size_t max_cells) {
    RefinedTable rt(steps.steps.size(), refine(steps, region), total_max, max_cells);
    const size_t r = rt.r_;
    const long extent = total_max + 1;
    // increasing linear index visits every cell after all its predecessors
    std::vector<long> A(r, 0);
    for (size_t idx = 0; idx < rt.counts_.size(); ++idx) {
        size_t rem = idx;
        long total = 0;
        for (size_t i = 0; i < r; ++i) {
            A[i] = static_cast<long>(rem / rt.stride_[i]);
            rem %= rt.stride_[i];
            total += A[i];
        }
        if (total > total_max) continue;
        if (!rt.region_.contains(A)) continue;
        if (total == 0) {
            rt.counts_[idx] = 1;
            continue;
        }
        Int sum = 0;
        for (size_t i = 0; i < r; ++i) {
            if (A[i] == 0) continue;
            A[i] -= 1;
            if (rt.region_.contains(A)) sum += rt.counts_[idx - rt.stride_[i]];
            A[i] += 1;
        }
        rt.counts_[idx] = std::move(sum);
    }
    (void)extent;
    return rt;
}

Int gessel_G(const RefinedTable& rt, int n) {
    if (rt.r() != 4) throw UsageError("gessel_G needs a 4-kind refined table");
    if (2 * n > rt.total_max()) throw UsageError("gessel_G: table depth insufficient for n=" +
                                                 std::to_string(n));
    Int g = 0;
    for (long a = 0; a <= n; ++a) g += rt.f({a, a, n - a, n - a});
    return g;
}

}  // namespace latwalk

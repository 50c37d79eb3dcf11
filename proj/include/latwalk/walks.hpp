#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latwalk/rational.hpp"

namespace latwalk {

struct StepSet {
    size_t dim = 0;
    std::vector<std::vector<int>> steps;  // distinct integer vectors of length dim
};

// One linear constraint c . n >= bound.
struct Constraint {
    std::vector<long> coeffs;
    long bound = 0;
};

// Conjunction of linear constraints; walks start at the origin, which must
// satisfy all of them.
struct Region {
    std::vector<Constraint> constraints;

    bool contains(const std::vector<long>& n) const;
};

// Text formats: steps "-1,0;0,-1;1,1"; region "1,0>=0;0,1>=0" or the
// presets "quadrant", "halfline", "octant3d", "ballot:d", "none".
StepSet parse_steps(const std::string& text);
Region parse_region(const std::string& text, size_t dim);
std::string steps_to_string(const StepSet& s);
std::string region_to_string(const Region& r);

struct EnumerateOptions {
    bool retain_all = true;   // keep every time slice (guessing/certification need this)
    bool parallel = true;     // OpenMP fill; the serial path is the reference
    size_t max_cells = size_t(1) << 28;  // memory budget, in table cells
};

// Exact counts F(m; n) over a derived bounding box, one dense slice per m.
class WalkTable {
  public:
    WalkTable(StepSet steps, Region region, int m_max, const EnumerateOptions& opts);

    const StepSet& steps() const { return steps_; }
    const Region& region() const { return region_; }
    int m_max() const { return m_max_; }
    const std::vector<long>& lo() const { return lo_; }
    const std::vector<long>& hi() const { return hi_; }
    bool retained() const { return retained_; }

    bool in_box(const std::vector<long>& n) const;
    bool in_region(const std::vector<long>& n) const { return region_.contains(n); }
    // No walk of length m can reach n (pure step-reach bound, region ignored).
    bool unreachable(int m, const std::vector<long>& n) const;

    // Zero-extended lookup: 0 for m < 0, outside the region, or provably
    // unreachable; nullopt when the reference cannot be resolved (m beyond
    // the table, or an in-region cell outside the stored box).
    std::optional<Int> lookup(int m, const std::vector<long>& n) const;

    // Direct cell access; m must be a retained slice and n in the box.
    const Int& cell(int m, const std::vector<long>& n) const;

    const std::vector<Int>& return_counts() const { return returns_; }
    size_t cells_per_slice() const { return cells_; }

    // Iteration support: decode a linear cell index into lattice coordinates.
    std::vector<long> decode(size_t idx) const;
    size_t encode(const std::vector<long>& n) const;

  private:
    friend WalkTable enumerate_walks(const StepSet&, const Region&, int, const EnumerateOptions&);

    void fill(bool parallel);

    StepSet steps_;
    Region region_;
    int m_max_;
    std::vector<long> lo_, hi_;
    std::vector<size_t> stride_;
    size_t cells_ = 1;
    bool retained_;
    std::vector<std::vector<Int>> slices_;
    std::vector<Int> returns_;
};

// Forward dynamic programming over time slices (OpenMP across cells when
// opts.parallel is set).
WalkTable enumerate_walks(const StepSet& steps, const Region& region, int m_max,
                          const EnumerateOptions& opts = {});

// F(m; origin) for m = 0..m_max.
std::vector<Int> return_sequence(const WalkTable& t);

// |S|^m.
Int total_count(const StepSet& steps, int m);

// Region over N^r (r = |steps|) cut out by the original constraints applied
// to the weighted step sums.
Region refine(const StepSet& steps, const Region& region);

// Counts f(A) of walks using exactly A_i steps of each kind, i.e. unit-step
// walks in N^r confined to refine(steps, region).
class RefinedTable {
  public:
    RefinedTable(size_t r, Region region_refined, int total_max, size_t max_cells);

    size_t r() const { return r_; }
    int total_max() const { return total_max_; }
    const Region& region_refined() const { return region_; }

    // 0 outside N^r, outside the region, or beyond the table.
    Int f(const std::vector<long>& A) const;

  private:
    friend RefinedTable refined_enumerate(const StepSet&, const Region&, int, size_t);

    size_t r_;
    Region region_;
    int total_max_;
    std::vector<size_t> stride_;
    std::vector<Int> counts_;
};

RefinedTable refined_enumerate(const StepSet& steps, const Region& region, int total_max,
                               size_t max_cells = size_t(1) << 28);

// G(n) = sum_{a=0..n} f(a, a, n-a, n-a); table must cover total degree 2n.
Int gessel_G(const RefinedTable& rt, int n);

}  // namespace latwalk

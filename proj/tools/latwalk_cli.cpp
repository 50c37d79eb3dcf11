// latwalk: exact restricted lattice-walk enumeration, recurrence guessing,
// operator certification, and closed-form verification.
//
// Subcommands: enumerate, table, guess, certify, refined, closedform.
// Exit codes: 0 success/VALID, 1 FAIL/REFUTED/INVALID, 2 usage error,
// 3 resource error.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latwalk/errors.hpp"
#include "latwalk/formulas.hpp"
#include "latwalk/guess.hpp"
#include "latwalk/shift_operator.hpp"
#include "latwalk/walks.hpp"

using json = nlohmann::ordered_json;
using namespace latwalk;

namespace {

constexpr const char* kVersion = "1.0.0";
// Bump when the bounding-box derivation changes; part of every cache key.
constexpr const char* kBoxPolicy = "box/1";

std::string fnv1a_hex(const std::string& data) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Atomic write: temp file in the same directory, then rename.
void write_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw UsageError("cannot write file: " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw UsageError("cannot rename " + tmp + " to " + path);
}

bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

json int_vec(const std::vector<Int>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
}

json long_vec(const std::vector<long>& v) {
    json a = json::array();
    for (long x : v) a.push_back(x);
    return a;
}

struct Common {
    std::string out;
    std::string cache_dir;
    std::string format = "text";
    unsigned long seed = 0;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--out", c.out, "write the JSON artifact to this path");
    cmd->add_option("--cache-dir", c.cache_dir, "cache directory for enumeration artifacts");
    cmd->add_option("--format", c.format, "stdout format: json|text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--seed", c.seed, "random seed, echoed into the artifact");
}

json artifact_header(const std::string& command, const json& config, const json& hashes) {
    json a;
    a["tool"] = "latwalk";
    a["version"] = kVersion;
    a["command"] = command;
    a["config"] = config;
    a["input_hashes"] = hashes;
    return a;
}

// Emits the artifact (file + stdout) and returns rc.
int finish(const json& artifact, const Common& c, const std::string& text_summary, int rc) {
    std::string dump = artifact.dump(2) + "\n";
    if (!c.out.empty()) write_atomic(c.out, dump);
    if (c.format == "json")
        std::cout << dump;
    else
        std::cout << text_summary;
    return rc;
}

// The cacheable table artifact depends only on content-determining inputs.
json table_artifact(const WalkTable& t, const std::string& steps_str,
                    const std::string& region_str, int m, unsigned long seed) {
    json config;
    config["steps"] = steps_str;
    config["region"] = region_str;
    config["m_max"] = m;
    config["box_policy"] = kBoxPolicy;
    config["seed"] = seed;
    json hashes;
    hashes["steps"] = fnv1a_hex(steps_str);
    hashes["region"] = fnv1a_hex(region_str);
    json a = artifact_header("enumerate", config, hashes);
    a["lo"] = long_vec(t.lo());
    a["hi"] = long_vec(t.hi());
    a["cells_per_slice"] = t.cells_per_slice();
    a["returns"] = int_vec(t.return_counts());
    if (t.retained()) {
        json slices = json::array();
        for (int m_i = 0; m_i <= t.m_max(); ++m_i) {
            json slice = json::array();
            for (size_t idx = 0; idx < t.cells_per_slice(); ++idx)
                slice.push_back(t.cell(m_i, t.decode(idx)).get_str());
            slices.push_back(std::move(slice));
        }
        a["slices"] = std::move(slices);
    }
    return a;
}

std::string join_ints(const std::vector<Int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s;
}

std::vector<long> parse_long_list(const std::string& text) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stol(tok));
        } catch (const std::exception&) {
            throw UsageError("bad integer list: " + text);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

struct EnumerateArgs {
    Common common;
    std::string steps = "-1,0;0,-1;1,1";
    std::string region = "quadrant";
    int m = 12;
    bool serial = false;
};

int cmd_enumerate(const EnumerateArgs& a) {
    StepSet steps = parse_steps(a.steps);
    Region region = parse_region(a.region, steps.dim);

    std::string cache_path;
    if (!a.common.cache_dir.empty()) {
        std::string key = fnv1a_hex(a.steps + "|" + a.region + "|" + std::to_string(a.m) + "|" +
                                    kBoxPolicy);
        cache_path = a.common.cache_dir + "/walks-" + key + ".json";
    }

    json artifact;
    bool cache_hit = !cache_path.empty() && file_exists(cache_path);
    if (cache_hit) {
        artifact = json::parse(read_file(cache_path));
    } else {
        EnumerateOptions opts;
        opts.parallel = !a.serial;
        WalkTable t = enumerate_walks(steps, region, a.m, opts);
        artifact = table_artifact(t, a.steps, a.region, a.m, a.common.seed);
        if (!cache_path.empty()) write_atomic(cache_path, artifact.dump(2) + "\n");
    }

    std::ostringstream text;
    text << "steps:  " << steps_to_string(steps) << "\n";
    text << "region: " << region_to_string(region) << "\n";
    if (cache_hit) text << "cache:  hit (" << cache_path << ")\n";
    text << "F(m; origin), m = 0.." << a.m << ":\n  ";
    std::string returns;
    for (const auto& r : artifact["returns"]) {
        if (!returns.empty()) returns += ",";
        returns += r.get<std::string>();
    }
    text << returns << "\n";
    return finish(artifact, a.common, text.str(), 0);
}

// ---------------------------------------------------------------------------

struct TableArgs {
    Common common;
    std::string rows;  // "5,6"; empty = all
    int m = 24;
};

int cmd_table(const TableArgs& a) {
    Catalog cat = load_catalog();
    std::vector<std::string> keys;
    if (a.rows.empty()) {
        for (int i = 1; i <= 11; ++i) keys.push_back(std::to_string(i));
    } else {
        for (long r : parse_long_list(a.rows)) keys.push_back(std::to_string(r));
    }

    json config{{"rows", a.rows.empty() ? std::string("all") : a.rows},
                {"m_max", a.m},
                {"seed", a.common.seed}};
    json hashes{{"catalog", fnv1a_hex(read_file(default_catalog_path()))}};
    json artifact = artifact_header("table", config, hashes);
    json results = json::array();

    std::ostringstream text;
    bool all_pass = true;
    for (const auto& key : keys) {
        const CatalogEntry& entry = cat.at(key);
        WalkTable t = enumerate_walks(entry.steps, entry.region, a.m);
        long n_max = entry.form.zero ? a.m : a.m / entry.form.period;
        VerifyReport rep = verify_entry(entry, t, n_max);
        bool ok = rep.ok();
        all_pass = all_pass && ok;
        json row{{"row", key},
                 {"steps", steps_to_string(entry.steps)},
                 {"returns", join_ints(t.return_counts())},
                 {"points_checked", rep.points_checked},
                 {"status", ok ? "PASS" : "FAIL"}};
        if (!ok) {
            json mm = json::array();
            for (const auto& m : rep.mismatches)
                mm.push_back(json{{"n", m.n},
                                  {"expected", m.expected.get_str()},
                                  {"actual", m.actual.get_str()}});
            row["mismatches"] = mm;
        }
        results.push_back(row);
        text << "row " << key << " [" << steps_to_string(entry.steps)
             << "]: " << (ok ? "PASS" : "FAIL") << " (" << rep.points_checked << " points)\n";
    }
    artifact["results"] = results;
    artifact["all_pass"] = all_pass;
    text << (all_pass ? "all rows PASS\n" : "FAIL\n");
    return finish(artifact, a.common, text.str(), all_pass ? 0 : 1);
}

// ---------------------------------------------------------------------------

struct GuessArgs {
    Common common;
    std::string steps = "-1,0;0,-1;1,1";
    std::string region = "quadrant";
    int m = 36;
    int order = -1, degree = -1;          // single fit
    int order_max = -1, degree_max = -1;  // search
    bool raw = false;                     // fit the full sequence, zeros included
    bool quasi = false;
    int shift_max = 1;
    int coeff_degree = 1;
};

json candidate_json(const Candidate& c) {
    json j;
    j["operator"] = c.op.to_text();
    j["status"] = c.status == FitStatus::VERIFIED  ? "VERIFIED"
                  : c.status == FitStatus::REFUTED ? "REFUTED"
                                                   : "FITTED";
    j["fit_window"] = json{{"begin", c.fit.begin}, {"end", c.fit.end}};
    j["heldout_window"] = json{{"begin", c.heldout.begin}, {"end", c.heldout.end}};
    j["heldout_vacuous"] = c.heldout_vacuous;
    return j;
}

int cmd_guess(const GuessArgs& a) {
    StepSet steps = parse_steps(a.steps);
    Region region = parse_region(a.region, steps.dim);
    WalkTable t = enumerate_walks(steps, region, a.m);

    json config{{"steps", a.steps},     {"region", a.region},
                {"m_max", a.m},         {"order", a.order},
                {"degree", a.degree},   {"order_max", a.order_max},
                {"degree_max", a.degree_max}, {"raw", a.raw},
                {"quasi", a.quasi},     {"shift_max", a.shift_max},
                {"coeff_degree", a.coeff_degree}, {"seed", a.common.seed}};
    json hashes{{"steps", fnv1a_hex(a.steps)}, {"region", fnv1a_hex(a.region)}};
    json artifact = artifact_header("guess", config, hashes);
    std::ostringstream text;
    int rc = 0;

    if (a.quasi) {
        Ansatz an;
        an.structure = AnsatzStructure::QUASI;
        an.coeff_total_degree = a.coeff_degree;
        std::vector<int> cur(steps.dim + 1, 0);
        while (true) {
            an.support.push_back(cur);
            size_t i = 0;
            while (i < cur.size() && cur[i] == a.shift_max) cur[i++] = 0;
            if (i == cur.size()) break;
            ++cur[i];
        }
        auto c = fit_quasi(t, an);
        artifact["found"] = c.has_value();
        if (c) {
            artifact["candidate"] = candidate_json(*c);
            ShiftOperator r0 = specialize(*c);
            artifact["specialized"] = r0.to_text();
            text << "structured candidate (" << (c->status == FitStatus::VERIFIED ? "VERIFIED"
                                                                                  : "FITTED")
                 << "):\n" << c->op.to_text() << "\nspecialized at the origin:\n"
                 << r0.to_text() << "\n";
            if (c->status == FitStatus::REFUTED) rc = 1;
        } else {
            text << "no structured operator at shift <= " << a.shift_max
                 << ", coefficient degree <= " << a.coeff_degree << "\n";
        }
        return finish(artifact, a.common, text.str(), rc);
    }

    std::vector<Int> seq = t.return_counts();
    long period = 1;
    if (!a.raw) {
        SupportPattern sp = extract_support(seq);
        period = sp.period;
        seq = sp.subseq;
    }
    artifact["period"] = period;
    artifact["sequence"] = int_vec(seq);
    text << "period " << period << ", " << seq.size() << " terms\n";

    if (a.order >= 0) {
        int degree = a.degree < 0 ? 0 : a.degree;
        auto c = fit_univariate(seq, a.order, degree);
        artifact["found"] = c.has_value();
        if (c) {
            artifact["candidate"] = candidate_json(*c);
            text << "candidate ("
                 << (c->status == FitStatus::VERIFIED
                         ? "VERIFIED"
                         : c->status == FitStatus::REFUTED ? "REFUTED" : "FITTED")
                 << "):\n" << c->op.to_text() << "\n";
            if (c->status == FitStatus::REFUTED) rc = 1;
        } else {
            text << "no operator at order " << a.order << ", degree " << degree << "\n";
        }
    } else {
        int lmax = a.order_max < 0 ? 3 : a.order_max;
        int dmax = a.degree_max < 0 ? 3 : a.degree_max;
        UnivariateSearchResult res = search_univariate(seq, lmax, dmax);
        artifact["found"] = res.found.has_value();
        artifact["tried"] = res.tried;
        artifact["skipped_insufficient"] = res.skipped_insufficient;
        artifact["refuted"] = res.refuted;
        if (res.found) {
            artifact["candidate"] = candidate_json(*res.found);
            text << "VERIFIED candidate:\n" << res.found->op.to_text() << "\n";
        } else {
            text << "none found (tried " << res.tried << " ansatz shapes, "
                 << res.skipped_insufficient << " skipped for insufficient data)\n";
            if (res.refuted > 0) rc = 1;
        }
    }
    return finish(artifact, a.common, text.str(), rc);
}

// ---------------------------------------------------------------------------

struct CertifyArgs {
    Common common;
    std::string steps = "-1,0;0,-1;1,1";
    std::string region = "quadrant";
    int m = 12;
    std::string op_file;
    bool transfer = false;
    bool sequence = false;  // univariate operator against the return subsequence
};

int cmd_certify(const CertifyArgs& a) {
    StepSet steps = parse_steps(a.steps);
    Region region = parse_region(a.region, steps.dim);
    if (a.op_file.empty() && !a.transfer)
        throw UsageError("certify needs --operator FILE or --transfer");

    std::string op_text;
    ShiftOperator op;
    if (a.transfer) {
        op = transfer_operator(steps);
        op_text = op.to_text();
    } else {
        op_text = read_file(a.op_file);
        op = ShiftOperator::from_text(op_text);
    }

    json config{{"steps", a.steps},   {"region", a.region},     {"m_max", a.m},
                {"operator", a.op_file.empty() ? std::string("transfer") : a.op_file},
                {"sequence", a.sequence}, {"seed", a.common.seed}};
    json hashes{{"steps", fnv1a_hex(a.steps)},
                {"region", fnv1a_hex(a.region)},
                {"operator", fnv1a_hex(op_text)}};
    json artifact = artifact_header("certify", config, hashes);
    artifact["operator"] = op.to_text();
    std::ostringstream text;

    if (a.sequence) {
        WalkTable t = enumerate_walks(steps, region, a.m);
        SupportPattern sp = extract_support(t.return_counts());
        auto nonzero = apply_to_sequence(op, sp.subseq, 0, long(sp.subseq.size()));
        long positions = std::max(0L, long(sp.subseq.size()) - max_time_shift(op));
        json witness = nullptr;
        if (!nonzero.empty())
            witness = json{{"n", nonzero.front().first},
                           {"residual", nonzero.front().second.get_str()}};
        bool valid = nonzero.empty() && positions > 0;
        artifact["mode"] = "sequence";
        artifact["period"] = sp.period;
        artifact["positions_checked"] = positions;
        artifact["nonzero_residuals"] = nonzero.size();
        artifact["witness"] = witness;
        artifact["valid"] = valid;
        text << (valid ? "VALID" : "INVALID") << " (" << positions
             << " positions on the period-" << sp.period << " subsequence)\n";
        if (!witness.is_null())
            text << "witness: n=" << witness["n"] << " residual=" << witness["residual"] << "\n";
        return finish(artifact, a.common, text.str(), valid ? 0 : 1);
    }

    Certificate cert = certify(op, steps, region, a.m);
    artifact["mode"] = "table";
    artifact["chain_depth"] = cert.chain.depth();
    artifact["first_not_good"] = cert.chain.first_not_good;
    artifact["identities_ok"] = cert.identities_ok;
    artifact["base_ok"] = cert.base_ok;
    artifact["valid"] = cert.valid;
    artifact["witness"] = cert.witness;
    json res = json::array();
    for (const auto& r : cert.region_residuals) {
        json rr{{"cells_checked", r.cells_checked}, {"nonzero_total", r.nonzero_total}};
        json cells = json::array();
        for (const auto& c : r.nonzero)
            cells.push_back(json{{"m", c.m}, {"n", long_vec(c.n)}, {"value", c.value.get_str()}});
        rr["nonzero"] = cells;
        res.push_back(rr);
    }
    artifact["region_residuals"] = res;
    text << (cert.valid ? "VALID" : "INVALID") << " (chain depth " << cert.chain.depth()
         << ", m <= " << a.m << ")\n";
    if (!cert.valid) text << "witness: " << cert.witness << "\n";
    return finish(artifact, a.common, text.str(), cert.valid ? 0 : 1);
}

// ---------------------------------------------------------------------------

struct RefinedArgs {
    Common common;
    std::string steps = "-1,0;0,-1;1,1";
    std::string region = "quadrant";
    int total_max = 18;
    std::string at;      // single multiplicity vector "2,2,2"
    int diag = -1;       // f(n,...,n) for n = 0..diag
    int gessel = -1;     // G(n) for n = 0..gessel
};

int cmd_refined(const RefinedArgs& a) {
    StepSet steps = parse_steps(a.steps);
    Region region = parse_region(a.region, steps.dim);
    RefinedTable rt = refined_enumerate(steps, region, a.total_max);

    json config{{"steps", a.steps},   {"region", a.region}, {"total_max", a.total_max},
                {"at", a.at},         {"diag", a.diag},     {"gessel", a.gessel},
                {"seed", a.common.seed}};
    json hashes{{"steps", fnv1a_hex(a.steps)}, {"region", fnv1a_hex(a.region)}};
    json artifact = artifact_header("refined", config, hashes);
    std::ostringstream text;
    bool ok = true;
    size_t r = steps.steps.size();

    if (!a.at.empty()) {
        std::vector<long> A = parse_long_list(a.at);
        if (A.size() != r)
            throw UsageError("--at needs one multiplicity per step kind (" + std::to_string(r) +
                             ")");
        Int v = rt.f(A);
        artifact["f"] = v.get_str();
        text << "f(" << a.at << ") = " << v.get_str() << "\n";
    }
    if (a.diag >= 0) {
        WalkTable t = enumerate_walks(steps, region, int(r) * a.diag);
        json rows = json::array();
        for (int n = 0; n <= a.diag; ++n) {
            std::vector<long> A(r, n);
            Int f = rt.f(A);
            Int F = *t.lookup(int(r) * n, std::vector<long>(steps.dim, 0));
            bool eq = f == F;
            ok = ok && eq;
            rows.push_back(json{{"n", n}, {"f_diag", f.get_str()}, {"F", F.get_str()},
                                {"match", eq}});
            text << "n=" << n << ": f(diag) = " << f.get_str() << ", F(" << r * n
                 << "; origin) = " << F.get_str() << (eq ? "" : "  MISMATCH") << "\n";
        }
        artifact["diagonal"] = rows;
    }
    if (a.gessel >= 0) {
        WalkTable t = enumerate_walks(steps, region, 2 * a.gessel);
        json rows = json::array();
        for (int n = 0; n <= a.gessel; ++n) {
            Int g = gessel_G(rt, n);
            Int F = *t.lookup(2 * n, std::vector<long>(steps.dim, 0));
            bool eq = g == F;
            ok = ok && eq;
            rows.push_back(json{{"n", n}, {"G", g.get_str()}, {"F", F.get_str()},
                                {"match", eq}});
            text << "n=" << n << ": G(n) = " << g.get_str() << ", F(" << 2 * n
                 << "; origin) = " << F.get_str() << (eq ? "" : "  MISMATCH") << "\n";
        }
        artifact["gessel"] = rows;
    }
    artifact["all_match"] = ok;
    return finish(artifact, a.common, text.str(), ok ? 0 : 1);
}

// ---------------------------------------------------------------------------

struct ClosedFormArgs {
    Common common;
    std::string key = "kreweras";
    int n_max = 10;
    bool verify = false;
    int m = 24;
};

int cmd_closedform(const ClosedFormArgs& a) {
    Catalog cat = load_catalog();
    const CatalogEntry& entry = cat.at(a.key);

    json config{{"key", a.key}, {"n_max", a.n_max}, {"verify", a.verify}, {"m_max", a.m},
                {"seed", a.common.seed}};
    json hashes{{"catalog", fnv1a_hex(read_file(default_catalog_path()))}};
    json artifact = artifact_header("closedform", config, hashes);
    std::ostringstream text;

    json vals = json::array();
    text << a.key << " (period " << entry.form.period << "):\n";
    for (int n = 0; n <= a.n_max; ++n) {
        Int v = eval_closed_form(entry.form, n);
        vals.push_back(v.get_str());
        text << "  n=" << n << ": " << v.get_str() << "\n";
    }
    artifact["values"] = vals;

    bool ok = true;
    if (a.verify) {
        WalkTable t = enumerate_walks(entry.steps, entry.region, a.m);
        long n_max = entry.form.zero ? a.m : a.m / entry.form.period;
        VerifyReport rep = verify_entry(entry, t, n_max);
        ok = rep.ok();
        artifact["points_checked"] = rep.points_checked;
        artifact["verified"] = ok;
        text << "verification against enumeration to m=" << a.m << ": "
             << (ok ? "PASS" : "FAIL") << " (" << rep.points_checked << " points)\n";
    }
    return finish(artifact, a.common, text.str(), ok ? 0 : 1);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact restricted lattice-walk enumeration, recurrence guessing, and "
                 "operator certification"};
    app.require_subcommand(1);

    EnumerateArgs ea;
    CLI::App* en = app.add_subcommand("enumerate", "enumerate walks and persist the table");
    en->add_option("--steps", ea.steps, "step set, e.g. \"-1,0;0,-1;1,1\"");
    en->add_option("--region", ea.region, "region: quadrant|halfline|octant3d|ballot:d|none|atoms");
    en->add_option("--m", ea.m, "maximal walk length");
    en->add_flag("--serial", ea.serial, "disable the parallel fill");
    add_common(en, ea.common);

    TableArgs ta;
    CLI::App* tb = app.add_subcommand("table", "verify the eleven tabulated walks");
    tb->add_option("--rows", ta.rows, "comma-separated row subset, e.g. 5,6");
    tb->add_option("--m", ta.m, "maximal walk length");
    add_common(tb, ta.common);

    GuessArgs ga;
    CLI::App* gu = app.add_subcommand("guess", "fit recurrence operators to enumerated data");
    gu->add_option("--steps", ga.steps, "step set");
    gu->add_option("--region", ga.region, "region");
    gu->add_option("--m", ga.m, "maximal walk length");
    gu->add_option("--order", ga.order, "recurrence order (single fit)");
    gu->add_option("--degree", ga.degree, "coefficient degree (single fit)");
    gu->add_option("--order-max", ga.order_max, "search bound on the order");
    gu->add_option("--degree-max", ga.degree_max, "search bound on the degree");
    gu->add_flag("--raw", ga.raw, "fit the full return sequence, zeros included");
    gu->add_flag("--quasi", ga.quasi, "fit the structured multivariate ansatz");
    gu->add_option("--shift-max", ga.shift_max, "per-generator shift bound (structured fit)");
    gu->add_option("--coeff-degree", ga.coeff_degree,
                   "coefficient total degree (structured fit)");
    add_common(gu, ga.common);

    CertifyArgs ca;
    CLI::App* ce = app.add_subcommand("certify", "certify an operator against enumeration");
    ce->add_option("--steps", ca.steps, "step set");
    ce->add_option("--region", ca.region, "region");
    ce->add_option("--m", ca.m, "maximal walk length");
    ce->add_option("--operator", ca.op_file, "operator file (text format)");
    ce->add_flag("--transfer", ca.transfer, "certify the walk's own transfer operator");
    ce->add_flag("--sequence", ca.sequence,
                 "apply a univariate operator to the return subsequence instead");
    add_common(ce, ca.common);

    RefinedArgs ra;
    CLI::App* re = app.add_subcommand("refined", "count walks by step-kind multiplicities");
    re->add_option("--steps", ra.steps, "step set (kind order fixes the multiplicity order)");
    re->add_option("--region", ra.region, "region");
    re->add_option("--total-max", ra.total_max, "maximal total number of steps");
    re->add_option("--at", ra.at, "single multiplicity vector, e.g. 2,2,2");
    re->add_option("--diag", ra.diag, "print f(n,..,n) vs F(rn; origin) for n = 0..DIAG");
    re->add_option("--gessel", ra.gessel, "print G(n) vs F(2n; origin) for n = 0..GESSEL");
    add_common(re, ra.common);

    ClosedFormArgs fa;
    CLI::App* cf = app.add_subcommand("closedform", "evaluate and check catalog closed forms");
    cf->add_option("--key", fa.key, "catalog key: 1..11, kreweras, gessel");
    cf->add_option("--n", fa.n_max, "evaluate for n = 0..N");
    cf->add_flag("--verify", fa.verify, "compare against fresh enumeration");
    cf->add_option("--m", fa.m, "enumeration length for --verify");
    add_common(cf, fa.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (en->parsed()) return cmd_enumerate(ea);
        if (tb->parsed()) return cmd_table(ta);
        if (gu->parsed()) return cmd_guess(ga);
        if (ce->parsed()) return cmd_certify(ca);
        if (re->parsed()) return cmd_refined(ra);
        if (cf->parsed()) return cmd_closedform(fa);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

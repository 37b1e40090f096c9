// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cofinal/integrand.hpp"
#include "cofinal/partition.hpp"
#include "cofinal/properties.hpp"
#include "cofinal/report.hpp"
#include "cofinal/riemann.hpp"
#include "cofinal/sampler.hpp"
#include "cofinal/topology.hpp"

namespace {

using namespace cofinal;

// Exit codes: 0 ok, 1 usage, 2 unknown function, 3 resource ceiling,
// 4 falsification found, 5 failing property.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUnknownFn = 2;
constexpr int kExitResource = 3;
constexpr int kExitFalsified = 4;
constexpr int kExitProperty = 5;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/*
 * Every option is collected as a raw string so that a config file and
 * the command line feed one merge step: explicit flags win, file values
 * fill the gaps, defaults cover the rest. std::map keeps references
 * stable, so CLI11 can bind to the slots while more keys are added.
 */
struct RawArgs {
    std::map<std::string, std::string> value;
    std::map<std::string, CLI::Option*> option;
    std::string config_path;

    void add(CLI::App* cmd, const std::string& key, const std::string& help) {
        option[key] = cmd->add_option("--" + key, value[key], help);
    }

    bool has(const std::string& key) const {
        auto it = value.find(key);
        return it != value.end() && !it->second.empty();
    }

    std::string get(const std::string& key, const std::string& fallback = "") const {
        auto it = value.find(key);
        return it != value.end() && !it->second.empty() ? it->second : fallback;
    }
};

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// Flat key=value config; '#' starts a comment line. Flags override.
void merge_config(RawArgs& raw) {
    if (raw.config_path.empty()) return;
    std::ifstream in(raw.config_path);
    if (!in) throw UsageError("cannot open config file: " + raw.config_path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        auto it = raw.option.find(key);
        if (it == raw.option.end())
            throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key +
                             "' for this command");
        if (it->second->count() == 0) raw.value[key] = val;
    }
}

std::uint64_t parse_seed(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw UsageError("--seed must be a decimal 64-bit unsigned integer");
    errno = 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (errno != 0 || end != s.c_str() + s.size()) throw UsageError("--seed out of range");
    return static_cast<std::uint64_t>(v);
}

long parse_long_arg(const std::string& s, const std::string& what) {
    errno = 0;
    char* end = nullptr;
    long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || errno != 0 || end != s.c_str() + s.size()) throw UsageError(what + ": expected an integer");
    return v;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(trim(item));
    return parts;
}

std::vector<long> parse_p_list(const std::string& s) {
    std::vector<long> ps;
    for (const std::string& part : split_commas(s)) {
        long p = parse_long_arg(part, "--p");
        if (p < 0) throw UsageError("--p: precisions must be nonnegative");
        ps.push_back(p);
    }
    if (ps.empty()) throw UsageError("--p: empty list");
    return ps;
}

std::vector<Rational> parse_radii(const std::string& s) {
    std::vector<Rational> rs;
    for (const std::string& part : split_commas(s)) {
        std::optional<Rational> r = parse_rational(part);
        if (!r || r->sign() <= 0) throw UsageError("--radii: expected positive rationals like 1/4");
        rs.push_back(*r);
    }
    if (rs.empty()) throw UsageError("--radii: empty list");
    return rs;
}

Rational parse_rational_arg(const std::string& s, const std::string& what) {
    std::optional<Rational> r = parse_rational(s);
    if (!r) throw UsageError(what + ": expected a rational like 3/4");
    return *r;
}

struct Output {
    std::string path;    // empty = stdout
    std::string format;  // "table" or "csv"
};

Output parse_output(const RawArgs& raw) {
    Output out;
    out.path = raw.get("out");
    out.format = raw.get("format", "table");
    if (out.format != "table" && out.format != "csv")
        throw UsageError("--format must be 'table' or 'csv'");
    return out;
}

void emit(const Output& out, const std::vector<ReportRow>& rows) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out.path.empty()) {
        file.open(out.path);
        if (!file) throw UsageError("cannot open output file: " + out.path);
        os = &file;
    }
    if (out.format == "csv")
        write_csv(*os, rows);
    else
        write_table(*os, rows);
}

/// fn validation runs before any work, for every command that takes one.
RegistryEntry require_fn(const std::string& id) {
    std::optional<RegistryEntry> e = find_integrand(id);
    if (!e) {
        std::cerr << "unknown function '" << id << "'; known:";
        for (const RegistryEntry& r : integrand_registry()) std::cerr << ' ' << r.f.id;
        std::cerr << '\n';
        std::exit(kExitUnknownFn);
    }
    return *e;
}

int cmd_integrate(RawArgs& raw) {
    RegistryEntry entry = require_fn(raw.get("fn", "linear"));
    std::vector<long> ps = parse_p_list(raw.get("p", "4,8,12,16,20"));
    Output out = parse_output(raw);

    std::string canonical = "command=integrate;fn=" + entry.f.id + ";p=";
    for (std::size_t i = 0; i < ps.size(); ++i) canonical += (i ? "|" : "") + std::to_string(ps[i]);
    std::string run_id = run_id_for(canonical);

    std::vector<ReportRow> rows;
    bool all_pass = true;
    for (long p : ps) {
        CReal z = integrate(entry.f, p);
        Rational v = z.approx(static_cast<int>(p));
        Rational err = abs(v - entry.integral);
        bool pass = err <= pow2(-p);
        all_pass = all_pass && pass;
        ReportRow row;
        row.run_id = run_id;
        row.command = "integrate";
        row.fn = entry.f.id;
        row.param = "p=" + std::to_string(p) + ";oracle=" + entry.integral.str() +
                    ";err=" + render_decimal(err, p);
        row.value = render_decimal(v, p);
        row.bound = "2^-" + std::to_string(p);
        row.status = pass ? "pass" : "fail";
        rows.push_back(std::move(row));
    }
    emit(out, rows);
    return all_pass ? kExitOk : kExitProperty;
}

int cmd_verify_net(RawArgs& raw) {
    RegistryEntry entry = require_fn(raw.get("fn", "linear"));
    if (!raw.has("seed")) throw UsageError("verify-net samples indices; --seed is mandatory");
    std::uint64_t seed = parse_seed(raw.get("seed"));
    std::vector<Rational> radii = parse_radii(raw.get("radii", "1/4,1/32,1/256"));
    long trials = parse_long_arg(raw.get("trials", "100"), "--trials");
    if (trials <= 0) throw UsageError("--trials must be positive");
    Output out = parse_output(raw);

    std::string canonical = "command=verify-net;fn=" + entry.f.id + ";radii=";
    for (std::size_t i = 0; i < radii.size(); ++i) canonical += (i ? "|" : "") + radii[i].str();
    canonical += ";trials=" + std::to_string(trials) + ";seed=" + std::to_string(seed);

    RiemannNet rn = riemann_net(entry.f);
    CReal zeta;
    std::string zeta_desc;
    if (raw.has("zeta-override")) {
        Rational zr = parse_rational_arg(raw.get("zeta-override"), "--zeta-override");
        zeta = CReal::from_rational(zr);
        zeta_desc = zr.str();
        canonical += ";zeta=" + zr.str();
    } else {
        zeta = integrate(entry.f, 20);
        zeta_desc = "integrate(p=20)";
    }
    std::string run_id = run_id_for(canonical);

    VerifyNetReport<TaggedPartition> report =
        verify_net_limit<TaggedPartition>(rn.directed, rn.cofinal, rn.net, rn.witness, zeta, radii,
                                          rn.seq_modulus, seed, static_cast<std::size_t>(trials));

    std::vector<ReportRow> rows;
    for (const VerifyRadiusRun<TaggedPartition>& run : report.runs) {
        ReportRow row;
        row.run_id = run_id;
        row.command = "verify-net";
        row.fn = entry.f.id;
        row.param = "radius=" + run.radius.str() + ";k=" + std::to_string(run.offset_k) +
                    ";trials=" + std::to_string(run.trials) + ";zeta=" + zeta_desc;
        row.value = "falsified=" + std::to_string(run.falsified);
        row.bound = run.search_a_witness ? "search_a=found" : "search_a=none";
        row.status = run.falsified == 0 ? "pass" : "fail";
        rows.push_back(std::move(row));
    }
    for (const Falsification<TaggedPartition>& f : report.falsifications) {
        ReportRow row;
        row.run_id = run_id;
        row.command = "verify-net";
        row.fn = entry.f.id;
        row.param = "radius=" + f.radius.str() + ";n=" + std::to_string(f.n) + ";" + f.note;
        row.value = f.beta.describe();
        row.bound = "escaped outer ball";
        row.status = "falsified";
        rows.push_back(std::move(row));
    }
    emit(out, rows);
    return report.ok ? kExitOk : kExitFalsified;
}

int cmd_property_suite(RawArgs& raw) {
    if (raw.has("fn")) require_fn(raw.get("fn"));
    if (!raw.has("seed")) throw UsageError("property-suite samples cases; --seed is mandatory");
    PropertyConfig cfg;
    cfg.seed = parse_seed(raw.get("seed"));
    cfg.fn_id = raw.get("fn", "linear");
    if (raw.has("samples")) {
        long s = parse_long_arg(raw.get("samples"), "--samples");
        if (s <= 0) throw UsageError("--samples must be positive");
        cfg.samples = static_cast<std::size_t>(s);
    }
    if (raw.has("depth")) {
        long d = parse_long_arg(raw.get("depth"), "--depth");
        if (d < 2) throw UsageError("--depth must be at least 2");
        cfg.depth = d;
    }
    if (raw.has("tol")) {
        Rational t = parse_rational_arg(raw.get("tol"), "--tol");
        if (t.sign() < 0) throw UsageError("--tol must be nonnegative");
        cfg.tol = t;
    }
    std::string only = raw.get("only");
    if (!only.empty() && find_property(only) == nullptr) {
        std::cerr << "unknown property '" << only << "'; known:";
        for (const PropertyDef& p : property_registry()) std::cerr << ' ' << p.name;
        std::cerr << '\n';
        return kExitUsage;
    }
    Output out = parse_output(raw);

    std::string canonical = "command=property-suite;seed=" + std::to_string(cfg.seed) + ";fn=" + cfg.fn_id;
    if (cfg.samples) canonical += ";samples=" + std::to_string(*cfg.samples);
    if (cfg.depth) canonical += ";depth=" + std::to_string(*cfg.depth);
    if (cfg.tol) canonical += ";tol=" + cfg.tol->str();
    if (!only.empty()) canonical += ";only=" + only;
    std::string run_id = run_id_for(canonical);

    std::vector<ReportRow> rows;
    std::string first_failure;
    for (const PropertyDef& def : property_registry()) {
        if (!only.empty() && def.name != only) continue;
        PropertyResult r = def.run(cfg);
        if (!r.pass && first_failure.empty()) first_failure = r.name;
        ReportRow row;
        row.run_id = run_id;
        row.command = "property-suite";
        row.fn = cfg.fn_id;
        row.param = r.name;
        row.value = r.detail;
        row.bound = "cases=" + std::to_string(r.cases);
        row.status = r.pass ? "pass" : "fail";
        rows.push_back(std::move(row));
    }
    emit(out, rows);
    if (!first_failure.empty()) {
        std::cerr << "property failed: " << first_failure << '\n';
        return kExitProperty;
    }
    return kExitOk;
}

int cmd_demo_regular_pair(RawArgs& raw) {
    if (!raw.has("seed")) throw UsageError("demo-regular-pair samples points; --seed is mandatory");
    std::uint64_t seed = parse_seed(raw.get("seed"));
    long trials = parse_long_arg(raw.get("trials", "12"), "--trials");
    if (trials <= 0) throw UsageError("--trials must be positive");
    Output out = parse_output(raw);

    std::string canonical =
        "command=demo-regular-pair;seed=" + std::to_string(seed) + ";trials=" + std::to_string(trials);
    std::string run_id = run_id_for(canonical);

    // A fixed showcase pair around 1/3: outer radius 1/2, inner 1/4.
    Rational center(1, 3);
    RegularPair pair = shrink_to_regular(Ball(CReal::from_rational(center), Rational(1, 2)));
    SeededRng rng(seed);
    std::vector<ReportRow> rows;
    for (long t = 0; t < trials; ++t) {
        Rational x = rng.rational_between(Rational(-1), Rational(2), 10);
        Classification c = classify(pair, CReal::from_rational(x));
        ReportRow row;
        row.run_id = run_id;
        row.command = "demo-regular-pair";
        row.fn = "-";
        row.param = "x=" + x.str();
        row.value = "dist=" + render_decimal(abs(x - center), 10);
        row.bound = "window=" + pair.inner_radius().str() + ".." + pair.outer_radius().str();
        row.status = c.in_outer() ? "in_outer" : "not_touch_inner";
        rows.push_back(std::move(row));
    }
    emit(out, rows);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Riemann integration over tagged partitions of [0,1]"};
    app.require_subcommand(1);

    RawArgs ri, rv, rp, rd;

    CLI::App* ci = app.add_subcommand("integrate", "integrate a registry function to given precisions");
    ci->add_option("--config", ri.config_path, "flat key=value config file; flags override");
    ri.add(ci, "fn", "function id (const1, linear, square, absdev)");
    ri.add(ci, "p", "comma-separated precision list, default 4,8,12,16,20");
    ri.add(ci, "out", "write the report to this path instead of stdout");
    ri.add(ci, "format", "table or csv");

    CLI::App* cv = app.add_subcommand("verify-net", "falsification search for the net limit");
    cv->add_option("--config", rv.config_path, "flat key=value config file; flags override");
    rv.add(cv, "fn", "function id");
    rv.add(cv, "radii", "comma-separated rational radii, default 1/4,1/32,1/256");
    rv.add(cv, "trials", "sampled indices per radius, default 100");
    rv.add(cv, "seed", "64-bit seed (mandatory)");
    rv.add(cv, "zeta-override", "rational replacing the integrator's limit, e.g. 0");
    rv.add(cv, "out", "write the report to this path instead of stdout");
    rv.add(cv, "format", "table or csv");

    CLI::App* cp = app.add_subcommand("property-suite", "run the named property checks");
    cp->add_option("--config", rp.config_path, "flat key=value config file; flags override");
    rp.add(cp, "seed", "64-bit seed (mandatory)");
    rp.add(cp, "only", "run a single property by name");
    rp.add(cp, "samples", "override the per-property case count");
    rp.add(cp, "depth", "sequence depth / max precision where meaningful");
    rp.add(cp, "fn", "integrand for function-parametric properties");
    rp.add(cp, "tol", "strict ceiling on observed deviations (rational)");
    rp.add(cp, "out", "write the report to this path instead of stdout");
    rp.add(cp, "format", "table or csv");

    CLI::App* cd = app.add_subcommand("demo-regular-pair", "classification table of a pair over sampled points");
    cd->add_option("--config", rd.config_path, "flat key=value config file; flags override");
    rd.add(cd, "seed", "64-bit seed (mandatory)");
    rd.add(cd, "trials", "number of sampled points, default 12");
    rd.add(cd, "out", "write the report to this path instead of stdout");
    rd.add(cd, "format", "table or csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (ci->parsed()) {
            merge_config(ri);
            return cmd_integrate(ri);
        }
        if (cv->parsed()) {
            merge_config(rv);
            return cmd_verify_net(rv);
        }
        if (cp->parsed()) {
            merge_config(rp);
            return cmd_property_suite(rp);
        }
        if (cd->parsed()) {
            merge_config(rd);
            return cmd_demo_regular_pair(rd);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

// Command-line front end: every experiment the library supports, emitted as
// CSV or JSON with a reproducibility-first bent (no randomness, fixed
// reduction orders, 17-digit floats).

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sqf/sqf.hpp"

namespace {

using json = nlohmann::json;
using sqf::Complex;

int g_exit_code = 0;

struct Common {
    std::string out;
    std::string format = "csv";
    std::string config;
    std::string ordering_path;
    std::string seed;
    std::string z_str;
    bool unsafe_domain = false;
    unsigned threads = 1;

    CLI::Option* out_opt = nullptr;
    CLI::Option* format_opt = nullptr;
    CLI::Option* config_opt = nullptr;
    CLI::Option* ordering_opt = nullptr;
    CLI::Option* z_opt = nullptr;
    CLI::Option* threads_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
};

void add_common(CLI::App* cmd, Common& c, bool with_ordering, bool with_z, bool with_format = true) {
    c.out_opt = cmd->add_option("--out", c.out, "write output to this file instead of stdout");
    if (with_format)
        c.format_opt = cmd->add_option("--format", c.format, "output format")
                           ->check(CLI::IsMember({"csv", "json"}));
    c.config_opt = cmd->add_option("--config", c.config, "key = value config file; flags override");
    c.threads_opt = cmd->add_option("--threads", c.threads, "worker cap for parallel sections")
                        ->check(CLI::Range(1u, 256u));
    c.seed_opt = cmd->add_option("--seed", c.seed, "rejected: nothing here is randomized");
    cmd->add_flag("--unsafe-domain", c.unsafe_domain, "evaluate outside the declared parameter domains");
    if (with_ordering)
        c.ordering_opt =
            cmd->add_option("--ordering", c.ordering_path, "ordering prefix file, one prime per line");
    if (with_z) c.z_opt = cmd->add_option("--z", c.z_str, "complex parameter as x,y");
}

// config fills whatever the command line left unset; returns the map for
// subcommand-specific keys
std::map<std::string, std::string> finalize_common(Common& c) {
    if (c.seed_opt && c.seed_opt->count())
        throw sqf::DomainError("--seed rejected: every run is deterministic");
    std::map<std::string, std::string> cfg;
    if (!c.config.empty()) {
        cfg = sqf::load_config(c.config);
        const auto fill = [&](CLI::Option* opt, const char* key, std::string& target) {
            if (!opt || opt->count()) return;
            if (const auto it = cfg.find(key); it != cfg.end()) target = it->second;
        };
        fill(c.z_opt, "z", c.z_str);
        fill(c.ordering_opt, "ordering", c.ordering_path);
        if (c.threads_opt && !c.threads_opt->count())
            if (const auto it = cfg.find("threads"); it != cfg.end())
                c.threads = static_cast<unsigned>(std::stoul(it->second));
    }
    return cfg;
}

std::uint64_t parse_count(const std::string& s, const char* what, std::uint64_t min_v = 1) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !(v >= 0.0) || v > 9.0e15 || v != std::floor(v))
            throw std::invalid_argument("not integral");
        const auto n = static_cast<std::uint64_t>(v);
        if (n < min_v)
            throw sqf::DomainError(std::string(what) + ": must be >= " + std::to_string(min_v));
        return n;
    } catch (const sqf::DomainError&) {
        throw;
    } catch (const std::exception&) {
        throw sqf::DomainError(std::string(what) + ": expected an integer, got '" + s + "'");
    }
}

sqf::SeriesPoint parse_z(const Common& c) {
    if (c.z_str.empty()) throw sqf::DomainError("--z x,y is required (or set z in the config file)");
    const auto [x, y] = sqf::parse_pair(c.z_str, "--z");
    return sqf::SeriesPoint{x, y, c.unsafe_domain};
}

sqf::PrimeOrdering load_ordering(const Common& c) {
    if (c.ordering_path.empty()) return sqf::PrimeOrdering::increasing();
    return sqf::PrimeOrdering(sqf::load_ordering_prefix(c.ordering_path));
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw sqf::DomainError("cannot write " + c.out);
    f << text;
}

std::string join_csv(const std::vector<std::string>& fields) {
    std::string s;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) s += ',';
        s += fields[i];
    }
    return s;
}

std::string make_csv(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows,
                     const std::vector<std::string>& footer = {}) {
    std::string s = join_csv(header) + "\n";
    for (const auto& r : rows) s += join_csv(r) + "\n";
    for (const auto& line : footer) s += line + "\n";
    return s;
}

json meta_json(const char* command, const std::map<std::string, std::string>& params) {
    return json{{"command", command}, {"version", sqf::kVersion}, {"parameters", params}};
}

void emit_table(const Common& c, const char* command, const std::map<std::string, std::string>& params,
                const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                const json& json_rows, const std::vector<std::string>& csv_footer = {},
                const json& extra_meta = json::object()) {
    if (c.format == "json") {
        json doc{{"meta", meta_json(command, params)}, {"rows", json_rows}};
        for (const auto& [k, v] : extra_meta.items()) doc["meta"][k] = v;
        emit(c, doc.dump(2) + "\n");
    } else {
        emit(c, make_csv(header, rows, csv_footer));
    }
}

std::string f17(double v) { return sqf::format_double17(v); }

// ---------------------------------------------------------------- sieve

void run_sieve(Common& c, const std::string& limit_str) {
    finalize_common(c);
    const std::uint64_t limit = parse_count(limit_str, "--limit", 3);
    const sqf::PrimeTable t = sqf::sieve_odd_primes(limit);
    std::vector<std::vector<std::string>> rows;
    json jrows = json::array();
    rows.reserve(t.primes().size());
    for (std::size_t i = 0; i < t.primes().size(); ++i) {
        rows.push_back({std::to_string(i + 1), std::to_string(t.primes()[i])});
        if (c.format == "json") jrows.push_back({{"i", i + 1}, {"p", t.primes()[i]}});
    }
    emit_table(c, "sieve", {{"limit", limit_str}}, {"i", "p"}, rows, jrows);
}

// ---------------------------------------------------------------- qseq

void run_qseq(Common& c, const std::string& count_str) {
    finalize_common(c);
    const std::uint64_t n = parse_count(count_str, "--count", 1);
    const sqf::PrimeOrdering o = load_ordering(c);
    const auto seq = sqf::induced_sequence(o, n);
    std::vector<std::vector<std::string>> rows;
    json jrows = json::array();
    rows.reserve(seq.size());
    for (const auto& t : seq) {
        rows.push_back({std::to_string(t.position), t.q.str(), std::to_string(t.sign),
                        std::to_string(t.block), f17(t.log_q)});
        if (c.format == "json")
            jrows.push_back({{"position", t.position},
                             {"q", t.q.str()},
                             {"sign", t.sign},
                             {"block", t.block},
                             {"log_q", t.log_q}});
    }
    emit_table(c, "qseq", {{"count", count_str}, {"ordering", c.ordering_path}},
               {"position", "q", "sign", "block", "log_q"}, rows, jrows);
}

// ---------------------------------------------------------------- traces

void emit_trace(Common& c, const char* command, const std::map<std::string, std::string>& params,
                const sqf::SumTrace& tr) {
    std::vector<std::vector<std::string>> rows;
    json jrows = json::array();
    rows.reserve(tr.checkpoints.size());
    for (const auto& cp : tr.checkpoints) {
        rows.push_back({std::to_string(cp.n), f17(cp.value.real()), f17(cp.value.imag()),
                        f17(std::abs(cp.value)), f17(cp.last_term_abs)});
        if (c.format == "json")
            jrows.push_back({{"n", cp.n},
                             {"re", cp.value.real()},
                             {"im", cp.value.imag()},
                             {"abs", std::abs(cp.value)},
                             {"last_term_abs", cp.last_term_abs}});
    }
    emit_table(c, command, params, {"n", "re", "im", "abs", "last_term_abs"}, rows, jrows);
}

void run_theta(Common& c, const std::string& n_str) {
    finalize_common(c);
    const std::uint64_t n = parse_count(n_str, "--n", 1);
    const auto z = parse_z(c);
    emit_trace(c, "theta", {{"n", n_str}, {"z", c.z_str}, {"ordering", c.ordering_path}},
               sqf::theta_partial(load_ordering(c), n, z));
}

void run_eta(Common& c, const std::string& K_str) {
    finalize_common(c);
    const std::uint64_t K = parse_count(K_str, "--K", 1);
    const auto z = parse_z(c);
    emit_trace(c, "eta", {{"K", K_str}, {"z", c.z_str}}, sqf::eta_partial(K, z));
}

void run_euler(Common& c, const std::string& m_str) {
    finalize_common(c);
    const std::uint64_t m = parse_count(m_str, "--m", 1);
    const auto z = parse_z(c);
    const Complex v = sqf::euler_product_partial(load_ordering(c), m, z);
    const std::vector<std::vector<std::string>> rows{
        {std::to_string(m), f17(v.real()), f17(v.imag()), f17(std::abs(v))}};
    json jrows = json::array();
    jrows.push_back({{"m", m}, {"re", v.real()}, {"im", v.imag()}, {"abs", std::abs(v)}});
    emit_table(c, "euler", {{"m", m_str}, {"z", c.z_str}, {"ordering", c.ordering_path}},
               {"m", "re", "im", "abs"}, rows, jrows);
}

void run_phi(Common& c, const std::string& k_str) {
    finalize_common(c);
    const std::uint64_t k = parse_count(k_str, "--k", 1);
    const auto z = parse_z(c);
    const Complex v = sqf::phi(k, z);
    const std::vector<std::vector<std::string>> rows{
        {std::to_string(k), f17(v.real()), f17(v.imag()), f17(std::abs(v))}};
    json jrows = json::array();
    jrows.push_back({{"k", k}, {"re", v.real()}, {"im", v.imag()}, {"abs", std::abs(v)}});
    emit_table(c, "phi", {{"k", k_str}, {"z", c.z_str}}, {"k", "re", "im", "abs"}, rows, jrows);
}

void run_psi(Common& c, const std::string& K_str, const std::string& route) {
    finalize_common(c);
    const std::uint64_t K = parse_count(K_str, "--K", 1);
    const auto z = parse_z(c);
    const sqf::PrimeOrdering o = load_ordering(c);
    const auto r = route == "um" ? sqf::PsiRoute::UmSum : sqf::PsiRoute::EulerProduct;
    const Complex v = sqf::Psi(o, K, z, r);
    const std::uint64_t mK = sqf::m_of_K(o, K);
    const std::vector<std::vector<std::string>> rows{
        {std::to_string(K), std::to_string(mK), f17(v.real()), f17(v.imag()), f17(std::abs(v))}};
    json jrows = json::array();
    jrows.push_back({{"K", K}, {"mK", mK}, {"re", v.real()}, {"im", v.imag()}, {"abs", std::abs(v)}});
    emit_table(c, "psi",
               {{"K", K_str}, {"z", c.z_str}, {"route", route}, {"ordering", c.ordering_path}},
               {"K", "mK", "re", "im", "abs"}, rows, jrows);
}

// ---------------------------------------------------------------- rearrange

void run_rearrange(Common& c, const std::string& target_str, const std::string& steps_str,
                   const std::string& window_str, const std::string& trace_out) {
    const auto cfg = finalize_common(c);
    const std::uint64_t steps = parse_count(steps_str, "--steps", 0);
    std::uint64_t window = 256;
    if (!window_str.empty())
        window = parse_count(window_str, "--window", 1);
    else if (const auto it = cfg.find("window"); it != cfg.end())
        window = parse_count(it->second, "config window", 1);
    const auto z = parse_z(c);

    Complex target;
    bool target_defaulted = false;
    if (!target_str.empty()) {
        const auto [re, im] = sqf::parse_pair(target_str, "--target");
        target = {re, im};
    } else {
        // empirical limit of a long increasing-order run of the prime sum
        const std::uint64_t n = std::max<std::uint64_t>(steps, 100'000);
        const sqf::SumTrace rho = sqf::rho_partial(sqf::PrimeOrdering::increasing(), n, z);
        target = rho.value - sqf::unit_power(std::numbers::ln2, z);
        target_defaulted = true;
    }

    const auto plan = sqf::greedy_rearrange(z, target, steps, sqf::GreedyParams{window});

    std::string prefix_text;
    for (std::uint64_t p : plan.prefix) prefix_text += std::to_string(p) + "\n";
    emit(c, prefix_text);

    if (!trace_out.empty()) {
        std::vector<std::vector<std::string>> rows;
        rows.reserve(plan.trace.checkpoints.size());
        for (const auto& cp : plan.trace.checkpoints)
            rows.push_back({std::to_string(cp.n), f17(cp.value.real()), f17(cp.value.imag()),
                            f17(std::abs(cp.value)), f17(cp.last_term_abs)});
        std::ofstream f(trace_out, std::ios::binary);
        if (!f) throw sqf::DomainError("cannot write " + trace_out);
        f << make_csv({"n", "re", "im", "abs", "last_term_abs"}, rows);
    }

    const auto report = steps > 0 ? sqf::convergence_monitor(plan, 1e-2)
                                  : sqf::MonitorReport{};
    std::cerr << "rearrange: steps=" << steps << " window=" << window << " target=("
              << f17(target.real()) << "," << f17(target.imag()) << ")"
              << (target_defaulted ? " [defaulted]" : "") << " final_distance="
              << f17(std::abs(plan.trace.value - target)) << " min_distance="
              << f17(steps > 0 ? report.min_distance : std::abs(target)) << "\n";
}

// ---------------------------------------------------------------- verify

struct SuiteOutcome {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<std::vector<std::uint64_t>> builtin_sample_prefixes() {
    return {{5, 3}, {7, 3, 31}, {11}, {13, 5, 3, 7}, {31, 3, 11}};
}

void run_verify(Common& c, const std::string& suite, const std::string& report) {
    finalize_common(c);
    std::vector<SuiteOutcome> outcomes;
    const bool custom_ordering = !c.ordering_path.empty();
    const sqf::PrimeOrdering base = load_ordering(c);

    const auto want = [&](const char* name) { return suite == "all" || suite == name; };

    if (want("euler")) {
        SuiteOutcome out{"euler", true, ""};
        std::vector<sqf::PrimeOrdering> orderings{base};
        if (!custom_ordering)
            for (const auto& p : builtin_sample_prefixes()) orderings.emplace_back(p);
        std::uint64_t checked = 0;
        for (const auto& o : orderings) {
            for (std::uint64_t m = 1; m <= 12; ++m) {
                const auto r = sqf::verify_product_expansion(o, m);
                checked += r.checked;
                if (!r.pass && out.pass) {
                    out.pass = false;
                    out.detail = "m = " + std::to_string(m) + ": " + r.witness;
                }
            }
        }
        if (out.pass)
            out.detail = std::to_string(checked) + " signed terms matched exactly across " +
                         std::to_string(orderings.size()) + " orderings";
        outcomes.push_back(out);
    }
    if (want("fk")) {
        const auto r = sqf::verify_fk_range(100'000, c.threads);
        SuiteOutcome out{"fk", r.pass, ""};
        out.detail = r.pass ? "all k <= 100000"
                            : "first failing k = " + std::to_string(r.failing.front());
        outcomes.push_back(out);
    }
    if (want("counts")) {
        const auto r = sqf::verify_counts(16, base);
        outcomes.push_back({"counts", r.pass,
                            r.pass ? "|U_m| and |Q_m| verified by enumeration to m = 16" : r.witness});
    }
    if (want("theta")) {
        sqf::SeriesPoint z{0.75, 1.0, c.unsafe_domain};
        if (!c.z_str.empty()) z = parse_z(c);
        const auto r = sqf::verify_theta_subsequence(base, 18, z, 1e-9);
        outcomes.push_back({"theta", r.pass, "max error " + f17(r.max_error) + " over m <= 18"});
    }
    if (want("pow2")) {
        SuiteOutcome out{"pow2", true, ""};
        const struct {
            sqf::SeriesPoint z;
            std::uint64_t L;
            double tol;
        } cases[] = {{{0.75, 1.0, c.unsafe_domain}, 64, 1e-12},
                     {{0.5, 0.0001, c.unsafe_domain}, 96, 1e-10},
                     {{0.9, 20.0, c.unsafe_domain}, 64, 1e-12}};
        double worst = 0;
        for (const auto& cs : cases) {
            const auto r = sqf::verify_pow2_closed_form(cs.z, cs.L, cs.tol);
            worst = std::max(worst, r.max_error);
            if (!r.pass && out.pass) {
                out.pass = false;
                out.detail = "z = " + f17(cs.z.x) + "+" + f17(cs.z.y) + "i: " + r.witness;
            }
        }
        if (out.pass) out.detail = "worst error " + f17(worst);
        outcomes.push_back(out);
    }
    if (outcomes.empty()) throw sqf::DomainError("verify: unknown suite '" + suite + "'");

    bool all_pass = true;
    for (const auto& o : outcomes) all_pass = all_pass && o.pass;

    if (report == "json") {
        json suites = json::array();
        for (const auto& o : outcomes)
            suites.push_back({{"name", o.name}, {"pass", o.pass}, {"detail", o.detail}});
        json doc{{"meta", meta_json("verify", {{"suite", suite}, {"ordering", c.ordering_path}})},
                 {"suites", suites},
                 {"pass", all_pass}};
        emit(c, doc.dump(2) + "\n");
    } else {
        std::string text;
        for (const auto& o : outcomes)
            text += (o.pass ? "PASS " : "FAIL ") + o.name + ": " + o.detail + "\n";
        text += std::string(all_pass ? "PASS" : "FAIL") + " (" + std::to_string(outcomes.size()) +
                " suites)\n";
        emit(c, text);
    }
    if (!all_pass) g_exit_code = 1;
}

// ---------------------------------------------------------------- omega-scan

void run_omega_scan(Common& c, const std::string& from_str, const std::string& to_str,
                    const std::string& route) {
    finalize_common(c);
    sqf::ProbeConfig cfg;
    cfg.z = parse_z(c);
    cfg.ordering = load_ordering(c);
    cfg.K_from = parse_count(from_str, "--K-from", 1);
    cfg.K_to = parse_count(to_str, "--K-to", 1);
    cfg.route = route == "both" ? sqf::OmegaRoute::Both : sqf::OmegaRoute::Product;
    cfg.threads = c.threads;
    const auto rows = sqf::omega_scan(cfg);

    std::vector<std::vector<std::string>> crows;
    std::vector<std::string> footer;
    json jrows = json::array();
    crows.reserve(rows.size());
    for (const auto& r : rows) {
        crows.push_back({std::to_string(r.K), std::to_string(r.mK), f17(r.psi.real()),
                         f17(r.psi.imag()), f17(r.fk_phi_prefix.real()), f17(r.fk_phi_prefix.imag()),
                         f17(r.omega.real()), f17(r.omega.imag()), f17(std::abs(r.omega)),
                         r.route_gap ? f17(*r.route_gap) : ""});
        if (!r.note.empty()) footer.push_back("# K=" + std::to_string(r.K) + ": " + r.note);
        if (c.format == "json") {
            json jr{{"K", r.K},
                    {"mK", r.mK},
                    {"psi_re", r.psi.real()},
                    {"psi_im", r.psi.imag()},
                    {"fkphi_re", r.fk_phi_prefix.real()},
                    {"fkphi_im", r.fk_phi_prefix.imag()},
                    {"omega_re", r.omega.real()},
                    {"omega_im", r.omega.imag()},
                    {"omega_abs", std::abs(r.omega)}};
            if (r.route_gap) jr["route_gap"] = *r.route_gap;
            if (!r.note.empty()) jr["note"] = r.note;
            jrows.push_back(jr);
        }
    }
    json extra = json::object();
    if (c.unsafe_domain && !sqf::in_domain(sqf::SeriesPoint{cfg.z.x, cfg.z.y}, sqf::Domain::ThetaStrip))
        extra["domain"] = "exploratory";
    emit_table(c, "omega-scan",
               {{"z", c.z_str},
                {"K_from", from_str},
                {"K_to", to_str},
                {"route", route},
                {"ordering", c.ordering_path}},
               {"K", "mK", "psi_re", "psi_im", "fkphi_re", "fkphi_im", "omega_re", "omega_im",
                "omega_abs", "route_gap"},
               crows, jrows, footer, extra);
}

// ---------------------------------------------------------------- equidist

void run_equidist(Common& c, const std::string& N_str, double y, double alpha, double K, double x) {
    finalize_common(c);
    const std::uint64_t N = parse_count(N_str, "--N", 3);
    const auto table = sqf::reciprocal_sums(N, y, alpha, K, x);

    std::vector<std::vector<std::string>> rows;
    json jrows = json::array();
    for (const auto& r : table.rows) {
        const double tot = static_cast<double>(r.count[0] + r.count[1] + r.count[2]);
        std::vector<std::string> row{std::to_string(r.N)};
        for (int cc = 0; cc < 3; ++cc) row.push_back(std::to_string(r.count[cc]));
        for (int cc = 0; cc < 3; ++cc) row.push_back(f17(tot > 0 ? r.count[cc] / tot : 0.0));
        for (int cc = 0; cc < 3; ++cc) row.push_back(f17(r.recip[cc]));
        for (int cc = 0; cc < 3; ++cc) row.push_back(f17(r.recip_x[cc]));
        rows.push_back(row);
        if (c.format == "json")
            jrows.push_back({{"N", r.N},
                             {"count_plus", r.count[0]},
                             {"count_minus", r.count[1]},
                             {"count_neutral", r.count[2]},
                             {"frac_plus", tot > 0 ? r.count[0] / tot : 0.0},
                             {"frac_minus", tot > 0 ? r.count[1] / tot : 0.0},
                             {"frac_neutral", tot > 0 ? r.count[2] / tot : 0.0},
                             {"recip_plus", r.recip[0]},
                             {"recip_minus", r.recip[1]},
                             {"recip_neutral", r.recip[2]},
                             {"recip_x_plus", r.recip_x[0]},
                             {"recip_x_minus", r.recip_x[1]},
                             {"recip_x_neutral", r.recip_x[2]}});
    }
    const std::vector<std::string> footer{
        "# slope_lnln_plus = " + f17(table.slope_vs_lnln[0]),
        "# slope_lnln_minus = " + f17(table.slope_vs_lnln[1]),
        "# slope_lnln_neutral = " + f17(table.slope_vs_lnln[2])};
    json extra{{"slope_lnln_plus", table.slope_vs_lnln[0]},
               {"slope_lnln_minus", table.slope_vs_lnln[1]},
               {"slope_lnln_neutral", table.slope_vs_lnln[2]}};
    emit_table(c, "equidist",
               {{"N", N_str},
                {"y", sqf::format_double17(y)},
                {"alpha", sqf::format_double17(alpha)},
                {"K", sqf::format_double17(K)},
                {"x", sqf::format_double17(x)}},
               {"N", "count_plus", "count_minus", "count_neutral", "frac_plus", "frac_minus",
                "frac_neutral", "recip_plus", "recip_minus", "recip_neutral", "recip_x_plus",
                "recip_x_minus", "recip_x_neutral"},
               rows, jrows, footer, extra);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale experiments with block-ordered squarefree signed Dirichlet sums"};
    app.require_subcommand(1);

    // sieve
    Common c_sieve;
    std::string sieve_limit;
    auto* sieve_cmd = app.add_subcommand("sieve", "odd primes and smallest-factor table up to a limit");
    sieve_cmd->add_option("--limit", sieve_limit, "sieve limit (>= 3)")->required();
    add_common(sieve_cmd, c_sieve, false, false);
    sieve_cmd->callback([&] { run_sieve(c_sieve, sieve_limit); });

    // qseq
    Common c_qseq;
    std::string qseq_count;
    auto* qseq_cmd = app.add_subcommand("qseq", "induced ordering of the squarefree odd numbers");
    qseq_cmd->add_option("--count", qseq_count, "number of terms")->required();
    add_common(qseq_cmd, c_qseq, true, false);
    qseq_cmd->callback([&] { run_qseq(c_qseq, qseq_count); });

    // theta
    Common c_theta;
    std::string theta_n;
    auto* theta_cmd = app.add_subcommand("theta", "signed squarefree partial sum trace");
    theta_cmd->add_option("--n", theta_n, "number of terms")->required();
    add_common(theta_cmd, c_theta, true, true);
    theta_cmd->callback([&] { run_theta(c_theta, theta_n); });

    // eta
    Common c_eta;
    std::string eta_K;
    auto* eta_cmd = app.add_subcommand("eta", "alternating series partial sum trace");
    eta_cmd->add_option("--K", eta_K, "number of terms")->required();
    add_common(eta_cmd, c_eta, false, true);
    eta_cmd->callback([&] { run_eta(c_eta, eta_K); });

    // euler
    Common c_euler;
    std::string euler_m;
    auto* euler_cmd = app.add_subcommand("euler", "partial Euler product over the ordering");
    euler_cmd->add_option("--m", euler_m, "number of factors")->required();
    add_common(euler_cmd, c_euler, true, true);
    euler_cmd->callback([&] { run_euler(c_euler, euler_m); });

    // phi
    Common c_phi;
    std::string phi_k;
    auto* phi_cmd = app.add_subcommand("phi", "single alternating series term");
    phi_cmd->add_option("--k", phi_k, "index k")->required();
    add_common(phi_cmd, c_phi, false, true);
    phi_cmd->callback([&] { run_phi(c_phi, phi_k); });

    // psi
    Common c_psi;
    std::string psi_K, psi_route = "product";
    auto* psi_cmd = app.add_subcommand("psi", "product of the U_m factor and the eta partial");
    psi_cmd->add_option("--K", psi_K, "truncation point")->required();
    psi_cmd->add_option("--route", psi_route, "product|um")->check(CLI::IsMember({"product", "um"}));
    add_common(psi_cmd, c_psi, true, true);
    psi_cmd->callback([&] { run_psi(c_psi, psi_K, psi_route); });

    // rearrange
    Common c_rearr;
    std::string rearr_target, rearr_steps, rearr_window, rearr_trace_out;
    auto* rearr_cmd =
        app.add_subcommand("rearrange", "greedy prime rearrangement steering the sum to a target; "
                                        "writes an ordering prefix file");
    rearr_cmd->add_option("--target", rearr_target, "steering target as re,im (default: long "
                                                    "increasing-order partial sum)");
    rearr_cmd->add_option("--steps", rearr_steps, "primes to consume")->required();
    rearr_cmd->add_option("--window", rearr_window, "candidate window (default 256)");
    rearr_cmd->add_option("--trace-out", rearr_trace_out, "also write the step trace CSV here");
    add_common(rearr_cmd, c_rearr, false, true, false);
    rearr_cmd->callback(
        [&] { run_rearrange(c_rearr, rearr_target, rearr_steps, rearr_window, rearr_trace_out); });

    // verify
    Common c_verify;
    std::string verify_suite, verify_report = "text";
    auto* verify_cmd = app.add_subcommand("verify", "identity suites; nonzero exit on failure");
    verify_cmd->add_option("--suite", verify_suite, "all|euler|fk|counts|theta|pow2")
        ->required()
        ->check(CLI::IsMember({"all", "euler", "fk", "counts", "theta", "pow2"}));
    verify_cmd->add_option("--report", verify_report, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    add_common(verify_cmd, c_verify, true, true, false);
    verify_cmd->callback([&] { run_verify(c_verify, verify_suite, verify_report); });

    // omega-scan
    Common c_scan;
    std::string scan_from, scan_to, scan_route = "product";
    auto* scan_cmd = app.add_subcommand("omega-scan", "per-K rows of psi, the f·phi prefix and omega");
    scan_cmd->add_option("--K-from", scan_from, "first K")->required();
    scan_cmd->add_option("--K-to", scan_to, "last K")->required();
    scan_cmd->add_option("--route", scan_route, "product|both")
        ->check(CLI::IsMember({"product", "both"}));
    add_common(scan_cmd, c_scan, true, true);
    scan_cmd->callback([&] { run_omega_scan(c_scan, scan_from, scan_to, scan_route); });

    // equidist
    Common c_eq;
    std::string eq_N;
    double eq_y = 0, eq_alpha = 0, eq_K = 0.5, eq_x = 1.0;
    auto* eq_cmd = app.add_subcommand("equidist", "phase-bucket fractions and reciprocal-sum growth");
    eq_cmd->add_option("--N", eq_N, "prime limit")->required();
    eq_cmd->add_option("--y", eq_y, "phase frequency")->required();
    eq_cmd->add_option("--alpha", eq_alpha, "phase offset");
    eq_cmd->add_option("--K", eq_K, "bucket threshold in (0,1)");
    eq_cmd->add_option("--x", eq_x, "exponent for the p^{-x} sums");
    add_common(eq_cmd, c_eq, false, false);
    eq_cmd->callback([&] { run_equidist(c_eq, eq_N, eq_y, eq_alpha, eq_K, eq_x); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const sqf::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const sqf::ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return g_exit_code;
}

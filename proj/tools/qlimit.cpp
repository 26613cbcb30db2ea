// Command-line front end: classify | verify | trace | cover | weyl-reduce | beta-check.
// Every command writes JSONL. Exit status: 0 all checks pass, 1 some check failed, 2 usage error.

#include <qlimit/qlimit.hpp>

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <regex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace qlimit;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Accepts "re,im", "re+imi", "re-imi", "re" and "imi".
cplx parse_complex(const std::string& text)
{
    static const std::regex pair(R"(^\s*([-+]?[0-9.eE+-]+)\s*,\s*([-+]?[0-9.eE+-]+)\s*$)");
    static const std::regex alg(R"(^\s*([-+]?[0-9.]+(?:[eE][-+]?[0-9]+)?)?\s*(?:([-+])\s*([0-9.]+(?:[eE][-+]?[0-9]+)?)?i)?\s*$)");
    static const std::regex pure_imag(R"(^\s*([-+]?[0-9.]+(?:[eE][-+]?[0-9]+)?)?i\s*$)");
    auto num = [&](const std::string& s) {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw UsageError("bad number '" + s + "'");
        return v;
    };
    std::smatch m;
    try {
        if (std::regex_match(text, m, pair)) return {num(m[1]), num(m[2])};
        if (std::regex_match(text, m, pure_imag)) {
            std::string c = m[1];
            double im = c.empty() || c == "+" ? 1.0 : c == "-" ? -1.0 : num(c);
            return {0.0, im};
        }
        if (std::regex_match(text, m, alg) && (m[1].matched || m[2].matched)) {
            double re = m[1].matched ? num(m[1]) : 0.0;
            double im = 0.0;
            if (m[2].matched) {
                im = m[3].matched ? num(m[3]) : 1.0;
                if (m[2] == "-") im = -im;
            }
            return {re, im};
        }
    } catch (const std::logic_error&) {
    }
    throw UsageError("cannot parse complex number '" + text + "'");
}

Vec6 parse_alpha(const std::string& text)
{
    try {
        return parse_vec6(text);
    } catch (const std::exception& e) {
        throw UsageError(std::string("--alpha: ") + e.what());
    }
}

Rational parse_rat(const std::string& text)
{
    try {
        return parse_rational(text);
    } catch (const std::exception& e) {
        throw UsageError("cannot parse rational '" + text + "'");
    }
}

unsigned worker_count()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("QLIMIT_THREADS")) {
        try {
            long cap = std::stol(env);
            if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
        } catch (const std::exception&) {
            throw UsageError("QLIMIT_THREADS must be a positive integer");
        }
    }
    return n;
}

/// Runs job(i) for i < count on a worker pool; results keep index order.
template <class R, class F>
std::vector<R> indexed_map(std::size_t count, F job)
{
    std::vector<R> out(count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex fail_mu;
    auto work = [&] {
        for (std::size_t i; (i = next++) < count;) {
            try {
                out[i] = job(i);
            } catch (...) {
                std::lock_guard lk(fail_mu);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const unsigned n = std::min<std::size_t>(worker_count(), std::max<std::size_t>(count, 1));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < n; ++k) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;
    void open(const std::string& path)
    {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw UsageError("cannot open output file '" + path + "'");
        os = &file;
    }
    void write(const json& j) { *os << jsonl(j); }
};

int cmd_classify(Output& out, const std::string& alpha_text)
{
    const Vec6 a = parse_alpha(alpha_text);
    if (sum(a) != 1) throw UsageError("--alpha must sum to 1");
    TileAssignment t = classify(a);
    json j = to_json_value(t);
    const bool fob_zero = fob(a, t.correct_zeta) == 0;
    const MonomialExponents sob = sob_exponents(a, t.correct_zeta);
    j["fob_at_correct_zeta"] = to_string(fob(a, t.correct_zeta));
    j["sob_at_correct_zeta"] = to_json_value(sob);
    j["pass"] = fob_zero && sob.is_trivial();
    out.write(j);
    return j["pass"].get<bool>() ? 0 : 1;
}

int cmd_verify(Output& out, std::vector<std::string> ids, const std::string& q_text, std::size_t samples, std::uint64_t seed,
               double tol, bool timing)
{
    if (ids.size() == 1 && ids[0] == "all") {
        ids.clear();
        for (const auto& e : entries()) ids.push_back(e.id);
    }
    for (const auto& id : ids) {
        try {
            find_entry(id);
        } catch (const DomainError&) {
            throw UsageError("unknown identity id '" + id + "'");
        }
    }
    std::optional<cplx> fixed_q;
    if (!q_text.empty()) {
        fixed_q = parse_complex(q_text);
        if (!(std::abs(*fixed_q) < 1 && std::abs(*fixed_q) > 0)) throw UsageError("--q must satisfy 0 < |q| < 1");
    }
    const std::size_t total = ids.size() * samples;
    auto rows = indexed_map<json>(total, [&](std::size_t k) {
        const std::string& id = ids[k / samples];
        const std::size_t i = k % samples;
        const std::uint64_t s = sample_seed(seed, i);
        try {
            IdentityReport r = verify(id, s, tol, fixed_q);
            if (!timing) r.elapsed = 0;
            json j = to_json_value(r);
            j["sample"] = i;
            return j;
        } catch (const std::exception& e) {
            return json{{"id", id}, {"sample", i}, {"draw_seed", s}, {"error", e.what()}, {"pass", false}};
        }
    });
    int code = 0;
    for (const auto& j : rows) {
        out.write(j);
        if (!j["pass"].get<bool>()) code = 1;
    }
    return code;
}

int cmd_trace(Output& out, const std::string& alpha_text, const std::string& x_text, const std::string& q_text, int steps)
{
    const Vec6 a = parse_alpha(alpha_text);
    if (sum(a) != 1) throw UsageError("--alpha must sum to 1");
    const cplx x = parse_complex(x_text), q = parse_complex(q_text);
    if (steps < 1) throw UsageError("--steps must be positive");
    TraceReport r;
    try {
        r = trace(BalancedVector(a), x, q, steps);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    json j = to_json_value(r);
    const bool pass = r.eventually_decreasing && r.final_error < 1e-6;
    j["pass"] = pass;
    out.write(j);
    return pass ? 0 : 1;
}

int cmd_cover(Output& out, std::size_t samples, std::uint64_t seed)
{
    auto all = indexed_map<CoverSample>(samples, [&](std::size_t i) { return cover_sample(cover_draw(seed, i)); });
    CoverReport r = summarize_cover(all);
    json j = to_json_value(r);
    j["seed"] = seed;
    const bool pass = r.violations.empty() && r.fob_zero == r.samples && r.sob_trivial == r.samples;
    j["pass"] = pass;
    out.write(j);
    return pass ? 0 : 1;
}

int cmd_weyl(Output& out, const std::string& alpha_text, const std::string& zeta_text, bool extended)
{
    PointAZ v{parse_alpha(alpha_text), parse_rat(zeta_text)};
    if (sum(v.alpha) != 1) throw UsageError("--alpha must sum to 1");
    Reduction r = extended ? reduce_extended(v) : reduce_affine(v);
    const Rational before = fob(v), after = fob(r.point);
    const bool inside = extended ? in_extended_domain(r.point) : in_affine_domain(r.point);
    json j{{"input", to_json_value(v)}, {"reduction", to_json_value(r)}, {"extended", extended},
           {"fob_input", to_string(before)}, {"fob_output", to_string(after)}, {"in_domain", inside}};
    const bool pass = inside && after == r.sign * before;
    j["pass"] = pass;
    out.write(j);
    return pass ? 0 : 1;
}

int cmd_beta(Output& out, std::size_t samples, std::uint64_t seed, double tol, bool timing)
{
    auto rows = indexed_map<json>(samples, [&](std::size_t i) {
        const std::uint64_t s = sample_seed(seed, i);
        std::mt19937_64 rng(s);
        IntegrandSpec spec = random_beta_spec(rng);
        const auto start = std::chrono::steady_clock::now();
        json j{{"sample", i}, {"draw_seed", s}, {"p", to_json_value(spec.p)}, {"q", to_json_value(spec.q)},
               {"t", to_json_value(spec.t)}};
        try {
            BetaResult b = beta_eval(spec);
            const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            j.update(to_json_value(b));
            j["elapsed"] = timing ? el : 0.0;
            j["pass"] = b.rel_err < tol && b.nodes <= 4096;
        } catch (const std::exception& e) {
            j["error"] = e.what();
            j["pass"] = false;
        }
        return j;
    });
    int code = 0;
    for (const auto& j : rows) {
        out.write(j);
        if (!j["pass"].get<bool>()) code = 1;
    }
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"q-limit toolkit: tiling classification, identity verification and limit traces"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out_path;
    bool timing = false;
    app.add_option("--out", out_path, "write JSONL to FILE instead of standard output");
    app.add_flag("--timing", timing, "record wall time in the elapsed fields");

    std::string alpha, zeta = "0", q_text, x_text = "0.3,0";
    std::vector<std::string> ids;
    std::size_t samples = 20;
    std::uint64_t seed = 1;
    double tol = 0;
    int steps = 8;
    bool extended = false;

    auto* classify_cmd = app.add_subcommand("classify", "tile, correct zeta and limit kind of a balanced direction");
    classify_cmd->add_option("--alpha", alpha, "six rationals a/b, comma separated, summing to 1")->required();

    auto* verify_cmd = app.add_subcommand("verify", "check catalog identities on random admissible draws");
    verify_cmd->add_option("--id", ids, "identity id, repeatable, or 'all'")->required();
    verify_cmd->add_option("--q", q_text, "fix q as re,im");
    verify_cmd->add_option("--samples", samples, "draws per identity")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", seed, "base seed");
    verify_cmd->add_option("--tol", tol, "relative tolerance; default is the entry's own");

    auto* trace_cmd = app.add_subcommand("trace", "follow p = x q^v towards the classified limit");
    trace_cmd->add_option("--alpha", alpha, "direction")->required();
    trace_cmd->add_option("--x", x_text, "x as re,im");
    std::string trace_q = "0.35,0";
    trace_cmd->add_option("--q", trace_q, "q as re,im");
    trace_cmd->add_option("--steps", steps, "number of geometric steps");

    auto* cover_cmd = app.add_subcommand("cover", "audit the tiling on random generic balanced directions");
    std::size_t cover_samples = 1000;
    cover_cmd->add_option("--samples", cover_samples, "number of directions");
    cover_cmd->add_option("--seed", seed, "base seed");

    auto* weyl_cmd = app.add_subcommand("weyl-reduce", "reduce (alpha;zeta) to the fundamental domain");
    weyl_cmd->add_option("--alpha", alpha, "six rationals summing to 1")->required();
    weyl_cmd->add_option("--zeta", zeta, "rational zeta");
    weyl_cmd->add_flag("--extended", extended, "also use the fob-negating fold");

    auto* beta_cmd = app.add_subcommand("beta-check", "evaluate the elliptic beta integral on random parameters");
    std::size_t beta_samples = 100;
    double beta_tol = 1e-9;
    beta_cmd->add_option("--samples", beta_samples, "number of draws");
    beta_cmd->add_option("--seed", seed, "base seed");
    beta_cmd->add_option("--tol", beta_tol, "relative tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Output out;
        out.open(out_path);
        if (*classify_cmd) return cmd_classify(out, alpha);
        if (*verify_cmd) return cmd_verify(out, ids, q_text, samples, seed, tol, timing);
        if (*trace_cmd) return cmd_trace(out, alpha, x_text, trace_q, steps);
        if (*cover_cmd) return cmd_cover(out, cover_samples, seed);
        if (*weyl_cmd) return cmd_weyl(out, alpha, zeta, extended);
        if (*beta_cmd) return cmd_beta(out, beta_samples, seed, beta_tol, timing);
    } catch (const UsageError& e) {
        std::cerr << "qlimit: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "qlimit: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

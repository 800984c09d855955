// fibc: command-line front end for the Fibonacci-anyon braid compiler.

#include <atomic>
#include <mutex>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fib/approx.hpp"
#include "fib/circuit.hpp"
#include "fib/encoding.hpp"
#include "fib/numtheory.hpp"
#include "fib/oracle.hpp"
#include "fib/serialize.hpp"

using namespace fib;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCompileFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Angle grammar: `[<int>[/<int>]*]pi[/<int>]` or a plain decimal literal.
/// Examples: "pi/128", "3pi/7", "-pi", "0.45".
BigFloat parse_angle(const std::string& text, long prec) {
    std::size_t pos = text.find("pi");
    if (pos == std::string::npos) {
        try {
            return BigFloat::parse(text, prec);
        } catch (const std::exception&) {
            throw UsageFailure("invalid angle literal: " + text);
        }
    }
    std::string head = text.substr(0, pos);
    std::string tail = text.substr(pos + 2);
    mpq_class factor(1);
    if (!head.empty() && head != "+" && head != "-") {
        std::istringstream hs(head);
        std::string piece;
        bool first = true;
        while (std::getline(hs, piece, '/')) {
            if (piece.empty()) throw UsageFailure("invalid angle prefix: " + text);
            try {
                if (first) {
                    factor = mpq_class(Integer(piece));
                    first = false;
                } else {
                    Integer d(piece);
                    if (d == 0) throw UsageFailure("division by zero in angle: " + text);
                    factor /= d;
                }
            } catch (const std::invalid_argument&) {
                throw UsageFailure("invalid angle prefix: " + text);
            }
        }
    } else if (head == "-") {
        factor = -1;
    }
    if (!tail.empty()) {
        if (tail[0] != '/') throw UsageFailure("invalid angle suffix: " + text);
        try {
            Integer d(tail.substr(1));
            if (d == 0) throw UsageFailure("division by zero in angle: " + text);
            factor /= d;
        } catch (const std::invalid_argument&) {
            throw UsageFailure("invalid angle suffix: " + text);
        }
    }
    BigFloat num = BigFloat::from(factor.get_num(), prec);
    BigFloat den = BigFloat::from(factor.get_den(), prec);
    return BigFloat::pi(prec) * num / den;
}

BigFloat parse_epsilon(const std::string& text, long prec) {
    BigFloat eps(prec);
    try {
        eps = BigFloat::parse(text, prec);
    } catch (const std::exception&) {
        throw UsageFailure("invalid epsilon: " + text);
    }
    if (!(eps > BigFloat::from(0L, prec)) || !(eps < BigFloat::from(1L, prec)))
        throw UsageFailure("epsilon must be in (0,1)");
    return eps;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> seed) {
    if (seed) return *seed;
    std::random_device rd;
    std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cerr << "seed: " << s << "\n";
    return s;
}

std::optional<OracleDB> load_oracle_if_any(const std::string& flag_path) {
    std::string path = flag_path;
    if (path.empty()) {
        if (const char* env = std::getenv("FIB_ORACLE_DB")) path = env;
    }
    if (path.empty()) return std::nullopt;
    try {
        return load_database(path);
    } catch (const Error& e) {
        throw IoFailure(e.what());
    }
}

void emit_result(const CompileResult& res, const std::string& target_desc,
                 const std::string& eps_text, std::uint64_t seed, const std::string& format,
                 long elapsed_ms) {
    if (format == "braid") {
        std::cout << format_braid(res.braid) << "\n";
    } else if (format == "ft") {
        std::cout << format_ft(res.ft) << "\n";
    } else {
        std::cout << to_json(res, target_desc, eps_text, seed, elapsed_ms) << "\n";
    }
}

struct ExperimentRow {
    std::string angle;
    std::string eps;
    CompileResult result;
    long elapsed_ms = 0;
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    out += "\"";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximates single-qubit unitaries by Fibonacci-anyon braid circuits"};
    app.require_subcommand(1);

    std::string angle_text = "0";
    std::string eps_text = "1e-10";
    std::string format = "json";
    std::string oracle_path;
    std::string out_path;
    std::optional<std::uint64_t> seed_flag;
    auto add_common = [&](CLI::App* cmd, bool with_angle) {
        if (with_angle) cmd->add_option("--angle", angle_text, "target angle, e.g. pi/128 or 0.45");
        cmd->add_option("--eps", eps_text, "approximation tolerance in (0,1)");
        cmd->add_option("--seed", seed_flag, "RNG seed (generated and printed when omitted)");
        cmd->add_option("--format", format, "output format: braid, ft, json")
            ->check(CLI::IsMember({"braid", "ft", "json"}));
        cmd->add_option("--oracle", oracle_path,
                        "oracle database for peephole optimization (default $FIB_ORACLE_DB)");
    };

    auto* rz = app.add_subcommand("compile-rz", "approximate R_z(angle)");
    add_common(rz, true);
    auto* rzx = app.add_subcommand("compile-rzx", "approximate R_z(angle)X");
    add_common(rzx, true);

    auto* general = app.add_subcommand("compile-unitary", "approximate a general 2x2 unitary");
    std::string matrix_text;
    general
        ->add_option("--matrix", matrix_text,
                     "8 comma-separated decimals: re,im of entries (0,0) (0,1) (1,0) (1,1)")
        ->required();
    add_common(general, false);

    auto* synth = app.add_subcommand("synthesize-exact", "synthesize an exact unitary U[u,v,k]");
    std::string u_text, v_text;
    int k_val = 0;
    synth->add_option("--u", u_text, "upper-left entry, e.g. 26-32*w+38*w2-14*w3")->required();
    synth->add_option("--v", v_text, "lower-left entry over sqrt(tau)")->required();
    synth->add_option("--k", k_val, "phase exponent in [0,9]")->required();

    auto* norm = app.add_subcommand("solve-norm", "solve |x|^2 = xi over Z[omega]");
    std::string xi_text;
    norm->add_option("--xi", xi_text, "right-hand side, e.g. 760-780*t")->required();
    std::optional<std::uint64_t> norm_seed;
    norm->add_option("--seed", norm_seed, "RNG seed");

    auto* obuild = app.add_subcommand("oracle-build", "enumerate optimal braid circuits");
    int depth = 12;
    obuild->add_option("--depth", depth, "maximum sigma-gate count")
        ->check(CLI::Range(0, kOracleDepthBudget));
    obuild->add_option("--out", out_path, "output database path")->required();

    auto* ostats = app.add_subcommand("oracle-stats", "print a database's census table");
    std::string stats_path;
    ostats->add_option("path", stats_path, "database path")->required();

    auto* verify = app.add_subcommand("verify", "check a braid word against a rotation target");
    std::string braid_text;
    bool verify_rzx = false;
    verify->add_option("--braid", braid_text, "braid word, e.g. 's1 s2^-2 s1^3'")->required();
    verify->add_option("--angle", angle_text, "target angle");
    verify->add_option("--eps", eps_text, "tolerance to check against");
    verify->add_flag("--rzx", verify_rzx, "target R_z(angle)X instead of R_z(angle)");

    auto* exp = app.add_subcommand("experiment", "batch compiles, CSV per-run and aggregate rows");
    int exp_angles = 20;
    std::string eps_list = "1e-2,1e-5,1e-10";
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    bool timing = false;
    exp->add_option("--angles", exp_angles, "number of uniformly spaced angles in (0, 2pi)");
    exp->add_option("--eps-list", eps_list, "comma-separated epsilons");
    exp->add_option("--seed", seed_flag, "RNG seed (generated and printed when omitted)");
    exp->add_option("--threads", threads, "worker threads");
    exp->add_option("--out", out_path, "CSV output path (default stdout)");
    exp->add_flag("--timing", timing, "record wall-clock times (breaks byte determinism)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (rz->parsed() || rzx->parsed()) {
            long prec = precision_for_epsilon(BigFloat::parse(eps_text, 64));
            BigFloat eps = parse_epsilon(eps_text, prec);
            BigFloat angle = parse_angle(angle_text, prec);
            std::uint64_t seed = resolve_seed(seed_flag);
            Rng rng(seed);
            auto db = load_oracle_if_any(oracle_path);
            auto t0 = std::chrono::steady_clock::now();
            CompileResult res = rz->parsed() ? compile_rz(angle, eps, rng)
                                             : compile_rzx(angle, eps, rng);
            if (db) {
                res.braid = peephole_optimize(res.braid, &*db);
                res.sigma_gate_count = sigma_count(res.braid);
            }
            long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
            std::string desc = (rz->parsed() ? "rz(" : "rzx(") + angle_text + ")";
            emit_result(res, desc, eps_text, seed, format, timing ? ms : 0);
            return kExitOk;
        }

        if (general->parsed()) {
            long prec = precision_for_epsilon(BigFloat::parse(eps_text, 64));
            BigFloat eps = parse_epsilon(eps_text, prec);
            std::vector<BigFloat> vals;
            std::istringstream ms(matrix_text);
            std::string piece;
            while (std::getline(ms, piece, ',')) vals.push_back(BigFloat::parse(piece, prec));
            if (vals.size() != 8) throw UsageFailure("--matrix needs exactly 8 decimals");
            Matrix2 target(BigComplex(vals[0], vals[1]), BigComplex(vals[2], vals[3]),
                           BigComplex(vals[4], vals[5]), BigComplex(vals[6], vals[7]));
            std::uint64_t seed = resolve_seed(seed_flag);
            Rng rng(seed);
            auto db = load_oracle_if_any(oracle_path);
            CompileResult res = compile_unitary(target, eps, rng);
            if (db) {
                res.braid = peephole_optimize(res.braid, &*db);
                res.sigma_gate_count = sigma_count(res.braid);
            }
            emit_result(res, "unitary", eps_text, seed, format, 0);
            return kExitOk;
        }

        if (synth->parsed()) {
            if (k_val < 0 || k_val > 9) throw UsageFailure("--k must be in [0,9]");
            ExactUnitary input(parse_zomega(u_text), parse_zomega(v_text), k_val);
            if (!is_exact_unitary(input)) {
                std::cerr << "error: |u|^2 + tau |v|^2 != 1; not an exact unitary\n";
                return kExitUsage;
            }
            FTWord w = exact_synthesize(input);
            std::cout << format_ft(w) << "\n";
            std::cout << format_braid(ft_to_braid(w)) << "\n";
            return kExitOk;
        }

        if (norm->parsed()) {
            ZTau xi = parse_ztau(xi_text);
            Rng rng(norm_seed ? *norm_seed : 0);
            nlohmann::json j;
            j["xi"] = to_string(xi);
            auto fl = easy_factor(xi);
            auto factors = nlohmann::json::array();
            for (const auto& f : fl) {
                factors.push_back({{"factor", to_string(f.value)},
                                   {"multiplicity", f.multiplicity}});
            }
            j["factors"] = factors;
            auto sol = solve_norm_equation(xi, rng);
            if (sol) {
                j["solution"] = to_string(*sol);
            } else {
                j["solution"] = nullptr;
            }
            std::cout << j.dump(2) << "\n";
            if (!sol) std::cout << "UNSOLVED\n";
            return kExitOk;
        }

        if (obuild->parsed()) {
            OracleDB db = build_database(depth);
            try {
                save_database(db, out_path);
            } catch (const Error& e) {
                throw IoFailure(e.what());
            }
            std::cout << "wrote " << db.entries.size() << " entries to " << out_path << "\n";
            return kExitOk;
        }

        if (ostats->parsed()) {
            OracleDB db = [&] {
                try {
                    return load_database(stats_path);
                } catch (const Error& e) {
                    throw IoFailure(e.what());
                }
            }();
            std::cout << "depth,count\n";
            for (std::size_t i = 0; i < db.census.size(); ++i)
                std::cout << i << "," << db.census[i] << "\n";
            return kExitOk;
        }

        if (verify->parsed()) {
            long prec = precision_for_epsilon(BigFloat::parse(eps_text, 64));
            BigFloat eps = parse_epsilon(eps_text, prec);
            BigFloat angle = parse_angle(angle_text, prec);
            BraidWord w = parse_braid(braid_text);
            Matrix2 target = verify_rzx ? target_rzx(angle, prec) : target_rz(angle, prec);
            BigFloat d = distance(evaluate_braid(w, prec), target);
            std::cout << "distance: " << d.str(20) << "\n";
            return d <= eps ? kExitOk : kExitCompileFailure;
        }

        if (exp->parsed()) {
            if (exp_angles < 0 || threads < 1) throw UsageFailure("invalid experiment grid");
            std::uint64_t seed = resolve_seed(seed_flag);
            std::vector<std::string> epss;
            std::istringstream es(eps_list);
            std::string piece;
            while (std::getline(es, piece, ',')) {
                if (!piece.empty()) epss.push_back(piece);
            }
            // Grid: angles 2*pi*i/(angles+1) for i in [1, angles], per epsilon.
            struct Job {
                long angle_index;
                std::string eps_text;
                std::uint64_t stream;
            };
            std::vector<Job> jobs;
            for (const auto& e : epss) {
                for (int i = 1; i <= exp_angles; ++i) {
                    jobs.push_back({i, e, static_cast<std::uint64_t>(jobs.size())});
                }
            }
            std::vector<ExperimentRow> rows(jobs.size());
            std::atomic<std::size_t> next{0};
            std::mutex fail_mutex;
            std::exception_ptr first_failure;
            auto worker = [&] {
                try {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= jobs.size()) return;
                    const Job& job = jobs[i];
                    long prec = precision_for_epsilon(BigFloat::parse(job.eps_text, 64));
                    BigFloat eps = BigFloat::parse(job.eps_text, prec);
                    long idx = job.angle_index;
                    BigFloat angle = BigFloat::pi(prec) * BigFloat::from(2 * idx, prec) /
                                     BigFloat::from(static_cast<long>(exp_angles + 1), prec);
                    Rng rng = Rng(seed).split(job.stream);
                    auto t0 = std::chrono::steady_clock::now();
                    CompileResult res = compile_rz(angle, eps, rng);
                    long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
                    rows[i] = {std::to_string(2.0 * idx / (exp_angles + 1)) + "pi", job.eps_text,
                               std::move(res), timing ? ms : 0};
                }
                } catch (...) {
                    std::lock_guard<std::mutex> lock(fail_mutex);
                    if (!first_failure) first_failure = std::current_exception();
                    next.store(jobs.size());
                }
            };
            std::vector<std::thread> pool;
            for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
            if (first_failure) std::rethrow_exception(first_failure);

            std::ostringstream csv;
            csv << "row,angle,epsilon,sigma,trials,distance,elapsed_ms\r\n";
            for (const auto& r : rows) {
                csv << "run," << csv_field(r.angle) << "," << r.eps << ","
                    << r.result.sigma_gate_count << "," << r.result.trials << ","
                    << r.result.achieved_distance.str(8) << "," << r.elapsed_ms << "\r\n";
            }
            for (const auto& e : epss) {
                long n = 0, sig_sum = 0, sig_min = 0, sig_max = 0, tri_sum = 0;
                for (const auto& r : rows) {
                    if (r.eps != e) continue;
                    long s = r.result.sigma_gate_count;
                    if (n == 0) sig_min = sig_max = s;
                    sig_min = std::min(sig_min, s);
                    sig_max = std::max(sig_max, s);
                    sig_sum += s;
                    tri_sum += r.result.trials;
                    ++n;
                }
                if (n == 0) continue;
                csv << "mean," << "," << e << "," << (sig_sum / n) << "," << (tri_sum / n)
                    << ",,0\r\n";
                csv << "min," << "," << e << "," << sig_min << ",,,0\r\n";
                csv << "max," << "," << e << "," << sig_max << ",,,0\r\n";
            }
            if (out_path.empty()) {
                std::cout << csv.str();
            } else {
                std::ofstream out(out_path, std::ios::binary);
                if (!out) {
                    std::cerr << "error: cannot open " << out_path << "\n";
                    return kExitIo;
                }
                out << csv.str();
            }
            return kExitOk;
        }
    } catch (const UsageFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const TrialLimitExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCompileFailure;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCompileFailure;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}

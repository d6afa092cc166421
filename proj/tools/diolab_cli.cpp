// Command-line surface: one subcommand per library module, batch oriented.
// Exit codes: 0 ok, 2 parse error, 3 precision ceiling, 4 domain error.
#include <atomic>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "diolab/exact_rational.hpp"
#include "diolab/parse.hpp"
#include "diolab/psi.hpp"
#include "diolab/witness.hpp"

using nlohmann::json;
using namespace dio;

namespace {

constexpr int kSchemaVersion = 1;

json real_json(const Real& v, long bits) {
    json j;
    if (v.is_exact()) {
        j["type"] = "exact";
        std::ostringstream os;
        os << v.exact();
        if (os.str().size() <= 64) j["value"] = os.str();
        j["decimal"] = to_decimal_string(v.exact(), 15);
    } else {
        Interval iv = v.enclosure(bits);
        j["type"] = "enclosure";
        j["mid"] = to_decimal_string(iv.mid(), 18);
        j["radius"] = to_decimal_string(iv.width() / 2, 6);
    }
    return j;
}

std::string real_csv(const Real& v, long bits) {
    if (v.is_exact()) return to_decimal_string(v.exact(), 15);
    return to_decimal_string(v.enclosure(bits).mid(), 15);
}

void emit(const json& j, const std::string& format) {
    if (format == "json") std::cout << j.dump(2) << "\n";
}

json report_json(const SumReport& rep, long bits) {
    json j;
    j["verdict"] = to_string(rep.verdict);
    if (rep.certificate) j["certificate"] = *rep.certificate;
    if (rep.majorant) j["majorant"] = real_json(*rep.majorant, bits);
    j["partial_sums"] = json::array();
    for (const auto& [N, s] : rep.partial_sums)
        j["partial_sums"].push_back({{"N", N.get_str()}, {"value", real_json(s, bits)}});
    j["record_increments"] = json::array();
    for (const auto& [k, v] : rep.per_record_increments)
        j["record_increments"].push_back({{"k", k}, {"value", real_json(v, bits)}});
    return j;
}

struct Common {
    std::string x, y, format = "json";
    long precision = 64;
    PrecisionContext ctx() const { return PrecisionContext{precision, 1L << 20}; }
};

int cmd_records(const Common& c, const std::string& N_s, const std::string& ell_s, int jobs) {
    PrecisionContext ctx = c.ctx();
    TorusVector x = parse_torus(c.x), y = parse_torus(c.y);
    mpz_class N = parse_integer(N_s), ell = parse_integer(ell_s);
    RecordSequence rs = (jobs > 1 && ell == 1) ? scan_records_parallel(x, y, N, jobs, ctx)
                                               : scan_records(x, y, N, ell, ctx);
    if (c.format == "csv") {
        std::cout << "t,delta,delta_exact\n";
        for (const auto& e : rs.entries) {
            std::cout << e.t.get_str() << "," << real_csv(e.delta, c.precision) << ",";
            if (e.delta.is_exact()) std::cout << e.delta.exact();
            std::cout << "\n";
        }
        return 0;
    }
    json j{{"schema_version", kSchemaVersion}, {"command", "records"},
           {"x", c.x},  {"y", c.y},
           {"ell", ell.get_str()}, {"N", N.get_str()},
           {"hit_zero", rs.hit_zero}};
    j["records"] = json::array();
    for (const auto& e : rs.entries)
        j["records"].push_back({{"t", e.t.get_str()}, {"delta", real_json(e.delta, c.precision)}});
    emit(j, c.format);
    return 0;
}

SumSpec make_spec(int dim, int d, const std::string& weights, const std::string& sigma,
                  const PrecisionContext& ctx) {
    if (!weights.empty()) return SumSpec::weighted(Weights(dim, parse_vector(weights)));
    if (!sigma.empty()) return SumSpec::sigma(d > 0 ? d : dim, parse_number(sigma), ctx);
    return SumSpec::plain(d > 0 ? d : dim);
}

int cmd_sum(const Common& c, const std::string& ell_s, const std::string& N_s, int d,
            const std::string& weights, const std::string& sigma,
            const std::string& schedule_s) {
    PrecisionContext ctx = c.ctx();
    TorusVector x = parse_torus(c.x), y = parse_torus(c.y);
    mpz_class ell = parse_integer(ell_s);
    SumSpec spec = make_spec(x.dim(), d, weights, sigma, ctx);
    if (!schedule_s.empty()) {
        auto schedule = parse_schedule(schedule_s);
        SumReport rep = divergence_diagnostic(x, y, ell, schedule, spec, {}, ctx);
        if (c.format == "csv") {
            std::cout << "N,partial_sum\n";
            for (const auto& [N, s] : rep.partial_sums)
                std::cout << N.get_str() << "," << real_csv(s, c.precision) << "\n";
            std::cout << "verdict," << to_string(rep.verdict) << "\n";
            return 0;
        }
        json j{{"schema_version", kSchemaVersion}, {"command", "sum"},
               {"x", c.x}, {"y", c.y}, {"ell", ell.get_str()}};
        j["report"] = report_json(rep, c.precision);
        emit(j, c.format);
        return 0;
    }
    mpz_class N = parse_integer(N_s);
    Real S = partial_S(x, y, ell, N, spec, ctx);
    if (c.format == "csv") {
        std::cout << "N,partial_sum\n" << N.get_str() << "," << real_csv(S, c.precision) << "\n";
        return 0;
    }
    json j{{"schema_version", kSchemaVersion}, {"command", "sum"},
           {"x", c.x}, {"y", c.y},
           {"ell", ell.get_str()}, {"N", N.get_str()},
           {"value", real_json(S, c.precision)}};
    emit(j, c.format);
    return 0;
}

int cmd_psi(const Common& c, const std::string& psi_s, const std::string& eval_at,
            const std::string& discretize_s, const std::string& contract_s,
            const std::string& dilate_s, const std::string& N_s, int d,
            const std::string& schedule_s) {
    PrecisionContext ctx = c.ctx();
    PsiSpec psi = parse_psi(psi_s, ctx);
    if (!contract_s.empty()) psi = transform_contract(psi, parse_integer(contract_s));
    if (!dilate_s.empty()) psi = transform_dilate(psi, parse_integer(dilate_s));
    json j{{"schema_version", kSchemaVersion}, {"command", "psi"},
           {"psi", psi_s}, {"form", psi.form_name()}};

    if (!c.x.empty()) {
        // membership scan
        TorusVector x = parse_torus(c.x), y = parse_torus(c.y);
        mpz_class N = parse_integer(N_s);
        auto hits = membership_W(x, y, psi, N, ctx);
        if (c.format == "csv") {
            std::cout << "n\n";
            for (const auto& n : hits) std::cout << n.get_str() << "\n";
            return 0;
        }
        j["solutions"] = json::array();
        for (const auto& n : hits) j["solutions"].push_back(n.get_str());
        emit(j, c.format);
        return 0;
    }
    if (!discretize_s.empty()) {
        ReciprocalSeq seq = discretize_reciprocal(psi, parse_integer(discretize_s), ctx);
        if (c.format == "csv") {
            std::cout << "n,k\n";
            for (size_t i = 0; i < seq.k.size(); ++i)
                std::cout << i + 1 << "," << seq.k[i].get_str() << "\n";
            return 0;
        }
        j["k"] = json::array();
        for (const auto& k : seq.k) j["k"].push_back(k.get_str());
        emit(j, c.format);
        return 0;
    }
    if (!schedule_s.empty() && d > 0) {
        SumReport rep = divergence_check_D(psi, d, parse_schedule(schedule_s), {}, ctx);
        if (c.format == "csv") {
            std::cout << "N,partial_sum\n";
            for (const auto& [N, s] : rep.partial_sums)
                std::cout << N.get_str() << "," << real_csv(s, c.precision) << "\n";
            std::cout << "verdict," << to_string(rep.verdict) << "\n";
            return 0;
        }
        j["report"] = report_json(rep, c.precision);
        emit(j, c.format);
        return 0;
    }
    std::vector<mpz_class> at = eval_at.empty()
                                    ? std::vector<mpz_class>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}
                                    : parse_schedule(eval_at);
    if (c.format == "csv") {
        std::cout << "n,psi\n";
        for (const auto& n : at)
            std::cout << n.get_str() << "," << real_csv(psi.eval(n), c.precision) << "\n";
        return 0;
    }
    j["values"] = json::array();
    for (const auto& n : at)
        j["values"].push_back({{"n", n.get_str()}, {"psi", real_json(psi.eval(n), c.precision)}});
    emit(j, c.format);
    return 0;
}

int cmd_witness(const Common& c, const std::string& liouville, const std::string& B_s,
                const std::string& candidates_s, int K, const std::string& rho_s,
                const std::string& C_s, int dim, const std::string& ell_s,
                const std::string& N_s) {
    PrecisionContext ctx = c.ctx();
    mpq_class rho = parse_rational(rho_s), C = parse_rational(C_s);
    ApproxSequence seq = [&]() {
        if (!liouville.empty()) {
            LiouvilleNumber L = liouville == "fact" ? liouville_factorial() : liouville_pow2();
            return select_subsequence_liouville(L, dim, K, rho, C, ctx);
        }
        TorusVector x = parse_torus(c.x);
        if (!candidates_s.empty())
            return select_subsequence(x, parse_schedule(candidates_s), K, rho, C, ctx);
        return select_subsequence_scan(x, parse_integer(B_s), K, rho, C, ctx);
    }();
    WitnessCertificate cert = build_witness(seq, K, ctx);
    SumReport rep = verify_witness(cert, parse_integer(ell_s), parse_integer(N_s), ctx);

    json j{{"schema_version", kSchemaVersion}, {"command", "witness"}, {"K", cert.K_used}};
    j["x"] = json::array();
    for (int i = 0; i < cert.x().dim(); ++i) j["x"].push_back(real_json(cert.x()[i], c.precision));
    j["n"] = json::array();
    for (const auto& n : cert.seq.n) j["n"].push_back(n.get_str());
    j["a"] = json::array();
    for (const auto& ak : cert.a) {
        json row = json::array();
        for (const auto& v : ak) row.push_back(v.get_str());
        j["a"].push_back(row);
    }
    j["y"] = json::array();
    long yb = std::max(c.precision, 192L);
    for (int i = 0; i < cert.y_truncated.dim(); ++i) {
        Interval iv = cert.y_truncated[i].enclosure(yb);
        j["y"].push_back({{"mid", to_decimal_string(iv.mid(), 30)},
                          {"radius", to_decimal_string(iv.width() / 2, 6)}});
    }
    j["truncation_radius"] = real_json(cert.truncation_radius, c.precision);
    j["bounds"] = json::array();
    for (const auto& b : cert.tail_bounds) j["bounds"].push_back(real_json(b, c.precision));
    j["verification"] = report_json(rep, c.precision);
    emit(j, c.format);
    return 0;
}

int cmd_rational(const Common& c, const std::string& sweep_s, int jobs) {
    if (!sweep_s.empty()) {
        long qmax = parse_integer(sweep_s).get_si();
        if (qmax < 1) throw DomainError("sweep bound must be >= 1");
        // grid over x = p/q, y = a/b with q, b <= qmax; chunks are computed
        // in parallel by q and emitted in order, so output is deterministic
        std::vector<std::string> chunks(qmax + 1);
        std::atomic<long> next_q{1};
        auto worker = [&]() {
            for (long q = next_q++; q <= qmax; q = next_q++) {
                std::ostringstream os;
                for (long p = 0; p < q; ++p)
                    for (long b = 1; b <= qmax; ++b)
                        for (long a = 0; a < b; ++a) {
                            mpq_class xv(p, q), yv(a, b);
                            xv.canonicalize();
                            yv.canonicalize();
                            RationalPair pair({xv}, {yv});
                            IntegerPointResult ip = contains_integer_point(pair);
                            OrbitSummary summary = orbit_summary(pair);
                            os << xv << "," << yv << "," << (ip.exists ? "true" : "false")
                               << "," << (ip.exists ? ip.least_n.get_str() : "") << ","
                               << summary.period.get_str() << "," << summary.min_dist << "\n";
                        }
                chunks[q] = os.str();
            }
        };
        std::vector<std::thread> threads;
        for (int t = 0; t < std::max(1, jobs); ++t) threads.emplace_back(worker);
        for (auto& th : threads) th.join();
        std::cout << "x,y,contains_integer,least_n,period,min_dist\n";
        for (long q = 1; q <= qmax; ++q) std::cout << chunks[q];
        return 0;
    }
    std::vector<mpq_class> xs, ys;
    for (const auto& v : parse_vector(c.x)) xs.push_back(v.exact());
    for (const auto& v : parse_vector(c.y)) ys.push_back(v.exact());
    RationalPair pair(xs, ys);
    IntegerPointResult ip = contains_integer_point(pair);
    OrbitSummary os = orbit_summary(pair);
    PhiMembership mem = phi_membership_rational(pair);
    std::string mem_s = mem == PhiMembership::Member
                            ? "member"
                            : (mem == PhiMembership::NonMember
                                   ? "non-member"
                                   : "condition-fails: membership unresolved");
    if (c.format == "csv") {
        std::cout << "contains_integer,least_n,modulus,period,min_dist,s_finite,membership\n"
                  << (ip.exists ? "true" : "false") << ","
                  << (ip.exists ? ip.least_n.get_str() : "") << ","
                  << (ip.exists ? ip.modulus.get_str() : "") << "," << os.period.get_str()
                  << "," << os.min_dist << "," << (ip.exists ? "true" : "false") << ","
                  << mem_s << "\n";
        return 0;
    }
    json j{{"schema_version", kSchemaVersion}, {"command", "rational"},
           {"x", c.x}, {"y", c.y},
           {"contains_integer", ip.exists},
           {"period", os.period.get_str()},
           {"hit_zero", os.hit_zero},
           {"s_finite", ip.exists},
           {"membership", mem_s}};
    if (ip.exists) {
        j["least_n"] = ip.least_n.get_str();
        j["modulus"] = ip.modulus.get_str();
    }
    {
        std::ostringstream os2;
        os2 << os.min_dist;
        j["min_dist"] = os2.str();
    }
    emit(j, c.format);
    return 0;
}

int cmd_cf(const Common& c, long count) {
    PrecisionContext ctx = c.ctx();
    Real x = parse_number(c.x);
    ContinuedFraction expansion = cf_expand(x, count, ctx);
    auto convs = convergents(expansion, count);
    if (c.format == "csv") {
        std::cout << "index,a,p,q\n";
        long terms = expansion.is_finite() ? expansion.length() : count;
        for (long i = 0; i < terms && i < (long)convs.size(); ++i)
            std::cout << i << "," << expansion.quotient(i).get_str() << ","
                      << convs[i].p.get_str() << "," << convs[i].q.get_str() << "\n";
        return 0;
    }
    json j{{"schema_version", kSchemaVersion}, {"command", "cf"}, {"x", c.x},
           {"literal", expansion.to_literal()}};
    j["quotients"] = json::array();
    long terms = expansion.is_finite() ? expansion.length() : count;
    for (long i = 0; i < terms; ++i) j["quotients"].push_back(expansion.quotient(i).get_str());
    j["convergents"] = json::array();
    for (const auto& cv : convs)
        j["convergents"].push_back({{"p", cv.p.get_str()}, {"q", cv.q.get_str()}});
    emit(j, c.format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computational laboratory for inhomogeneous Diophantine approximation"};
    app.require_subcommand(1);

    Common c;
    std::string N_s = "100", ell_s = "1", schedule_s, weights, sigma, psi_s, eval_at;
    std::string discretize_s, contract_s, dilate_s, liouville, B_s = "1000000", candidates_s;
    std::string rho_s = "1/2", C_s = "1", sweep_s;
    int d = 0, jobs = 1, K = 5, dim = 1;
    long count = 10, seed = 0;

    auto add_common = [&](CLI::App* sub, bool need_y) {
        sub->add_option("--x", c.x, "point x (number or vector literal)");
        if (need_y) sub->add_option("--y", c.y, "shift y (number or vector literal)");
        sub->add_option("--precision", c.precision, "initial working precision in bits");
        sub->add_option("--format", c.format, "output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--seed", seed, "seed for randomized sweeps");
    };

    auto* rec = app.add_subcommand("records", "best inhomogeneous approximation records");
    add_common(rec, true);
    rec->add_option("--N", N_s, "scan bound");
    rec->add_option("--ell", ell_s, "window start");
    rec->add_option("--jobs", jobs, "parallel blocks for exact scans");

    auto* sum = app.add_subcommand("sum", "window-minimum partial sums");
    add_common(sum, true);
    sum->add_option("--ell", ell_s, "summation start");
    sum->add_option("--N", N_s, "truncation bound");
    sum->add_option("--d", d, "dimension exponent (plain regime)");
    sum->add_option("--weights", weights, "weight vector (weighted regime)");
    sum->add_option("--sigma", sigma, "sigma parameter (exponent 1/sigma regime)");
    sum->add_option("--schedule", schedule_s, "increasing N schedule; enables the verdict");

    auto* psi = app.add_subcommand("psi", "psi-function toolbox");
    add_common(psi, true);
    psi->add_option("--psi", psi_s, "psi literal")->required();
    psi->add_option("--eval-at", eval_at, "points to evaluate psi at");
    psi->add_option("--discretize", discretize_s, "prefix length for reciprocal discretization");
    psi->add_option("--contract", contract_s, "contraction factor u: psi(un)/u");
    psi->add_option("--dilate", dilate_s, "dilation factor v: psi(vn)");
    psi->add_option("--N", N_s, "membership scan bound (with --x/--y)");
    psi->add_option("--d", d, "dimension for the divergence check");
    psi->add_option("--schedule", schedule_s, "schedule for the divergence check");

    auto* wit = app.add_subcommand("witness", "witness construction and verification");
    add_common(wit, false);
    wit->add_option("--liouville", liouville, "built-in Liouville source: fact or pow2")
        ->check(CLI::IsMember({"fact", "pow2"}));
    wit->add_option("--B", B_s, "brute-force candidate bound");
    wit->add_option("--candidates", candidates_s, "explicit increasing candidate list");
    wit->add_option("--K", K, "truncation depth");
    wit->add_option("--rho", rho_s, "geometric ratio bound (<= 1/2)");
    wit->add_option("--C", C_s, "summability constant");
    wit->add_option("--dim", dim, "dimension for the Liouville product construction");
    wit->add_option("--ell", ell_s, "verification start");
    wit->add_option("--N", N_s, "verification truncation bound");

    auto* rat = app.add_subcommand("rational", "exact rational-case decisions");
    add_common(rat, true);
    rat->add_option("--sweep", sweep_s, "denominator bound for a full CSV grid sweep");
    rat->add_option("--jobs", jobs, "parallel workers for sweeps");

    auto* cf = app.add_subcommand("cf", "continued fraction expansion and convergents");
    add_common(cf, false);
    cf->add_option("--count", count, "number of partial quotients");

    try {
        app.parse(argc, argv);
        if (rec->parsed()) return cmd_records(c, N_s, ell_s, jobs);
        if (sum->parsed()) return cmd_sum(c, ell_s, N_s, d, weights, sigma, schedule_s);
        if (psi->parsed())
            return cmd_psi(c, psi_s, eval_at, discretize_s, contract_s, dilate_s, N_s, d,
                           schedule_s);
        if (wit->parsed())
            return cmd_witness(c, liouville, B_s, candidates_s, K, rho_s, C_s, dim, ell_s, N_s);
        if (rat->parsed()) return cmd_rational(c, sweep_s, jobs);
        if (cf->parsed()) return cmd_cf(c, count);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        std::cerr << json{{"schema_version", kSchemaVersion},
                          {"error", {{"type", "parse"}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return 2;
    } catch (const PrecisionError& e) {
        std::cerr << json{{"schema_version", kSchemaVersion},
                          {"error", {{"type", "precision"}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << json{{"schema_version", kSchemaVersion},
                          {"error", {{"type", "domain"}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << json{{"schema_version", kSchemaVersion},
                          {"error", {{"type", "internal"}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return 1;
    }
}

#pragma once

// Command-line front end.  Kept in a header so the test suites can drive it
// with in-memory streams.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage error,
// 3 a survivor p ≡ 7 (mod 8) outside the known list turned up in a search.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "qfs/field.hpp"
#include "qfs/ono.hpp"
#include "qfs/quadform.hpp"
#include "qfs/report.hpp"
#include "qfs/survey.hpp"

namespace qfs::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kUsage = 2, kDiscovery = 3 };

inline constexpr const char* kJobsEnv = "QFS_JOBS";

inline unsigned default_jobs() {
    if (const char* env = std::getenv(kJobsEnv)) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

inline std::string join(const std::vector<u64>& v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out + "}";
}

/// kDiscovery if any record is a p ≡ 7 (mod 8) survivor outside the known list.
inline int search_exit_code(const std::vector<SurvivorRecord>& recs) {
    const bool discovery = std::any_of(recs.begin(), recs.end(), [](const auto& r) { return r.unexpected; });
    return discovery ? kDiscovery : kOk;
}

inline int cmd_search(u64 lo, u64 hi, const std::string& format, unsigned jobs, std::ostream& out) {
    const auto recs = search_range(lo, hi, {.jobs = jobs});
    const auto rows = to_rows(recs);
    if (format == "json")
        write_json(out, rows);
    else
        write_csv(out, rows);
    return search_exit_code(recs);
}

inline int cmd_classnum(i64 d, std::ostream& out) {
    const ClassGroup g = class_group(d);
    out << "D=" << d << " h=" << g.class_number << " group=" << g.structure() << '\n';
    return kOk;
}

inline int cmd_ono(u64 p, std::ostream& out) {
    const OnoResult r = ono_invariant(p);
    out << "d=" << r.d << " argmax_n=" << r.argmax_n << " h=" << r.h << '\n';
    return kOk;
}

inline int cmd_verify(u64 p, std::ostream& out) {
    const PredicateResult res = evaluate_predicate(p);
    const QuadField k = make_field(p);
    out << "p=" << p << " mod8=" << k.residue_class << " D=" << k.discriminant << " 2 is "
        << to_string(k.two_splitting) << '\n';
    if (!res.record) {
        const WitnessEntry& w = *res.first_failure;
        out << "survivor=false first_failure x=" << w.x << " value=" << w.value << " omega=" << w.omega << '\n';
        return kOk;
    }
    const SurvivorRecord& rec = *res.record;
    ClassGroup shape;
    shape.invariant_factors = rec.invariant_factors;
    out << "survivor=true h=" << rec.h << " group=" << shape.structure();
    if (rec.ono_d) out << " ono_d=" << *rec.ono_d;
    out << '\n';
    for (const auto& w : rec.witnesses) {
        out << "  x=" << w.x << " value=" << w.value << " =";
        for (const auto& f : w.factorization.factors) {
            out << ' ' << f.prime;
            if (f.exponent > 1) out << '^' << f.exponent;
        }
        out << '\n';
    }
    // For p ≡ 1 (mod 4) survivors only primes below sqrt(p) matter, even
    // though the Minkowski bound is larger.
    out << "split odd primes below sqrt(p): " << join(split_odd_primes(k, std::sqrt(static_cast<double>(p))))
        << '\n';
    for (const auto& [name, ok] : rec.case_checks) out << "  " << name << ": " << (ok ? "ok" : "FAIL") << '\n';
    const bool pass = check_case(rec);
    out << "case_check=" << (pass ? "PASS" : "FAIL") << '\n';
    if (rec.unexpected) out << "note: survivor outside the known p ≡ 7 (mod 8) list\n";
    return pass ? kOk : kMismatch;
}

inline int cmd_report(u64 bound, unsigned jobs, std::ostream& out) {
    const auto recs = search_range(2, bound, {.jobs = jobs});
    bool all_ok = true;
    static constexpr unsigned kOrder[] = {5, 1, 3, 7};
    for (unsigned residue : kOrder) {
        std::vector<u64> expected;
        for (u64 p : known_survivors(residue))
            if (p <= bound) expected.push_back(p);
        std::vector<u64> found;
        bool checks = true;
        for (const auto& r : recs) {
            if (r.residue_class != residue) continue;
            found.push_back(r.p);
            checks = checks && check_case(r);
        }
        const bool ok = found == expected && checks;
        all_ok = all_ok && ok;
        out << "p = " << residue << " (mod 8)\n"
            << "  expected " << join(expected) << '\n'
            << "  found    " << join(found) << '\n'
            << "  case checks " << (checks ? "ok" : "FAILED") << '\n'
            << "  " << (ok ? "PASS" : "FAIL") << '\n';
    }
    out << "bound " << bound << ": " << (all_ok ? "PASS" : "FAIL") << '\n';
    return all_ok ? kOk : kMismatch;
}

/// Parses argv and dispatches.  Data goes to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Survivor primes for p + x^2, class groups and Ono invariants", "qfs"};
    app.require_subcommand(1);

    u64 lo = 0, hi = 0, bound = 2000000;
    std::string format = "csv";
    std::string out_path;
    unsigned jobs = default_jobs();
    std::optional<i64> disc;
    std::optional<u64> prime;

    auto* search = app.add_subcommand("search", "List survivors in [lo, hi]");
    search->add_option("--lo", lo, "Lower end of the range")->required();
    search->add_option("--hi", hi, "Upper end of the range")->required();
    search->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    search->add_option("--jobs", jobs, "Worker threads (default $QFS_JOBS or hardware)")->check(CLI::PositiveNumber);
    search->add_option("--out", out_path, "Write rows to FILE instead of stdout");

    auto* classnum = app.add_subcommand("classnum", "Class number and group structure");
    auto* d_opt = classnum->add_option("-D,--disc", disc, "Negative discriminant");
    auto* p_opt = classnum->add_option("-p,--prime", prime, "Odd prime p; uses the field discriminant of Q(sqrt(-p))");
    d_opt->excludes(p_opt);
    classnum->require_option(1);

    auto* ono = app.add_subcommand("ono", "Ono invariant of Q(sqrt(-p)), p ≡ 7 (mod 8)");
    u64 ono_p = 0;
    ono->add_option("-p,--prime", ono_p, "Prime p ≡ 7 (mod 8)")->required();

    auto* verify = app.add_subcommand("verify", "Survivor predicate and case checks for one prime");
    u64 verify_p = 0;
    verify->add_option("-p,--prime", verify_p, "Odd prime")->required();

    auto* report = app.add_subcommand("report", "Compare the survivor lists below a bound with the known lists");
    report->add_option("--bound", bound, "Search bound");
    report->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        // --help on the app or on a subcommand
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    try {
        if (*search) {
            if (out_path.empty()) return cmd_search(lo, hi, format, jobs, out);
            std::ofstream file(out_path, std::ios::binary);
            if (!file) {
                err << "error: cannot open " << out_path << '\n';
                return kUsage;
            }
            return cmd_search(lo, hi, format, jobs, file);
        }
        if (*classnum) {
            if (disc) return cmd_classnum(*disc, out);
            return cmd_classnum(make_field(*prime).discriminant, out);
        }
        if (*ono) return cmd_ono(ono_p, out);
        if (*verify) return cmd_verify(verify_p, out);
        if (*report) return cmd_report(bound, jobs, out);
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace qfs::cli

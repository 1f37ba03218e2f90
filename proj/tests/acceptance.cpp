// End-to-end acceptance suite.  Each criterion prints one PASS/FAIL line;
// the process exits non-zero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "qfs/qfs.hpp"

namespace {

using namespace qfs;
using Clock = std::chrono::steady_clock;

constexpr u64 kListBound = 2000000;
constexpr double kListSeconds = 60.0;
constexpr double kCountSeconds = 30.0;
constexpr double kSasakiSeconds = 120.0;

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome o{false, ""};
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << id << "] " << name << "  (" << secs << " s)";
    if (!o.detail.empty()) std::cout << "  " << o.detail;
    std::cout << std::endl;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string set_str(const std::vector<u64>& v) { return cli::join(v); }

int cli_run(std::vector<std::string> args, std::string& out) {
    args.insert(args.begin(), "qfs");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream os, es;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), os, es);
    out = os.str();
    return code;
}

}  // namespace

int main() {
    const unsigned jobs = cli::default_jobs();
    std::cout << "acceptance suite, jobs=" << jobs << std::endl;

    std::vector<SurvivorRecord> survivors;

    criterion(1, "survivor lists below 2*10^6 match the four known lists", [&]() -> Outcome {
        const auto t0 = Clock::now();
        std::string report;
        const int code = cli_run({"report", "--bound", std::to_string(kListBound), "--jobs", std::to_string(jobs)}, report);
        survivors = search_range(2, kListBound, {.jobs = jobs});
        const double secs = seconds_since(t0);
        std::map<unsigned, std::vector<u64>> found;
        for (const auto& r : survivors) found[r.residue_class].push_back(r.p);
        std::ostringstream detail;
        bool ok = code == 0;
        for (unsigned res : {5u, 1u, 3u, 7u}) {
            const bool eq = found[res] == known_survivors(res);
            ok = ok && eq;
            detail << res << ":" << set_str(found[res]) << (eq ? "" : "(MISMATCH)") << ' ';
        }
        const bool fast = secs < kListSeconds;
        detail << "report exit " << code << ", " << survivors.size() << " survivors, " << secs << " s of "
               << kListSeconds << " s budget";
        return {ok && fast && survivors.size() == 27, detail.str()};
    });

    criterion(2, "class-number counts over fundamental |D| <= 10^4", [] {
        const auto t0 = Clock::now();
        int h1 = 0, h2 = 0, h4 = 0;
        for (i64 d = -3; d >= -10000; --d) {
            const i64 r = ((d % 4) + 4) % 4;
            if ((r != 0 && r != 1) || !is_fundamental(d)) continue;
            const i64 h = class_number(d);
            h1 += h == 1;
            h2 += h == 2;
            h4 += h == 4;
        }
        const double secs = seconds_since(t0);
        std::ostringstream detail;
        detail << "h=1:" << h1 << " h=2:" << h2 << " h=4:" << h4;
        return Outcome{h1 == 9 && h2 == 18 && h4 == 54 && secs < kCountSeconds, detail.str()};
    });

    criterion(3, "residue-matched case check holds for every survivor", [&] {
        if (survivors.empty()) survivors = search_range(2, kListBound, {.jobs = jobs});
        std::vector<u64> failed;
        for (const auto& r : survivors) {
            bool ok = check_case(r);
            switch (r.residue_class) {
                case 5: ok = ok && class_number(-4 * static_cast<i64>(r.p)) == 2; break;
                case 1: {
                    const auto g = class_group(-4 * static_cast<i64>(r.p));
                    ok = ok && g.class_number == 4 && g.is_cyclic();
                    break;
                }
                case 3: ok = ok && class_number(-static_cast<i64>(r.p)) == 1; break;
                case 7: ok = ok && r.ono_d && static_cast<i64>(*r.ono_d) == r.h; break;
            }
            if (!ok) failed.push_back(r.p);
        }
        return Outcome{failed.empty() && survivors.size() == 27,
                       std::to_string(survivors.size()) + " survivors checked, failures " + set_str(failed)};
    });

    criterion(4, "Sasaki inequality d <= h for primes p = 7 mod 8 below 5*10^4", [] {
        const auto t0 = Clock::now();
        std::vector<u64> primes;
        for (u64 p = 7; p < 50000; p += 8)
            if (is_prime(p)) primes.push_back(p);
        std::vector<u64> violations;
        for (u64 p : primes)
            if (!sasaki_check(p)) violations.push_back(p);
        const double secs = seconds_since(t0);
        return Outcome{violations.empty() && secs < kSasakiSeconds,
                       std::to_string(primes.size()) + " primes, violations " + set_str(violations)};
    });

    criterion(5, "2y^2 and 8t^2 witnesses exist for every prime below 10^4", [] {
        std::vector<u64> missing;
        int n1 = 0, n7 = 0;
        for (u64 p = 3; p < 10000; p += 2) {
            if (!is_prime(p)) continue;
            if (p % 8 == 1) {
                ++n1;
                const auto w = witness_2y2(p);
                if (!w || w->first % 2 == 0 || w->first * w->first >= p || p + w->first * w->first != 2 * w->second * w->second)
                    missing.push_back(p);
            } else if (p % 8 == 7) {
                ++n7;
                const auto w = witness_8t2(p);
                if (!w || w->first % 2 == 0 || w->first * w->first >= p || p + w->first * w->first != 8 * w->second * w->second)
                    missing.push_back(p);
            }
        }
        return Outcome{missing.empty(), std::to_string(n1) + " primes 1 mod 8, " + std::to_string(n7) +
                                            " primes 7 mod 8, missing " + set_str(missing)};
    });

    criterion(6, "even-length partition exists for every 3 < n <= 10^5", [] {
        std::vector<u64> failed;
        for (u64 n = 4; n <= 100000; ++n) {
            try {
                const auto [a, b] = even_length_partition(n);
                if (a + b != n || a > b || (big_omega(a) + big_omega(b)) % 2 != 0) failed.push_back(n);
            } catch (const std::runtime_error&) {
                failed.push_back(n);
            }
        }
        return Outcome{failed.empty(), "failures " + set_str(failed)};
    });

    criterion(7, "class_number matches triple-enumeration oracle for fundamental |D| <= 2000", [] {
        int checked = 0;
        std::vector<u64> mismatched;
        for (i64 d = -3; d >= -2000; --d) {
            if (!oracle::fundamental(d)) continue;
            ++checked;
            if (class_number(d) != static_cast<i64>(oracle::reduced_forms_by_triples(d).size()))
                mismatched.push_back(static_cast<u64>(-d));
        }
        return Outcome{mismatched.empty() && checked > 0,
                       std::to_string(checked) + " discriminants, mismatches " + set_str(mismatched)};
    });

    criterion(8, "search output identical for --jobs 1 and --jobs 8", [] {
        std::string a, b;
        const int ca = cli_run({"search", "--lo", "2", "--hi", std::to_string(kListBound), "--jobs", "1"}, a);
        const int cb = cli_run({"search", "--lo", "2", "--hi", std::to_string(kListBound), "--jobs", "8"}, b);
        const auto lines = std::count(a.begin(), a.end(), '\n');
        return Outcome{ca == 0 && cb == 0 && a == b && lines == 28,
                       std::to_string(a.size()) + " bytes, " + std::to_string(lines - 1) + " rows"};
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}

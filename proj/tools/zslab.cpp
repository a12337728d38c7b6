// zslab: command-line analyses of modular zero-sum subsequence structure.
//
// Exit codes: 0 = all checked properties held, 1 = a mathematical finding
// (counterexample, discrepancy, failed certificate), 2 = usage/input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "zslab/core.hpp"
#include "zslab/spectrum.hpp"
#include "zslab/structure.hpp"
#include "zslab/verify.hpp"

namespace {

using namespace zslab;

constexpr int kExitOk = 0;
constexpr int kExitFinding = 1;
constexpr int kExitUsage = 2;

std::string lengths_text(const std::vector<int>& lengths) {
    std::string out = "{";
    for (size_t i = 0; i < lengths.size(); ++i) {
        if (i) {
            out += ",";
        }
        out += std::to_string(lengths[i]);
    }
    return out + "}";
}

std::string verdict_text(const GrahamVerdict& verdict) {
    std::string out = graham_kind_name(verdict.kind);
    if (verdict.kind == GrahamKind::Unique) {
        out += " r=" + std::to_string(verdict.unique_length());
    }
    if (!verdict.lengths.empty()) {
        out += " lengths=" + lengths_text(verdict.lengths);
    }
    return out;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out_path);
    if (!file) {
        throw Error("cannot open output file '" + out_path + "'");
    }
    file << text;
    if (!file.good()) {
        throw Error("failed writing output file '" + out_path + "'");
    }
}

nlohmann::json verdict_record(const ResidueSequence& s, const GrahamVerdict& verdict) {
    nlohmann::json record{
        {"n", s.modulus()},
        {"seq", s.values()},
        {"verdict", graham_kind_name(verdict.kind)},
        {"lengths", verdict.lengths},
        {"distinct", s.distinct_values()},
    };
    record["r"] = verdict.kind == GrahamKind::Unique
                      ? nlohmann::json(verdict.unique_length())
                      : nlohmann::json(nullptr);
    return record;
}

// --- subcommand option bags ---

struct SpectrumArgs {
    int n = 0;
    std::string seq;
    bool json = false;
};

struct CheckArgs {
    int n = 0;
    std::string seq;
    bool json = false;
};

struct VerifyArgs {
    int n_min = 1;
    int n_max = 8;
    int workers = 0;
    bool no_canonical = false;
    bool no_prune = false;
    std::uint64_t chunk_size = 8192;
    bool json = false;
    std::string out;
};

struct FamiliesArgs {
    int n_min = 2;
    int n_max = 12;
    bool json = false;
    std::string out;
};

struct ZsfCertArgs {
    int n = 0;
    std::string seq;
    bool sweep = false;
    int min_len = -1;  // default: smallest length the certificate guarantee covers
    std::string cursor;
    std::uint64_t limit = 0;  // 0 = no limit
    bool json = false;
    std::string out;
};

struct Lemma31Args {
    int n = 0;
    int j = 1;
    int v = 0;
    std::string a;
    int k = -1;  // -1 = sweep all valid targets
    bool json = false;
};

struct LemmaBArgs {
    int n = 0;
    std::string seq;
    bool json = false;
};

struct LemmaCArgs {
    int n_min = 2;
    int n_max = 32;
    bool json = false;
};

int run_spectrum(const SpectrumArgs& args) {
    const auto s = parse_sequence(args.seq, Modulus(args.n));
    const auto spec = compute_spectrum(s);
    if (args.json) {
        std::cout << spectrum_to_json(spec) << "\n";
    } else {
        std::cout << "n=" << spec.modulus() << " L=" << spec.parent_length() << "\n";
        for (int residue = 0; residue < spec.modulus(); ++residue) {
            std::cout << "  " << residue << ":";
            for (int len : spec.lengths_for(residue)) {
                std::cout << " " << len;
            }
            std::cout << "\n";
        }
    }
    return kExitOk;
}

int run_check(const CheckArgs& args) {
    const auto s = parse_sequence(args.seq, Modulus(args.n));
    const auto verdict = is_graham(s);
    if (args.json) {
        std::cout << verdict_record(s, verdict).dump() << "\n";
    } else {
        std::cout << "seq: " << format_sequence(s) << " (mod " << args.n << ")\n"
                  << "verdict: " << verdict_text(verdict) << "\n";
    }
    return kExitOk;
}

int run_verify(const VerifyArgs& args) {
    if (args.n_min < 1 || args.n_min > args.n_max) {
        throw Error("requires 1 <= n-min <= n-max");
    }
    VerifyOptions options;
    options.workers = args.workers;
    options.canonical_only = !args.no_canonical;
    options.prune_two_valued = !args.no_prune;
    options.chunk_size = args.chunk_size;

    std::string jsonl;
    std::uint64_t findings = 0;
    for (int n = args.n_min; n <= args.n_max; ++n) {
        const auto report = verify_theorem(Modulus(n), options);
        findings += report.counterexamples.size() + report.anomalies.size();
        jsonl += report.to_jsonl(true);
        if (!args.json) {
            std::cout << "n=" << n << ": total=" << report.total
                      << " examined=" << report.examined
                      << " skipped_two_valued=" << report.skipped_two_valued
                      << " skipped_noncanonical=" << report.skipped_noncanonical
                      << " graham=" << report.graham_sequences.size()
                      << " counterexamples=" << report.counterexamples.size() << " ["
                      << report.wall_seconds << "s]\n";
            for (const auto& finding : report.counterexamples) {
                std::cout << "FINDING: counterexample seq="
                          << format_sequence(ResidueSequence(Modulus(n), finding.values))
                          << " " << verdict_text(finding.verdict) << "\n";
            }
        }
    }
    if (args.json) {
        std::cout << jsonl;
    }
    if (!args.out.empty()) {
        write_output(jsonl, args.out);
    }
    if (!args.json) {
        std::cout << (findings == 0 ? "no counterexamples" : "COUNTEREXAMPLES FOUND")
                  << " in n=[" << args.n_min << "," << args.n_max << "]\n";
    }
    return findings == 0 ? kExitOk : kExitFinding;
}

int run_families(const FamiliesArgs& args) {
    const auto verdicts = check_families(args.n_min, args.n_max);
    std::uint64_t flagged = 0;
    for (const auto& fv : verdicts) {
        flagged += !fv.matches_claim;
    }
    if (args.json) {
        std::cout << families_to_jsonl(verdicts);
    } else {
        for (const auto& fv : verdicts) {
            std::cout << "family=" << fv.instance.family << " n=" << fv.instance.n;
            if (fv.instance.family == 1) {
                std::cout << " x=" << fv.instance.x;
            } else {
                std::cout << " q=" << fv.instance.q;
                if (fv.instance.family == 3) {
                    std::cout << " r_param=" << fv.instance.r_param;
                }
            }
            std::cout << " seq=" << format_sequence(fv.instance.seq) << " verdict="
                      << verdict_text(fv.verdict)
                      << (fv.matches_claim ? "" : "  <-- DISCREPANCY") << "\n";
        }
        std::cout << "summary: " << verdicts.size() << " instances, " << flagged
                  << " flagged\n";
    }
    if (!args.out.empty()) {
        write_output(families_to_jsonl(verdicts), args.out);
    }
    return flagged == 0 ? kExitOk : kExitFinding;
}

int run_zsf_cert(const ZsfCertArgs& args) {
    const Modulus n(args.n);
    if (!args.sweep) {
        if (args.seq.empty()) {
            throw Error("zsf-cert needs --seq or --sweep");
        }
        const auto t = parse_sequence(args.seq, n);
        const auto cert = theorem_d_certificate(t);
        if (!certificate_matches(cert, t)) {
            throw InternalError("produced certificate failed validation");
        }
        if (args.json) {
            std::cout << cert.to_json() << "\n";
        } else {
            std::cout << "certificate: m=" << cert.m << " b=";
            for (size_t i = 0; i < cert.b.size(); ++i) {
                std::cout << (i ? "," : "") << cert.b[i];
            }
            std::cout << " total=" << cert.total << " (n=" << cert.n << ", t=" << cert.t()
                      << ")\n";
        }
        return kExitOk;
    }

    const int min_len = args.min_len >= 0 ? args.min_len : (n.value() + 2) / 2;
    std::optional<ZsfEnumerator> enumerator;
    if (args.cursor.empty()) {
        enumerator.emplace(n, min_len);
    } else {
        const auto cursor = ZsfEnumerator::parse_cursor(args.cursor);
        enumerator.emplace(n, min_len, cursor);
    }
    std::uint64_t checked = 0;
    std::uint64_t failures = 0;
    std::string jsonl;
    while (auto t = enumerator->next()) {
        ++checked;
        try {
            const auto cert = theorem_d_certificate(*t);
            if (!certificate_matches(cert, *t)) {
                throw InternalError("produced certificate failed validation");
            }
            if (args.json || !args.out.empty()) {
                nlohmann::json record{{"seq", t->values()},
                                      {"cert", nlohmann::json::parse(cert.to_json())}};
                jsonl += record.dump();
                jsonl += "\n";
            }
        } catch (const TheoremDFailure& failure) {
            ++failures;
            std::cout << "FINDING: no certificate for seq=" << format_sequence(*t)
                      << " (n=" << n.value() << "): " << failure.what() << "\n";
        }
        if (args.limit != 0 && checked >= args.limit) {
            break;
        }
    }
    nlohmann::json summary{{"summary", true},
                           {"checked", checked},
                           {"failures", failures},
                           {"cursor", enumerator->cursor_string()}};
    jsonl += summary.dump();
    jsonl += "\n";
    if (args.json) {
        std::cout << jsonl;
    } else {
        std::cout << "checked " << checked << " zero-sum-free multisets (n=" << n.value()
                  << ", min-len=" << min_len << "): " << failures << " failures\n";
        if (args.limit != 0) {
            std::cout << "cursor: " << enumerator->cursor_string() << "\n";
        }
    }
    if (!args.out.empty()) {
        write_output(jsonl, args.out);
    }
    return failures == 0 ? kExitOk : kExitFinding;
}

int run_lemma31(const Lemma31Args& args) {
    const Lemma31Instance inst(Modulus(args.n), args.j, args.v, parse_int_list(args.a));

    const bool check_ok = lemma31_check_i(inst);
    const bool part3_applicable = inst.total() <= args.n - 2;
    const auto parent = inst.sequence();

    std::uint64_t part2_ok = 0, part3_ok = 0, failures = 0;
    nlohmann::json witness_dump = nlohmann::json::array();
    const int k_lo2 = 2;
    const int k_hi2 = static_cast<int>(inst.total());
    const int k_lo3 = inst.tail().front();
    const int k_hi3 = static_cast<int>(inst.total()) - inst.tail().front();

    auto run_target = [&](int k) {
        if (k >= k_lo2 && k <= k_hi2) {
            const auto w = lemma31_construct_ii(inst, k);
            const bool ok = w.sum() == k && w.length() >= 2 && w.contained_in(parent);
            part2_ok += ok;
            failures += !ok;
            if (args.k >= 0) {
                witness_dump.push_back({{"part", "ii"}, {"k", k}, {"witness", w.values()}});
            }
        }
        if (part3_applicable && k >= k_lo3 && k <= k_hi3) {
            const auto [longer, shorter] = lemma31_construct_iii(inst, k);
            const bool ok = longer.sum() == k && shorter.sum() == k &&
                            longer.length() > shorter.length() &&
                            longer.contained_in(parent) && shorter.contained_in(parent);
            part3_ok += ok;
            failures += !ok;
            if (args.k >= 0) {
                witness_dump.push_back({{"part", "iii"},
                                        {"k", k},
                                        {"longer", longer.values()},
                                        {"shorter", shorter.values()}});
            }
        }
    };

    if (args.k >= 0) {
        const bool in_part2 = args.k >= k_lo2 && args.k <= k_hi2;
        const bool in_part3 = part3_applicable && args.k >= k_lo3 && args.k <= k_hi3;
        if (!in_part2 && !in_part3) {
            throw Error("k=" + std::to_string(args.k) + " is outside every valid target range");
        }
        run_target(args.k);
    } else {
        for (int k = std::min(k_lo2, k_lo3); k <= std::max(k_hi2, k_hi3); ++k) {
            run_target(k);
        }
    }

    if (args.json) {
        nlohmann::json out{{"n", args.n},        {"j", args.j},
                           {"v", args.v},        {"a", inst.tail()},
                           {"check_i", check_ok}, {"part_ii_ok", part2_ok},
                           {"part_iii_ok", part3_ok}, {"failures", failures},
                           {"witnesses", witness_dump}};
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "instance: 1^" << args.v << " a=" << args.a << " (n=" << args.n
                  << ", j=" << args.j << ")\n";
        std::cout << "check_i: " << (check_ok ? "ok" : "VIOLATED") << "\n";
        for (const auto& w : witness_dump) {
            std::cout << "  part " << w.at("part").get<std::string>() << " k="
                      << w.at("k").get<int>() << ":";
            if (w.contains("witness")) {
                for (int v : w.at("witness").get<std::vector<int>>()) {
                    std::cout << " " << v;
                }
            } else {
                for (int v : w.at("longer").get<std::vector<int>>()) {
                    std::cout << " " << v;
                }
                std::cout << " |";
                for (int v : w.at("shorter").get<std::vector<int>>()) {
                    std::cout << " " << v;
                }
            }
            std::cout << "\n";
        }
        std::cout << "part ii: " << part2_ok << " targets ok; part iii: " << part3_ok
                  << " targets ok"
                  << (part3_applicable ? "" : " (not applicable: v + sum(a) > n - 2)")
                  << "; failures: " << failures << "\n";
    }
    return (check_ok && failures == 0) ? kExitOk : kExitFinding;
}

int run_lemmab(const LemmaBArgs& args) {
    const auto s = parse_sequence(args.seq, Modulus(args.n));
    const auto witness = find_short_zero_sum(s);
    if (args.json) {
        nlohmann::json out{{"n", args.n},
                           {"seq", s.values()},
                           {"witness", witness.values()},
                           {"length", witness.length()},
                           {"h", s.max_multiplicity()}};
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "witness: " << format_sequence(witness.items()) << " (length "
                  << witness.length() << " <= h=" << s.max_multiplicity()
                  << ", sum=" << witness.sum() << " = 0 mod " << args.n << ")\n";
    }
    return kExitOk;
}

int run_lemma_c(const LemmaCArgs& args) {
    if (args.n_min < 2 || args.n_min > args.n_max) {
        throw Error("requires 2 <= n-min <= n-max");
    }
    std::uint64_t failures = 0;
    for (int n = args.n_min; n <= args.n_max; ++n) {
        const bool ok = verify_lemma_c(Modulus(n));
        failures += !ok;
        if (args.json) {
            std::cout << nlohmann::json{{"n", n}, {"holds", ok}}.dump() << "\n";
        } else {
            std::cout << "n=" << n << ": " << (ok ? "ok" : "FINDING: two-valued sequence with no zero-sum")
                      << "\n";
        }
    }
    if (args.json) {
        std::cout << nlohmann::json{{"summary", true}, {"failures", failures}}.dump()
                  << "\n";
    }
    return failures == 0 ? kExitOk : kExitFinding;
}

// Randomized replayable property checks (--selftest --rng-seed S).
int run_selftest(std::uint64_t seed, int iters) {
    std::mt19937_64 rng(seed);
    int failures = 0;
    auto report = [&](const char* name, bool ok) {
        std::cout << (ok ? "[ok]  " : "[FAIL] ") << name << "\n";
        failures += !ok;
    };

    auto random_seq = [&](int n, int max_len) {
        std::vector<int> values(rng() % (max_len + 1));
        for (int& v : values) {
            v = static_cast<int>(rng() % n);
        }
        return ResidueSequence(Modulus(n), values);
    };

    bool ok = true;
    for (int i = 0; i < iters && ok; ++i) {
        const int n = 1 + static_cast<int>(rng() % 10);
        const auto s = random_seq(n, 12);
        ok = compute_spectrum(s) == naive_spectrum(s);
    }
    report("oracle equivalence (dp vs 2^L enumeration)", ok);

    ok = true;
    for (int i = 0; i < iters && ok; ++i) {
        const int n = 2 + static_cast<int>(rng() % 19);
        const auto s = random_seq(n, n + 2);
        for (int m : units(Modulus(n))) {
            if (zero_sum_lengths(s.rescaled(m)) != zero_sum_lengths(s)) {
                ok = false;
            }
        }
    }
    report("unit invariance of zero-sum lengths", ok);

    ok = true;
    for (int i = 0; i < iters && ok; ++i) {
        const int n = 1 + static_cast<int>(rng() % 8);
        const auto s = random_seq(n, 9);
        const auto spec = compute_spectrum(s);
        for (int residue = 0; residue < n && ok; ++residue) {
            for (int len = 0; len <= s.length() && ok; ++len) {
                if (!spec.achievable(residue, len)) {
                    continue;
                }
                const auto w = find_witness(s, residue, len);
                ok = w.contained_in(s) && w.length() == len && w.sum_residue() == residue;
            }
        }
    }
    report("witness reconstruction validates", ok);

    ok = true;
    for (int i = 0; i < iters && ok; ++i) {
        const int n = 2 + static_cast<int>(rng() % 19);
        const auto s = random_seq(n, n + 2);
        const auto canon = canonical_form(s);
        for (int m : units(Modulus(n))) {
            if (!(canonical_form(s.rescaled(m)) == canon)) {
                ok = false;
            }
        }
    }
    report("canonical form constant on unit orbits", ok);

    std::cout << (failures == 0 ? "selftest passed" : "selftest FAILED") << " (seed="
              << seed << ", iters=" << iters << ")\n";
    return failures == 0 ? kExitOk : kExitFinding;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zslab: modular zero-sum subsequence length analyses over Z_n"};
    app.require_subcommand(0, 1);

    bool selftest = false;
    std::uint64_t rng_seed = 1;
    int iters = 200;
    app.add_flag("--selftest", selftest, "run randomized replayable property checks");
    app.add_option("--rng-seed", rng_seed, "seed for --selftest")->capture_default_str();
    app.add_option("--iters", iters, "iterations per --selftest property")
        ->capture_default_str();

    SpectrumArgs spectrum_args;
    auto* cmd_spectrum =
        app.add_subcommand("spectrum", "exact (sum residue, length) reachability table");
    cmd_spectrum->add_option("--n", spectrum_args.n, "modulus")->required();
    cmd_spectrum->add_option("--seq", spectrum_args.seq, "sequence, e.g. 1^6,3,4")
        ->required();
    cmd_spectrum->add_flag("--json", spectrum_args.json, "emit JSON");

    CheckArgs check_args;
    auto* cmd_check = app.add_subcommand(
        "check", "classify the zero-sum subsequence lengths of one sequence");
    cmd_check->add_option("--n", check_args.n, "modulus")->required();
    cmd_check->add_option("--seq", check_args.seq, "sequence")->required();
    cmd_check->add_flag("--json", check_args.json, "emit JSON");

    VerifyArgs verify_args;
    auto* cmd_verify = app.add_subcommand(
        "verify",
        "exhaustively verify that no size-n multiset with >= 3 distinct values has a "
        "unique zero-sum length");
    cmd_verify->add_option("--n-min", verify_args.n_min, "first modulus")->required();
    cmd_verify->add_option("--n-max", verify_args.n_max, "last modulus")->required();
    cmd_verify->add_option("--workers", verify_args.workers, "worker threads (0 = auto)")
        ->envname("ZSLAB_WORKERS");
    cmd_verify->add_flag("--no-canonical", verify_args.no_canonical,
                         "examine all orbit members, not just canonical representatives");
    cmd_verify->add_flag("--no-prune", verify_args.no_prune,
                         "also examine multisets with <= 2 distinct values");
    cmd_verify->add_option("--chunk-size", verify_args.chunk_size, "shard granularity");
    cmd_verify->add_flag("--json", verify_args.json, "emit JSON Lines on stdout");
    cmd_verify->add_option("--out", verify_args.out, "write JSON Lines report to a file");

    FamiliesArgs families_args;
    auto* cmd_families = app.add_subcommand(
        "families", "generate the two-valued example families and check their verdicts");
    cmd_families->add_option("--n-min", families_args.n_min, "first modulus")->required();
    cmd_families->add_option("--n-max", families_args.n_max, "last modulus")->required();
    cmd_families->add_flag("--json", families_args.json, "emit JSON Lines");
    cmd_families->add_option("--out", families_args.out, "write JSON Lines to a file");

    ZsfCertArgs zsf_args;
    auto* cmd_zsf = app.add_subcommand(
        "zsf-cert", "small-total rescaling certificates for zero-sum-free sequences");
    cmd_zsf->add_option("--n", zsf_args.n, "modulus")->required();
    cmd_zsf->add_option("--seq", zsf_args.seq, "one zero-sum-free sequence");
    cmd_zsf->add_flag("--sweep", zsf_args.sweep,
                      "enumerate and certify all zero-sum-free multisets");
    cmd_zsf->add_option("--min-len", zsf_args.min_len,
                        "minimum length for --sweep (default (n+1)/2 rounded up)");
    cmd_zsf->add_option("--cursor", zsf_args.cursor, "resume --sweep after this value stack");
    cmd_zsf->add_option("--limit", zsf_args.limit, "stop --sweep after this many multisets");
    cmd_zsf->add_flag("--json", zsf_args.json, "emit JSON Lines");
    cmd_zsf->add_option("--out", zsf_args.out, "write JSON Lines to a file");

    Lemma31Args l31_args;
    auto* cmd_l31 = app.add_subcommand(
        "lemma31", "equal-sum subsequence constructions for 1^v a_1...a_t");
    cmd_l31->add_option("--n", l31_args.n, "modulus")->required();
    cmd_l31->add_option("--j", l31_args.j, "slack parameter (v + sum(a) <= n - j)")
        ->required();
    cmd_l31->add_option("--v", l31_args.v, "multiplicity of 1")->required();
    cmd_l31->add_option("--a", l31_args.a, "comma-separated values >= 2, nondecreasing")
        ->required();
    cmd_l31->add_option("--k", l31_args.k, "single target sum (default: sweep all)");
    cmd_l31->add_flag("--json", l31_args.json, "emit JSON");

    LemmaBArgs lb_args;
    auto* cmd_lb = app.add_subcommand(
        "lemmab", "short zero-sum witness (length <= max multiplicity) for |S| = n");
    cmd_lb->add_option("--n", lb_args.n, "modulus")->required();
    cmd_lb->add_option("--seq", lb_args.seq, "sequence of exactly n values")->required();
    cmd_lb->add_flag("--json", lb_args.json, "emit JSON");

    LemmaCArgs lc_args;
    auto* cmd_lc = app.add_subcommand(
        "lemma-c", "check that every two-valued length-(n-1) multiset has a zero-sum");
    cmd_lc->add_option("--n-min", lc_args.n_min, "first modulus")->required();
    cmd_lc->add_option("--n-max", lc_args.n_max, "last modulus")->required();
    cmd_lc->add_flag("--json", lc_args.json, "emit JSON Lines");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (selftest) {
            return run_selftest(rng_seed, iters);
        }
        if (cmd_spectrum->parsed()) {
            return run_spectrum(spectrum_args);
        }
        if (cmd_check->parsed()) {
            return run_check(check_args);
        }
        if (cmd_verify->parsed()) {
            return run_verify(verify_args);
        }
        if (cmd_families->parsed()) {
            return run_families(families_args);
        }
        if (cmd_zsf->parsed()) {
            return run_zsf_cert(zsf_args);
        }
        if (cmd_l31->parsed()) {
            return run_lemma31(l31_args);
        }
        if (cmd_lb->parsed()) {
            return run_lemmab(lb_args);
        }
        if (cmd_lc->parsed()) {
            return run_lemma_c(lc_args);
        }
        std::cerr << app.help();
        return kExitUsage;
    } catch (const TheoremDFailure& e) {
        std::cout << "FINDING: " << e.what() << "\n";
        return kExitFinding;
    } catch (const InternalError& e) {
        std::cerr << "internal guarantee violated: " << e.what() << "\n";
        return kExitFinding;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

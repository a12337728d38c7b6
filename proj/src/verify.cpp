#include "zslab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <thread>

#include "json.hpp"
#include "zslab/spectrum.hpp"
#include "zslab/structure.hpp"

namespace zslab {

int GrahamVerdict::unique_length() const {
    if (kind != GrahamKind::Unique) {
        throw InternalError("unique_length queried on a non-unique verdict");
    }
    return lengths.front();
}

const char* graham_kind_name(GrahamKind kind) {
    switch (kind) {
        case GrahamKind::NoZeroSum: return "nozerosum";
        case GrahamKind::Unique: return "unique";
        case GrahamKind::Multiple: return "multiple";
    }
    return "?";
}

GrahamVerdict is_graham(const ResidueSequence& s) {
    GrahamVerdict verdict;
    verdict.lengths = zero_sum_lengths(s);
    verdict.kind = verdict.lengths.empty()
                       ? GrahamKind::NoZeroSum
                       : (verdict.lengths.size() == 1 ? GrahamKind::Unique
                                                      : GrahamKind::Multiple);
    return verdict;
}

std::uint64_t multiset_count(int slots, int alphabet) {
    if (slots < 0 || alphabet < 0) {
        throw InvalidValue("multiset_count arguments must be non-negative");
    }
    if (slots == 0) {
        return 1;
    }
    if (alphabet == 0) {
        return 0;
    }
    // C(slots + alphabet - 1, slots); every partial product is itself a binomial.
    unsigned __int128 result = 1;
    for (int i = 1; i <= slots; ++i) {
        result = result * static_cast<unsigned>(alphabet - 1 + i) / static_cast<unsigned>(i);
        if (result > std::numeric_limits<std::uint64_t>::max()) {
            throw Error("multiset count exceeds 64 bits (n too large for exhaustive use)");
        }
    }
    return static_cast<std::uint64_t>(result);
}

std::vector<int> unrank_multiset(std::uint64_t rank, int slots, int alphabet) {
    if (rank >= multiset_count(slots, alphabet)) {
        throw InvalidValue("rank out of range");
    }
    std::vector<int> out(slots);
    int floor_value = 0;
    for (int pos = 0; pos < slots; ++pos) {
        for (int v = floor_value; v < alphabet; ++v) {
            const std::uint64_t block = multiset_count(slots - pos - 1, alphabet - v);
            if (rank < block) {
                out[pos] = v;
                floor_value = v;
                break;
            }
            rank -= block;
        }
    }
    return out;
}

bool next_multiset(std::vector<int>& tuple, int alphabet) {
    for (int i = static_cast<int>(tuple.size()) - 1; i >= 0; --i) {
        if (tuple[i] < alphabet - 1) {
            const int v = tuple[i] + 1;
            std::fill(tuple.begin() + i, tuple.end(), v);
            return true;
        }
    }
    return false;
}

SearchSpace count_search_space(Modulus n) {
    const int N = n.value();
    SearchSpace space;
    space.total = multiset_count(N, N);
    const std::uint64_t one_valued = N;
    const std::uint64_t two_valued =
        static_cast<std::uint64_t>(N) * (N - 1) / 2 * static_cast<std::uint64_t>(N - 1);
    space.with_three_plus_distinct = space.total - one_valued - two_valued;
    return space;
}

namespace {

int distinct_in_sorted(const std::vector<int>& tuple) {
    int count = 0;
    for (size_t i = 0; i < tuple.size(); ++i) {
        count += (i == 0 || tuple[i] != tuple[i - 1]);
    }
    return count;
}

// Is the sorted tuple the lexicographic minimum of its unit orbit?
// Compares each rescaled image lazily via a counting buffer.
bool tuple_is_canonical(const std::vector<int>& tuple, int n,
                        const std::vector<int>& units_above_one,
                        std::vector<int>& scratch_mult) {
    for (int m : units_above_one) {
        std::fill(scratch_mult.begin(), scratch_mult.end(), 0);
        for (int v : tuple) {
            ++scratch_mult[static_cast<int>(static_cast<long long>(m) * v % n)];
        }
        size_t idx = 0;
        int cmp = 0;
        for (int v = 0; v < n && cmp == 0; ++v) {
            for (int c = 0; c < scratch_mult[v] && cmp == 0; ++c) {
                if (v != tuple[idx]) {
                    cmp = v < tuple[idx] ? -1 : 1;
                }
                ++idx;
            }
        }
        if (cmp < 0) {
            return false;
        }
    }
    return true;
}

struct ChunkResult {
    std::uint64_t examined = 0;
    std::uint64_t skipped_two_valued = 0;
    std::uint64_t skipped_noncanonical = 0;
    std::vector<SequenceFinding> findings;   // unique verdicts
    std::vector<SequenceFinding> anomalies;  // nozerosum at |S| = n
};

void process_chunk(int n, std::uint64_t begin, std::uint64_t end,
                   const VerifyOptions& options,
                   const std::vector<int>& units_above_one, ChunkResult& out,
                   SpectrumBuilder& builder, std::vector<int>& scratch_mult) {
    std::vector<int> tuple = unrank_multiset(begin, n, n);
    for (std::uint64_t rank = begin; rank < end; ++rank, next_multiset(tuple, n)) {
        const int distinct = distinct_in_sorted(tuple);
        if (options.prune_two_valued && distinct <= 2) {
            ++out.skipped_two_valued;
            continue;
        }
        if (options.canonical_only && n >= 2 &&
            !tuple_is_canonical(tuple, n, units_above_one, scratch_mult)) {
            ++out.skipped_noncanonical;
            continue;
        }
        ++out.examined;

        builder.reset();
        bool multiple = false;
        for (int v : tuple) {
            builder.insert(v);
            if (builder.zero_sum_length_count() >= 2) {
                multiple = true;  // sound early verdict: reachable sets only grow
                break;
            }
        }
        if (multiple) {
            continue;
        }
        std::vector<int> lengths = builder.zero_sum_lengths();
        if (lengths.size() == 1) {
            out.findings.push_back(SequenceFinding{
                rank, tuple, GrahamVerdict{GrahamKind::Unique, std::move(lengths)}, distinct});
        } else if (lengths.empty()) {
            out.anomalies.push_back(SequenceFinding{
                rank, tuple, GrahamVerdict{GrahamKind::NoZeroSum, {}}, distinct});
        }
    }
}

nlohmann::json finding_record(int n, const SequenceFinding& finding) {
    nlohmann::json record{
        {"n", n},
        {"seq", finding.values},
        {"verdict", graham_kind_name(finding.verdict.kind)},
        {"lengths", finding.verdict.lengths},
        {"distinct", finding.distinct},
    };
    if (finding.verdict.kind == GrahamKind::Unique) {
        record["r"] = finding.verdict.unique_length();
    } else {
        record["r"] = nullptr;
    }
    return record;
}

}  // namespace

VerificationReport verify_theorem(Modulus n, const VerifyOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const int N = n.value();

    VerificationReport report;
    report.n = N;
    report.total = multiset_count(N, N);

    const std::uint64_t chunk_size = std::max<std::uint64_t>(1, options.chunk_size);
    const std::uint64_t chunks = (report.total + chunk_size - 1) / chunk_size;

    std::vector<int> units_above_one;
    if (options.canonical_only && N >= 2) {
        units_above_one = units(n);
        units_above_one.erase(units_above_one.begin());  // drop m = 1
    }

    std::vector<ChunkResult> results(chunks);
    std::atomic<std::uint64_t> next_chunk{0};
    auto run_worker = [&] {
        SpectrumBuilder builder(n, N);
        std::vector<int> scratch_mult(N, 0);
        while (true) {
            const std::uint64_t k = next_chunk.fetch_add(1);
            if (k >= chunks) {
                break;
            }
            process_chunk(N, k * chunk_size,
                          std::min<std::uint64_t>(report.total, (k + 1) * chunk_size),
                          options, units_above_one, results[k], builder, scratch_mult);
        }
    };

    int workers = options.workers > 0
                      ? options.workers
                      : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<int>(std::min<std::uint64_t>(workers, chunks));
    if (workers <= 1) {
        run_worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) {
            pool.emplace_back(run_worker);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }

    // Merge in chunk order; every list ends up sorted by enumeration rank.
    for (ChunkResult& chunk : results) {
        report.examined += chunk.examined;
        report.skipped_two_valued += chunk.skipped_two_valued;
        report.skipped_noncanonical += chunk.skipped_noncanonical;
        for (SequenceFinding& finding : chunk.findings) {
            (finding.distinct >= 3 ? report.counterexamples : report.graham_sequences)
                .push_back(std::move(finding));
        }
        for (SequenceFinding& finding : chunk.anomalies) {
            report.anomalies.push_back(std::move(finding));
        }
    }

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string VerificationReport::to_jsonl(bool include_timing) const {
    std::vector<const SequenceFinding*> ordered;
    ordered.reserve(graham_sequences.size() + counterexamples.size() + anomalies.size());
    for (const auto* list : {&graham_sequences, &counterexamples, &anomalies}) {
        for (const SequenceFinding& finding : *list) {
            ordered.push_back(&finding);
        }
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const SequenceFinding* a, const SequenceFinding* b) { return a->rank < b->rank; });

    std::string out;
    for (const SequenceFinding* finding : ordered) {
        out += finding_record(n, *finding).dump();
        out.push_back('\n');
    }
    nlohmann::json summary{
        {"summary", true},
        {"n", n},
        {"total", total},
        {"examined", examined},
        {"skipped_two_valued", skipped_two_valued},
        {"skipped_noncanonical", skipped_noncanonical},
        {"graham_sequences", graham_sequences.size()},
        {"counterexamples", counterexamples.size()},
        {"anomalies", anomalies.size()},
    };
    if (include_timing) {
        summary["wall_seconds"] = wall_seconds;
    }
    out += summary.dump();
    out.push_back('\n');
    return out;
}

std::vector<FamilyInstance> family_sequences(Modulus n) {
    const int N = n.value();
    if (N < 2) {
        throw DegenerateModulus("families are defined for n >= 2");
    }
    std::vector<FamilyInstance> out;

    for (int x = 0; x < N; ++x) {
        std::vector<int> mult(N, 0);
        mult[1] += N - 1;
        mult[x] += 1;
        out.push_back(FamilyInstance{
            1, N, x, -1, -1,
            ResidueSequence::from_multiplicities(n, std::move(mult))});
    }

    if (N % 2 == 1) {
        const int q = (N - 1) / 2;
        std::vector<int> mult(N, 0);
        mult[1] = N - 2;
        mult[q + 1] += 2;
        out.push_back(FamilyInstance{
            2, N, -1, q, -1,
            ResidueSequence::from_multiplicities(n, std::move(mult))});
    }

    if (N % 2 == 0) {
        const int q = N / 2;
        for (int r = 1; q - r >= 1; r += 2) {
            std::vector<int> mult(N, 0);
            mult[2] += q + r;
            mult[1] += q - r;
            out.push_back(FamilyInstance{
                3, N, -1, q, r,
                ResidueSequence::from_multiplicities(n, std::move(mult))});
        }
    }
    return out;
}

std::vector<FamilyVerdict> check_families(int n_min, int n_max) {
    if (n_min < 2 || n_min > n_max) {
        throw InvalidValue("family range requires 2 <= n_min <= n_max");
    }
    std::vector<FamilyVerdict> out;
    for (int n = n_min; n <= n_max; ++n) {
        for (FamilyInstance& instance : family_sequences(Modulus(n))) {
            GrahamVerdict verdict = is_graham(instance.seq);
            const bool matches = verdict.kind == GrahamKind::Unique;
            out.push_back(FamilyVerdict{std::move(instance), std::move(verdict), matches});
        }
    }
    return out;
}

std::string families_to_jsonl(const std::vector<FamilyVerdict>& verdicts) {
    std::string out;
    size_t flagged = 0;
    for (const FamilyVerdict& fv : verdicts) {
        nlohmann::json params = nlohmann::json::object();
        if (fv.instance.family == 1) {
            params["x"] = fv.instance.x;
        } else {
            params["q"] = fv.instance.q;
            if (fv.instance.family == 3) {
                params["r_param"] = fv.instance.r_param;
            }
        }
        nlohmann::json record{
            {"family", fv.instance.family},
            {"n", fv.instance.n},
            {"params", params},
            {"seq", fv.instance.seq.values()},
            {"verdict", graham_kind_name(fv.verdict.kind)},
            {"lengths", fv.verdict.lengths},
            {"matches_claim", fv.matches_claim},
        };
        record["r"] = fv.verdict.kind == GrahamKind::Unique
                          ? nlohmann::json(fv.verdict.unique_length())
                          : nlohmann::json(nullptr);
        out += record.dump();
        out.push_back('\n');
        flagged += !fv.matches_claim;
    }
    nlohmann::json summary{
        {"summary", true},
        {"instances", verdicts.size()},
        {"flagged", flagged},
    };
    out += summary.dump();
    out.push_back('\n');
    return out;
}

int family1_expected_length(int n, int x) {
    if (x == 0) {
        return 1;
    }
    if (x == 1) {
        return n;
    }
    return n - x + 1;
}

bool verify_lemma_c(Modulus n) {
    const int N = n.value();
    if (N < 2) {
        throw DegenerateModulus("the two-valued sweep is defined for n >= 2");
    }
    // All length-(n-1) multisets with exactly two distinct values.
    for (int v1 = 0; v1 < N; ++v1) {
        for (int v2 = v1 + 1; v2 < N; ++v2) {
            for (int m1 = 1; m1 <= N - 2; ++m1) {
                std::vector<int> mult(N, 0);
                mult[v1] = m1;
                mult[v2] = N - 1 - m1;
                const ResidueSequence s =
                    ResidueSequence::from_multiplicities(n, std::move(mult));
                if (is_zero_sum_free(s)) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace zslab

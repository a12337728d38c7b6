#pragma once

// Graham-property decision and exhaustive sweeps: classify the zero-sum
// length set of a sequence, verify that no size-n multiset with three or
// more distinct values has a unique zero-sum length, generate and check the
// two-valued example families, and sweep the two-valued length-(n-1) lemma.

#include "zslab/core.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace zslab {

enum class GrahamKind { NoZeroSum, Unique, Multiple };

struct GrahamVerdict {
    GrahamKind kind = GrahamKind::NoZeroSum;
    std::vector<int> lengths;  // complete sorted set of nonempty zero-sum lengths

    int unique_length() const;
    bool operator==(const GrahamVerdict&) const = default;
};

const char* graham_kind_name(GrahamKind kind);

// Classifies zero_sum_lengths(S): empty / singleton {r} / two or more.
GrahamVerdict is_graham(const ResidueSequence& s);

// --- multiset enumeration (combinations with repetition, lexicographic) ---

// Number of size-`slots` multisets over an alphabet of `alphabet` values.
std::uint64_t multiset_count(int slots, int alphabet);

// The rank-th nondecreasing tuple in lexicographic order.
std::vector<int> unrank_multiset(std::uint64_t rank, int slots, int alphabet);

// Advances to the lexicographic successor; false when exhausted.
bool next_multiset(std::vector<int>& tuple, int alphabet);

struct SearchSpace {
    std::uint64_t total = 0;                    // C(2n-1, n)
    std::uint64_t with_three_plus_distinct = 0;
};

SearchSpace count_search_space(Modulus n);

// --- exhaustive verification ---

struct VerifyOptions {
    int workers = 0;                 // 0 = hardware concurrency
    bool prune_two_valued = true;    // skip multisets with <= 2 distinct values
    bool canonical_only = true;      // restrict to unit-orbit representatives
    std::uint64_t chunk_size = 8192;  // shard granularity over the lex order
};

struct SequenceFinding {
    std::uint64_t rank = 0;  // position in the lexicographic enumeration
    std::vector<int> values;
    GrahamVerdict verdict;
    int distinct = 0;
};

struct VerificationReport {
    int n = 0;
    std::uint64_t total = 0;
    std::uint64_t examined = 0;
    std::uint64_t skipped_two_valued = 0;
    std::uint64_t skipped_noncanonical = 0;
    // Unique verdicts with <= 2 distinct values (only seen with pruning off).
    std::vector<SequenceFinding> graham_sequences;
    // Unique verdicts with >= 3 distinct values; must be empty.
    std::vector<SequenceFinding> counterexamples;
    // NoZeroSum verdicts at |S| = n; cannot occur, recorded rather than asserted.
    std::vector<SequenceFinding> anomalies;
    double wall_seconds = 0.0;

    // JSON Lines: one record per finding in enumeration order, then a summary
    // record. Timing is emitted only when requested so reports can be compared
    // bytewise across worker counts.
    std::string to_jsonl(bool include_timing = true) const;
};

// Sweeps all size-n multisets over [0, n-1] in lexicographic order, sharded
// into fixed-size chunks consumed by a worker pool; the report is independent
// of the worker count. Counterexamples are recorded and the sweep always
// completes. Skipping non-canonical orbit members changes counts but cannot
// change the counterexample verdict (the verdict is unit-invariant).
VerificationReport verify_theorem(Modulus n, const VerifyOptions& options = {});

// --- example families ---

// family 1: 1^{n-1} x for x in [0, n-1]
// family 2: 1^{n-2} (q+1)^2 for odd n = 2q+1
// family 3: 2^{q+r} 1^{q-r} for even n = 2q, odd r, q-r >= 1
struct FamilyInstance {
    int family = 0;
    int n = 0;
    int x = -1;        // family 1
    int q = -1;        // families 2 and 3
    int r_param = -1;  // family 3
    ResidueSequence seq;
};

std::vector<FamilyInstance> family_sequences(Modulus n);

struct FamilyVerdict {
    FamilyInstance instance;
    GrahamVerdict verdict;
    bool matches_claim = false;  // claim: the verdict is Unique
};

// Runs the verdict on every family instance for n in [n_min, n_max].
// Discrepancies are flagged via matches_claim, never suppressed.
std::vector<FamilyVerdict> check_families(int n_min, int n_max);

std::string families_to_jsonl(const std::vector<FamilyVerdict>& verdicts);

// Expected unique length of family 1 (confirmed against the brute-force
// oracle before use): x = 0 -> 1, x = 1 -> n, x >= 2 -> n - x + 1.
int family1_expected_length(int n, int x);

// True iff every length-(n-1) multiset over [0, n-1] with exactly two
// distinct values has a nonempty zero-sum subsequence.
bool verify_lemma_c(Modulus n);

}  // namespace zslab

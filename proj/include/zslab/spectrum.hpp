#pragma once

// Exact subsequence reachability: which (sum residue, length) pairs are
// achievable, with deterministic witness reconstruction and an independent
// brute-force oracle for cross-validation.

#include "zslab/core.hpp"

#include <cstdint>
#include <vector>

namespace zslab {

class NotAchievable : public Error {
public:
    using Error::Error;
};

class OracleTooLarge : public Error {
public:
    using Error::Error;
};

// n x (L+1) boolean matrix: entry (s, l) is true iff some subsequence of the
// parent has sum = s (mod n) and length l. (0, 0) is always set (the empty
// subsequence); paper-facing queries exclude l = 0 explicitly.
class LengthSpectrum {
public:
    LengthSpectrum(Modulus n, int parent_length);

    int modulus() const { return n_; }
    int parent_length() const { return parent_length_; }

    // Any integer sum residue is reduced mod n; lengths outside [0, L]
    // are never achievable.
    bool achievable(long long sum_residue, int length) const;

    // Sorted lengths achievable for one residue row (l = 0 included for row 0).
    std::vector<int> lengths_for(long long sum_residue) const;

    // Row 0 restricted to l >= 1: the set of modular zero-sum lengths.
    std::vector<int> zero_sum_lengths() const;

    bool operator==(const LengthSpectrum&) const = default;

private:
    friend class SpectrumBuilder;
    friend LengthSpectrum naive_spectrum(const ResidueSequence&);

    void set(int sum_residue, int length);
    const std::uint64_t* row(int sum_residue) const { return bits_.data() + sum_residue * words_; }

    int n_;
    int parent_length_;
    int words_;
    std::vector<std::uint64_t> bits_;  // n_ rows of words_ words each
};

// Reachability DP, one element copy per round:
//   new(s, l) = old(s, l) | old(s - v mod n, l - 1)
// realized as word-parallel shift-or on per-residue length bitsets.
// Reusable across sequences via reset(); exposes the running count of
// distinct nonempty zero-sum lengths so callers that only need the
// "two or more" distinction can stop early (reachable sets only grow).
class SpectrumBuilder {
public:
    SpectrumBuilder(Modulus n, int capacity);

    void reset();
    void reset(Modulus n, int capacity);

    // Insert one copy of value (in [0, n-1]). At most `capacity` insertions.
    void insert(int value);

    int inserted() const { return inserted_; }
    bool achievable(long long sum_residue, int length) const;
    int zero_sum_length_count() const;
    std::vector<int> zero_sum_lengths() const;

    // Snapshot with parent_length = number of insertions so far.
    LengthSpectrum spectrum() const;

private:
    int n_;
    int capacity_;
    int words_;
    int inserted_ = 0;
    std::vector<std::uint64_t> rows_;
    std::vector<std::uint64_t> prev_;  // scratch copy of rows_ during insert
};

// Exact spectrum of S; multiplicities inserted copy-by-copy, value-ascending.
LengthSpectrum compute_spectrum(const ResidueSequence& s);

// Independent oracle: enumerates all 2^L subsequences of the expanded
// sequence. Guarded to L <= 20.
LengthSpectrum naive_spectrum(const ResidueSequence& s);

// { l >= 1 : (0, l) achievable }, sorted ascending.
std::vector<int> zero_sum_lengths(const ResidueSequence& s);

// Deterministic witness for an achievable (sum residue, length) pair: the
// lexicographically least sorted value tuple, built by a greedy forward walk
// over the value-ascending insertion order that takes an element whenever the
// recomputed suffix DP confirms a completion (smaller values preferred).
SubseqWitness find_witness(const ResidueSequence& s, long long sum_residue, int length);

// CLI serialization: {"L":..,"lengths":[[..],..],"n":..} with one sorted
// length array per residue row.
std::string spectrum_to_json(const LengthSpectrum& spec);

}  // namespace zslab

#pragma once

// Zero-sum-free structure: short zero-sum finder, small-total rescaling
// certificates for long zero-sum-free sequences, pruned enumeration of all
// zero-sum-free multisets, and constructive equal-sum witness builders.

#include "zslab/core.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace zslab {

class HypothesisViolated : public Error {
public:
    using Error::Error;
};

class InvalidCursor : public Error {
public:
    using Error::Error;
};

// A long zero-sum-free sequence for which no unit rescaling has total below n.
// This is a disproof finding, not a bug: harnesses catch it and record the
// sequence as a counterexample.
class TheoremDFailure : public Error {
public:
    TheoremDFailure(const ResidueSequence& t, std::string message)
        : Error(std::move(message)), n_(t.modulus()), values_(t.values()) {}

    int modulus() const { return n_; }
    const std::vector<int>& sequence_values() const { return values_; }

private:
    int n_;
    std::vector<int> values_;
};

// True iff S has no nonempty subsequence with sum = 0 (mod n).
bool is_zero_sum_free(const ResidueSequence& s);

// For |S| = n: a nonempty zero-sum witness with length <= h(S), guaranteed to
// exist. Tie-break: minimum length, then lexicographically least sorted value
// tuple. Absence would disprove the guarantee and raises InternalError.
SubseqWitness find_short_zero_sum(const ResidueSequence& s);

// Certificate that unit m maps a zero-sum-free T = a_1...a_t onto least
// positive residues b_i = m*a_i mod n with b_1 + ... + b_t < n.
struct ZsfCertificate {
    int n = 0;
    int m = 1;
    std::vector<int> b;  // ascending
    long long total = 0;

    int t() const { return static_cast<int>(b.size()); }
    std::string to_json() const;
};

// Requires: T zero-sum-free, no zero values, |T| >= (n+1)/2. Scans all units
// and returns the certificate with smallest total (ties: smallest m); every
// unit failing the bound raises TheoremDFailure.
ZsfCertificate theorem_d_certificate(const ResidueSequence& t);

// Independent validation of a produced certificate against its sequence.
bool certificate_matches(const ZsfCertificate& cert, const ResidueSequence& t);

// Streams every zero-sum-free multiset over [1, n-1] with length >= min_length,
// each exactly once, in lexicographic order of the nondecreasing value tuple.
// Depth-first extension prunes any branch that acquires a zero-sum, which is
// exact: sub-multisets of zero-sum-free multisets are zero-sum-free.
// The current value stack doubles as a resume cursor for sharded consumption.
class ZsfEnumerator {
public:
    ZsfEnumerator(Modulus n, int min_length);
    // Resumes enumeration strictly after `cursor` (a previously returned
    // value stack).
    ZsfEnumerator(Modulus n, int min_length, std::span<const int> cursor);

    std::optional<ResidueSequence> next();

    const std::vector<int>& cursor() const { return path_; }
    std::string cursor_string() const;

    static std::vector<int> parse_cursor(std::string_view text);

private:
    bool advance();

    int n_;
    int min_length_;
    std::vector<int> path_;
    std::vector<std::uint64_t> masks_;  // masks_[d] = reachable sums of path_[0..d)
    bool exhausted_ = false;
};

// Hypotheses of the equal-sum construction lemma: S = 1^v a_1...a_t with
// v + t >= (n+1)/2, t >= 1, 2 <= a_1 <= ... <= a_t, v + sum(a) <= n - j.
class Lemma31Instance {
public:
    Lemma31Instance(Modulus n, int j, int ones, std::vector<int> tail);

    int modulus() const { return n_; }
    int j() const { return j_; }
    int ones() const { return ones_; }                    // v
    const std::vector<int>& tail() const { return tail_; }  // a_1..a_t
    int tail_count() const { return static_cast<int>(tail_.size()); }
    long long tail_sum() const;
    long long total() const { return ones_ + tail_sum(); }  // v + sum(a)

    ResidueSequence sequence() const;  // 1^v a_1...a_t over Z_n

private:
    int n_;
    int j_;
    int ones_;
    std::vector<int> tail_;
};

// Part (i): v >= a_t + ... + a_{t-j+1} - j + 1 (top min(j, t) tail values).
// Must hold on every valid instance; false is a disproof finding.
bool lemma31_check_i(const Lemma31Instance& inst);

// Part (ii): for k in [2, v + sum(a)], a subsequence T with |T| >= 2 and true
// integer sum exactly k. Greedy: 1^k when k <= a_t, else the maximal tail
// prefix with sum <= k padded by 1s.
SubseqWitness lemma31_construct_ii(const Lemma31Instance& inst, int target_sum);

// Part (iii): requires v + sum(a) <= n - 2; for k in [a_1, v + sum(a) - a_1],
// two subsequences with equal true sum k and distinct lengths, longer first.
std::pair<SubseqWitness, SubseqWitness> lemma31_construct_iii(const Lemma31Instance& inst,
                                                              int target_sum);

}  // namespace zslab

#include "zslab/structure.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"
#include "zslab/spectrum.hpp"

namespace zslab {

namespace {

// Largest modulus whose residue set fits one machine word.
constexpr int kMaskModulusLimit = 63;

std::uint64_t rotate_residues(std::uint64_t mask, int shift, int n) {
    if (shift == 0) {
        return mask;
    }
    return ((mask << shift) | (mask >> (n - shift))) & ((1ull << n) - 1);
}

}  // namespace

bool is_zero_sum_free(const ResidueSequence& s) {
    const int n = s.modulus();
    if (n > kMaskModulusLimit) {
        return zero_sum_lengths(s).empty();
    }
    // Reachable nonempty subsequence sums as a residue bitmask.
    std::uint64_t reach = 0;
    for (int v = 0; v < n; ++v) {
        for (int c = 0; c < s.multiplicities()[v]; ++c) {
            reach |= rotate_residues(reach, v, n) | (1ull << v);
            if (reach & 1) {
                return false;
            }
        }
    }
    return true;
}

SubseqWitness find_short_zero_sum(const ResidueSequence& s) {
    if (s.length() != s.modulus()) {
        throw HypothesisViolated("short zero-sum finder requires |S| = n, got |S| = " +
                                 std::to_string(s.length()) + ", n = " +
                                 std::to_string(s.modulus()));
    }
    const std::vector<int> lengths = zero_sum_lengths(s);
    if (lengths.empty()) {
        throw InternalError("no zero-sum subsequence in a length-n sequence");
    }
    const int shortest = lengths.front();
    if (shortest > s.max_multiplicity()) {
        throw InternalError("shortest zero-sum length " + std::to_string(shortest) +
                            " exceeds max multiplicity " +
                            std::to_string(s.max_multiplicity()));
    }
    return find_witness(s, 0, shortest);
}

std::string ZsfCertificate::to_json() const {
    nlohmann::json out{
        {"n", n}, {"t", t()}, {"m", m}, {"b", b}, {"total", total},
    };
    return out.dump();
}

ZsfCertificate theorem_d_certificate(const ResidueSequence& t) {
    const Modulus n(t.modulus());
    if (n.value() < 2) {
        throw HypothesisViolated("certificate requires n >= 2");
    }
    if (t.contains(0)) {
        throw HypothesisViolated("certificate requires a zero-free sequence");
    }
    if (2 * t.length() < n.value() + 1) {
        throw HypothesisViolated("certificate requires |T| >= (n+1)/2, got |T| = " +
                                 std::to_string(t.length()));
    }
    if (!is_zero_sum_free(t)) {
        throw HypothesisViolated("sequence has a zero-sum subsequence");
    }

    bool found = false;
    ZsfCertificate best;
    for (int m : units(n)) {
        std::vector<int> b;
        b.reserve(t.length());
        long long total = 0;
        for (int v = 1; v < n.value(); ++v) {
            const int image = n.reduce(static_cast<long long>(m) * v);
            for (int c = 0; c < t.multiplicities()[v]; ++c) {
                b.push_back(image);
                total += image;
            }
        }
        if (total >= n.value()) {
            continue;
        }
        if (!found || total < best.total) {  // units ascend, so ties keep smallest m
            std::sort(b.begin(), b.end());
            best = ZsfCertificate{n.value(), m, std::move(b), total};
            found = true;
        }
    }
    if (!found) {
        throw TheoremDFailure(
            t, "no unit maps " + format_sequence(t) + " (mod " +
                   std::to_string(n.value()) + ") to total < n");
    }
    return best;
}

bool certificate_matches(const ZsfCertificate& cert, const ResidueSequence& t) {
    const Modulus n(t.modulus());
    if (cert.n != n.value() || cert.t() != t.length()) {
        return false;
    }
    if (std::gcd(n.reduce(cert.m), n.value()) != 1) {
        return false;
    }
    long long total = 0;
    for (int bi : cert.b) {
        if (bi < 1 || bi >= n.value()) {
            return false;
        }
        total += bi;
    }
    if (total != cert.total || total >= n.value()) {
        return false;
    }
    std::vector<int> expected;
    expected.reserve(t.length());
    for (int v = 0; v < n.value(); ++v) {
        const int image = n.reduce(static_cast<long long>(cert.m) * v);
        expected.insert(expected.end(), t.multiplicities()[v], image);
    }
    std::sort(expected.begin(), expected.end());
    std::vector<int> sorted_b = cert.b;
    std::sort(sorted_b.begin(), sorted_b.end());
    return expected == sorted_b;
}

ZsfEnumerator::ZsfEnumerator(Modulus n, int min_length)
    : n_(n.value()), min_length_(min_length) {
    if (n_ < 2) {
        throw DegenerateModulus("zero-sum-free enumeration requires n >= 2");
    }
    if (n_ > kMaskModulusLimit) {
        throw InvalidModulus("zero-sum-free enumeration supports n <= " +
                             std::to_string(kMaskModulusLimit));
    }
    masks_.push_back(0);
}

ZsfEnumerator::ZsfEnumerator(Modulus n, int min_length, std::span<const int> cursor)
    : ZsfEnumerator(n, min_length) {
    int prev = 1;
    for (int v : cursor) {
        if (v < 1 || v >= n_) {
            throw InvalidCursor("cursor value " + std::to_string(v) + " outside [1, " +
                                std::to_string(n_ - 1) + "]");
        }
        if (v < prev) {
            throw InvalidCursor("cursor values must be nondecreasing");
        }
        const std::uint64_t grown =
            masks_.back() | rotate_residues(masks_.back(), v, n_) | (1ull << v);
        if (grown & 1) {
            throw InvalidCursor("cursor names a multiset with a zero-sum subsequence");
        }
        path_.push_back(v);
        masks_.push_back(grown);
        prev = v;
    }
}

bool ZsfEnumerator::advance() {
    if (exhausted_) {
        return false;
    }
    int start = path_.empty() ? 1 : path_.back();
    while (true) {
        for (int v = start; v < n_; ++v) {
            const std::uint64_t grown =
                masks_.back() | rotate_residues(masks_.back(), v, n_) | (1ull << v);
            if (grown & 1) {
                continue;  // extension acquires a zero-sum: whole subtree does
            }
            path_.push_back(v);
            masks_.push_back(grown);
            return true;
        }
        if (path_.empty()) {
            exhausted_ = true;
            return false;
        }
        start = path_.back() + 1;
        path_.pop_back();
        masks_.pop_back();
    }
}

std::optional<ResidueSequence> ZsfEnumerator::next() {
    while (advance()) {
        if (static_cast<int>(path_.size()) >= min_length_) {
            return ResidueSequence(Modulus(n_), path_);
        }
    }
    return std::nullopt;
}

std::string ZsfEnumerator::cursor_string() const {
    std::string out;
    for (int v : path_) {
        if (!out.empty()) {
            out.push_back(',');
        }
        out += std::to_string(v);
    }
    return out;
}

std::vector<int> ZsfEnumerator::parse_cursor(std::string_view text) {
    try {
        return parse_int_list(text);
    } catch (const ParseError& e) {
        throw InvalidCursor(e.what());
    }
}

Lemma31Instance::Lemma31Instance(Modulus n, int j, int ones, std::vector<int> tail)
    : n_(n.value()), j_(j), ones_(ones), tail_(std::move(tail)) {
    if (j_ < 1) {
        throw HypothesisViolated("j must be a positive integer");
    }
    if (ones_ < 0) {
        throw HypothesisViolated("multiplicity of 1 cannot be negative");
    }
    if (tail_.empty()) {
        throw HypothesisViolated("at least one value >= 2 is required (t >= 1)");
    }
    for (size_t i = 0; i < tail_.size(); ++i) {
        if (tail_[i] < 2) {
            throw HypothesisViolated("tail values must be >= 2");
        }
        if (i > 0 && tail_[i] < tail_[i - 1]) {
            throw HypothesisViolated("tail values must be nondecreasing");
        }
    }
    if (2 * (static_cast<long long>(ones_) + tail_count()) < n_ + 1) {
        throw HypothesisViolated("requires v + t >= (n+1)/2");
    }
    if (total() > n_ - j_) {
        throw HypothesisViolated("requires v + sum(a) <= n - j");
    }
}

long long Lemma31Instance::tail_sum() const {
    return std::accumulate(tail_.begin(), tail_.end(), 0ll);
}

ResidueSequence Lemma31Instance::sequence() const {
    std::vector<int> mult(n_, 0);
    mult[1] = ones_;
    for (int a : tail_) {
        ++mult[a];
    }
    return ResidueSequence::from_multiplicities(Modulus(n_), std::move(mult));
}

bool lemma31_check_i(const Lemma31Instance& inst) {
    const int take = std::min(inst.j(), inst.tail_count());
    long long top_sum = 0;
    for (int i = inst.tail_count() - take; i < inst.tail_count(); ++i) {
        top_sum += inst.tail()[i];
    }
    return inst.ones() >= top_sum - inst.j() + 1;
}

namespace {

// 1^pad plus the first `prefix` tail values, as a witness over Z_n.
SubseqWitness tail_prefix_witness(const Lemma31Instance& inst, int skip, int prefix, long long pad) {
    if (pad < 0 || pad > inst.ones()) {
        throw InternalError("construction pad " + std::to_string(pad) +
                            " outside [0, v]; the guarantee failed");
    }
    std::vector<int> mult(inst.modulus(), 0);
    mult[1] = static_cast<int>(pad);
    for (int i = skip; i < skip + prefix; ++i) {
        ++mult[inst.tail()[i]];
    }
    return SubseqWitness(ResidueSequence::from_multiplicities(Modulus(inst.modulus()), std::move(mult)));
}

}  // namespace

SubseqWitness lemma31_construct_ii(const Lemma31Instance& inst, int target_sum) {
    if (target_sum < 2 || target_sum > inst.total()) {
        throw HypothesisViolated("target sum " + std::to_string(target_sum) +
                                 " outside [2, v + sum(a)]");
    }
    const std::vector<int>& a = inst.tail();
    SubseqWitness witness = [&] {
        if (target_sum <= a.back()) {
            return tail_prefix_witness(inst, 0, 0, target_sum);  // 1^k
        }
        // Maximal tail prefix with sum <= k, padded with 1s.
        int prefix = 0;
        long long prefix_sum = 0;
        while (prefix < inst.tail_count() && prefix_sum + a[prefix] <= target_sum) {
            prefix_sum += a[prefix];
            ++prefix;
        }
        return tail_prefix_witness(inst, 0, prefix, target_sum - prefix_sum);
    }();
    if (witness.length() < 2 || witness.sum() != target_sum) {
        throw InternalError("equal-sum construction produced an invalid witness");
    }
    return witness;
}

std::pair<SubseqWitness, SubseqWitness> lemma31_construct_iii(const Lemma31Instance& inst,
                                                              int target_sum) {
    if (inst.total() > inst.modulus() - 2) {
        throw HypothesisViolated("requires v + sum(a) <= n - 2");
    }
    const std::vector<int>& a = inst.tail();
    const long long hi = inst.total() - a.front();
    if (target_sum < a.front() || target_sum > hi) {
        throw HypothesisViolated("target sum " + std::to_string(target_sum) +
                                 " outside [a_1, v + sum(a) - a_1]");
    }

    SubseqWitness longer = [&] {
        if (inst.tail_count() == 1) {
            return tail_prefix_witness(inst, 0, 0, target_sum);  // 1^k
        }
        int s = 0;
        long long prefix_sum = 0;
        while (s < inst.tail_count() && prefix_sum + a[s] <= target_sum) {
            prefix_sum += a[s];
            ++s;
        }
        if (s == inst.tail_count()) {
            // Drop a_1, pad: (a_2..a_t) 1^{k - sum + a_1}.
            return tail_prefix_witness(inst, 1, s - 1, target_sum - (prefix_sum - a.front()));
        }
        return tail_prefix_witness(inst, 0, s - 1,
                                   target_sum - (prefix_sum - a[s - 1]));
    }();
    SubseqWitness shorter = [&] {
        if (inst.tail_count() == 1) {
            return tail_prefix_witness(inst, 0, 1, target_sum - a.front());
        }
        int s = 0;
        long long prefix_sum = 0;
        while (s < inst.tail_count() && prefix_sum + a[s] <= target_sum) {
            prefix_sum += a[s];
            ++s;
        }
        return tail_prefix_witness(inst, 0, s, target_sum - prefix_sum);
    }();

    if (longer.sum() != target_sum || shorter.sum() != target_sum ||
        longer.length() <= shorter.length()) {
        throw InternalError("equal-sum pair construction produced an invalid pair");
    }
    return {std::move(longer), std::move(shorter)};
}

}  // namespace zslab

#include "zslab/spectrum.hpp"

#include <bit>
#include <cstring>

#include "json.hpp"

namespace zslab {

namespace {

constexpr int kOracleLengthLimit = 20;

int words_for(int length) { return (length + 64) / 64; }  // bits 0..length

}  // namespace

LengthSpectrum::LengthSpectrum(Modulus n, int parent_length)
    : n_(n.value()),
      parent_length_(parent_length),
      words_(words_for(parent_length)),
      bits_(static_cast<size_t>(n_) * words_, 0) {
    if (parent_length < 0) {
        throw InvalidValue("negative parent length");
    }
    bits_[0] = 1;  // empty subsequence: (0, 0)
}

void LengthSpectrum::set(int sum_residue, int length) {
    bits_[static_cast<size_t>(sum_residue) * words_ + length / 64] |= 1ull << (length % 64);
}

bool LengthSpectrum::achievable(long long sum_residue, int length) const {
    if (length < 0 || length > parent_length_) {
        return false;
    }
    int s = Modulus(n_).reduce(sum_residue);
    return (row(s)[length / 64] >> (length % 64)) & 1;
}

std::vector<int> LengthSpectrum::lengths_for(long long sum_residue) const {
    int s = Modulus(n_).reduce(sum_residue);
    std::vector<int> out;
    for (int l = 0; l <= parent_length_; ++l) {
        if ((row(s)[l / 64] >> (l % 64)) & 1) {
            out.push_back(l);
        }
    }
    return out;
}

std::vector<int> LengthSpectrum::zero_sum_lengths() const {
    std::vector<int> out = lengths_for(0);
    if (!out.empty() && out.front() == 0) {
        out.erase(out.begin());
    }
    return out;
}

SpectrumBuilder::SpectrumBuilder(Modulus n, int capacity)
    : n_(n.value()),
      capacity_(capacity),
      words_(words_for(capacity)),
      rows_(static_cast<size_t>(n_) * words_, 0),
      prev_(rows_.size(), 0) {
    if (capacity < 0) {
        throw InvalidValue("negative capacity");
    }
    rows_[0] = 1;
}

void SpectrumBuilder::reset() {
    std::fill(rows_.begin(), rows_.end(), 0);
    rows_[0] = 1;
    inserted_ = 0;
}

void SpectrumBuilder::reset(Modulus n, int capacity) {
    if (n.value() != n_ || capacity > capacity_) {
        *this = SpectrumBuilder(n, capacity);
    } else {
        reset();
    }
}

void SpectrumBuilder::insert(int value) {
    if (inserted_ >= capacity_) {
        throw InternalError("spectrum builder capacity exceeded");
    }
    if (value < 0 || value >= n_) {
        throw InvalidValue("value " + std::to_string(value) + " outside [0, " +
                           std::to_string(n_ - 1) + "]");
    }
    ++inserted_;
    std::memcpy(prev_.data(), rows_.data(), rows_.size() * sizeof(std::uint64_t));
    for (int s = 0; s < n_; ++s) {
        const std::uint64_t* src = prev_.data() + static_cast<size_t>(s) * words_;
        std::uint64_t* dst = rows_.data() + static_cast<size_t>((s + value) % n_) * words_;
        std::uint64_t carry = 0;
        for (int w = 0; w < words_; ++w) {
            std::uint64_t shifted = (src[w] << 1) | carry;
            carry = src[w] >> 63;
            dst[w] |= shifted;
        }
    }
}

bool SpectrumBuilder::achievable(long long sum_residue, int length) const {
    if (length < 0 || length > inserted_) {
        return false;
    }
    int s = Modulus(n_).reduce(sum_residue);
    return (rows_[static_cast<size_t>(s) * words_ + length / 64] >> (length % 64)) & 1;
}

int SpectrumBuilder::zero_sum_length_count() const {
    int count = 0;
    for (int w = 0; w < words_; ++w) {
        std::uint64_t word = rows_[w];
        if (w == 0) {
            word &= ~1ull;  // exclude the empty subsequence
        }
        count += std::popcount(word);
    }
    return count;
}

std::vector<int> SpectrumBuilder::zero_sum_lengths() const {
    std::vector<int> out;
    for (int l = 1; l <= inserted_; ++l) {
        if ((rows_[l / 64] >> (l % 64)) & 1) {
            out.push_back(l);
        }
    }
    return out;
}

LengthSpectrum SpectrumBuilder::spectrum() const {
    LengthSpectrum out(Modulus(n_), inserted_);
    // Bits above inserted_ are never set, so copying the word prefix is exact.
    for (int s = 0; s < n_; ++s) {
        std::memcpy(out.bits_.data() + static_cast<size_t>(s) * out.words_,
                    rows_.data() + static_cast<size_t>(s) * words_,
                    static_cast<size_t>(out.words_) * sizeof(std::uint64_t));
    }
    return out;
}

LengthSpectrum compute_spectrum(const ResidueSequence& s) {
    SpectrumBuilder builder(Modulus(s.modulus()), s.length());
    for (int v = 0; v < s.modulus(); ++v) {
        for (int c = 0; c < s.multiplicities()[v]; ++c) {
            builder.insert(v);
        }
    }
    return builder.spectrum();
}

LengthSpectrum naive_spectrum(const ResidueSequence& s) {
    const int length = s.length();
    if (length > kOracleLengthLimit) {
        throw OracleTooLarge("naive oracle limited to length <= " +
                             std::to_string(kOracleLengthLimit) + ", got " +
                             std::to_string(length));
    }
    const std::vector<int> items = s.values();
    LengthSpectrum out(Modulus(s.modulus()), length);
    for (std::uint32_t mask = 0; mask < (1u << length); ++mask) {
        long long sum = 0;
        int count = 0;
        for (int i = 0; i < length; ++i) {
            if ((mask >> i) & 1) {
                sum += items[i];
                ++count;
            }
        }
        out.set(Modulus(s.modulus()).reduce(sum), count);
    }
    return out;
}

std::vector<int> zero_sum_lengths(const ResidueSequence& s) {
    SpectrumBuilder builder(Modulus(s.modulus()), s.length());
    for (int v = 0; v < s.modulus(); ++v) {
        for (int c = 0; c < s.multiplicities()[v]; ++c) {
            builder.insert(v);
        }
    }
    return builder.zero_sum_lengths();
}

SubseqWitness find_witness(const ResidueSequence& s, long long sum_residue, int length) {
    const Modulus n(s.modulus());
    const int target_residue = n.reduce(sum_residue);
    if (!compute_spectrum(s).achievable(target_residue, length)) {
        throw NotAchievable("(" + std::to_string(target_residue) + ", " +
                            std::to_string(length) + ") is not achievable");
    }

    const std::vector<int> items = s.values();
    const int total = static_cast<int>(items.size());
    std::vector<int> picked_mult(n.value(), 0);
    int need_residue = target_residue;
    int need_length = length;
    SpectrumBuilder suffix(n, total);

    // Invariant: (need_residue, need_length) is achievable from items[i..).
    // Taking items[i] whenever the remaining suffix can complete prefers
    // smaller values, which yields the lex-least sorted witness tuple.
    for (int i = 0; i < total && need_length > 0; ++i) {
        suffix.reset(n, total);
        for (int j = i + 1; j < total; ++j) {
            suffix.insert(items[j]);
        }
        int after_take = n.reduce(need_residue - items[i]);
        if (suffix.achievable(after_take, need_length - 1)) {
            ++picked_mult[items[i]];
            need_residue = after_take;
            --need_length;
        }
    }
    if (need_length != 0 || need_residue != 0) {
        throw InternalError("witness reconstruction failed");
    }

    SubseqWitness witness(ResidueSequence::from_multiplicities(n, std::move(picked_mult)));
    // Independent re-check of the returned witness.
    if (!witness.contained_in(s) || witness.length() != length ||
        witness.sum_residue() != target_residue) {
        throw InternalError("witness failed validation");
    }
    return witness;
}

std::string spectrum_to_json(const LengthSpectrum& spec) {
    nlohmann::json rows = nlohmann::json::array();
    for (int s = 0; s < spec.modulus(); ++s) {
        rows.push_back(spec.lengths_for(s));
    }
    nlohmann::json out{
        {"n", spec.modulus()},
        {"L", spec.parent_length()},
        {"lengths", rows},
    };
    return out.dump();
}

}  // namespace zslab

#include "zslab/core.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>

namespace zslab {

namespace {

// Hard cap on parsed sequence length; keeps hostile "1^999999999" inputs out.
constexpr long long kMaxParsedLength = 1'000'000;

}  // namespace

ResidueSequence::ResidueSequence(Modulus n, std::span<const int> values)
    : n_(n.value()), mult_(n.value(), 0) {
    for (int v : values) {
        if (v < 0 || v >= n_) {
            throw InvalidValue("value " + std::to_string(v) + " outside [0, " +
                               std::to_string(n_ - 1) + "]");
        }
        ++mult_[v];
        ++length_;
    }
}

ResidueSequence ResidueSequence::from_multiplicities(Modulus n, std::vector<int> mult) {
    if (static_cast<int>(mult.size()) != n.value()) {
        throw InvalidValue("multiplicity vector has size " + std::to_string(mult.size()) +
                           ", expected " + std::to_string(n.value()));
    }
    ResidueSequence s(n);
    for (int v = 0; v < n.value(); ++v) {
        if (mult[v] < 0) {
            throw InvalidValue("negative multiplicity for value " + std::to_string(v));
        }
        s.length_ += mult[v];
    }
    s.mult_ = std::move(mult);
    return s;
}

int ResidueSequence::multiplicity(int value) const {
    if (value < 0 || value >= n_) {
        throw InvalidValue("value " + std::to_string(value) + " outside [0, " +
                           std::to_string(n_ - 1) + "]");
    }
    return mult_[value];
}

long long ResidueSequence::sum() const {
    long long total = 0;
    for (int v = 0; v < n_; ++v) {
        total += static_cast<long long>(v) * mult_[v];
    }
    return total;
}

int ResidueSequence::max_multiplicity() const {
    return length_ == 0 ? 0 : *std::max_element(mult_.begin(), mult_.end());
}

int ResidueSequence::distinct_values() const {
    int count = 0;
    for (int m : mult_) {
        count += (m > 0);
    }
    return count;
}

std::vector<int> ResidueSequence::values() const {
    std::vector<int> out;
    out.reserve(length_);
    for (int v = 0; v < n_; ++v) {
        out.insert(out.end(), mult_[v], v);
    }
    return out;
}

ResidueSequence ResidueSequence::rescaled(long long m) const {
    Modulus n(n_);
    int mr = n.reduce(m);
    if (std::gcd(mr, n_) != 1) {
        throw NotAUnit("multiplier " + std::to_string(m) + " is not a unit mod " +
                       std::to_string(n_));
    }
    std::vector<int> mult(n_, 0);
    for (int v = 0; v < n_; ++v) {
        mult[static_cast<int>(static_cast<long long>(mr) * v % n_)] += mult_[v];
    }
    return from_multiplicities(n, std::move(mult));
}

std::vector<int> units(Modulus n) {
    if (n.value() < 2) {
        throw DegenerateModulus("units are defined for n >= 2, got " +
                                std::to_string(n.value()));
    }
    std::vector<int> out;
    for (int m = 1; m < n.value(); ++m) {
        if (std::gcd(m, n.value()) == 1) {
            out.push_back(m);
        }
    }
    return out;
}

int unit_inverse(long long m, Modulus n) {
    int mr = n.reduce(m);
    if (std::gcd(mr, n.value()) != 1) {
        throw NotAUnit("no inverse: gcd(" + std::to_string(m) + ", " +
                       std::to_string(n.value()) + ") != 1");
    }
    if (n.value() == 1) {
        return 0;
    }
    // Extended Euclid on (mr, n).
    long long a = mr, b = n.value(), x0 = 1, x1 = 0;
    while (b != 0) {
        long long q = a / b;
        a -= q * b;
        std::swap(a, b);
        x0 -= q * x1;
        std::swap(x0, x1);
    }
    return n.reduce(x0);
}

ResidueSequence CanonicalForm::sequence() const {
    return ResidueSequence(Modulus(n_), values_);
}

CanonicalForm canonical_form(const ResidueSequence& s) {
    Modulus n(s.modulus());
    if (n.value() < 2) {
        throw DegenerateModulus("canonical form requires n >= 2");
    }
    std::vector<int> best = s.values();
    for (int m : units(n)) {
        if (m == 1) {
            continue;
        }
        std::vector<int> candidate = s.rescaled(m).values();
        if (candidate < best) {
            best = std::move(candidate);
        }
    }
    return CanonicalForm(n, std::move(best));
}

bool is_canonical(const ResidueSequence& s) {
    return canonical_form(s).values() == s.values();
}

bool SubseqWitness::contained_in(const ResidueSequence& parent) const {
    if (parent.modulus() != items_.modulus()) {
        return false;
    }
    for (int v = 0; v < items_.modulus(); ++v) {
        if (items_.multiplicities()[v] > parent.multiplicities()[v]) {
            return false;
        }
    }
    return true;
}

namespace {

long long parse_int(std::string_view token, std::string_view what) {
    long long out = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last || token.empty()) {
        throw ParseError("malformed " + std::string(what) + " '" + std::string(token) + "'");
    }
    return out;
}

}  // namespace

ResidueSequence parse_sequence(std::string_view text, Modulus n) {
    std::string compact;
    compact.reserve(text.size());
    for (char c : text) {
        if (c != ' ' && c != '\t' && c != '\n' && c != '\r') {
            compact.push_back(c);
        }
    }

    std::vector<int> mult(n.value(), 0);
    long long total = 0;
    std::string_view rest = compact;
    while (!rest.empty()) {
        size_t comma = rest.find(',');
        std::string_view term = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (term.empty()) {
            throw ParseError("empty term in sequence text");
        }
        std::string_view value_part = term;
        long long count = 1;
        if (size_t caret = term.find('^'); caret != std::string_view::npos) {
            value_part = term.substr(0, caret);
            count = parse_int(term.substr(caret + 1), "multiplicity");
            if (count < 0) {
                throw ParseError("negative multiplicity in term '" + std::string(term) + "'");
            }
        }
        long long value = parse_int(value_part, "value");
        if (value < 0 || value >= n.value()) {
            throw ParseError("value " + std::to_string(value) + " outside [0, " +
                             std::to_string(n.value() - 1) + "]");
        }
        total += count;
        if (total > kMaxParsedLength) {
            throw ParseError("sequence longer than " + std::to_string(kMaxParsedLength));
        }
        mult[static_cast<int>(value)] += static_cast<int>(count);
    }
    return ResidueSequence::from_multiplicities(n, std::move(mult));
}

std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> out;
    while (!text.empty()) {
        const size_t comma = text.find(',');
        const std::string_view term = text.substr(0, comma);
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        const long long value = parse_int(term, "list entry");
        if (value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max()) {
            throw ParseError("list entry " + std::to_string(value) + " out of range");
        }
        out.push_back(static_cast<int>(value));
    }
    return out;
}

std::string format_sequence(const ResidueSequence& s) {
    std::string out;
    for (int v = 0; v < s.modulus(); ++v) {
        int m = s.multiplicities()[v];
        if (m == 0) {
            continue;
        }
        if (!out.empty()) {
            out.push_back(',');
        }
        out += std::to_string(v);
        if (m > 1) {
            out += "^" + std::to_string(m);
        }
    }
    return out;
}

}  // namespace zslab

#pragma once

// Residue-multiset data model for subsequence-sum analysis over Z_n:
// multiplicity vectors, modular rescaling by units, canonical orbit
// representatives, and the shared sequence text format.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zslab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidModulus : public Error {
public:
    using Error::Error;
};

class InvalidValue : public Error {
public:
    using Error::Error;
};

class NotAUnit : public Error {
public:
    using Error::Error;
};

class DegenerateModulus : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

// Raised when a mathematically guaranteed step fails; always a bug signal,
// never an input problem.
class InternalError : public Error {
public:
    using Error::Error;
};

// Group order n of Z_n. All residue arithmetic reduces into [0, n-1].
class Modulus {
public:
    explicit Modulus(int n) : n_(n) {
        if (n < 1) {
            throw InvalidModulus("modulus must be >= 1, got " + std::to_string(n));
        }
    }

    int value() const { return n_; }

    // Reduce any integer into [0, n-1].
    int reduce(long long x) const {
        long long r = x % n_;
        return static_cast<int>(r < 0 ? r + n_ : r);
    }

    bool operator==(const Modulus&) const = default;

private:
    int n_;
};

// Unordered multiset of residues in [0, n-1], stored as a dense multiplicity
// vector indexed by value. Two sequences with equal multiplicity vectors are
// equal; input order never matters. Immutable after construction.
class ResidueSequence {
public:
    explicit ResidueSequence(Modulus n) : n_(n.value()), mult_(n.value(), 0) {}

    ResidueSequence(Modulus n, std::span<const int> values);

    static ResidueSequence from_multiplicities(Modulus n, std::vector<int> mult);

    int modulus() const { return n_; }
    int length() const { return length_; }

    int multiplicity(int value) const;
    const std::vector<int>& multiplicities() const { return mult_; }

    // True integer sum of all elements, not reduced mod n.
    long long sum() const;
    int sum_residue() const { return Modulus(n_).reduce(sum()); }

    // h(S): maximal repetition of a single value; 0 for the empty sequence.
    int max_multiplicity() const;

    int distinct_values() const;
    bool contains(int value) const { return multiplicity(value) > 0; }

    // Expanded element list, ascending.
    std::vector<int> values() const;

    // m*S: every element multiplied by m mod n. Requires gcd(m, n) = 1.
    ResidueSequence rescaled(long long m) const;

    bool operator==(const ResidueSequence&) const = default;

private:
    int n_;
    std::vector<int> mult_;
    int length_ = 0;
};

// All units of Z_n: m in [1, n-1] with gcd(m, n) = 1, ascending. n >= 2.
std::vector<int> units(Modulus n);

// Inverse of a unit m modulo n.
int unit_inverse(long long m, Modulus n);

// Lexicographically least sorted value tuple over the unit orbit
// {m*S : gcd(m, n) = 1}. All members of one orbit share one CanonicalForm;
// canonicalizing twice is the identity.
class CanonicalForm {
public:
    explicit CanonicalForm(Modulus n, std::vector<int> sorted_values)
        : n_(n.value()), values_(std::move(sorted_values)) {}

    int modulus() const { return n_; }
    const std::vector<int>& values() const { return values_; }
    ResidueSequence sequence() const;

    bool operator==(const CanonicalForm&) const = default;
    bool operator<(const CanonicalForm& other) const { return values_ < other.values_; }

private:
    int n_;
    std::vector<int> values_;
};

CanonicalForm canonical_form(const ResidueSequence& s);

// True iff the sorted values of s are already the orbit minimum.
bool is_canonical(const ResidueSequence& s);

// Sub-multiset of a parent sequence. Validation against a parent is
// explicit via contained_in; the witness itself only fixes the modulus.
class SubseqWitness {
public:
    explicit SubseqWitness(ResidueSequence items) : items_(std::move(items)) {}

    const ResidueSequence& items() const { return items_; }
    int modulus() const { return items_.modulus(); }
    int length() const { return items_.length(); }
    long long sum() const { return items_.sum(); }
    int sum_residue() const { return items_.sum_residue(); }
    std::vector<int> values() const { return items_.values(); }

    // Component-wise multiplicity containment in the parent.
    bool contained_in(const ResidueSequence& parent) const;

    bool operator==(const SubseqWitness&) const = default;

private:
    ResidueSequence items_;
};

// Shared sequence text format: comma-separated terms, each either `v` or a
// power term `v^m` ("1^6,3,4" = six 1s, one 3, one 4). Whitespace ignored.
ResidueSequence parse_sequence(std::string_view text, Modulus n);
std::string format_sequence(const ResidueSequence& s);

// Plain comma-separated integer list ("3,4"); empty text gives an empty list.
std::vector<int> parse_int_list(std::string_view text);

}  // namespace zslab

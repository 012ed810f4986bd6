#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace wanderflow {

// Ordinals below w^w in Cantor normal form: a sum of terms w^exponent * coeff
// with strictly decreasing exponents and positive coefficients.
class Ordinal {
  public:
    struct Term {
        std::uint32_t exponent;
        std::uint64_t coeff;
        bool operator==(const Term&) const = default;
    };

    Ordinal() = default;                        // zero
    static Ordinal finite(std::uint64_t n);
    static Ordinal omega();                     // w
    // terms must be in canonical order (strictly decreasing exponents)
    static Ordinal from_terms(std::vector<Term> terms);

    bool is_zero() const { return terms_.empty(); }
    bool is_finite() const;
    std::uint64_t finite_value() const;         // throws when infinite

    const std::vector<Term>& terms() const { return terms_; }

    Ordinal operator+(const Ordinal& rhs) const;   // ordinal sum
    Ordinal times_omega() const;                   // a * w
    static Ordinal max(const Ordinal& a, const Ordinal& b);

    std::strong_ordering operator<=>(const Ordinal& rhs) const;
    bool operator==(const Ordinal&) const = default;

    // "0", "3", "w", "w+2", "w*2", "w^2+w*3+1"
    std::string str() const;

  private:
    std::vector<Term> terms_;
};

}  // namespace wanderflow

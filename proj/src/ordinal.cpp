#include "wanderflow/ordinal.hpp"

#include "wanderflow/rational.hpp"

namespace wanderflow {

Ordinal Ordinal::finite(std::uint64_t n) {
    Ordinal o;
    if (n > 0) o.terms_.push_back({0, n});
    return o;
}

Ordinal Ordinal::omega() {
    Ordinal o;
    o.terms_.push_back({1, 1});
    return o;
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].coeff == 0) throw error("zero coefficient in ordinal term");
        if (i > 0 && terms[i - 1].exponent <= terms[i].exponent)
            throw error("ordinal terms must have strictly decreasing exponents");
    }
    Ordinal o;
    o.terms_ = std::move(terms);
    return o;
}

bool Ordinal::is_finite() const {
    return terms_.empty() || terms_.front().exponent == 0;
}

std::uint64_t Ordinal::finite_value() const {
    if (terms_.empty()) return 0;
    if (!is_finite()) throw error("ordinal is not finite");
    return terms_.front().coeff;
}

Ordinal Ordinal::operator+(const Ordinal& rhs) const {
    if (rhs.is_zero()) return *this;
    std::uint32_t lead = rhs.terms_.front().exponent;
    Ordinal out;
    // terms of the left summand strictly below w^lead are absorbed
    for (const Term& t : terms_) {
        if (t.exponent >= lead) out.terms_.push_back(t);
    }
    for (const Term& t : rhs.terms_) {
        if (!out.terms_.empty() && out.terms_.back().exponent == t.exponent)
            out.terms_.back().coeff += t.coeff;
        else
            out.terms_.push_back(t);
    }
    return out;
}

Ordinal Ordinal::times_omega() const {
    if (is_zero()) return Ordinal();
    Ordinal o;
    o.terms_.push_back({terms_.front().exponent + 1, 1});
    return o;
}

Ordinal Ordinal::max(const Ordinal& a, const Ordinal& b) { return a < b ? b : a; }

std::strong_ordering Ordinal::operator<=>(const Ordinal& rhs) const {
    std::size_t n = std::min(terms_.size(), rhs.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = terms_[i].exponent <=> rhs.terms_[i].exponent; c != 0) return c;
        if (auto c = terms_[i].coeff <=> rhs.terms_[i].coeff; c != 0) return c;
    }
    return terms_.size() <=> rhs.terms_.size();
}

std::string Ordinal::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const Term& t : terms_) {
        if (!out.empty()) out += "+";
        if (t.exponent == 0) {
            out += std::to_string(t.coeff);
        } else {
            out += t.exponent == 1 ? "w" : "w^" + std::to_string(t.exponent);
            if (t.coeff != 1) out += "*" + std::to_string(t.coeff);
        }
    }
    return out;
}

}  // namespace wanderflow

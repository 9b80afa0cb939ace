#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include "json.hpp"

#include "cfgtc/algebra_spec.hpp"

namespace cfgtc {

using Integer = boost::multiprecision::cpp_int;

/// The class e_ij, 1 <= i < j <= n+m.
struct Generator {
    int i = 0;
    int j = 0;

    friend auto operator<=>(const Generator&, const Generator&) = default;
};

/// Ordered product of generators. Canonical monomials are strictly increasing in (i, j);
/// the empty monomial is the unit.
using Monomial = std::vector<Generator>;

/// Word in the generators, multiplied in the given order. Need not be canonical.
using Word = std::vector<Generator>;

/// Throws IndexOutOfRange unless 1 <= i < j <= n+m.
void check_generator(const AlgebraSpec& spec, Generator g);

/// True when the monomial satisfies the basis conditions: strictly increasing first
/// indices, all <= n, and i_q < j_q <= n+m.
bool is_basis_monomial(const AlgebraSpec& spec, const Monomial& mono);

/// Integer combination of basis monomials. Zero coefficients are never stored.
class Element {
public:
    using Terms = std::map<Monomial, Integer>;

    explicit Element(const AlgebraSpec& spec) : spec_(spec) {}
    Element(const AlgebraSpec& spec, Terms terms);

    static Element zero(const AlgebraSpec& spec) { return Element(spec); }
    static Element unit(const AlgebraSpec& spec);

    const AlgebraSpec& spec() const { return spec_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Coefficient of a basis monomial (zero when absent).
    Integer coeff(const Monomial& mono) const;

    /// Degree r*len when every term has the same length, otherwise empty. Zero has no degree.
    std::optional<int> homogeneous_degree() const;

    friend bool operator==(const Element& a, const Element& b)
    {
        return a.spec_ == b.spec_ && a.terms_ == b.terms_;
    }

private:
    AlgebraSpec spec_;
    Terms terms_;
};

Element generator(const AlgebraSpec& spec, int i, int j);

/// Basis expansion of coeff * (product of word in the given order).
Element straighten(const AlgebraSpec& spec, const Word& word, const Integer& coeff = 1);

Element add(const Element& a, const Element& b);
Element subtract(const Element& a, const Element& b);
Element scale(const Element& a, const Integer& c);
Element multiply(const Element& a, const Element& b);

Element operator+(const Element& a, const Element& b);
Element operator-(const Element& a, const Element& b);
Element operator*(const Element& a, const Element& b);

/// Basis monomials in lex order, optionally restricted to monomial length `length`
/// (cohomological degree r*length).
std::vector<Monomial> enumerate_basis(const AlgebraSpec& spec, std::optional<int> length = {});

/// Ranks indexed by cohomological degree 0..top_degree.
std::vector<Integer> poincare_polynomial(const AlgebraSpec& spec);

// Text form: "+1*e(1,2)e(2,3) -1*e(1,3)e(2,3)", unit monomial written "1", zero written "0".
std::string monomial_to_string(const Monomial& mono);
std::string to_string(const Element& a);

/// Parses a sum of words such as "e(1,2)e(1,3) - 3*e(2,3)" and straightens it.
Element parse_element(const AlgebraSpec& spec, std::string_view text);

/// One parsed summand before straightening.
struct WordTerm {
    Integer coeff;
    Word word;
};
std::vector<WordTerm> parse_words(std::string_view text);

nlohmann::json monomial_to_json(const Monomial& mono);
Monomial monomial_from_json(const nlohmann::json& j);
/// [{"coeff": "<decimal>", "factors": [[i,j],...]}, ...] in lex order.
nlohmann::json to_json(const Element& a);
Element element_from_json(const AlgebraSpec& spec, const nlohmann::json& j);

}  // namespace cfgtc

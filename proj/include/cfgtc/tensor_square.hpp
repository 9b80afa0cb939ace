#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "cfgtc/cohomology.hpp"

namespace cfgtc {

/// Key (left, right) of a pure tensor of basis monomials.
using TensorKey = std::pair<Monomial, Monomial>;

/// Element of H (x) H with the Koszul product (a(x)b)(c(x)d) = (-1)^{|b||c|} ac (x) bd.
class TensorElement {
public:
    using Terms = std::map<TensorKey, Integer>;

    explicit TensorElement(const AlgebraSpec& spec) : spec_(spec) {}
    TensorElement(const AlgebraSpec& spec, Terms terms);

    static TensorElement unit(const AlgebraSpec& spec);

    const AlgebraSpec& spec() const { return spec_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Integer coeff(const TensorKey& key) const;

    /// Total degree r*(len(left)+len(right)) if homogeneous.
    std::optional<int> total_degree() const;

    friend bool operator==(const TensorElement& a, const TensorElement& b)
    {
        return a.spec_ == b.spec_ && a.terms_ == b.terms_;
    }

private:
    AlgebraSpec spec_;
    Terms terms_;
};

/// a (x) b, no sign.
TensorElement tensor(const Element& a, const Element& b);

TensorElement tensor_add(const TensorElement& x, const TensorElement& y);
TensorElement tensor_scale(const TensorElement& x, const Integer& c);
TensorElement tensor_multiply(const TensorElement& x, const TensorElement& y);

/// 1 (x) e_ij - e_ij (x) 1; zero when both indices are obstacles.
TensorElement zero_divisor(const AlgebraSpec& spec, int i, int j);

/// The multiplication map a (x) b -> ab.
Element contract(const TensorElement& x);

/// "c*(left|right)" per term, space separated; "0" for zero.
std::string to_string(const TensorElement& x);
/// [{"coeff": "<decimal>", "left": [[i,j],...], "right": [[i,j],...]}, ...]
nlohmann::json to_json(const TensorElement& x);
TensorElement tensor_from_json(const AlgebraSpec& spec, const nlohmann::json& j);

}  // namespace cfgtc

#include "cfgtc/tensor_square.hpp"

#include "cfgtc/error.hpp"

namespace cfgtc {

namespace {

using Terms = TensorElement::Terms;

void accumulate(Terms& terms, const TensorKey& key, const Integer& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms.try_emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms.erase(it);
    }
}

void require_same_spec(const AlgebraSpec& a, const AlgebraSpec& b)
{
    if (a != b)
        throw SpecMismatch("operands belong to different rings " + a.to_string() + " and " + b.to_string());
}

}  // namespace

TensorElement::TensorElement(const AlgebraSpec& spec, Terms terms) : spec_(spec)
{
    for (auto& [key, c] : terms) {
        if (!is_basis_monomial(spec, key.first) || !is_basis_monomial(spec, key.second))
            throw PreconditionError("tensor key (" + monomial_to_string(key.first) + "|" +
                                    monomial_to_string(key.second) + ") is not a pair of basis monomials");
        if (c != 0)
            terms_.emplace(key, std::move(c));
    }
}

TensorElement TensorElement::unit(const AlgebraSpec& spec)
{
    return tensor(Element::unit(spec), Element::unit(spec));
}

Integer TensorElement::coeff(const TensorKey& key) const
{
    auto it = terms_.find(key);
    return it == terms_.end() ? Integer(0) : it->second;
}

std::optional<int> TensorElement::total_degree() const
{
    if (terms_.empty())
        return std::nullopt;
    auto length = [](const TensorKey& k) { return k.first.size() + k.second.size(); };
    std::size_t len = length(terms_.begin()->first);
    for (const auto& [key, c] : terms_)
        if (length(key) != len)
            return std::nullopt;
    return spec_.r * static_cast<int>(len);
}

TensorElement tensor(const Element& a, const Element& b)
{
    require_same_spec(a.spec(), b.spec());
    Terms terms;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            terms.emplace(TensorKey{ma, mb}, ca * cb);
    return TensorElement(a.spec(), std::move(terms));
}

TensorElement tensor_add(const TensorElement& x, const TensorElement& y)
{
    require_same_spec(x.spec(), y.spec());
    Terms terms = x.terms();
    for (const auto& [key, c] : y.terms())
        accumulate(terms, key, c);
    return TensorElement(x.spec(), std::move(terms));
}

TensorElement tensor_scale(const TensorElement& x, const Integer& c)
{
    Terms terms;
    if (c != 0)
        for (const auto& [key, v] : x.terms())
            terms.emplace(key, v * c);
    return TensorElement(x.spec(), std::move(terms));
}

TensorElement tensor_multiply(const TensorElement& x, const TensorElement& y)
{
    require_same_spec(x.spec(), y.spec());
    const AlgebraSpec& spec = x.spec();
    Terms terms;
    for (const auto& [kx, cx] : x.terms()) {
        for (const auto& [ky, cy] : y.terms()) {
            // |b||c| = r^2 * len(b) * len(c); odd only when r is odd.
            const bool negate = spec.odd() && (kx.second.size() * ky.first.size()) % 2 != 0;
            Element left = straighten(spec, [&] {
                Word w = kx.first;
                w.insert(w.end(), ky.first.begin(), ky.first.end());
                return w;
            }());
            if (left.is_zero())
                continue;
            Element right = straighten(spec, [&] {
                Word w = kx.second;
                w.insert(w.end(), ky.second.begin(), ky.second.end());
                return w;
            }());
            if (right.is_zero())
                continue;
            Integer c = cx * cy;
            if (negate)
                c = -c;
            for (const auto& [ml, cl] : left.terms())
                for (const auto& [mr, cr] : right.terms())
                    accumulate(terms, TensorKey{ml, mr}, c * cl * cr);
        }
    }
    return TensorElement(spec, std::move(terms));
}

TensorElement zero_divisor(const AlgebraSpec& spec, int i, int j)
{
    Element e = generator(spec, i, j);
    Element one = Element::unit(spec);
    return tensor_add(tensor(one, e), tensor_scale(tensor(e, one), -1));
}

Element contract(const TensorElement& x)
{
    Element sum(x.spec());
    for (const auto& [key, c] : x.terms()) {
        Word w = key.first;
        w.insert(w.end(), key.second.begin(), key.second.end());
        sum = add(sum, straighten(x.spec(), w, c));
    }
    return sum;
}

std::string to_string(const TensorElement& x)
{
    if (x.is_zero())
        return "0";
    std::string s;
    for (const auto& [key, c] : x.terms()) {
        if (!s.empty())
            s += ' ';
        s += (c > 0 ? "+" : "") + c.str() + "*(" + monomial_to_string(key.first) + "|" +
             monomial_to_string(key.second) + ")";
    }
    return s;
}

nlohmann::json to_json(const TensorElement& x)
{
    auto j = nlohmann::json::array();
    for (const auto& [key, c] : x.terms())
        j.push_back({{"coeff", c.str()},
                     {"left", monomial_to_json(key.first)},
                     {"right", monomial_to_json(key.second)}});
    return j;
}

TensorElement tensor_from_json(const AlgebraSpec& spec, const nlohmann::json& j)
{
    if (!j.is_array())
        throw ParseError("tensor element must be a JSON array of terms");
    TensorElement sum(spec);
    for (const auto& t : j) {
        if (!t.is_object() || !t.contains("coeff") || !t.contains("left") || !t.contains("right") ||
            !t["coeff"].is_string())
            throw ParseError("term must be {\"coeff\": \"<decimal>\", \"left\": [...], \"right\": [...]}");
        Integer c;
        try {
            c = Integer(t["coeff"].get<std::string>());
        } catch (const std::exception&) {
            throw ParseError("bad coefficient \"" + t["coeff"].get<std::string>() + "\"");
        }
        Element left = straighten(spec, monomial_from_json(t["left"]));
        Element right = straighten(spec, monomial_from_json(t["right"]));
        sum = tensor_add(sum, tensor_scale(tensor(left, right), c));
    }
    return sum;
}

}  // namespace cfgtc

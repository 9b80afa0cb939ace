#include "cfgtc/cohomology.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <tuple>

#include "cfgtc/error.hpp"

namespace cfgtc {

AlgebraSpec AlgebraSpec::make(int r, int n, int m)
{
    if (r < 1 || n < 1 || m < 0) {
        std::ostringstream os;
        os << "invalid spec (r=" << r << ", n=" << n << ", m=" << m << "): need r >= 1, n >= 1, m >= 0";
        throw InvalidSpec(os.str());
    }
    return AlgebraSpec{r, n, m};
}

std::string AlgebraSpec::to_string() const
{
    std::ostringstream os;
    os << "(r=" << r << ", n=" << n << ", m=" << m << ")";
    return os.str();
}

void check_generator(const AlgebraSpec& spec, Generator g)
{
    if (g.i < 1 || g.i >= g.j || g.j > spec.points()) {
        std::ostringstream os;
        os << "generator e(" << g.i << "," << g.j << ") out of range for " << spec.to_string()
           << ": need 1 <= i < j <= " << spec.points();
        throw IndexOutOfRange(os.str());
    }
}

bool is_basis_monomial(const AlgebraSpec& spec, const Monomial& mono)
{
    int last_i = 0;
    for (const auto& g : mono) {
        if (g.i <= last_i || g.i > spec.n || g.j <= g.i || g.j > spec.points())
            return false;
        last_i = g.i;
    }
    return true;
}

namespace {

using Terms = Element::Terms;

void accumulate(Terms& terms, const Monomial& mono, const Integer& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms.try_emplace(mono, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms.erase(it);
    }
}

/* Sorts the word in place, returning the Koszul sign of the permutation, or 0 when a
   factor repeats (e_ij^2 = 0). */
int sort_with_sign(Word& word, bool odd)
{
    int inversions = 0;
    for (std::size_t a = 1; a < word.size(); ++a) {
        for (std::size_t b = a; b > 0 && word[b] < word[b - 1]; --b) {
            std::swap(word[b], word[b - 1]);
            ++inversions;
        }
    }
    for (std::size_t a = 1; a < word.size(); ++a)
        if (word[a] == word[a - 1])
            return 0;
    return (odd && inversions % 2 != 0) ? -1 : 1;
}

using CacheKey = std::tuple<bool, int, int, Monomial>;

Terms reduce_sorted(const AlgebraSpec& spec, const Monomial& mono);

/* coeff * word, with all indices already validated. */
void straighten_into(const AlgebraSpec& spec, Word word, const Integer& coeff, Terms& out)
{
    for (const auto& g : word)
        if (g.i > spec.n)
            return;
    if (static_cast<int>(word.size()) > spec.top_length())
        return;
    int sign = sort_with_sign(word, spec.odd());
    if (sign == 0)
        return;
    const Terms& reduced = reduce_sorted(spec, word);
    for (const auto& [mono, c] : reduced)
        accumulate(out, mono, sign * c * coeff);
}

/* Canonical (sorted, squarefree, first indices <= n) monomial to its basis expansion.
   Rewrites the lex-least adjacent pair e_ij e_ik (j < k) as e_ij e_jk - e_ik e_jk. */
Terms reduce_sorted(const AlgebraSpec& spec, const Monomial& mono)
{
    thread_local std::map<CacheKey, Terms> cache;
    CacheKey key{spec.odd(), spec.n, spec.m, mono};
    if (auto it = cache.find(key); it != cache.end())
        return it->second;

    Terms result;
    std::size_t p = 0;
    while (p + 1 < mono.size() && mono[p].i != mono[p + 1].i)
        ++p;
    if (p + 1 >= mono.size()) {
        result.emplace(mono, 1);
    } else {
        const int i = mono[p].i, j = mono[p].j, k = mono[p + 1].j;
        Word first = mono, second = mono;
        first[p] = {i, j};
        first[p + 1] = {j, k};
        second[p] = {i, k};
        second[p + 1] = {j, k};
        straighten_into(spec, std::move(first), 1, result);
        straighten_into(spec, std::move(second), -1, result);
    }
    cache.emplace(std::move(key), result);
    return result;
}

void require_same_spec(const Element& a, const Element& b)
{
    if (a.spec() != b.spec())
        throw SpecMismatch("operands belong to different rings " + a.spec().to_string() + " and " +
                           b.spec().to_string());
}

}  // namespace

Element::Element(const AlgebraSpec& spec, Terms terms) : spec_(spec)
{
    for (auto& [mono, c] : terms) {
        if (!is_basis_monomial(spec, mono))
            throw PreconditionError("monomial " + monomial_to_string(mono) + " is not a basis monomial");
        if (c != 0)
            terms_.emplace(mono, std::move(c));
    }
}

Element Element::unit(const AlgebraSpec& spec)
{
    Element e(spec);
    e.terms_.emplace(Monomial{}, 1);
    return e;
}

Integer Element::coeff(const Monomial& mono) const
{
    auto it = terms_.find(mono);
    return it == terms_.end() ? Integer(0) : it->second;
}

std::optional<int> Element::homogeneous_degree() const
{
    if (terms_.empty())
        return std::nullopt;
    std::size_t len = terms_.begin()->first.size();
    for (const auto& [mono, c] : terms_)
        if (mono.size() != len)
            return std::nullopt;
    return spec_.r * static_cast<int>(len);
}

Element generator(const AlgebraSpec& spec, int i, int j)
{
    return straighten(spec, Word{{i, j}});
}

Element straighten(const AlgebraSpec& spec, const Word& word, const Integer& coeff)
{
    for (const auto& g : word)
        check_generator(spec, g);
    Terms terms;
    straighten_into(spec, word, coeff, terms);
    return Element(spec, std::move(terms));
}

Element add(const Element& a, const Element& b)
{
    require_same_spec(a, b);
    Terms terms = a.terms();
    for (const auto& [mono, c] : b.terms())
        accumulate(terms, mono, c);
    return Element(a.spec(), std::move(terms));
}

Element subtract(const Element& a, const Element& b)
{
    return add(a, scale(b, -1));
}

Element scale(const Element& a, const Integer& c)
{
    Terms terms;
    if (c != 0)
        for (const auto& [mono, x] : a.terms())
            terms.emplace(mono, x * c);
    return Element(a.spec(), std::move(terms));
}

Element multiply(const Element& a, const Element& b)
{
    require_same_spec(a, b);
    const AlgebraSpec& spec = a.spec();
    Terms terms;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            Word word = ma;
            word.insert(word.end(), mb.begin(), mb.end());
            straighten_into(spec, std::move(word), ca * cb, terms);
        }
    }
    return Element(spec, std::move(terms));
}

Element operator+(const Element& a, const Element& b) { return add(a, b); }
Element operator-(const Element& a, const Element& b) { return subtract(a, b); }
Element operator*(const Element& a, const Element& b) { return multiply(a, b); }

std::vector<Monomial> enumerate_basis(const AlgebraSpec& spec, std::optional<int> length)
{
    std::vector<Monomial> out;
    Monomial current;
    auto rec = [&](auto&& self, int i) -> void {
        if (i > spec.n) {
            if (!length || static_cast<int>(current.size()) == *length)
                out.push_back(current);
            return;
        }
        self(self, i + 1);
        for (int j = i + 1; j <= spec.points(); ++j) {
            current.push_back({i, j});
            self(self, i + 1);
            current.pop_back();
        }
    };
    rec(rec, 1);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Integer> poincare_polynomial(const AlgebraSpec& spec)
{
    std::vector<Integer> ranks(spec.top_degree() + 1, 0);
    for (const auto& mono : enumerate_basis(spec))
        ranks[spec.r * mono.size()] += 1;
    return ranks;
}

std::string monomial_to_string(const Monomial& mono)
{
    if (mono.empty())
        return "1";
    std::string s;
    for (const auto& g : mono)
        s += "e(" + std::to_string(g.i) + "," + std::to_string(g.j) + ")";
    return s;
}

std::string to_string(const Element& a)
{
    if (a.is_zero())
        return "0";
    std::string s;
    for (const auto& [mono, c] : a.terms()) {
        if (!s.empty())
            s += ' ';
        s += (c > 0 ? "+" : "") + c.str() + "*" + monomial_to_string(mono);
    }
    return s;
}

namespace {

class WordParser {
public:
    explicit WordParser(std::string_view text) : text_(text) {}

    std::vector<WordTerm> parse()
    {
        std::vector<WordTerm> terms;
        skip_space();
        if (at_end())
            throw ParseError("empty expression");
        while (!at_end()) {
            terms.push_back(term(terms.empty()));
            skip_space();
        }
        return terms;
    }

private:
    WordTerm term(bool first)
    {
        WordTerm t{1, {}};
        skip_space();
        if (peek() == '+' || peek() == '-') {
            if (get() == '-')
                t.coeff = -1;
            skip_space();
            // a signed coefficient may follow the operator, as in "a + -2*b"
            if (!first && (peek() == '+' || peek() == '-')) {
                if (get() == '-')
                    t.coeff = -t.coeff;
                skip_space();
            }
        } else if (!first) {
            fail("expected '+' or '-' between terms");
        }
        bool have_factor = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            Integer c = integer();
            skip_space();
            t.coeff *= c;
            have_factor = true;
            if (peek() == '*') {
                get();
                skip_space();
                have_factor = false;
            } else {
                return t;
            }
        }
        while (peek() == 'e') {
            t.word.push_back(generator());
            have_factor = true;
            skip_space();
            if (peek() == '*') {
                get();
                skip_space();
            }
        }
        if (!have_factor) {
            if (peek() == '1') {
                get();
            } else {
                fail("expected a factor e(i,j) or 1");
            }
        }
        return t;
    }

    Generator generator()
    {
        expect('e');
        expect('(');
        int i = small_int();
        expect(',');
        int j = small_int();
        expect(')');
        return {i, j};
    }

    Integer integer()
    {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    int small_int()
    {
        skip_space();
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        if (start == pos_ || pos_ - start > 6)
            fail("expected an index");
        int v = std::stoi(std::string(text_.substr(start, pos_ - start)));
        skip_space();
        return v;
    }

    void expect(char c)
    {
        skip_space();
        if (peek() != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_space()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    char get() { return text_[pos_++]; }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<WordTerm> parse_words(std::string_view text)
{
    return WordParser(text).parse();
}

Element parse_element(const AlgebraSpec& spec, std::string_view text)
{
    Element sum(spec);
    for (const auto& t : parse_words(text))
        sum = add(sum, straighten(spec, t.word, t.coeff));
    return sum;
}

nlohmann::json monomial_to_json(const Monomial& mono)
{
    auto j = nlohmann::json::array();
    for (const auto& g : mono)
        j.push_back({g.i, g.j});
    return j;
}

Monomial monomial_from_json(const nlohmann::json& j)
{
    if (!j.is_array())
        throw ParseError("factor list must be an array");
    Monomial mono;
    for (const auto& f : j) {
        if (!f.is_array() || f.size() != 2 || !f[0].is_number_integer() || !f[1].is_number_integer())
            throw ParseError("factor must be a pair [i, j]");
        mono.push_back({f[0].get<int>(), f[1].get<int>()});
    }
    return mono;
}

nlohmann::json to_json(const Element& a)
{
    auto j = nlohmann::json::array();
    for (const auto& [mono, c] : a.terms())
        j.push_back({{"coeff", c.str()}, {"factors", monomial_to_json(mono)}});
    return j;
}

Element element_from_json(const AlgebraSpec& spec, const nlohmann::json& j)
{
    if (!j.is_array())
        throw ParseError("element must be a JSON array of terms");
    Element sum(spec);
    for (const auto& t : j) {
        if (!t.is_object() || !t.contains("coeff") || !t.contains("factors") || !t["coeff"].is_string())
            throw ParseError("term must be {\"coeff\": \"<decimal>\", \"factors\": [...]}");
        Integer c;
        try {
            c = Integer(t["coeff"].get<std::string>());
        } catch (const std::exception&) {
            throw ParseError("bad coefficient \"" + t["coeff"].get<std::string>() + "\"");
        }
        sum = add(sum, straighten(spec, monomial_from_json(t["factors"]), c));
    }
    return sum;
}

}  // namespace cfgtc

#pragma once

// Test-only model of H*(F(R^{r+1} - S_m, n); Q) built directly from the presentation:
// squarefree monomials in all e_ij (i < j <= n+m) modulo the ideal generated by
//   e_ij with i > n,  and  e_ij e_ik - e_ij e_jk + e_ik e_jk  (i < j < k),
// with degree-wise linear algebra over Q. Shares no code with the rewriting engine.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using Mask = std::uint32_t;
using Poly = std::map<Mask, Rational>;

class QuotientRing {
public:
    QuotientRing(int r, int n, int m) : odd_(r % 2 != 0), n_(n)
    {
        const int N = n + m;
        for (int i = 1; i <= N; ++i)
            for (int j = i + 1; j <= N; ++j) {
                index_[{i, j}] = static_cast<int>(gens_.size());
                gens_.push_back({i, j});
            }
        for (const auto& g : gens_)
            if (g.first > n)
                relations_.push_back({{bit(g.first, g.second), Rational(1)}});
        for (int i = 1; i <= N; ++i)
            for (int j = i + 1; j <= N; ++j)
                for (int k = j + 1; k <= N; ++k) {
                    Poly rel;
                    add_term(rel, bit(i, j) | bit(i, k), 1);
                    add_term(rel, bit(i, j) | bit(j, k), -1);
                    add_term(rel, bit(i, k) | bit(j, k), 1);
                    relations_.push_back(rel);
                }
    }

    int generator_count() const { return static_cast<int>(gens_.size()); }

    Mask bit(int i, int j) const { return Mask(1) << index_.at({i, j}); }

    /// Product of a word in the given order as a signed squarefree monomial.
    Poly word(const std::vector<std::pair<int, int>>& factors) const
    {
        Poly p{{0, Rational(1)}};
        for (const auto& f : factors)
            p = multiply(p, Poly{{bit(f.first, f.second), Rational(1)}});
        return p;
    }

    Poly multiply(const Poly& a, const Poly& b) const
    {
        Poly out;
        for (const auto& [ma, ca] : a)
            for (const auto& [mb, cb] : b) {
                if (ma & mb)
                    continue;
                add_term(out, ma | mb, ca * cb * sign(ma, mb));
            }
        return out;
    }

    /// Spanning set of the ideal in monomial length `len`.
    std::vector<Poly> ideal_span(int len) const
    {
        std::vector<Poly> rows;
        const int G = generator_count();
        for (const auto& rel : relations_) {
            const int rel_len = __builtin_popcount(rel.begin()->first);
            if (rel_len > len)
                continue;
            for (Mask mono = 0; mono < (Mask(1) << G); ++mono) {
                if (__builtin_popcount(mono) != len - rel_len)
                    continue;
                Poly p = multiply(Poly{{mono, Rational(1)}}, rel);
                if (!p.empty())
                    rows.push_back(std::move(p));
            }
        }
        return rows;
    }

    std::vector<Mask> monomials(int len) const
    {
        std::vector<Mask> out;
        for (Mask mono = 0; mono < (Mask(1) << generator_count()); ++mono)
            if (__builtin_popcount(mono) == len)
                out.push_back(mono);
        return out;
    }

    static void add_term(Poly& p, Mask mono, const Rational& c)
    {
        if (c == 0)
            return;
        Rational& slot = p[mono];
        slot += c;
        if (slot == 0)
            p.erase(mono);
    }

private:
    Rational sign(Mask a, Mask b) const
    {
        if (!odd_)
            return 1;
        // Inversions when the factors of b are moved past the larger factors of a.
        int swaps = 0;
        for (int x = 0; x < 32; ++x)
            if (b & (Mask(1) << x))
                swaps += __builtin_popcount(a >> (x + 1));
        return swaps % 2 ? -1 : 1;
    }

    bool odd_;
    int n_;
    std::vector<std::pair<int, int>> gens_;
    std::map<std::pair<int, int>, int> index_;
    std::vector<Poly> relations_;
};

/// Incremental row-echelon basis over Q.
class Span {
public:
    /// Adds v; returns true if it was independent of what was there.
    bool insert(Poly v)
    {
        reduce(v);
        if (v.empty())
            return false;
        const Mask pivot = v.begin()->first;
        const Rational lead = v.begin()->second;
        for (auto& [m, c] : v)
            c /= lead;
        rows_.emplace(pivot, std::move(v));
        return true;
    }

    bool contains(Poly v) const
    {
        reduce(v);
        return v.empty();
    }

    std::size_t rank() const { return rows_.size(); }

private:
    void reduce(Poly& v) const
    {
        bool changed = true;
        while (changed && !v.empty()) {
            changed = false;
            for (auto it = v.begin(); it != v.end(); ++it) {
                auto row = rows_.find(it->first);
                if (row == rows_.end())
                    continue;
                const Rational factor = it->second;
                for (const auto& [m, c] : row->second)
                    QuotientRing::add_term(v, m, -factor * c);
                changed = true;
                break;
            }
        }
    }

    std::map<Mask, Poly> rows_;
};

}  // namespace oracle

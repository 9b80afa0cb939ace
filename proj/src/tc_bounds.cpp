#include "cfgtc/tc_bounds.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "cfgtc/error.hpp"

namespace cfgtc {

int witness_length(const Witness& w)
{
    int len = 0;
    for (const auto& f : w)
        len += f.multiplicity;
    return len;
}

TensorElement witness_product(const AlgebraSpec& spec, const Witness& factors)
{
    TensorElement product = TensorElement::unit(spec);
    for (const auto& f : factors) {
        check_generator(spec, {f.i, f.j});
        if (f.i > spec.n)
            throw IndexOutOfRange("witness factor e(" + std::to_string(f.i) + "," + std::to_string(f.j) +
                                  ") has no object index");
        if (f.multiplicity < 1)
            throw PreconditionError("witness multiplicity must be >= 1");
    }
    for (const auto& f : factors) {
        TensorElement zd = zero_divisor(spec, f.i, f.j);
        for (int k = 0; k < f.multiplicity; ++k)
            product = tensor_multiply(product, zd);
    }
    return product;
}

namespace {

class ZclSearch {
public:
    ZclSearch(const AlgebraSpec& spec, int ceiling, std::uint64_t budget)
        : spec_(spec), ceiling_(ceiling), budget_(budget), cap_(spec.odd() ? 1 : 2)
    {
        for (int i = 1; i <= spec.n; ++i)
            for (int j = i + 1; j <= spec.points(); ++j) {
                gens_.push_back({i, j});
                divisors_.push_back(zero_divisor(spec, i, j));
            }
    }

    ZclResult run()
    {
        if (ceiling_ > 0 && !gens_.empty())
            descend(TensorElement::unit(spec_), 0, 0);
        ZclResult result;
        result.length = best_;
        result.nodes_visited = nodes_;
        result.exhaustive = !exhausted_;
        for (std::size_t g : best_seq_) {
            if (!result.witness.empty() && result.witness.back().i == gens_[g].i &&
                result.witness.back().j == gens_[g].j)
                ++result.witness.back().multiplicity;
            else
                result.witness.push_back({gens_[g].i, gens_[g].j, 1});
        }
        return result;
    }

private:
    /* Extends the sorted sequence seq_ (whose product is `prefix`) by one more factor.
       Returns false when the search must stop. */
    bool descend(const TensorElement& prefix, std::size_t last, int last_count)
    {
        const int len = static_cast<int>(seq_.size());
        for (std::size_t g = last; g < gens_.size(); ++g) {
            const bool repeat = !seq_.empty() && g == last;
            if (repeat && last_count >= cap_)
                continue;
            const int count = repeat ? last_count + 1 : 1;

            if (nodes_ >= budget_) {
                exhausted_ = true;
                return false;
            }
            ++nodes_;
            TensorElement product = tensor_multiply(prefix, divisors_[g]);
            if (product.is_zero())
                continue;

            seq_.push_back(g);
            if (len + 1 > best_) {
                best_ = len + 1;
                best_seq_ = seq_;
                if (best_ >= ceiling_) {
                    seq_.pop_back();
                    return false;
                }
            }
            const int room = (cap_ - count) + cap_ * static_cast<int>(gens_.size() - 1 - g);
            if (len + 1 < ceiling_ && len + 1 + room > best_) {
                if (!descend(product, g, count)) {
                    seq_.pop_back();
                    return false;
                }
            }
            seq_.pop_back();
        }
        return true;
    }

    AlgebraSpec spec_;
    int ceiling_;
    std::uint64_t budget_;
    int cap_;
    std::vector<Generator> gens_;
    std::vector<TensorElement> divisors_;
    std::vector<std::size_t> seq_;
    std::vector<std::size_t> best_seq_;
    int best_ = 0;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

}  // namespace

ZclResult zcl_search(const AlgebraSpec& spec, std::optional<int> max_length, std::uint64_t budget)
{
    if (budget < 1)
        throw PreconditionError("search budget must be >= 1");
    // Each side of a nonzero pure tensor has length <= top_length.
    int ceiling = 2 * spec.top_length();
    if (max_length)
        ceiling = std::min(ceiling, std::max(0, *max_length));
    return ZclSearch(spec, ceiling, budget).run();
}

int upper_bound(const AlgebraSpec& spec)
{
    // r >= 2: simply connected, TC <= dim + 1. r = 1: TC <= 2 dim + 1.
    if (spec.r >= 2)
        return spec.top_degree() + 1;
    return 2 * spec.top_length() + 1;
}

std::string citation_tag(Citation c)
{
    switch (c) {
    case Citation::SpatialObstacles:
        return "spatial-zcl-meets-dimension";
    case Citation::PlanarObstacles:
        return "planar-zcl-meets-dimension";
    case Citation::PlanarSingleObstacle:
        return "imported-planar-single-obstacle";
    case Citation::PlanarNoObstacles:
        return "imported-planar-configuration-space";
    }
    return "unknown";
}

std::string citation_text(Citation c)
{
    switch (c) {
    case Citation::SpatialObstacles:
        return "R^3: squared zero-divisor product meets the dimension bound of a 1-connected polyhedron";
    case Citation::PlanarObstacles:
        return "R^2, m >= 2: length-2n zero-divisor product meets the dimension bound";
    case Citation::PlanarSingleObstacle:
        return "R^2, m = 1: imported, F(R^2 - pt, n) is homotopy equivalent to F(R^2, n+1), TC = 2n";
    case Citation::PlanarNoObstacles:
        return "R^2, m = 0: imported value TC(F(R^2, n)) = 2n - 2";
    }
    return "unknown";
}

bool citation_is_imported(Citation c)
{
    return c == Citation::PlanarSingleObstacle || c == Citation::PlanarNoObstacles;
}

std::optional<ExactTc> tc_exact(const AlgebraSpec& spec)
{
    if (spec.n < 2)
        return std::nullopt;
    const int n = spec.n;
    if (spec.r == 2)
        return ExactTc{spec.m == 0 ? 2 * n - 1 : 2 * n + 1, Citation::SpatialObstacles};
    if (spec.r == 1) {
        if (spec.m == 0)
            return ExactTc{2 * n - 2, Citation::PlanarNoObstacles};
        if (spec.m == 1)
            return ExactTc{2 * n, Citation::PlanarSingleObstacle};
        return ExactTc{2 * n + 1, Citation::PlanarObstacles};
    }
    return std::nullopt;
}

ExactTc require_tc_exact(const AlgebraSpec& spec)
{
    if (auto e = tc_exact(spec))
        return *e;
    throw UnsupportedSpec("no exact TC value for " + spec.to_string() +
                          ": requires n >= 2 and r in {1, 2}; use the bounds report");
}

BoundsReport bounds_report(const AlgebraSpec& spec, std::uint64_t budget)
{
    ZclResult zcl = zcl_search(spec, std::nullopt, budget);
    BoundsReport report;
    report.spec = spec;
    report.lower = zcl.length + 1;
    report.upper = upper_bound(spec);
    report.exact = tc_exact(spec);
    report.witness = std::move(zcl.witness);
    report.search_exhaustive = zcl.exhaustive;
    report.nodes_visited = zcl.nodes_visited;
    if (report.lower > report.upper)
        throw std::logic_error("lower bound exceeds upper bound for " + spec.to_string());
    if (report.exact && (report.exact->value < report.lower || report.exact->value > report.upper))
        throw std::logic_error("exact TC outside the bounds interval for " + spec.to_string());
    return report;
}

nlohmann::json to_json(const Witness& w)
{
    auto j = nlohmann::json::array();
    for (const auto& f : w)
        j.push_back({{"i", f.i}, {"j", f.j}, {"multiplicity", f.multiplicity}});
    return j;
}

nlohmann::json to_json(const BoundsReport& report)
{
    nlohmann::json j;
    j["spec"] = {{"r", report.spec.r}, {"n", report.spec.n}, {"m", report.spec.m}};
    j["lower"] = report.lower;
    j["upper"] = report.upper;
    if (report.exact) {
        j["exact"] = report.exact->value;
        j["source_citation"] = citation_tag(report.exact->source);
        j["imported"] = citation_is_imported(report.exact->source);
    } else {
        j["source_citation"] = "bounds-only";
    }
    j["witness"] = to_json(report.witness);
    j["exhaustive"] = report.search_exhaustive;
    j["nodes_visited"] = report.nodes_visited;
    return j;
}

std::string table_header()
{
    std::ostringstream os;
    os << std::left << std::setw(4) << "r" << std::setw(4) << "n" << std::setw(4) << "m" << std::setw(7)
       << "lower" << std::setw(7) << "upper" << std::setw(7) << "exact" << std::setw(12) << "exhaustive"
       << "source";
    return os.str();
}

std::string table_row(const BoundsReport& report)
{
    std::ostringstream os;
    os << std::left << std::setw(4) << report.spec.r << std::setw(4) << report.spec.n << std::setw(4)
       << report.spec.m << std::setw(7) << report.lower << std::setw(7) << report.upper << std::setw(7)
       << (report.exact ? std::to_string(report.exact->value) : "-") << std::setw(12)
       << (report.search_exhaustive ? "yes" : "no")
       << (report.exact ? citation_tag(report.exact->source) : "bounds-only");
    return os.str();
}

}  // namespace cfgtc

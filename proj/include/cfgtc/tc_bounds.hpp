#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cfgtc/tensor_square.hpp"

namespace cfgtc {

/// ē_ij raised to `multiplicity` inside a witness product.
struct WitnessFactor {
    int i = 0;
    int j = 0;
    int multiplicity = 1;

    friend auto operator<=>(const WitnessFactor&, const WitnessFactor&) = default;
};

using Witness = std::vector<WitnessFactor>;

int witness_length(const Witness& w);

/// Product of the listed zero-divisors in the listed order. Requires i <= n and multiplicity >= 1.
TensorElement witness_product(const AlgebraSpec& spec, const Witness& factors);

/// Longest nonzero product of basic zero-divisors found by the search.
struct ZclResult {
    int length = 0;
    Witness witness;
    bool exhaustive = false;
    std::uint64_t nodes_visited = 0;
};

/// Depth-first search over multisets of ē_ij (i <= n), in lex order of the sorted factor
/// sequence, so the first witness found at a given length is the lex-least one.
/// Multiplicity cap is 1 for odd r and 2 for even r. `budget` bounds the number of
/// products evaluated; on exhaustion the best-so-far result is returned with
/// exhaustive = false.
ZclResult zcl_search(const AlgebraSpec& spec, std::optional<int> max_length = {},
                     std::uint64_t budget = 1'000'000);

/// Dimension upper bound on TC.
int upper_bound(const AlgebraSpec& spec);

enum class Citation {
    SpatialObstacles,       // r = 2: zero-divisor lower bound meets the dimension bound
    PlanarObstacles,        // r = 1, m >= 2: length-2n witness meets the dimension bound
    PlanarSingleObstacle,   // r = 1, m = 1: imported via F(R^2 - pt, n) ~ F(R^2, n+1)
    PlanarNoObstacles,      // r = 1, m = 0: imported value for F(R^2, n)
};

/// Stable tag used in reports.
std::string citation_tag(Citation c);
/// One-line human explanation of where the value comes from.
std::string citation_text(Citation c);
/// Whether the value is established by the computation in this engine (true) or taken
/// from an external result (false).
bool citation_is_imported(Citation c);

struct ExactTc {
    int value = 0;
    Citation source = Citation::SpatialObstacles;
};

/// Known exact TC for n >= 2 and r in {1, 2}; empty otherwise.
std::optional<ExactTc> tc_exact(const AlgebraSpec& spec);
/// Like tc_exact but throws UnsupportedSpec outside its range.
ExactTc require_tc_exact(const AlgebraSpec& spec);

struct BoundsReport {
    AlgebraSpec spec;
    int lower = 1;
    int upper = 1;
    std::optional<ExactTc> exact;
    Witness witness;
    bool search_exhaustive = false;
    std::uint64_t nodes_visited = 0;
};

/// Lower bound zcl+1 from the search, dimension upper bound, exact value when known.
/// Throws std::logic_error if lower <= exact <= upper fails.
BoundsReport bounds_report(const AlgebraSpec& spec, std::uint64_t budget = 1'000'000);

nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const BoundsReport& report);
/// Fixed-width table row; `table_header` gives the matching header.
std::string table_header();
std::string table_row(const BoundsReport& report);

}  // namespace cfgtc

#pragma once

#include "paving/flag_counting.hpp"
#include "paving/multipoly.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace paving {

/// Permutation words of a B0-stable cell A_a x S_s x T_t. For E7a4 `s` is the
/// word b of the P(V_B) cell.
struct CellIndex {
    std::string a, s, t;

    std::string label(CaseId id) const;
    friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

/// Coordinates on one cell. Vectors are columns of the printed charts,
/// completed by e_{sigma(n)} to a basis adapted to the flag.
struct CellChart {
    CellIndex index;
    VariableSet vars;
    std::vector<MultiPoly> line_a;
    std::vector<std::vector<MultiPoly>> flag_b;
    std::vector<std::vector<MultiPoly>> flag_c;

    int dim() const { return static_cast<int>(vars->size()); }
    /// The flag point at an F_q assignment of the chart variables.
    FlagPoint instantiate(const std::vector<std::uint32_t>& point, int q) const;
};

/// 24 cells for E7a4, 72 for E7a5, ordered by (a, s, t).
std::vector<CellChart> enumerate_cells(CaseId id);
const CellChart& find_cell(CaseId id, const CellIndex& index);

/// Number of chart points over F_q lying in X_U. Cell histograms are built
/// once per (case, q) and shared.
std::uint64_t count_cell_intersection(CaseId id, const SubspaceParams& p, const CellIndex& cell, int q);

/// Per-cell profile histogram at one prime.
const ProfileHistogram& cell_histogram(CaseId id, const CellIndex& cell, int q);

/// Equations cutting X_U out of the cell: the pairings Q_{L_A}(v_i, w_j) and
/// Q_{1,0}, Q_{0,1} pairings required by (k, h), then the minors expressing
/// u0 in L_B^l and (E7a4) v0 in L_C^m. Zero and repeated equations dropped.
std::vector<MultiPoly> cell_equations(CaseId id, const SubspaceParams& p, const CellChart& chart);

struct Elimination {
    enum class Outcome { Empty, Affine, Unresolved };
    Outcome outcome = Outcome::Unresolved;
    int dim = -1;
    std::vector<std::string> trace;
    /// Constants that were divided by or declared nonzero; the result holds
    /// over F_q whenever q divides none of them.
    std::vector<Rational> pivots;

    bool valid_mod(int q) const;
};

std::string to_string(Elimination::Outcome o);

/// Greedy elimination of variables occurring linearly with a constant
/// coefficient, backtracking over the choice within a node budget. The shear
/// x2' -> x2' - y2 is tried when nothing else applies.
Elimination symbolic_eliminate(CaseId id, const SubspaceParams& p, const CellChart& chart, int budget = 4000);

enum class CellClass { Empty, Affine, NotAffine };
std::string to_string(CellClass c);

struct CellReport {
    CellIndex index;
    int cell_dim = 0;
    CellClass cls = CellClass::Empty;
    int affine_dim = -1;
    std::map<int, std::uint64_t> counts;
    /// (q, count) showing the intersection is not an affine space.
    std::optional<std::pair<int, std::uint64_t>> witness;
    Elimination elimination;
};

/// Classifies every cell from its counts at `primes` and attaches the
/// symbolic result. Throws std::logic_error if the cell counts do not add up
/// to count_points.
std::vector<CellReport> check_affine_paving(CaseId id, const SubspaceParams& p, std::span<const int> primes);

/// Points of the blow-up of A^n along an A^m over F_q.
std::uint64_t blowup_count(int n, int m, std::uint64_t q);

struct BlowupRow {
    int q = 0;
    std::uint64_t x = 0, z = 0, l = 0;
    std::uint64_t cell_a12_t132 = 0;  ///< summed over S = 321, 312
    std::uint64_t cell_a21_t123 = 0;
    std::uint64_t cell_a21_t132 = 0;
    std::uint64_t cell_a21_s231_t123 = 0;
};

struct BlowupReport {
    SubspaceParams params;
    std::vector<BlowupRow> rows;
    bool cells_match = false;
    /// Set when some prime shows A_21 x S_231 x T_123 is not an affine space.
    std::optional<std::pair<int, std::uint64_t>> not_affine_witness;
};

/// U = 100|200|2 of E7a5. Z_U, the image under forgetting L_B^2, and the
/// locus L where L_B^1 = <v0> are counted directly. Throws std::logic_error
/// naming the prime if |X_U| != |Z_U| + q |L|.
BlowupReport verify_blowup_case(std::span<const int> primes);

}  // namespace paving

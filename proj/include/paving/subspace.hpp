#pragma once

#include "paving/case_model.hpp"
#include "paving/span.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace paving {

/// The integer tuple naming a B0-stable subspace:
/// E7a4 (k1,k2|h1,h2|l|m), E7a5 (k1,k2,k3|h1,h2,h3|l).
struct SubspaceParams {
    CaseId id = CaseId::E7a4;
    std::vector<int> k, h;
    int l = 0;
    int m = -1;  ///< -1 when the case has no V_C summand

    /// Compact label such as "10|21|2|2" or "100|200|2".
    std::string label() const;
    /// Inverse of label(); commas inside groups are accepted ("1,0|2,1|2|2").
    static SubspaceParams parse(CaseId id, const std::string& text);
    bool valid() const;

    friend bool operator==(const SubspaceParams& a, const SubspaceParams& b) {
        return a.id == b.id && a.k == b.k && a.h == b.h && a.l == b.l && a.m == b.m;
    }
    friend bool operator<(const SubspaceParams& a, const SubspaceParams& b);
};

std::ostream& operator<<(std::ostream& os, const SubspaceParams& p);

/// All tuples satisfying the monotonicity constraints, deduplicated by
/// realized subspace, in a fixed order.
std::vector<SubspaceParams> enumerate_params(CaseId id);

/// A realized B0-stable subspace of g2.
struct Subspace {
    SubspaceParams params;
    Span<Rational> space;
    std::vector<std::string> parabolic_type;  ///< simple roots alpha with f_alpha U in U
    int levi_positive = 0;                    ///< dim P_U / B0

    Index dim() const { return space.dim(); }
    bool contains_root(const std::string& label) const;
};

/// The rows of the linear condition system cutting out U.
Matrix<Rational> condition_system(const CaseModel& model, const SubspaceParams& p);

Subspace subspace_basis(const CaseModel& model, const SubspaceParams& p);

/// Simple roots whose negative generator preserves the span.
std::vector<std::string> parabolic_type(const CaseModel& model, const Span<Rational>& u);
/// Number of positive roots of the Levi subsystem spanned by `type`.
int levi_positive_roots(const CaseModel& model, const std::vector<std::string>& type);

bool is_borel_stable(const CaseModel& model, const Span<Rational>& u);

/// True iff Z -> Z.u is injective on g0, i.e. u lies in the open orbit.
/// Screens modulo a large prime first and falls back to exact rank.
bool in_open_orbit(const CaseModel& model, const Vector<Rational>& u);

struct OrbitSearch {
    int trials = 32;
    int height = 100;
    std::uint64_t seed = 1;
};

/// Random search for a point of U in the open orbit. The stream for each U is
/// derived from (seed, label), so the answer does not depend on call order.
bool meets_open_orbit(const CaseModel& model, const Subspace& u, const OrbitSearch& opts = {});

struct ExpectedDims {
    int dim_x;
    int dim_y;
};

/// dim X_U = dim U - dim B0 and dim Y_U = dim X_U - dim P_U/B0.
/// Throws std::domain_error when X_U is empty.
ExpectedDims expected_dims(const CaseModel& model, const Subspace& u, bool nonempty);

struct InventoryEntry {
    Subspace subspace;
    bool nonempty = false;
    std::optional<ExpectedDims> dims;
};

std::vector<InventoryEntry> build_inventory(CaseId id, const OrbitSearch& opts = {});

/// params, dim U, dimX, dimY, parabolic type, empty flag.
std::string inventory_csv(const std::vector<InventoryEntry>& inventory);

}  // namespace paving

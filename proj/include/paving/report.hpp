#pragma once

#include "paving/gamma_graph.hpp"
#include "paving/schubert_cells.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace paving {

/// Bad flags, unknown tuples, unwritable paths.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::vector<CaseId> cases{CaseId::E7a4, CaseId::E7a5};
    std::vector<int> primes;    ///< empty: default_primes per case
    std::vector<int> holdouts;  ///< empty: default_holdouts
    std::uint64_t seed = 1;
    int trials = 32;
    int jobs = 1;

    /// Throws ConfigError unless all primes are distinct primes and jobs, trials > 0.
    void validate() const;
    std::vector<int> primes_for(CaseId id) const;
    std::vector<int> holdouts_for() const;
};

/// A small CSV table. The first `key_columns` fields identify a row.
struct Table {
    std::string name;
    int key_columns = 1;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string key(const std::vector<std::string>& row) const;
    const std::vector<std::string>* find(const std::string& key) const;
};

/// Fields containing commas or quotes are quoted.
std::string to_csv(const Table& t);
/// Throws ConfigError on malformed input.
Table parse_csv(std::string_view text, std::string name, int key_columns);

struct Discrepancy {
    std::string where;
    std::string expected;
    std::string actual;
};

std::vector<Discrepancy> diff_tables(const Table& golden, const Table& computed);

/// Everything known about one vertex of Gamma.
struct SubspaceReport {
    SubspaceParams params;
    Index dim_u = 0;
    bool nonempty = false;
    std::optional<ExpectedDims> dims;
    std::optional<std::size_t> component;
    PoincarePolynomial poly;
    std::map<int, std::uint64_t> counts;
    /// "empty", "dim<=2", "cells", "blow-up" or "unresolved".
    std::string paving;
};

/// Count at q = 2 disagreeing with the polynomial.
struct ReductionNote {
    SubspaceParams params;
    std::uint64_t count = 0;
    Rational predicted;
};

struct CaseReport {
    CaseId id = CaseId::E7a4;
    std::vector<int> primes, holdouts;
    GammaGraph graph;
    std::vector<SubspaceReport> subspaces;  ///< parallel to graph.vertices
    std::map<std::string, std::vector<CellReport>> cells;  ///< by label, for delta >= 3
    std::optional<BlowupReport> blowup;
    std::vector<ReductionNote> bad_reduction;
    std::vector<Discrepancy> discrepancies;

    const SubspaceReport& at(const SubspaceParams& p) const;
};

inline const std::vector<int> cell_primes{2, 3, 5, 7, 11};

/// Inventory, graph, polynomials and paving checks for one case. Internal
/// inconsistencies land in `discrepancies`.
CaseReport analyze_case(CaseId id, const RunConfig& config);

/// The component listings: rows (k|h) (and l for E7a4), columns m or l,
/// cells "dim,delta", "E" for empty, "-" for a U outside the component.
/// E7a4 gives table1, table2; E7a5 gives table3 to table5 and table6,
/// the list of U with delta >= 3.
std::vector<Table> report_tables(const CaseReport& r);

std::string report_json(const CaseReport& r);
/// label -> polynomial text, for pinning.
std::string polynomials_json(const CaseReport& r);

/// Compares tables and polynomials with the files in golden/<case>/. A
/// missing polynomials.json is skipped; a missing table is a discrepancy.
std::vector<Discrepancy> compare_golden(const CaseReport& r, const std::filesystem::path& golden);
void bless_golden(const CaseReport& r, const std::filesystem::path& golden);

/// Up to `n` valid tuples closest to `text` in the l1 distance on the digits.
std::vector<std::string> nearest_params(CaseId id, const std::string& text, std::size_t n = 3);

/// Parses a tuple, throwing ConfigError with suggestions if it names no U.
SubspaceParams require_params(CaseId id, const std::string& text);

std::string cells_csv(CaseId id, const std::vector<CellReport>& cells);
std::string cells_json(CaseId id, const SubspaceParams& p, const std::vector<CellReport>& cells);
std::string blowup_json(const BlowupReport& r);

}  // namespace paving

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mubgeo/errors.hpp"
#include "mubgeo/gf.hpp"

namespace mubgeo {

/// n x n array with every symbol 0..n-1 exactly once per row and column.
struct LatinSquare {
    int n = 0;
    std::vector<int> cells;  // row-major

    LatinSquare() = default;
    LatinSquare(int order, std::vector<int> data) : n(order), cells(std::move(data)) {}

    int at(int r, int c) const { return cells[static_cast<std::size_t>(r) * n + c]; }
    int& at(int r, int c) { return cells[static_cast<std::size_t>(r) * n + c]; }

    std::vector<std::vector<int>> rows() const;
};

/// Pairwise orthogonal family of Latin squares of one order.
struct MolsSet {
    int n = 0;
    std::vector<LatinSquare> squares;
};

struct LatinCheck {
    bool ok = true;
    // first violation, scanning rows top to bottom then columns left to right
    std::string where;  // "row" or "column"
    int index = -1;     // which row/column
    int symbol = -1;    // the repeated or missing symbol
};

struct OrthoCheck {
    bool ok = true;
    // two distinct cells carrying the same ordered symbol pair
    int cell_a = -1;
    int cell_b = -1;
};

/// Latin property check; throws MalformedArray for ragged input or
/// out-of-range symbols.
LatinCheck is_latin(const std::vector<std::vector<int>>& square);
LatinCheck is_latin(const LatinSquare& square);

/// True iff (i,j) -> (A_ij, B_ij) is injective. Throws OrderMismatch.
OrthoCheck are_orthogonal(const LatinSquare& A, const LatinSquare& B);

/// Classical bound check: at most n-1 pairwise orthogonal squares.
void validate_mols(const MolsSet& mols);

/// The n-1 squares L_m(i,j) = m*i + j over GF(n), m != 0; pairwise orthogonal.
MolsSet mols_from_field(const FieldTable& F);

inline constexpr int kDefaultMateCap = 10;

struct MateSearchResult {
    std::optional<LatinSquare> mate;
    bool exhaustive = false;  // true when absence is a proof
};

/// Orthogonal-mate search by decomposing A into n disjoint transversals.
/// Deterministic: transversals are enumerated row by row with columns
/// ascending, and the cover always extends the lexicographically first
/// uncovered cell. Throws OrderTooLarge above the cap.
MateSearchResult find_orthogonal_mate(const LatinSquare& A, int order_cap = kDefaultMateCap);

/// Visits every Latin square of order n with first row and first column in
/// natural order, in lexicographic cell order. Return false from the visitor
/// to stop early. Throws OrderTooLarge for n > 6.
void enumerate_reduced_squares(int n, const std::function<bool(const LatinSquare&)>& visit);

/// Convenience: materialize the full enumeration.
std::vector<LatinSquare> all_reduced_squares(int n);

/// Known reduced-square counts for n = 1..6.
long long reduced_square_count(int n);

struct TarryResult {
    int order = 0;
    long long squares_examined = 0;
    long long mates_found = 0;
};

/// Mate search over every reduced square of the given order.
TarryResult tarry_sweep_serial(int order);
/// OpenMP variant; jobs <= 0 uses all available threads. Results are
/// aggregated by count only, so thread order does not matter.
TarryResult tarry_sweep_parallel(int order, int jobs = 0);

/// Relabel symbols so the first row reads 0,1,...,n-1; two squares are equal
/// up to per-square symbol relabeling iff their canonical forms are equal.
LatinSquare canonicalize_symbols(const LatinSquare& square);

LatinSquare cyclic_square(int n, int offset = 0);

/// Plain-text format: one row per line, space-separated symbols; squares of
/// a set separated by blank lines.
std::string mols_to_text(const MolsSet& mols);
MolsSet mols_from_text(const std::string& text);

}  // namespace mubgeo

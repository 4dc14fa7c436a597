#pragma once

#include <string>
#include <vector>

#include "mubgeo/errors.hpp"
#include "mubgeo/gf.hpp"
#include "mubgeo/latin.hpp"

namespace mubgeo {

/// Incidence structure of an affine plane of order n: n^2 points labeled
/// 0..n^2-1, n^2+n lines (each a sorted set of point labels), and n+1
/// pencils partitioning the line indices into parallel classes of size n.
struct AffinePlane {
    int n = 0;
    std::vector<std::vector<int>> lines;
    std::vector<std::vector<int>> pencils;

    int num_points() const { return n * n; }
    int num_lines() const { return static_cast<int>(lines.size()); }
};

struct AxiomReport {
    bool a1_pass = true;
    int a1_point_a = -1, a1_point_b = -1, a1_count = -1;  // witness pair and its line count

    bool a2_pass = true;
    int a2_line = -1, a2_point = -1, a2_count = -1;  // witness (line, outside point, parallels)

    bool a3_pass = true;
    std::string a3_what;

    bool counting_pass = true;
    std::string counting_what;

    bool all_pass() const { return a1_pass && a2_pass && a3_pass && counting_pass; }
    std::string summary() const;
};

/// Exhaustive check of axioms A1-A3 plus the order-n counting laws.
/// Throws MalformedIncidence for duplicate points within a line, empty
/// structures, or out-of-range labels.
AxiomReport verify_axioms(const AffinePlane& plane);

/// OpenMP variant of the same check; witnesses are reduced to the
/// lexicographically first violation so the report matches the serial one.
AxiomReport verify_axioms_parallel(const AffinePlane& plane, int jobs = 0);

/// Points are the n^2 array cells (i,j) -> i*n+j; pencil 0 = rows, pencil 1 =
/// columns, pencil 2+m = level sets of square m.
AffinePlane plane_from_mols(const MolsSet& mols);

/// Points are GF(n)^2 with (x,y) -> x*n+y; pencil 0 = verticals {x=c},
/// pencil 1+m = slope-m lines {y = m*x + c}. Lines within a pencil are
/// ordered by intercept.
AffinePlane plane_from_field(const FieldTable& F);

/// Coordinatize cells by (row-pencil line, column-pencil line); every other
/// pencil becomes one Latin square with its line index as symbol.
MolsSet plane_to_mols(const AffinePlane& plane, int row_pencil, int col_pencil);

/// Deterministic comparison key: points relabeled by (pencil-0 line,
/// pencil-1 line) coordinates, lines sorted within pencils, trailing pencils
/// sorted among themselves. Two planes that agree here are isomorphic.
std::string canonical_form(const AffinePlane& plane);

/// For each point, the position within the pencil of the unique line through
/// it. Throws InvalidPlane when the pencil does not cover a point.
std::vector<int> pencil_coordinates(const AffinePlane& plane, int pencil);

}  // namespace mubgeo

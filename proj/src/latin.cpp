#include "mubgeo/latin.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mubgeo {

std::vector<std::vector<int>> LatinSquare::rows() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r)
        out[static_cast<std::size_t>(r)] =
            std::vector<int>(cells.begin() + static_cast<std::ptrdiff_t>(r) * n,
                             cells.begin() + static_cast<std::ptrdiff_t>(r + 1) * n);
    return out;
}

LatinCheck is_latin(const std::vector<std::vector<int>>& square) {
    const int n = static_cast<int>(square.size());
    if (n == 0) throw MalformedArray("is_latin: empty array");
    for (const auto& row : square) {
        if (static_cast<int>(row.size()) != n)
            throw MalformedArray("is_latin: ragged array, expected " + std::to_string(n) +
                                 " entries per row");
        for (int s : row)
            if (s < 0 || s >= n)
                throw MalformedArray("is_latin: symbol " + std::to_string(s) +
                                     " out of range 0.." + std::to_string(n - 1));
    }

    std::vector<char> seen(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int c = 0; c < n; ++c) {
            const int s = square[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            if (seen[static_cast<std::size_t>(s)]) return {false, "row", r, s};
            seen[static_cast<std::size_t>(s)] = 1;
        }
    }
    for (int c = 0; c < n; ++c) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int r = 0; r < n; ++r) {
            const int s = square[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            if (seen[static_cast<std::size_t>(s)]) return {false, "column", c, s};
            seen[static_cast<std::size_t>(s)] = 1;
        }
    }
    return {};
}

LatinCheck is_latin(const LatinSquare& square) { return is_latin(square.rows()); }

OrthoCheck are_orthogonal(const LatinSquare& A, const LatinSquare& B) {
    if (A.n != B.n)
        throw OrderMismatch("are_orthogonal: orders " + std::to_string(A.n) + " vs " +
                            std::to_string(B.n));
    const int n = A.n;
    // flat occupancy keyed by A_ij * n + B_ij, storing the first cell seen
    std::vector<int> first(static_cast<std::size_t>(n) * n, -1);
    for (int cell = 0; cell < n * n; ++cell) {
        const int key = A.cells[static_cast<std::size_t>(cell)] * n +
                        B.cells[static_cast<std::size_t>(cell)];
        if (first[static_cast<std::size_t>(key)] >= 0)
            return {false, first[static_cast<std::size_t>(key)], cell};
        first[static_cast<std::size_t>(key)] = cell;
    }
    return {};
}

void validate_mols(const MolsSet& mols) {
    if (static_cast<int>(mols.squares.size()) > mols.n - 1)
        throw NotOrthogonal("MolsSet exceeds the classical bound of n-1 squares");
    for (const auto& sq : mols.squares) {
        if (sq.n != mols.n) throw OrderMismatch("MolsSet contains a square of wrong order");
        if (!is_latin(sq).ok) throw MalformedArray("MolsSet contains a non-Latin square");
    }
    for (std::size_t a = 0; a < mols.squares.size(); ++a)
        for (std::size_t b = a + 1; b < mols.squares.size(); ++b)
            if (!are_orthogonal(mols.squares[a], mols.squares[b]).ok)
                throw NotOrthogonal("squares " + std::to_string(a) + " and " +
                                    std::to_string(b) + " are not orthogonal");
}

MolsSet mols_from_field(const FieldTable& F) {
    const int n = F.order;
    MolsSet out;
    out.n = n;
    for (int m = 1; m < n; ++m) {
        LatinSquare sq(n, std::vector<int>(static_cast<std::size_t>(n) * n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) sq.at(i, j) = F.add(F.mul(m, i), j);
        if (!is_latin(sq).ok)
            throw Error("mols_from_field: produced a non-Latin square (internal bug)");
        out.squares.push_back(std::move(sq));
    }
    for (std::size_t a = 0; a < out.squares.size(); ++a)
        for (std::size_t b = a + 1; b < out.squares.size(); ++b)
            if (!are_orthogonal(out.squares[a], out.squares[b]).ok)
                throw Error("mols_from_field: squares not orthogonal (internal bug)");
    return out;
}

namespace {

// All transversals of A as column-per-row arrays, in lexicographic order.
std::vector<std::vector<int>> all_transversals(const LatinSquare& A) {
    const int n = A.n;
    std::vector<std::vector<int>> out;
    std::vector<int> cols(static_cast<std::size_t>(n));
    std::vector<char> col_used(static_cast<std::size_t>(n)), sym_used(static_cast<std::size_t>(n));

    std::function<void(int)> rec = [&](int r) {
        if (r == n) {
            out.push_back(cols);
            return;
        }
        for (int c = 0; c < n; ++c) {
            if (col_used[static_cast<std::size_t>(c)]) continue;
            const int s = A.at(r, c);
            if (sym_used[static_cast<std::size_t>(s)]) continue;
            col_used[static_cast<std::size_t>(c)] = 1;
            sym_used[static_cast<std::size_t>(s)] = 1;
            cols[static_cast<std::size_t>(r)] = c;
            rec(r + 1);
            col_used[static_cast<std::size_t>(c)] = 0;
            sym_used[static_cast<std::size_t>(s)] = 0;
        }
    };
    rec(0);
    return out;
}

}  // namespace

MateSearchResult find_orthogonal_mate(const LatinSquare& A, int order_cap) {
    const int n = A.n;
    if (n > order_cap)
        throw OrderTooLarge("find_orthogonal_mate: order " + std::to_string(n) +
                            " exceeds cap " + std::to_string(order_cap));
    const auto check = is_latin(A);
    if (!check.ok) throw MalformedArray("find_orthogonal_mate: input is not a Latin square");

    const auto transversals = all_transversals(A);

    // A decomposition picks one transversal through each cell of row 0;
    // n pairwise disjoint transversals necessarily tile the whole square.
    std::vector<std::vector<int>> by_first_col(static_cast<std::size_t>(n));
    for (int t = 0; t < static_cast<int>(transversals.size()); ++t)
        by_first_col[static_cast<std::size_t>(transversals[static_cast<std::size_t>(t)][0])]
            .push_back(t);

    std::vector<int> chosen;
    chosen.reserve(static_cast<std::size_t>(n));

    std::function<bool(int)> cover = [&](int c) -> bool {
        if (c == n) return true;
        for (int t : by_first_col[static_cast<std::size_t>(c)]) {
            const auto& cand = transversals[static_cast<std::size_t>(t)];
            bool disjoint = true;
            for (int prev : chosen) {
                const auto& other = transversals[static_cast<std::size_t>(prev)];
                for (int r = 1; r < n; ++r) {
                    if (cand[static_cast<std::size_t>(r)] == other[static_cast<std::size_t>(r)]) {
                        disjoint = false;
                        break;
                    }
                }
                if (!disjoint) break;
            }
            if (!disjoint) continue;
            chosen.push_back(t);
            if (cover(c + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };

    MateSearchResult result;
    result.exhaustive = true;
    if (static_cast<int>(transversals.size()) < n || !cover(0)) return result;

    // symbol-per-transversal assignment: the transversal through cell (0,c)
    // becomes symbol c, so the mate comes out with a natural first row
    LatinSquare mate(n, std::vector<int>(static_cast<std::size_t>(n) * n, -1));
    for (int c = 0; c < n; ++c) {
        const auto& tv = transversals[static_cast<std::size_t>(chosen[static_cast<std::size_t>(c)])];
        for (int r = 0; r < n; ++r) mate.at(r, tv[static_cast<std::size_t>(r)]) = c;
    }
    result.mate = std::move(mate);
    return result;
}

void enumerate_reduced_squares(int n, const std::function<bool(const LatinSquare&)>& visit) {
    if (n < 1 || n > 6)
        throw OrderTooLarge("enumerate_reduced_squares: order must be 1..6, got " +
                            std::to_string(n));

    LatinSquare sq(n, std::vector<int>(static_cast<std::size_t>(n) * n, -1));
    std::vector<unsigned> row_used(static_cast<std::size_t>(n), 0);
    std::vector<unsigned> col_used(static_cast<std::size_t>(n), 0);

    // fix first row and first column to natural order
    for (int j = 0; j < n; ++j) {
        sq.at(0, j) = j;
        row_used[0] |= 1u << j;
        col_used[static_cast<std::size_t>(j)] |= 1u << j;
    }
    for (int i = 1; i < n; ++i) {
        sq.at(i, 0) = i;
        row_used[static_cast<std::size_t>(i)] |= 1u << i;
        col_used[0] |= 1u << i;
    }

    bool stopped = false;
    std::function<void(int)> rec = [&](int cell) {
        if (stopped) return;
        if (cell == n * n) {
            if (!visit(sq)) stopped = true;
            return;
        }
        const int r = cell / n;
        const int c = cell % n;
        if (r == 0 || c == 0) {
            rec(cell + 1);
            return;
        }
        unsigned free = ~(row_used[static_cast<std::size_t>(r)] |
                          col_used[static_cast<std::size_t>(c)]) &
                        ((1u << n) - 1);
        while (free != 0 && !stopped) {
            const int s = std::countr_zero(free);
            free &= free - 1;
            sq.at(r, c) = s;
            row_used[static_cast<std::size_t>(r)] |= 1u << s;
            col_used[static_cast<std::size_t>(c)] |= 1u << s;
            rec(cell + 1);
            row_used[static_cast<std::size_t>(r)] &= ~(1u << s);
            col_used[static_cast<std::size_t>(c)] &= ~(1u << s);
        }
        sq.at(r, c) = -1;
    };
    rec(0);
}

std::vector<LatinSquare> all_reduced_squares(int n) {
    std::vector<LatinSquare> out;
    enumerate_reduced_squares(n, [&](const LatinSquare& sq) {
        out.push_back(sq);
        return true;
    });
    return out;
}

long long reduced_square_count(int n) {
    static constexpr long long counts[] = {0, 1, 1, 1, 4, 56, 9408};
    if (n < 1 || n > 6) throw OrderTooLarge("reduced_square_count: order must be 1..6");
    return counts[n];
}

TarryResult tarry_sweep_serial(int order) {
    TarryResult res;
    res.order = order;
    enumerate_reduced_squares(order, [&](const LatinSquare& sq) {
        ++res.squares_examined;
        if (find_orthogonal_mate(sq).mate.has_value()) ++res.mates_found;
        return true;
    });
    return res;
}

TarryResult tarry_sweep_parallel(int order, int jobs) {
    const auto squares = all_reduced_squares(order);
    TarryResult res;
    res.order = order;
    res.squares_examined = static_cast<long long>(squares.size());

    long long mates = 0;
#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : mates)
#else
    (void)jobs;
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(squares.size()); ++i) {
        if (find_orthogonal_mate(squares[static_cast<std::size_t>(i)]).mate.has_value())
            ++mates;
    }
    res.mates_found = mates;
    return res;
}

LatinSquare canonicalize_symbols(const LatinSquare& square) {
    const int n = square.n;
    std::vector<int> relabel(static_cast<std::size_t>(n), -1);
    for (int j = 0; j < n; ++j) relabel[static_cast<std::size_t>(square.at(0, j))] = j;
    LatinSquare out(n, std::vector<int>(static_cast<std::size_t>(n) * n));
    for (int i = 0; i < n * n; ++i)
        out.cells[static_cast<std::size_t>(i)] =
            relabel[static_cast<std::size_t>(square.cells[static_cast<std::size_t>(i)])];
    return out;
}

LatinSquare cyclic_square(int n, int offset) {
    LatinSquare sq(n, std::vector<int>(static_cast<std::size_t>(n) * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sq.at(i, j) = (i + j + offset) % n;
    return sq;
}

std::string mols_to_text(const MolsSet& mols) {
    std::ostringstream os;
    for (std::size_t s = 0; s < mols.squares.size(); ++s) {
        if (s > 0) os << "\n";
        const auto& sq = mols.squares[s];
        for (int r = 0; r < sq.n; ++r) {
            for (int c = 0; c < sq.n; ++c) {
                if (c > 0) os << ' ';
                os << sq.at(r, c);
            }
            os << '\n';
        }
    }
    return os.str();
}

MolsSet mols_from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<std::vector<std::vector<int>>> blocks(1);
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::vector<int> row;
        int v;
        while (ls >> v) row.push_back(v);
        if (row.empty()) {
            if (!blocks.back().empty()) blocks.emplace_back();
        } else {
            blocks.back().push_back(std::move(row));
        }
    }
    if (!blocks.empty() && blocks.back().empty()) blocks.pop_back();
    if (blocks.empty()) throw ParseFailure("mols_from_text: no squares found");

    MolsSet out;
    for (const auto& block : blocks) {
        const auto check = is_latin(block);  // also validates shape and range
        if (!check.ok)
            throw MalformedArray("mols_from_text: block is not a Latin square (" + check.where +
                                 " " + std::to_string(check.index) + " repeats symbol " +
                                 std::to_string(check.symbol) + ")");
        LatinSquare sq(static_cast<int>(block.size()), {});
        for (const auto& row : block) sq.cells.insert(sq.cells.end(), row.begin(), row.end());
        if (out.n == 0) out.n = sq.n;
        if (sq.n != out.n) throw OrderMismatch("mols_from_text: squares of different orders");
        out.squares.push_back(std::move(sq));
    }
    return out;
}

}  // namespace mubgeo

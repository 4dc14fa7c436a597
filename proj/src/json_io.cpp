#include "mubgeo/json_io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace mubgeo {

json matrix_to_json(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseFailure("matrix: expected a non-empty array");
    const auto rows = j.size();
    const auto cols = j[0].size();
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw ParseFailure("matrix: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) {
            const auto& e = j[r][c];
            if (!e.is_array() || e.size() != 2)
                throw ParseFailure("matrix: entries must be [re, im] pairs");
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                std::complex<double>(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

json field_to_json(const FieldTable& F) {
    json mul = json::array();
    for (int a = 0; a < F.order; ++a) {
        json row = json::array();
        for (int b = 0; b < F.order; ++b) row.push_back(F.mul(a, b));
        mul.push_back(std::move(row));
    }
    return {{"p", F.p}, {"k", F.k}, {"modulus", F.modulus}, {"mul", std::move(mul)}};
}

FieldTable field_from_json(const json& j) {
    const int p = j.at("p").get<int>();
    const int k = j.at("k").get<int>();
    auto modulus = j.at("modulus").get<std::vector<int>>();
    const auto& rows = j.at("mul");
    std::vector<std::uint16_t> mul;
    for (const auto& row : rows)
        for (const auto& v : row) mul.push_back(v.get<std::uint16_t>());
    return field_from_tables(p, k, std::move(modulus), std::move(mul));
}

json plane_to_json(const AffinePlane& plane) {
    return {{"n", plane.n}, {"lines", plane.lines}, {"pencils", plane.pencils}};
}

AffinePlane plane_from_json(const json& j) {
    AffinePlane plane;
    plane.n = j.at("n").get<int>();
    plane.lines = j.at("lines").get<std::vector<std::vector<int>>>();
    plane.pencils = j.at("pencils").get<std::vector<std::vector<int>>>();
    return plane;
}

json mubset_to_json(const MubSet& mubs) {
    json bases = json::array();
    for (const auto& B : mubs.bases) bases.push_back(matrix_to_json(B));
    return {{"n", mubs.n},
            {"bases", std::move(bases)},
            {"meta",
             {{"p", mubs.p}, {"k", mubs.k}, {"modulus", mubs.modulus}, {"seed", mubs.seed}}}};
}

MubSet mubset_from_json(const json& j) {
    MubSet mubs;
    mubs.n = j.at("n").get<int>();
    for (const auto& b : j.at("bases")) mubs.bases.push_back(matrix_from_json(b));
    if (j.contains("meta")) {
        const auto& meta = j["meta"];
        mubs.p = meta.value("p", 0);
        mubs.k = meta.value("k", 0);
        mubs.modulus = meta.value("modulus", std::vector<int>{});
        mubs.seed = meta.value("seed", std::uint64_t{0});
    }
    return mubs;
}

json dsimplex_to_json(const DSimplex& D) {
    json choices = json::array();
    json operators = json::array();
    for (const auto& pf : D.points) {
        choices.push_back(pf.choice);
        operators.push_back(matrix_to_json(pf.op.matrix()));
    }
    return {{"n", D.n},
            {"realization", D.realization == Realization::quantum ? "quantum" : "abstract"},
            {"plane", plane_to_json(D.plane)},
            {"choices", std::move(choices)},
            {"operators", std::move(operators)}};
}

DSimplex dsimplex_from_json(const json& j) {
    DSimplex D;
    D.n = j.at("n").get<int>();
    D.realization = j.at("realization").get<std::string>() == "quantum"
                        ? Realization::quantum
                        : Realization::abstract;
    D.plane = plane_from_json(j.at("plane"));
    if (!verify_axioms(D.plane).all_pass())
        throw ParseFailure("dsimplex_from_json: embedded plane fails the axioms");

    const int n = D.n;
    const auto& choices = j.at("choices");
    const auto& operators = j.at("operators");
    if (static_cast<int>(choices.size()) != n * n ||
        static_cast<int>(operators.size()) != n * n)
        throw ParseFailure("dsimplex_from_json: expected n^2 choices and operators");

    std::vector<std::vector<int>> pos;
    for (int pi = 0; pi <= n; ++pi) pos.push_back(pencil_coordinates(D.plane, pi));
    for (int alpha = 0; alpha < n * n; ++alpha) {
        PointFaceOperator pf;
        pf.choice = choices.at(static_cast<std::size_t>(alpha)).get<std::vector<int>>();
        for (int I = 0; I <= n; ++I)
            if (pf.choice.at(static_cast<std::size_t>(I)) !=
                pos[static_cast<std::size_t>(I)][static_cast<std::size_t>(alpha)])
                throw ParseFailure("dsimplex_from_json: choice map disagrees with the plane");
        pf.op = HermitianOp(matrix_from_json(operators.at(static_cast<std::size_t>(alpha))));
        if (pf.op.dim() != n) throw ParseFailure("dsimplex_from_json: operator of wrong size");
        D.points.push_back(std::move(pf));
        D.grid_coord.emplace_back(pos[0][static_cast<std::size_t>(alpha)],
                                  pos[1][static_cast<std::size_t>(alpha)]);
    }

    for (int a = 0; a < n * n; ++a)
        for (int b = a; b < n * n; ++b) {
            const double t =
                D.op(a).matrix().cwiseProduct(D.op(b).matrix().transpose()).sum().real();
            D.gram_max_dev = std::max(D.gram_max_dev, std::abs(t - (a == b ? n : 0.0)));
        }
    if (D.gram_max_dev > 1e-6)
        throw ParseFailure("dsimplex_from_json: operators fail the Gram identity by " +
                           std::to_string(D.gram_max_dev));
    return D;
}

json wigner_to_json(const WignerTable& table) {
    return {{"n", table.n},
            {"plane", plane_to_json(table.simplex->plane)},
            {"values", table.grid()}};
}

std::string line_probabilities_to_csv(const LineProbabilities& probs) {
    std::ostringstream os;
    os.precision(17);
    for (const auto& pencil : probs.per_pencil) {
        for (std::size_t i = 0; i < pencil.size(); ++i) {
            if (i > 0) os << ',';
            os << pencil[i];
        }
        os << '\n';
    }
    return os.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseFailure("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
}

json read_json_file(const std::string& path) {
    try {
        return json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw ParseFailure(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

FieldTable field_create_cached(int p, int k, int order_cap) {
    const char* dir = std::getenv("MUBGEO_CACHE_DIR");
    if (dir == nullptr || *dir == '\0') return field_create(p, k, order_cap);

    const std::filesystem::path path =
        std::filesystem::path(dir) /
        ("gf_" + std::to_string(p) + "_" + std::to_string(k) + ".json");
    if (std::filesystem::exists(path)) {
        try {
            return field_from_json(read_json_file(path.string()));
        } catch (const Error&) {
            // stale or corrupt cache entry; rebuild below
        }
    }
    FieldTable F = field_create(p, k, order_cap);
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    try {
        write_json_file(path.string(), field_to_json(F));
    } catch (const Error&) {
        // cache directory not writable; the table itself is still good
    }
    return F;
}

}  // namespace mubgeo

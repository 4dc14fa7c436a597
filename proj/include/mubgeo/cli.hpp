#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mubgeo/json_io.hpp"
#include "mubgeo/mub.hpp"
#include "mubgeo/polytope.hpp"

namespace mubgeo::cli {

/// Machine-readable outcome of one command. status is "pass" exactly when
/// every checked invariant landed within its tolerance.
struct RunReport {
    std::string command;
    std::string status = "pass";
    json metrics = json::object();
    std::vector<std::string> artifacts;

    bool passed() const { return status == "pass"; }
    json to_json() const;
};

struct GlobalOpts {
    double tolerance = 1e-10;
    std::uint64_t seed = kDefaultMubSeed;
    bool json_output = false;
};

RunReport cmd_mub(int n, const std::string& out, const GlobalOpts& opts);
RunReport cmd_plane_generate(int n, const std::string& out, const GlobalOpts& opts);
RunReport cmd_plane_from_mols(const std::string& mols_path, const std::string& out,
                              const GlobalOpts& opts);
RunReport cmd_plane_verify(const std::string& path, const GlobalOpts& opts);
RunReport cmd_mols(int n, const std::string& out, const GlobalOpts& opts);
RunReport cmd_mols_verify(const std::string& path, const GlobalOpts& opts);
RunReport cmd_tarry(int order, int jobs, const GlobalOpts& opts);
RunReport cmd_polytope(int n, bool abstract_realization, const std::string& out,
                       const GlobalOpts& opts);
RunReport cmd_wigner(const std::string& state_path, int n, const std::string& plane_path,
                     const std::string& out_prefix, const GlobalOpts& opts);
RunReport cmd_sic(int n, long long max_selections, const GlobalOpts& opts);

/// Full command line: parse, dispatch, print. Exit codes: 0 pass,
/// 1 invariant failure, 2 usage or input error.
int run(int argc, const char* const* argv);

}  // namespace mubgeo::cli

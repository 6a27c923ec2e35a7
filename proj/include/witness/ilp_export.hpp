#pragma once

#include <filesystem>
#include <string>

#include "witness/grid.hpp"
#include "witness/oracle.hpp"

namespace witness {

/// Input files for an external ILP learner, one set per puzzle.
///
/// bk.pl    square/3 facts for every constrained square, path/2 facts for
///          every labeled partial path, helper facts for path heads and
///          square corners, and definitions of the remaining vocabulary.
/// exs.pl   pos(f(P)) for incompletable paths, neg(f(P)) for completable.
/// bias.pl  head and body declarations plus max_vars(7).
struct IlpFiles {
    std::string background;
    std::string examples;
    std::string bias;
    std::size_t positives = 0;
    std::size_t negatives = 0;
};

IlpFiles build_ilp_files(const Puzzle& p, const OracleOptions& opts = {});

/// Writes bk.pl, exs.pl and bias.pl into `dir` (created if missing).
IlpFiles export_ilp(const Puzzle& p, const std::filesystem::path& dir, const OracleOptions& opts = {});

}  // namespace witness

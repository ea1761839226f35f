#pragma once

#include <optional>
#include <string>

#include "cosetlab/games.hpp"

namespace cosetlab::games::detail {

// Throws InterfaceViolation when a sanity strategy runs without the flag.
bool secrets_open(bool sanity, const std::string& strategy, const GameOptions& opts);

GameResult make_result(std::string game, Json params, std::string strategy, const GameOptions& opts,
                       const TrialSummary& summary, std::optional<double> exact);

gf2::BitVector random_vector(std::size_t n, Rng& rng);

[[noreturn]] void unknown_strategy(const std::string& game, const std::string& name);

}  // namespace cosetlab::games::detail

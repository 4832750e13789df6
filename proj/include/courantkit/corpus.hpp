#pragma once

#include "courantkit/report.hpp"
#include "courantkit/transport.hpp"

namespace ck {

/// Built-in worked examples.  Each entry assembles its data, runs the
/// associated exact checks and returns the report.
std::vector<std::string> corpus_names();

Report run_corpus(const std::string& name, std::uint64_t seed, int trials);

}  // namespace ck

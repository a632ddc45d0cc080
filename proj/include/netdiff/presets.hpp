#ifndef NETDIFF_PRESETS_HPP
#define NETDIFF_PRESETS_HPP

#include <string>
#include <vector>

#include "netdiff/io.hpp"

namespace netdiff {

/// Stand-in 25-node network used by the g25-* scenarios: node x1 is a hub
/// joined to every other node, x2..x25 form a ring, plus four long chords
/// (x2-x14, x5-x17, x8-x20, x11-x23). mu = 1 and w = 1 everywhere. This is
/// NOT the network of the source experiments (whose adjacency is
/// unpublished); topology-dependent quantities computed on it are reported
/// as this network's own.
Graph standin_g25();

/// Text of the stand-in graph in the JSON graph format.
std::string standin_g25_json();

/// Named scenarios for the `reproduce` command. "g25-decay": p = 2,
/// a = 2 off-hub / 0 at the hub, u0 = 0.001 off-hub / 0.03 at the hub.
/// "g25-blowup": p = 3, same potential, u0 = 1.5 off-hub / 0.5 at the hub.
ProblemFile preset_problem(const std::string& name);

std::vector<std::string> preset_names();

} // namespace netdiff

#endif

#pragma once

// The four-node example used throughout: three inputs over {w, x, y, z} and the
// ordering (w, y, x, z).

#include <string>
#include <vector>

#include "mcbnc/fusion.hpp"
#include "oracles.hpp"

namespace fixture {

inline mcbnc::NodeSet wxyz() { return oracle::nodes({"w", "x", "y", "z"}); }

inline mcbnc::Dag g1() { return oracle::dag(wxyz(), {"w->x", "x->y", "y->z"}); }
inline mcbnc::Dag g2() { return oracle::dag(wxyz(), {"w->x", "w->y", "x->z"}); }
inline mcbnc::Dag g3() { return oracle::dag(wxyz(), {"w->x", "y->x", "x->z"}); }

inline std::vector<mcbnc::Dag> triple() { return {g1(), g2(), g3()}; }

inline mcbnc::Ordering sigma() {
    std::vector<std::string> labels{"w", "y", "x", "z"};
    return mcbnc::Ordering::from_labels(wxyz(), labels);
}

inline mcbnc::FusionInput input() { return {triple(), sigma()}; }

inline mcbnc::NodeId id(const std::string& label) { return wxyz().id(label); }

}  // namespace fixture

#pragma once

#include "resil/graph.hpp"

namespace resil {

// Two-terminal effective conductance with edges as conductors (weight = 1 for
// unweighted graphs). Unit current is injected at s and drawn at t; the
// grounded Laplacian system is solved by Jacobi-preconditioned conjugate
// gradients to the given relative residual. Returns 0 when s and t are
// disconnected.
double effective_conductance(const Graph& g, NodeId s, NodeId t,
                             double tolerance = 1e-8);

}  // namespace resil

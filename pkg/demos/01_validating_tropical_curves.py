"""Validating tropical curves
==========================

A tropical curve in the plane is a graph of segments and rays with
integer directions and positive integer weights, balanced at every
vertex: the weighted sum of the outgoing primitive directions vanishes.
This script builds the standard five-edge example (two vertices, one
bounded edge, four rays, one of weight two), validates it, and then
shows how the validator pinpoints a broken weight.
"""

from troplin import (
    INF,
    abstract_curve,
    make_euclidean,
    parametrized_curve,
    validate_parametrized,
)
from troplin.embedded import balancing_residual

plane = make_euclidean(2)

graph = abstract_curve(
    ["p", "q"],
    [
        ("west", "p", None, INF),
        ("south", "p", None, INF),
        ("bridge", "p", "q", 1),
        ("down", "q", None, INF),
        ("steep", "q", None, INF),
    ],
)

edges = {
    "west": dict(direction=(-1, 0), weight=1, image_length=INF),
    "south": dict(direction=(0, -1), weight=1, image_length=INF),
    "bridge": dict(direction=(1, 1), weight=1, image_length=1),
    "down": dict(direction=(0, -1), weight=2, image_length=INF),
    "steep": dict(direction=(1, 3), weight=1, image_length=INF),
}

curve = parametrized_curve(plane, graph, {"p": (-1, 0), "q": (0, 1)}, edges)

print("validating the five-edge plane curve:")
report = validate_parametrized(curve)
for check in report.checks:
    print(f"  [{check.status}] {check.name}")
print("balancing residuals:",
      {v: balancing_residual(curve, v) for v in graph.vertices})

# Weight 2 on the steep ray unbalances the top vertex; watch it fail.
broken = dict(edges)
broken["steep"] = dict(direction=(1, 3), weight=2, image_length=INF)
bad = parametrized_curve(plane, graph, {"p": (-1, 0), "q": (0, 1)}, broken)
failure = validate_parametrized(bad)
print("\nafter doubling the steep ray's weight:")
for check in failure.failures():
    print(f"  [{check.status}] {check.name}: {check.detail}")

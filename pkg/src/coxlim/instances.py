"""Bundled example systems used by the tests, demos and documentation."""

import math

from . import coxeter

INF = coxeter.INFINITY


def rank2_lorentzian(weight=-1.15):
    """Infinite dihedral pair with a superaffine bond; signature (1,1).

    The default weight keeps depth-12 orbit points representable in
    double precision; pass e.g. -1.5 for the classic strongly
    hyperbolic variant used in several unit tests.
    """
    return coxeter.build_system([[1, INF], [INF, 1]], {(0, 1): weight})


def triangle_237():
    """The (2,3,7) hyperbolic triangle reflection group; cocompact."""
    return coxeter.build_system([[1, 2, 3], [2, 1, 7], [3, 7, 1]])


def rank3_convex(weight=-1.05):
    """A chain with one superaffine bond; convex cocompact.

    Bond orders (1,2) -> 3 and (1,3) -> 2 are finite; the (2,3) bond is
    infinite with the given weight < -1, so the {2,3} subsystem is
    Lorentzian, no subsystem is affine, and the action is convex
    cocompact with a bounded core chamber.
    """
    return coxeter.build_system(
        [[1, 3, 2], [3, 1, INF], [2, INF, 1]], {(1, 2): weight}
    )


def rank3_all_infinite(weight=-1.2):
    """All-infinite-bond triangle with equal weights < -1; convex cocompact."""
    w = {(0, 1): weight, (0, 2): weight, (1, 2): weight}
    return coxeter.build_system([[1, INF, INF], [INF, 1, INF], [INF, INF, 1]], w)


def rank3_cusped():
    """One affine bond (weight exactly -1) inside a (2,1) system; rank-2 cusp."""
    return coxeter.build_system([[1, INF, 3], [INF, 1, 2], [3, 2, 1]], {(0, 1): -1.0})


def rank4_with_cusps(t=-1.1):
    """Rank-4 system whose {1,2,3} subsystem is the affine (6,3,2) triangle.

    Gram matrix
        [[1, -sqrt(3)/2, -1/2, t],
         [-sqrt(3)/2, 1, 0, 0],
         [-1/2, 0, 1, 0],
         [t, 0, 0, 1]]
    with t < -1; signature (3,1) with a rank-3 cusp.
    """
    orders = [[1, 6, 3, INF], [6, 1, 2, 2], [3, 2, 1, 2], [INF, 2, 2, 1]]
    return coxeter.build_system(orders, {(0, 3): t})


def bundled():
    """Name -> system map for the instances exercised by the acceptance suite."""
    return {
        "rank2_lorentzian": rank2_lorentzian(),
        "triangle_237": triangle_237(),
        "rank3_convex": rank3_convex(),
        "rank3_cusped": rank3_cusped(),
        "rank4_with_cusps": rank4_with_cusps(),
    }


def input_dict(name):
    """CLI input-file payload (JSON-ready) for a bundled instance."""
    payloads = {
        "rank2_lorentzian": {
            "coxeter_matrix": [[1, 0], [0, 1]],
            "infinity_weights": {"1,2": -1.15},
        },
        "triangle_237": {
            "coxeter_matrix": [[1, 2, 3], [2, 1, 7], [3, 7, 1]],
        },
        "rank3_convex": {
            "coxeter_matrix": [[1, 3, 2], [3, 1, 0], [2, 0, 1]],
            "infinity_weights": {"2,3": -1.05},
        },
        "rank3_cusped": {
            "coxeter_matrix": [[1, 0, 3], [0, 1, 2], [3, 2, 1]],
            "infinity_weights": {"1,2": -1.0},
        },
        "rank4_with_cusps": {
            "coxeter_matrix": [[1, 6, 3, 0], [6, 1, 2, 2], [3, 2, 1, 2], [0, 2, 2, 1]],
            "infinity_weights": {"1,4": -1.1},
        },
    }
    return payloads[name]


def gram_rank4(t=-1.1):
    """Reference Gram entries of the rank-4 cusped example, written directly."""
    s = math.sqrt(3.0) / 2.0
    return [
        [1.0, -s, -0.5, t],
        [-s, 1.0, 0.0, 0.0],
        [-0.5, 0.0, 1.0, 0.0],
        [t, 0.0, 0.0, 1.0],
    ]

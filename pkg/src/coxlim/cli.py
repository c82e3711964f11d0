"""Command-line surface: the only module that performs I/O.

Input files are JSON documents with either a "coxeter_matrix" (integer
bond orders, 0 encoding an infinite bond) plus "infinity_weights" keyed
by 1-based "i,j" strings, or a direct "gram_matrix"; when both are
present they must agree. Exit codes: 0 success, 2 validation error,
3 numerical failure.
"""

import argparse
import json
import math
import sys as _sys

import numpy as np

from . import cannon, coxeter, domain, hilbert, instances, limits, roots
from .errors import CoxlimError, ValidationError


def load_system(path):
    """Read and validate a system description file."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"{path} is not valid JSON (line {exc.lineno}, column {exc.colno})"
        ) from exc
    if not isinstance(doc, dict):
        raise ValidationError(f"{path}: top-level value must be an object")
    has_cox = "coxeter_matrix" in doc
    has_gram = "gram_matrix" in doc
    if not has_cox and not has_gram:
        raise ValidationError(
            f"{path}: need 'coxeter_matrix' or 'gram_matrix'"
        )
    system = None
    if has_cox:
        weights = {}
        for key, value in (doc.get("infinity_weights") or {}).items():
            try:
                i, j = (int(part) for part in key.split(","))
            except ValueError as exc:
                raise ValidationError(
                    f"{path}: infinity_weights key {key!r} is not 'i,j'"
                ) from exc
            weights[(i - 1, j - 1)] = float(value)
        system = coxeter.build_system(doc["coxeter_matrix"], weights)
    if has_gram:
        gram_sys = coxeter.system_from_gram(np.asarray(doc["gram_matrix"], dtype=float))
        if system is not None:
            if not np.allclose(system.gram, gram_sys.gram, atol=1e-12):
                raise ValidationError(
                    f"{path}: coxeter_matrix and gram_matrix disagree"
                )
        else:
            system = gram_sys
    return system


def _fmt(x):
    return f"{x:.17g}"


def cmd_analyze(args):
    system = load_system(args.input)
    action = coxeter.classify_action(system)
    lines = []
    lines.append(f"rank: {system.rank}")
    lines.append(f"signature: {system.signature}")
    lines.append("irreducible: yes")
    lines.append(f"negative eigenvalue: {system.neg_eigenvalue:.12g}")
    lines.append(
        "base point: [" + ", ".join(f"{x:.12g}" for x in system.base_point) + "]"
    )
    kind_text = {
        coxeter.COCOMPACT: "cocompact",
        coxeter.WITH_CUSPS: "with cusps",
        coxeter.CONVEX_COCOMPACT: "convex cocompact",
    }[action.kind]
    lines.append(f"action: {kind_text}")
    lines.append(f"cusp ranks: {list(action.cusp_ranks)}")
    lines.append(
        "boundary-map hypothesis (rank >= 3 subsystems positive definite "
        "or lorentzian): " + ("holds" if action.ct_hypothesis else "fails")
    )
    lines.append("subsystems:")
    for subset in sorted(action.subsystem_table, key=lambda s: (len(s), s)):
        entry = action.subsystem_table[subset]
        pretty = "{" + ",".join(str(i + 1) for i in subset) + "}"
        lines.append(f"  {pretty}: {entry.kind} {entry.signature}")
    text = "\n".join(lines)
    print(text)
    if args.out:
        report = {
            "rank": system.rank,
            "gram_matrix": [[x for x in row] for row in system.gram.tolist()],
            "signature": list(system.signature),
            "negative_eigenvalue": system.neg_eigenvalue,
            "base_point": system.base_point.tolist(),
            "action": action.kind,
            "cusp_ranks": list(action.cusp_ranks),
            "ct_hypothesis": action.ct_hypothesis,
            "subsystems": {
                ",".join(str(i + 1) for i in s): {
                    "kind": e.kind,
                    "signature": list(e.signature),
                }
                for s, e in action.subsystem_table.items()
            },
        }
        with open(args.out, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def _point_records_roots(system, depth):
    cloud = roots.enumerate_roots(system, depth)
    best = {}
    for root in cloud.roots:
        key = roots.chart_key(system, root.vector)
        prev = best.get(key)
        if prev is None or root.depth < prev[1]:
            word = " ".join(str(i + 1) for i in root.word) or "e"
            chart = coxeter.normalize(system, root.vector)
            best[key] = (chart, root.depth, word)
    records = []
    for chart, first, word in best.values():
        records.append({
            "depth": first,
            "word": word,
            "coords": [float(c) for c in chart],
            "q": float(coxeter.quad_form(system, chart)),
        })
    records.sort(key=lambda r: (r["depth"], r["coords"]))
    return records


def _point_records_limitset(system, depth):
    ball = coxeter.enumerate_ball(system, depth)
    records = []
    for k in range(depth + 1):
        pts = limits.orbit_frontier(system, k, ball=ball)
        words = {tuple(np.round(coxeter.normalized_act(system, e.matrix,
                                                       system.base_point), 9)):
                 e.word for e in ball.levels[k]}
        for pt in pts:
            word = words.get(tuple(np.round(pt, 9)))
            records.append({
                "depth": k,
                "word": str(word) if word is not None else "e",
                "coords": [float(c) for c in pt],
                "q": float(coxeter.quad_form(system, pt)),
            })
    records.sort(key=lambda r: (r["depth"], r["coords"]))
    return records


def _emit_points(records, system, args):
    payload = {
        "gram_matrix": system.gram.tolist(),
        "depth": args.depth,
        "points": records,
    }
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        n = system.rank
        header = ["depth", "word"] + [f"coord_{i + 1}" for i in range(n)] + ["q"]
        rows = [",".join(header)]
        for rec in records:
            rows.append(",".join(
                [str(rec["depth"]), rec["word"].replace(" ", "-")]
                + [_fmt(c) for c in rec["coords"]]
                + [_fmt(rec["q"])]
            ))
        text = "\n".join(rows) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return 0


def cmd_roots(args):
    system = load_system(args.input)
    return _emit_points(_point_records_roots(system, args.depth), system, args)


def cmd_limitset(args):
    system = load_system(args.input)
    return _emit_points(_point_records_limitset(system, args.depth), system, args)


def cmd_dist(args):
    system = load_system(args.input)
    x = np.asarray([float(v) for v in args.x.split(",")])
    y = np.asarray([float(v) for v in args.y.split(",")])
    d_form = hilbert.distance(system, x, y)
    d_euclid = hilbert.distance_euclidean_ratio(system, x, y)
    print(f"distance (cross-ratio form): {_fmt(d_form)}")
    print(f"distance (euclidean ratios): {_fmt(d_euclid)}")
    return 0


def cmd_ct(args):
    system = load_system(args.input)
    bonds = cannon.affine_bonds(system)
    if not bonds:
        print(
            "case (i) not applicable: no Gram entry equals -1 exactly, "
            "so the rank-2 perturbation family is not defined"
        )
        return 0
    m_values = [int(v) for v in args.m_list.split(",")]
    letters = tuple([bonds[0][0], bonds[0][1]] * ((args.depth + 1) // 2))[:args.depth]
    table = cannon.perturbation_decay_table(system, letters, m_values)
    header = "k " + " ".join(f"m={m}" for m in m_values)
    print(header)
    for k in range(table.values.shape[0]):
        print(str(k) + " " + " ".join(_fmt(v) for v in table.values[k]))
    print("sup " + " ".join(_fmt(v) for v in table.sup_per_m))
    k_collision = args.target or 200
    rep = cannon.dihedral_collision_report(system, bonds[0], k_collision, m_values[0])
    print(
        f"collision at bond {tuple(b + 1 for b in bonds[0])}, k={k_collision}: "
        f"base gap {_fmt(rep.base_gap)}, perturbed (m={m_values[0]}) gap "
        f"{_fmt(rep.perturbed_gap)}"
    )
    return 0


# ---------------------------------------------------------------------------
# SVG rendering.

def _depth_color(k, depth):
    frac = 0.0 if depth == 0 else k / depth
    hue = 240.0 * (1.0 - frac)
    return f"hsl({hue:.0f},80%,45%)"


def _render_rank3(system, depth, ball):
    o = system.base_point
    # Barycentric weights of a chart point x are o_i * x_i (they sum to 1).
    corners = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]])

    def to_xy(points):
        weights = points * o[None, :]
        return weights @ corners

    boundary = _boundary_samples(system, 256)
    parts = []
    pts_xy = to_xy(boundary)
    path = " ".join(f"{x:.5f},{y:.5f}" for x, y in pts_xy)
    parts.append(
        f'<polygon points="{path}" fill="none" stroke="#444" stroke-width="0.004"/>'
    )
    tri = " ".join(f"{x:.5f},{y:.5f}" for x, y in corners)
    parts.append(
        f'<polygon points="{tri}" fill="none" stroke="#bbb" stroke-width="0.003"/>'
    )
    for k in range(depth + 1):
        pts = limits.orbit_frontier(system, k, ball=ball)
        for x, y in to_xy(pts):
            parts.append(
                f'<circle cx="{x:.5f}" cy="{y:.5f}" r="0.006" '
                f'fill="{_depth_color(k, depth)}"/>'
            )
    ox, oy = to_xy(o[None, :])[0]
    parts.append(
        f'<circle cx="{ox:.5f}" cy="{oy:.5f}" r="0.01" fill="none" '
        'stroke="#000" stroke-width="0.004"/>'
    )
    return parts, (-0.1, -0.1, 1.2, 1.1)


def _boundary_samples(system, count):
    """Points of the boundary conic, via the chord closed form through o.

    Directions in the Euclidean complement of o satisfy B(o, v) = 0, so
    q(o + t v) = -lam + t^2 q(v) vanishes at t = sqrt(lam / q(v)).
    """
    if system.rank != 3:
        raise ValidationError("boundary sampling implemented for rank 3")
    o = system.base_point
    basis = system.eigen.eigenvectors[:, 1:]
    thetas = np.linspace(0.0, 2.0 * math.pi, count, endpoint=False)
    pts = []
    for theta in thetas:
        direction = math.cos(theta) * basis[:, 0] + math.sin(theta) * basis[:, 1]
        qd = float(coxeter.quad_form(system, direction))
        t = math.sqrt(system.neg_eigenvalue / qd)
        pts.append(o + t * direction)
    return np.array(pts)


def _render_rank4(system, depth, ball, projection):
    basis = system.eigen.eigenvectors[:, 1:]
    i, j = projection

    def to_xy(points):
        rel = points - system.base_point[None, :]
        return np.stack([rel @ basis[:, i], rel @ basis[:, j]], axis=1)

    parts = []
    for k in range(depth + 1):
        pts = limits.orbit_frontier(system, k, ball=ball)
        for x, y in to_xy(pts):
            parts.append(
                f'<circle cx="{x:.5f}" cy="{y:.5f}" r="0.012" '
                f'fill="{_depth_color(k, depth)}"/>'
            )
    parts.append(
        '<circle cx="0" cy="0" r="0.02" fill="none" stroke="#000" '
        'stroke-width="0.008"/>'
    )
    return parts, (-2.2, -2.2, 4.4, 4.4)


def cmd_render(args):
    system = load_system(args.input)
    if system.rank not in (3, 4):
        raise ValidationError(
            f"rendering supports rank 3 or 4, got rank {system.rank}"
        )
    ball = coxeter.enumerate_ball(system, args.depth)
    if system.rank == 3:
        parts, box = _render_rank3(system, args.depth, ball)
    else:
        projection = tuple(int(v) for v in args.projection.split(","))
        if len(projection) != 2 or not all(0 <= p <= 2 for p in projection):
            raise ValidationError("projection must be two indices in 0..2")
        parts, box = _render_rank4(system, args.depth, ball, projection)
    svg = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{box[0]} {box[1]} '
        f'{box[2]} {box[3]}" width="640" height="640">',
        '<g transform="scale(1,-1) translate(0,%.4f)">' % (-(2 * box[1] + box[3])),
    ]
    svg.extend(parts)
    svg.append("</g>")
    svg.append("</svg>")
    with open(args.out, "w") as fh:
        fh.write("\n".join(svg) + "\n")
    print(f"wrote {args.out}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="coxlim",
        description="Lorentzian Coxeter groups on the ellipsoid chart",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="signature, base point, classification")
    p.add_argument("input")
    p.add_argument("--out", help="also write a JSON report")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("roots", help="normalized roots up to a depth")
    p.add_argument("input")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("limitset", help="orbit frontier points up to a depth")
    p.add_argument("input")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_limitset)

    p = sub.add_parser("dist", help="Hilbert distance between two chart points")
    p.add_argument("input")
    p.add_argument("--x", required=True, help="comma-separated coordinates")
    p.add_argument("--y", required=True, help="comma-separated coordinates")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("ct", help="perturbation decay table and collision demo")
    p.add_argument("input")
    p.add_argument("--m-list", default="10,100,1000")
    p.add_argument("--depth", type=int, default=40)
    p.add_argument("--target", type=int, help="collision step count (default 200)")
    p.set_defaults(func=cmd_ct)

    p = sub.add_parser("render", help="SVG scatter of the orbit by depth")
    p.add_argument("input")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--out", required=True)
    p.add_argument("--projection", default="0,1",
                   help="rank 4 only: indices of the projection plane")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 2
    except CoxlimError as exc:
        print(f"numerical failure: {exc}", file=_sys.stderr)
        return 3


if __name__ == "__main__":
    _sys.exit(main())

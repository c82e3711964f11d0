#!/usr/bin/env python3
"""Write input files for the command-line tool and render orbit pictures.

Produces demos/out/<name>.json for every bundled instance, an analysis
report, and SVG scatters of the orbit colored by word length (the
boundary conic appears as the accumulation curve).
"""

import json
import pathlib

from coxlim import cli, instances

out = pathlib.Path(__file__).parent / "out"
out.mkdir(exist_ok=True)

for name in ("rank2_lorentzian", "triangle_237", "rank3_convex",
              "rank3_cusped", "rank4_with_cusps"):
    path = out / f"{name}.json"
    path.write_text(json.dumps(instances.input_dict(name), indent=2) + "\n")
    print(f"wrote {path}")

print("\n--- analyze rank4_with_cusps ---")
cli.main(["analyze", str(out / "rank4_with_cusps.json"),
          "--out", str(out / "rank4_report.json")])

print("\n--- render ---")
cli.main(["render", str(out / "rank3_convex.json"), "--depth", "9",
          "--out", str(out / "rank3_convex.svg")])
cli.main(["render", str(out / "triangle_237.json"), "--depth", "10",
          "--out", str(out / "triangle_237.svg")])
cli.main(["render", str(out / "rank4_with_cusps.json"), "--depth", "7",
          "--out", str(out / "rank4_with_cusps.svg")])

print("\n--- roots table (rank 2, depth 6, csv) ---")
cli.main(["roots", str(out / "rank2_lorentzian.json"), "--depth", "6",
          "--format", "csv"])

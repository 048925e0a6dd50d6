"""Regenerates data/fixtures. Deterministic: rerunning produces identical files."""

import json
import math
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parent.parent / "data" / "fixtures"


def write_points(path, xs, ys, pos, neg):
    with open(path, "w") as f:
        f.write("x,y,pos,neg\n")
        for x, y, p, q in zip(xs, ys, pos, neg):
            f.write(f"{x:.6f},{y:.6f},{int(p)},{int(q)}\n")


def jittered_grid(rng, side):
    g = (np.arange(side) + 0.5) / side
    xs, ys = np.meshgrid(g, g)
    xs = xs.ravel() + rng.uniform(-0.3, 0.3, side * side) / side
    ys = ys.ravel() + rng.uniform(-0.3, 0.3, side * side) / side
    return xs, ys


def competitive_stripes(rng):
    # Vertical bands alternate between a 62/38 lean each way; the positive
    # party holds a slight statewide edge.
    xs, ys = jittered_grid(rng, 40)
    band = np.floor(xs * 10).astype(int)
    lean = np.where(band % 2 == 0, 0.62, 0.38) + 0.01
    total = rng.integers(80, 121, xs.size)
    pos = rng.binomial(total, lean)
    write_points(OUT / "competitive_stripes.csv", xs, ys, pos, total - pos)


def near_even_clusters(rng):
    xs, ys = jittered_grid(rng, 24)
    centers = np.array([[0.25, 0.3], [0.7, 0.7], [0.3, 0.8]])
    d = np.min(np.hypot(xs[:, None] - centers[:, 0], ys[:, None] - centers[:, 1]), axis=1)
    lean = np.where(d < 0.18, 0.7, 0.45)
    total = rng.integers(50, 151, xs.size)
    pos = rng.binomial(total, lean)
    write_points(OUT / "near_even_clusters.csv", xs, ys, pos, total - pos)


def polygons():
    (OUT / "unit_square.json").write_text(json.dumps({"ring": [[0, 0], [1, 0], [1, 1], [0, 1]]}) + "\n")
    hexagon = [[round(math.cos(math.pi * i / 3), 12), round(math.sin(math.pi * i / 3), 12)] for i in range(6)]
    (OUT / "hexagon.json").write_text(json.dumps(hexagon) + "\n")
    l_shape = [[0, 0], [2, 0], [2, 1], [1, 1], [1, 2], [0, 2]]
    (OUT / "l_shape.json").write_text(json.dumps(l_shape) + "\n")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(20240611)
    competitive_stripes(rng)
    near_even_clusters(rng)
    polygons()


if __name__ == "__main__":
    main()

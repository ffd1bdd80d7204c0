#!/usr/bin/env python3
"""Builds the bundled base set: five 17-item strip packing files, each an
exact tiling of a 200x200 sheet.

Every file packs with zero waste at height 200 on a width-200 strip, so the
optimal cost of the derived two-strip proportional instance is the sheet area
40000 and the position LP bound meets it. Item widths stay on a 20-unit grid,
which keeps the position sets of the derived models small.

Usage: make_base_set.py [--out DIR]
"""

import argparse
import random
import sys

GRID = 20
SHEET_W = 200
SHEET_H = 200
PIECES = 17

# Seeds picked once per file so the tilings differ in texture and the derived
# two-strip models span easy to moderate solve times; the split recursion
# below is deterministic given the seed.
SEEDS = {"N1a": 101, "N1b": 123, "N1c": 505, "N1d": 999, "N1e": 2718}


def capacity(w, h):
    """Most leaves a w x h rect can host with widths on the grid."""
    return (w // GRID) * h


def split(rng, rect, k):
    """Tiles rect with exactly k leaf rectangles, widths on the grid."""
    x, y, w, h = rect
    if k == 1:
        return [rect]
    mw = w // GRID
    for _ in range(200):
        options = []
        if mw >= 2:
            options.append("v")
        if h >= 2:
            options.append("h")
        if k >= 5 and mw >= 3 and h >= 3:
            options.extend(["p", "p"])
        if not options:
            raise RuntimeError("unsplittable cell given leaf demand")
        kind = rng.choice(options)
        if kind == "v":
            cut = GRID * rng.randint(1, mw - 1)
            k1 = rng.randint(1, k - 1)
            a = (x, y, cut, h)
            b = (x + cut, y, w - cut, h)
            if k1 <= capacity(*a[2:]) and k - k1 <= capacity(*b[2:]):
                return split(rng, a, k1) + split(rng, b, k - k1)
        elif kind == "h":
            cut = rng.randint(1, h - 1)
            k1 = rng.randint(1, k - 1)
            a = (x, y, w, cut)
            b = (x, y + cut, w, h - cut)
            if k1 <= capacity(*a[2:]) and k - k1 <= capacity(*b[2:]):
                return split(rng, a, k1) + split(rng, b, k - k1)
        else:
            # four interlocking arms around a center cell; no single straight
            # cut separates the result, which keeps the tilings non-trivial
            s = GRID * rng.randint(1, (mw - 1) // 2)
            t = rng.randint(1, (h - 1) // 2)
            parts = [
                (x, y, w - s, t),
                (x + w - s, y, s, h - t),
                (x + s, y + h - t, w - s, t),
                (x, y + t, s, h - t),
                (x + s, y + t, w - 2 * s, h - 2 * t),
            ]
            ks = [1] * 5
            for _ in range(k - 5):
                ks[rng.randrange(5)] += 1
            if all(kk <= capacity(p[2], p[3]) for kk, p in zip(ks, parts)):
                out = []
                for kk, p in zip(ks, parts):
                    out.extend(split(rng, p, kk))
                return out
    raise RuntimeError("no feasible split found")


def check_tiling(leaves):
    if len(leaves) != PIECES:
        raise AssertionError("leaf count %d" % len(leaves))
    cover = [[0] * SHEET_H for _ in range(SHEET_W // GRID)]
    area = 0
    for x, y, w, h in leaves:
        if w % GRID or w < GRID or h < 1 or x % GRID:
            raise AssertionError("off-grid leaf %r" % ((x, y, w, h),))
        area += w * h
        for cx in range(x // GRID, (x + w) // GRID):
            for cy in range(y, y + h):
                cover[cx][cy] += 1
    if area != SHEET_W * SHEET_H:
        raise AssertionError("area %d" % area)
    if any(c != 1 for col in cover for c in col):
        raise AssertionError("tiling has gaps or overlaps")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="data", help="output directory")
    args = ap.parse_args()

    import os

    os.makedirs(args.out, exist_ok=True)
    for name in sorted(SEEDS):
        rng = random.Random(SEEDS[name])
        leaves = split(rng, (0, 0, SHEET_W, SHEET_H), PIECES)
        check_tiling(leaves)
        rng.shuffle(leaves)
        path = os.path.join(args.out, name + ".txt")
        with open(path, "w") as f:
            f.write("%d\n%d\n" % (PIECES, SHEET_W))
            for _, _, w, h in leaves:
                f.write("%d %d\n" % (w, h))
        print("wrote", path)
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Regenerate the embedded Golay-code and M24 data files in MOG labeling.

Construction: the extended binary quadratic-residue code of length 24 on
the projective line over F_23 (points 0..22 and infinity), spanned by the
translates of the non-residue indicator with an added parity bit.  M24 is
generated there by x -> x+1, x -> 2x, x -> -1/x and Conway's element
x -> x^3/9 (x a residue), 9x^3 (x a non-residue).

The code is then relabeled into a 4 x 6 MOG array, point index
``4 * column + row``:

* the brick (columns 0-1) is the octad through infinity, 0, 1, 2, 3;
* the remaining 16 points carry the affine 4-space structure cut out by
  the 30 octads disjoint from the brick, and square cell ``(r, c)`` with
  coordinate vector ``(r1, r0, c1, c0)`` becomes point ``8 + 4 * c + r``;
* brick columns are the two tetrads completing the sextet of the square
  columns.

Run from the repository root::

    python3 scripts/build_mog_data.py
"""

from __future__ import annotations

import itertools
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "diamondlab" / "data"

INF = 23
RESIDUES = sorted({(x * x) % 23 for x in range(1, 23)})
NONRESIDUES = [x for x in range(1, 23) if x not in RESIDUES]
INVERSE = {x: pow(x, 21, 23) for x in range(1, 23)}


def _mask(points):
    w = 0
    for p in points:
        w |= 1 << p
    return w


def _support(w):
    return [p for p in range(24) if w >> p & 1]


def _reduce(rows):
    """Row-reduce a list of bitmask rows; pivots on the lowest set bit."""
    basis = []
    for r in rows:
        for b in basis:
            if r >> (b & -b).bit_length() - 1 & 1:
                r ^= b
        if r:
            for i, b in enumerate(basis):
                if b >> (r & -r).bit_length() - 1 & 1:
                    basis[i] = b ^ r
            basis.append(r)
    return sorted(basis, key=lambda b: (b & -b))


def qr_code_rows():
    rows = []
    for i in range(23):
        w = _mask((q + i) % 23 for q in NONRESIDUES)
        if bin(w).count("1") % 2:
            w |= 1 << INF
        rows.append(w)
    return _reduce(rows)


def _codewords(rows):
    words = [0]
    for r in rows:
        words += [w ^ r for w in words]
    return words


def m24_qr_generators():
    def alpha(x):
        return INF if x == INF else (x + 1) % 23

    def beta(x):
        return INF if x == INF else (2 * x) % 23

    def gamma(x):
        if x == INF:
            return 0
        if x == 0:
            return INF
        return (-INVERSE[x]) % 23

    def delta(x):
        if x in (0, INF):
            return x
        cube = pow(x, 3, 23)
        if x in RESIDUES:
            return cube * INVERSE[9] % 23
        return 9 * cube % 23

    return [tuple(f(x) for x in range(24)) for f in (alpha, beta, gamma, delta)]


def mog_relabeling(octads):
    """Return ``label`` with ``label[qr_point] = mog_point``."""
    brick = next(o for o in sorted(octads) if o & _mask([INF, 0, 1, 2, 3]) == _mask([INF, 0, 1, 2, 3]))
    square = [p for p in range(24) if not brick >> p & 1]
    hyperplanes = [o for o in octads if not o & brick]
    assert len(hyperplanes) == 30

    def fourth(a, b, c):
        flat = (1 << 24) - 1
        for h in hyperplanes:
            if all(h >> p & 1 for p in (a, b, c)):
                flat &= h
        rest = _support(flat & ~_mask([a, b, c]))
        assert len(rest) == 1
        return rest[0]

    for origin, *axes in itertools.permutations(square, 5):
        place = {0: origin}
        try:
            for v in range(1, 16):
                low = v & -v
                if v == low:
                    place[v] = axes[low.bit_length() - 1]
                else:
                    place[v] = fourth(place[v ^ low], place[low], origin)
        except AssertionError:
            continue
        if len(set(place.values())) != 16:
            continue
        cell_of = {p: v for v, p in place.items()}
        ok = True
        for h in hyperplanes:
            cells = [cell_of[p] for p in _support(h)]
            # an 8-set is an affine hyperplane iff it is closed under 3-sums
            if any((a ^ b ^ c) not in cells for a, b, c in itertools.combinations(cells, 3)):
                ok = False
                break
        if ok:
            break
    else:
        raise RuntimeError("no affine frame found")

    label = {}
    for v, p in place.items():
        r, c = divmod(v, 4)
        label[p] = 8 + 4 * c + r
    column0 = [place[v] for v in range(16) if v % 4 == 0]
    extra = min(_support(brick))
    octad = next(o for o in octads if o & _mask(column0 + [extra]) == _mask(column0 + [extra]))
    tetrad = sorted(_support(octad & brick))
    other = sorted(p for p in _support(brick) if p not in tetrad)
    for i, p in enumerate(tetrad + other):
        label[p] = i
    return label


def main():
    rows = qr_code_rows()
    words = _codewords(rows)
    octads = [w for w in words if bin(w).count("1") == 8]
    label = mog_relabeling(octads)

    def relabel_word(w):
        return _mask(label[p] for p in _support(w))

    mog_rows = _reduce([relabel_word(r) for r in rows])
    gens = []
    for g in m24_qr_generators():
        image = [0] * 24
        for p in range(24):
            image[label[p]] = label[g[p]]
        gens.append(image)

    header = [
        "# Binary Golay code, generator matrix in MOG labeling.",
        "# Construction: extended quadratic-residue code of length 24 over F_23",
        "# (non-residue translates plus parity), relabeled by scripts/build_mog_data.py.",
        "# Point index = 4 * column + row of the 4 x 6 MOG array; character i of each",
        "# line is coordinate i.  Brick = points 0-7, square cell (r, c) = point 8 + 4c + r.",
    ]
    lines = ["".join(str(r >> p & 1) for p in range(24)) for r in mog_rows]
    (DATA / "golay_mog.txt").write_text("\n".join(header + lines) + "\n")

    header = [
        "# Generators of M24 in MOG labeling (image lists: token i is the image of point i).",
        "# Construction: x -> x+1, x -> 2x, x -> -1/x and x -> x^3/9 (residues), 9x^3",
        "# (non-residues) on the projective line over F_23, conjugated into MOG labeling",
        "# by scripts/build_mog_data.py.",
    ]
    lines = [" ".join(map(str, g)) for g in gens]
    (DATA / "m24_generators.txt").write_text("\n".join(header + lines) + "\n")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 hyperball-tfa contributors
"""Write tests/fixtures/reference_values.txt with mpmath at 60 digits."""

import sys
from pathlib import Path

import mpmath as mp

mp.mp.dps = 60
VERSION = 1


def fmt(x):
    return mp.nstr(x, 30, min_fixed=-1, max_fixed=-1)


def row(kind, args, value):
    value = mp.mpc(value)
    a = " ".join(fmt(v) for v in args)
    return f"{kind} | {a} | {fmt(value.real)} {fmt(value.imag)}"


def main(out):
    lines = [
        f"# hyperball-tfa reference values, version {VERSION}",
        "# generated by tools/gen_reference_values.py (mpmath, 60 working digits)",
        "# kind | real arguments | re im  (values to 30 significant digits)",
        "# gamma: z_re z_im",
        "# hyp2f1: a_re a_im b_re b_im c_re c_im x",
        "# spherical: n lambda r",
        "# c_function: n lambda",
    ]
    gamma_pts = [
        (1, 0), (0.5, 0), (2, 3), (0.25, -7.5), (-3.5, 0.5), (-0.3, 2.2), (10, 10),
        (0.5, 20), (0.5, 250), (0, 1), (0, 60), (35, -30), (1.5, -45), (-12.25, 3), (3, 0), (0.001, 0.002),
    ]
    for re, im in gamma_pts:
        lines.append(row("gamma", (re, im), mp.gamma(mp.mpc(re, im))))
    hyp_pts = [
        ((1, 0), (1, 0), (2, 0), 0.5),
        ((0.5, 1), (0.5, 1), (1, 0), 0.3),
        ((0.5, 10), (0.5, 10), (1, 0), 0.2),
        ((1, -2.5), (1, -2.5), (2, 0), 0.45),
        ((0.25, 0.5), (1.5, -0.5), (3.5, 1), 0.9),
        ((-3, 0), (2, 1), (1.5, 0), 0.7),
        ((0.5, 4), (0.5, 4), (1, 8), 0.6),
    ]
    for a, b, c, x in hyp_pts:
        val = mp.hyp2f1(mp.mpc(*a), mp.mpc(*b), mp.mpc(*c), x)
        lines.append(row("hyp2f1", (*a, *b, *c, x), val))
    for n in (1, 2):
        for lam in (0, 0.5, 2, 7.5, 20, 40):
            for r in (0.1, 0.5, 0.9, 0.99):
                al = mp.mpc(n, lam) / 2
                x = mp.mpf(r) ** 2
                val = (1 - x) ** al * mp.hyp2f1(al, al, n, x)
                lines.append(row("spherical", (n, lam, r), val))
    for n in (1, 2, 3):
        for lam in (0.1, 1, 2, 10, 100, 500):
            il = mp.mpc(0, lam)
            val = mp.power(2, n - il) * mp.gamma(n) * mp.gamma(il) / mp.gamma((n + il) / 2) ** 2
            lines.append(row("c_function", (n, lam), val))
    Path(out).write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else str(Path(__file__).resolve().parent.parent / "tests/fixtures/reference_values.txt"))

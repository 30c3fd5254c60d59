#!/usr/bin/env python3
"""Regenerates the committed test fixtures.

Everything here is closed-form (no RNG), so reruns are byte-identical.
The fixture country is a synthetic 1x1 degree region around (13N..14N,
2E..3E) with a lake (nodata blob), an empty corner, two population
centres, and a wet-season climate gradient.
"""

import math
import os

ROOT = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")

NODATA = -9999


def write_grid(path, ncols, nrows, xll, yll, cellsize, cell, fmt):
    """cell(x, y) -> value or None, with x/y in [0,1] (y measured from north)."""
    lines = [
        f"ncols {ncols}",
        f"nrows {nrows}",
        f"xllcorner {xll}",
        f"yllcorner {yll}",
        f"cellsize {cellsize}",
        f"NODATA_value {NODATA}",
    ]
    for r in range(nrows):
        y = (r + 0.5) / nrows
        row = []
        for c in range(ncols):
            x = (c + 0.5) / ncols
            v = cell(x, y)
            row.append(str(NODATA) if v is None else fmt % v)
        lines.append(" ".join(row))
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")
    print(path)


def in_lake(x, y):
    return (x - 0.15) ** 2 + (y - 0.2) ** 2 < 0.004


def empty_corner(x, y):
    return x > 0.92 and y > 0.85


def base_density(x, y):
    v = 60.0 * math.exp(-((x - 0.35) ** 2 + (y - 0.55) ** 2) / 0.015)
    v += 35.0 * math.exp(-((x - 0.8) ** 2 + (y - 0.3) ** 2) / 0.008)
    v += 8.0 * max(0.0, math.sin(7.0 * x) * math.cos(5.0 * y))
    return v + 1.5


def density_cell(x, y):
    if in_lake(x, y):
        return None
    if empty_corner(x, y):
        return 0.0
    return base_density(x, y)


BRACKETS = [
    ("0-4", 0.18),
    ("5-9", 0.16),
    ("10-14", 0.14),
    ("15-19", 0.11),
    ("20-29", 0.155),
    ("30-39", 0.105),
    ("40-49", 0.07),
    ("50-64", 0.05),
    ("65-plus", 0.03),
]


def group_cell(x, y, share, b_idx, gender):
    if in_lake(x, y):
        return None
    if empty_corner(x, y):
        return 0.0
    # The 0.01-degree cells cover 4x the area of the 0.005-degree density
    # cells, hence the factor.
    v = 4.0 * base_density(x, y) * share
    if gender == "f":
        frac = 0.5 + 0.05 * math.sin(3.0 * x + y + b_idx)
    else:
        frac = 0.5 + 0.05 * math.cos(2.0 * x - y + b_idx)
    return v * frac


def gen_pop_fixture():
    d = os.path.join(ROOT, "pop-fixture")
    write_grid(os.path.join(d, "density.asc"), 200, 200, 2, 13, 0.005, density_cell, "%.3f")
    for gender in ("f", "m"):
        for b_idx, (label, share) in enumerate(BRACKETS):
            write_grid(
                os.path.join(d, f"{gender}_{label}.asc"),
                100, 100, 2, 13, 0.01,
                lambda x, y, s=share, i=b_idx, g=gender: group_cell(x, y, s, i, g),
                "%.3f",
            )
    brackets = ", ".join(f"{label}:{label.replace('plus', '99')}" for label, _ in BRACKETS)
    with open(os.path.join(d, "manifest.conf"), "w") as f:
        f.write(
            "# Synthetic 1x1 degree demographic fixture (no live endpoint).\n"
            "id = pop-fixture\n"
            "dest = {gender}_{bracket}.asc\n"
            "genders = f m\n"
            f"brackets = {brackets}\n"
            "country = FIX\n"
            "year = 2020\n"
        )
    print(os.path.join(d, "manifest.conf"))


# Monthly climate fields over a 3x3 degree window at 0.5 degrees (6x6
# cells) containing the population fixture; m = months since June 2020.
def climate_value(var, m, x, y):
    if var == "tair":
        return 33.5 - 3.2 * y - 1.1 * m + 1.8 * x
    if var == "qair":
        return 0.0095 + 0.0042 * y + 0.0011 * m + 0.0008 * math.sin(5.0 * x)
    if var == "netsw":
        return 16.5 + 2.5 * x - 1.2 * y - 0.6 * m
    if var == "netlw":
        return 4.8 - 1.1 * y - 0.35 * m + 0.3 * x
    if var == "wind":
        return max(0.1, 2.6 - 0.7 * y + 0.25 * m + 0.4 * math.sin(4.0 * x))
    if var == "aet":
        return 1.2 + 2.2 * y + 0.5 * m + 0.3 * math.cos(3.0 * x)
    raise ValueError(var)


CLIMATE_FMT = {"tair": "%.2f", "qair": "%.5f", "netsw": "%.2f", "netlw": "%.2f",
               "wind": "%.2f", "aet": "%.2f"}

# grid row/col of deliberate holes (row 0 = north)
AET_HOLE = (1, 4)
ELEV_HOLE = (0, 0)


def gen_climate_fixture():
    d = os.path.join(ROOT, "climate-fixture")
    months = ["2020-06", "2020-07", "2020-08"]
    for m, month in enumerate(months):
        for var, fmt in CLIMATE_FMT.items():
            def cell(x, y, var=var, m=m):
                if var == "aet" and (round(y * 6 - 0.5), round(x * 6 - 0.5)) == AET_HOLE:
                    return None
                return climate_value(var, m, x, y)
            write_grid(os.path.join(d, f"{var}_{month}.asc"), 6, 6, 2, 13, 0.5, cell, fmt)

    def elev(x, y):
        if (round(y * 6 - 0.5), round(x * 6 - 0.5)) == ELEV_HOLE:
            return None
        return 320.0 + 240.0 * x - 130.0 * y + 40.0 * math.sin(2.0 * x + y)

    write_grid(os.path.join(d, "elevation.asc"), 6, 6, 2, 13, 0.5, elev, "%.1f")
    with open(os.path.join(d, "manifest.conf"), "w") as f:
        f.write(
            "# Synthetic wet-season climate fixture (no live endpoint).\n"
            "id = climate-fixture\n"
            "dest = {variable}_{month}.asc\n"
            "variables = tair qair netsw netlw wind aet\n"
            "months = 2020-06 2020-07 2020-08\n"
            "elevation = elevation.asc\n"
            "country = FIX\n"
        )
    print(os.path.join(d, "manifest.conf"))


if __name__ == "__main__":
    gen_pop_fixture()
    gen_climate_fixture()

#!/usr/bin/env python3
"""Build fixtures/sgp4/ from the public SGP4 verification set.

Reads SGP4-VER.TLE and tcppver.out as shipped with the `sgp4` Python
package, trims lines to 69 columns, repairs the deliberately broken
checksums and drops states the reference flags as errors.
"""
import argparse
import pathlib

import sgp4
from sgp4.api import Satrec, WGS72


def checksum(line):
    total = 0
    for ch in line[:68]:
        if ch.isdigit():
            total += int(ch)
        elif ch == "-":
            total += 1
    return total % 10


def fix(line):
    line = line.rstrip("\n")[:69].ljust(68)
    return line[:68] + str(checksum(line))


def read_tles(path):
    tles = {}
    pending = None
    for raw in path.read_text().splitlines():
        if raw.startswith("1 "):
            pending = fix(raw)
        elif raw.startswith("2 ") and pending is not None:
            line2 = fix(raw)
            tles[int(line2[2:7])] = (pending, line2)
            pending = None
    return tles


def read_states(path):
    states = {}
    current = None
    for raw in path.read_text().splitlines():
        parts = raw.split()
        if len(parts) == 2 and parts[1] == "xx":
            current = int(parts[0])
            states[current] = []
        elif current is not None and len(parts) >= 7:
            states[current].append([float(p) for p in parts[:7]])
    return states


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="fixtures/sgp4")
    args = parser.parse_args()

    src = pathlib.Path(sgp4.__file__).parent
    tles = read_tles(src / "SGP4-VER.TLE")
    states = read_states(src / "tcppver.out")
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    tle_lines = []
    rows = ["norad_id,tsince_min,x_km,y_km,z_km,vx_kms,vy_kms,vz_kms"]
    for norad in sorted(states):
        line1, line2 = tles[norad]
        sat = Satrec.twoline2rv(line1, line2, WGS72)
        kept = 0
        for tsince, *rv in states[norad]:
            err, _, _ = sat.sgp4_tsince(tsince)
            if err != 0:
                continue
            rows.append(",".join([str(norad), f"{tsince:.8f}"] + [f"{v:.9f}" for v in rv]))
            kept += 1
        if kept:
            tle_lines += [line1, line2]

    (out / "verification.tle").write_text("\n".join(tle_lines) + "\n")
    (out / "verification.csv").write_text("\n".join(rows) + "\n")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Regenerate the offline fixture bundle under fixtures/.

Everything is synthesized from a fixed seed; rerunning produces identical
files. Requires numpy and the `sgp4` package (used only to check GEO
geometry against the station network).
"""
import argparse
import json
import math
import pathlib

import numpy as np

SEED = 20240301
REF_EPOCH = (2024, 61.0)  # 2024-03-01T00:00Z as (year, day-of-year)
MU = 398600.4418
RE = 6378.137


# ---------------------------------------------------------------- TLE text

def checksum(line):
    return sum(int(c) if c.isdigit() else (1 if c == "-" else 0) for c in line[:68]) % 10


def exp_field(value):
    if value == 0.0:
        return " 00000-0"
    sign = "-" if value < 0 else " "
    mag = abs(value)
    exponent = math.floor(math.log10(mag)) + 1
    mantissa = round(mag / 10 ** (exponent - 5))
    if mantissa >= 100000:
        mantissa //= 10
        exponent += 1
    return f"{sign}{mantissa:05d}{'-' if exponent < 0 else '+'}{abs(exponent)}"


def ndot_field(value):
    return f"{'-' if value < 0 else ' '}.{round(abs(value) * 1e8):08d}"


def tle_lines(norad, intl, year, day, ndot, bstar, incl, raan, ecc, argp, ma, mm, elset=999, revs=1000):
    l1 = (f"1 {norad:05d}U {intl:<8s} {year % 100:02d}{day:012.8f} {ndot_field(ndot)} "
          f"{exp_field(0.0)} {exp_field(bstar)} 0 {elset:4d}")
    l1 += str(checksum(l1))
    l2 = (f"2 {norad:05d} {incl:8.4f} {raan % 360:8.4f} {round(ecc * 1e7):07d} {argp % 360:8.4f} "
          f"{ma % 360:8.4f} {mm:11.8f}{revs % 100000:5d}")
    l2 += str(checksum(l2))
    assert len(l1) == 69 and len(l2) == 69, (l1, l2)
    return l1, l2


def mean_motion_for_altitude(alt_km, ecc=0.0, perigee=True):
    a = (RE + alt_km) / (1.0 - ecc) if perigee else RE + alt_km
    n = math.sqrt(MU / a ** 3)  # rad/s
    return n * 86400.0 / (2.0 * math.pi)


def gmst_deg(jd):
    t = (jd - 2451545.0) / 36525.0
    sec = -6.2e-6 * t ** 3 + 0.093104 * t ** 2 + (876600.0 * 3600 + 8640184.812866) * t + 67310.54841
    return (sec / 240.0) % 360.0


def jd_of(year, day):
    jan1 = 367 * year - (7 * (year + 9 // 12)) // 4 + 275 // 9 + 1721013.5
    # Jan 1 of `year`, valid 1901-2099.
    jan1 = 367 * year - int(7 * (year + int(10 / 12)) / 4) + int(275 / 9) + 1 + 1721013.5
    return jan1 + day - 1.0


# ---------------------------------------------------------------- stations

def stations():
    rows = []
    for i in range(25):
        lat = -70.0 + i * 140.0 / 24.0
        lon = ((i * 137.50776405) % 360.0) - 180.0
        alt = (i * 97) % 1800
        rows.append((f"GS{i + 1:02d}", round(lat, 4), round(lon, 4), float(alt), 10.0))
    return rows


def write_stations(path, rows):
    text = "station_id,latitude_deg,longitude_deg,altitude_m,min_elevation_deg\n"
    for sid, lat, lon, alt, mask in rows:
        text += f"{sid},{lat:.4f},{lon:.4f},{alt:.1f},{mask:.1f}\n"
    path.write_text(text)


def geodetic_to_ecef(lat, lon, alt_m):
    f = 1.0 / 298.257223563
    e2 = f * (2 - f)
    la, lo = math.radians(lat), math.radians(lon)
    n = RE / math.sqrt(1 - e2 * math.sin(la) ** 2)
    h = alt_m / 1000.0
    return np.array([(n + h) * math.cos(la) * math.cos(lo), (n + h) * math.cos(la) * math.sin(lo),
                     (n * (1 - e2) + h) * math.sin(la)]), np.array(
        [math.cos(la) * math.cos(lo), math.cos(la) * math.sin(lo), math.sin(la)])


# ---------------------------------------------------------------- catalog

OWNERS = ["AURORA", "BOREAL", "CASCADE", "DELTAWING", "EQUINOX", "FJORD", "GALENA", "HALCYON"]
OPERATORS = ["Aurora Orbital", "Boreal Telecom", "Cascade Imaging", "Delta Relay", "Equinox Nav",
             "Fjord Weather", "Galena Science", "Halcyon Broadband", "Ion Logistics", "Juniper Defense"]
MAKERS = ["Kestrel Aerospace", "Lumen Satellites", "Mistral Systems", "Nadir Works", "Orrery Dynamics"]


class Builder:
    def __init__(self, rng):
        self.rng = rng
        self.objects = []
        self.next_id = 40001

    def add(self, group, name, incl, raan, ecc, argp, ma, mm, bstar, rcs_m2, owner, operator, maker):
        norad = self.next_id
        self.next_id += 1
        day = REF_EPOCH[1] - self.rng.uniform(0.0, 2.0)
        launch = 2000 + (norad * 7) % 24
        intl = f"{launch % 100:02d}{(norad % 300) + 1:03d}{'ABCDEFGH'[norad % 8]}"
        self.objects.append(dict(norad=norad, group=group, name=name, intl=intl, year=REF_EPOCH[0], day=day,
                                 incl=incl, raan=raan, ecc=ecc, argp=argp, ma=ma, mm=mm, bstar=bstar,
                                 ndot=bstar * 1e-3 if mm > 11 else 0.0, rcs_m2=rcs_m2, owner=owner,
                                 operator=operator, maker=maker))

    def lines(self, o):
        return tle_lines(o["norad"], o["intl"], o["year"], o["day"], o["ndot"], o["bstar"], o["incl"], o["raan"],
                         o["ecc"], o["argp"], o["ma"], o["mm"])


def build_catalog(rng):
    b = Builder(rng)
    u = rng.uniform

    def pick(seq):
        return seq[int(rng.integers(len(seq)))]

    # Broadband shells.
    for shell, (alt, incl, count, op) in enumerate([(550, 53.0, 180, 7), (570, 70.0, 60, 7), (1200, 87.9, 80, 2)]):
        for i in range(count):
            plane = i % 20
            b.add("leo-shell", f"SHELL{shell + 1}-{i + 1:03d}", incl + u(-0.05, 0.05), plane * 18.0 + u(-0.5, 0.5),
                  u(0.0001, 0.0003), u(0, 360), u(0, 360), mean_motion_for_altitude(alt + u(-3, 3)),
                  u(1e-5, 6e-5), u(1.0, 4.0), OWNERS[7 if op == 7 else 1], OPERATORS[op], MAKERS[shell % 5])
    # Sun-synchronous imagers and weather.
    for i in range(120):
        alt = u(480, 820)
        incl = 97.0 + (alt - 480) / 340 * 1.6 + u(-0.1, 0.1)
        b.add("sso", f"IMAGER-{i + 1:03d}", incl, u(0, 360), u(0.0005, 0.002), u(0, 360), u(0, 360),
              mean_motion_for_altitude(alt), u(1e-5, 1e-4), 10 ** u(-1.0, 1.0), pick(OWNERS[:6]),
              pick([OPERATORS[2], OPERATORS[5], OPERATORS[6]]), pick(MAKERS))
    # Crewed-station inclination and assorted LEO.
    for i in range(142):
        incl = pick([51.6, 28.5, 45.0, 65.0, 82.5, 74.0])
        b.add("leo-misc", f"LEOSAT-{i + 1:03d}", incl + u(-0.3, 0.3), u(0, 360), u(0.0005, 0.02), u(0, 360),
              u(0, 360), mean_motion_for_altitude(u(420, 1400)), u(1e-5, 2e-4), 10 ** u(-1.5, 1.0),
              pick(OWNERS), pick(OPERATORS), pick(MAKERS))
    # Debris clouds.
    for cloud, (incl, raan, alt) in enumerate([(98.6, 120.0, 850), (74.0, 300.0, 780), (86.4, 40.0, 780)]):
        for i in range(40):
            b.add("debris", f"DEB-{cloud + 1}-{i + 1:02d}", incl + u(-0.8, 0.8), raan + u(-6, 6), u(0.001, 0.03),
                  u(0, 360), u(0, 360), mean_motion_for_altitude(alt + u(-80, 120)), u(5e-5, 5e-4),
                  10 ** u(-2.0, -0.3), pick(OWNERS[:4]), None, None)
    # Navigation constellations (MEO).
    for const, (alt, incl, planes, count) in enumerate([(20180, 55.0, 6, 30), (19100, 64.8, 3, 24),
                                                         (23222, 56.0, 3, 24), (21528, 55.0, 6, 24)]):
        for i in range(count):
            b.add("meo-nav", f"NAV{const + 1}-{i + 1:02d}", incl + u(-0.3, 0.3), (i % planes) * 360.0 / planes +
                  u(-1, 1), u(0.0005, 0.012), u(0, 360), u(0, 360), mean_motion_for_altitude(alt), 0.0,
                  u(5.0, 20.0), OWNERS[4], OPERATORS[4], pick(MAKERS[:3]))
    # Geostationary belt.
    for i in range(140):
        b.add("geo", f"GEOCOM-{i + 1:03d}", u(0.01, 4.5), u(0, 360), u(0.0001, 0.0008), u(0, 360), u(0, 360),
              1.00273791 + u(-0.0002, 0.0002), 0.0, 10 ** u(0.8, 1.6), pick(OWNERS), pick(OPERATORS[:4] +
              OPERATORS[7:]), pick(MAKERS))
    # Molniya and transfer orbits (HEO).
    for i in range(30):
        b.add("heo", f"MOLNIYA-{i + 1:02d}", 63.4 + u(-0.5, 0.5), (i % 4) * 90.0 + u(-3, 3), u(0.68, 0.74), 270.0,
              u(0, 360), 2.0057 + u(-0.002, 0.002), 0.0, u(3.0, 10.0), OWNERS[1], OPERATORS[1], MAKERS[3])
    for i in range(25):
        b.add("gto", f"GTO-RB-{i + 1:02d}", u(5.0, 28.5), u(0, 360), u(0.70, 0.73), u(0, 360), u(0, 360),
              u(2.2, 2.3), u(1e-4, 5e-4), u(8.0, 20.0), pick(OWNERS), None, pick(MAKERS))
    # One isolated retrograde object: the only member of its cluster.
    b.add("outlier", "RETRO-PROBE", 150.0, 200.0, 0.001, 0.0, 0.0, mean_motion_for_altitude(9000.0), 0.0, 2.0,
          OWNERS[6], OPERATORS[6], MAKERS[4])
    return b


def write_catalog(out, b, rng):
    out.mkdir(parents=True, exist_ok=True)
    lines = []
    for o in b.objects:
        l1, l2 = b.lines(o)
        lines += [o["name"], l1, l2]

    # Deliberately malformed groups: bad checksum, truncated group, eccentricity overflow.
    bad1, bad2 = tle_lines(49001, "24900A", 2024, 60.5, 0.0, 1e-4, 51.6, 10.0, 0.001, 0.0, 0.0, 15.5)
    bad1 = bad1[:68] + str((int(bad1[68]) + 1) % 10)
    lines += ["BROKEN-CHECKSUM", bad1, bad2]
    t1, _ = tle_lines(49002, "24900B", 2024, 60.5, 0.0, 1e-4, 51.6, 10.0, 0.001, 0.0, 0.0, 15.5)
    lines += ["TRUNCATED", t1]
    e1, e2 = tle_lines(49003, "24900C", 2024, 60.5, 0.0, 1e-4, 51.6, 10.0, 0.001, 0.0, 0.0, 15.5)
    e2 = e2[:26] + "ABCDEFG" + e2[33:68]
    e2 += str(checksum(e2))
    lines += ["BAD-ECCENTRICITY", e1, e2]
    (out / "catalog.tle").write_text("\n".join(lines) + "\n")

    rcs = ["norad_id,source,rcs,unit"]
    meta = ["norad_id,source,name,owner,operator,manufacturer"]
    mags = ["norad_id,std_mag"]
    missing_rcs = 0
    for o in b.objects:
        dbsm = 10 * math.log10(o["rcs_m2"])
        r = rng.uniform()
        if r < 0.04:
            # Listed by both sources without a value.
            rcs.append(f"{o['norad']},alpha_catalog,,m2")
            rcs.append(f"{o['norad']},bravo_survey,,dbsm")
            missing_rcs += 1
        elif r < 0.40:
            rcs.append(f"{o['norad']},alpha_catalog,{o['rcs_m2']:.4f},m2")
            rcs.append(f"{o['norad']},bravo_survey,{dbsm + rng.normal(0.0, 1.5):.3f},dbsm")
        elif r < 0.85:
            rcs.append(f"{o['norad']},alpha_catalog,{o['rcs_m2']:.4f},m2")
        else:
            rcs.append(f"{o['norad']},bravo_survey,{dbsm:.3f},dbsm")
        op = o["operator"] or ""
        mk = o["maker"] or ""
        meta.append(f"{o['norad']},registry_a,{o['name']},{o['owner']},{op},{mk}")
        if rng.uniform() < 0.2:
            # Second registry disagrees on the operator; registry_a wins.
            meta.append(f"{o['norad']},registry_b,,{o['owner']},Other Operator,")
        if rng.uniform() < 0.3:
            mags.append(f"{o['norad']},{6.0 - 0.45 * dbsm + rng.normal(0.0, 0.6):.3f}")
    (out / "rcs.csv").write_text("\n".join(rcs) + "\n")
    (out / "metadata.csv").write_text("\n".join(meta) + "\n")
    (out / "magnitudes.csv").write_text("\n".join(mags) + "\n")

    groups = {}
    for o in b.objects:
        groups[o["group"]] = groups.get(o["group"], 0) + 1
    manifest = {
        "valid_records": len(b.objects),
        "rejected_groups": 3,
        "rcs_missing": missing_rcs,
        "groups": groups,
        "reference_epoch": "2024-03-01T00:00:00Z",
        "seed": SEED,
    }
    (out / "MANIFEST.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------- GEO and LEO fixtures

def geo_visibility_margin(l1, l2, station_rows, days=7.0):
    """Smallest |elevation - mask| over the window across all stations."""
    from sgp4.api import Satrec, WGS72
    sat = Satrec.twoline2rv(l1, l2, WGS72)
    frames = [(geodetic_to_ecef(lat, lon, alt), mask) for _, lat, lon, alt, mask in station_rows]
    worst = 1e9
    jd0 = sat.jdsatepoch + sat.jdsatepochF
    for k in range(0, int(days * 24 * 4) + 1):
        jd = jd0 + k / 96.0
        err, r, _ = sat.sgp4(math.floor(jd), jd - math.floor(jd))
        assert err == 0
        g = math.radians(gmst_deg(jd))
        x = math.cos(g) * r[0] + math.sin(g) * r[1]
        y = -math.sin(g) * r[0] + math.cos(g) * r[1]
        p = np.array([x, y, r[2]])
        for (origin, up), mask in frames:
            d = p - origin
            el = math.degrees(math.asin(np.dot(d, up) / np.linalg.norm(d)))
            worst = min(worst, abs(el - mask))
    return worst


def write_geo(out, station_rows):
    out.mkdir(parents=True, exist_ok=True)
    year, day = REF_EPOCH
    jd = jd_of(year, day)
    lines = []
    picked = []
    lon = -175.0
    norad = 48001
    while len(picked) < 5:
        ma = (gmst_deg(jd) + lon) % 360.0
        l1, l2 = tle_lines(norad, "24001A", year, day, 0.0, 0.0, 0.02, 0.0, 0.0001, 0.0, ma, 1.00273791)
        margin = geo_visibility_margin(l1, l2, station_rows)
        if margin > 1.5:
            picked.append(lon)
            lines += [f"GEO-FLOOR-{len(picked)}", l1, l2]
            norad += 1
            lon += 61.0
        else:
            lon += 3.0
    (out / "geo.tle").write_text("\n".join(lines) + "\n")
    return picked


def write_leo(out, station_rows, rng):
    out.mkdir(parents=True, exist_ok=True)
    year, day = REF_EPOCH
    lines = []
    for i, incl in enumerate([97.6, 53.0, 82.5, 98.7, 45.0, 65.0, 28.5, 51.6, 70.0, 86.4]):
        alt = 450 + 60 * i
        l1, l2 = tle_lines(47001 + i, f"24{i + 10:03d}A", year, day, 0.0, 2e-5, incl, rng.uniform(0, 360),
                           0.001, rng.uniform(0, 360), rng.uniform(0, 360), mean_motion_for_altitude(alt))
        lines += [f"LEO-ORACLE-{i + 1:02d}", l1, l2]
    (out / "leo.tle").write_text("\n".join(lines) + "\n")
    picks = [station_rows[i] for i in (3, 8, 12, 16, 21)]
    write_stations(out / "stations.csv", picks)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="fixtures")
    args = parser.parse_args()
    root = pathlib.Path(args.out)
    rng = np.random.default_rng(SEED)

    station_rows = stations()
    root.mkdir(parents=True, exist_ok=True)
    write_stations(root / "stations.csv", station_rows)
    write_catalog(root / "catalog", build_catalog(rng), rng)
    write_geo(root / "geo5", station_rows)
    write_leo(root / "leo10", station_rows, rng)


if __name__ == "__main__":
    main()

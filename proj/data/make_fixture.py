"""Regenerates rainfall_fixture.csv: synthetic annual maxima, not real data."""
import csv

import numpy as np

ALPHA, MU, SIGMA = 7.5263, -51.4312, 92.7826
YEARS = range(1879, 2026)
STATIONS = {
    "munich": {1887, 1944, 1945, 1990},
    "augsburg": {1879, 1880, 1881, 1882, 1944, 2011},
    "freising": set(range(1879, 1921)) | {1945},
}


def frechet(rng, size):
    return MU + SIGMA * (-np.log(rng.uniform(size=size))) ** (-1.0 / ALPHA)


def main():
    rng = np.random.default_rng(20250101)
    rows = []
    for station, missing in STATIONS.items():
        values = frechet(rng, len(YEARS))
        for year, v in zip(YEARS, values):
            rows.append((year, station, "" if year in missing else f"{v:.1f}"))
    rows.sort()
    with open("rainfall_fixture.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["year", "station", "value"])
        w.writerows(rows)


if __name__ == "__main__":
    main()

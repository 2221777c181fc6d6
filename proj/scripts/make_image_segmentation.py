#!/usr/bin/env python3
"""Write the Image Segmentation data in the UCI ``segmentation.test`` layout.

The UCI archive is not reachable from every build machine, so this script
rebuilds the 2100-row file (300 rows per class) from the copy bundled in the
``keel-ds`` wheel, which carries all 2310 rows of the original distribution.

    pip download --no-deps keel-ds -d /tmp/keel
    python3 scripts/make_image_segmentation.py /tmp/keel/keel_ds-*.whl data/segmentation.test
"""

import sys
import zipfile

CLASS_NAMES = ["BRICKFACE", "SKY", "FOLIAGE", "CEMENT", "WINDOW", "PATH", "GRASS"]
ATTRIBUTES = [
    "REGION-CENTROID-COL", "REGION-CENTROID-ROW", "REGION-PIXEL-COUNT",
    "SHORT-LINE-DENSITY-5", "SHORT-LINE-DENSITY-2", "VEDGE-MEAN", "VEDGE-SD",
    "HEDGE-MEAN", "HEDGE-SD", "INTENSITY-MEAN", "RAWRED-MEAN", "RAWBLUE-MEAN",
    "RAWGREEN-MEAN", "EXRED-MEAN", "EXBLUE-MEAN", "EXGREEN-MEAN", "VALUE-MEAN",
    "SATURATION-MEAN", "HUE-MEAN",
]
PER_CLASS = 300


def main(wheel, out):
    with zipfile.ZipFile(wheel) as z:
        raw = z.read("keel_ds/data/balanced/raw/segment.dat").decode()
    taken = {c: 0 for c in range(1, 8)}
    rows = []
    for line in raw.splitlines():
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != 20:
            continue
        label = int(float(fields[-1]))
        if taken[label] == PER_CLASS:
            continue
        taken[label] += 1
        rows.append(CLASS_NAMES[label - 1] + "," + ",".join(fields[:-1]))
    if any(v != PER_CLASS for v in taken.values()):
        raise SystemExit(f"unexpected class counts: {taken}")
    with open(out, "w") as f:
        f.write("\n")
        f.write(",".join(ATTRIBUTES) + "\n")
        f.write("\n")
        f.write("\n".join(rows) + "\n")


if __name__ == "__main__":
    if len(sys.argv) != 3:
        raise SystemExit(__doc__)
    main(sys.argv[1], sys.argv[2])

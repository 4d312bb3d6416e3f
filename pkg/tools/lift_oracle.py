#!/usr/bin/env python3
"""Independent oracle for the detector lifting fixture.

Walks the fixture CSV row by row and emits the expected triples by hand,
without importing any engine code. The sorted N-Triples output is frozen
as goldens/detector_lift.nt and the lifting engine is tested against it.

Run from the repository root:

    python tools/lift_oracle.py > goldens/detector_lift.nt
"""

import csv
import sys
from pathlib import Path

FIXTURE = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "oracle" / "detectors.csv"

EX = "http://example.org/"
TGT = "http://example.org/vocab#"
RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
XSD_INT = "http://www.w3.org/2001/XMLSchema#integer"


def main() -> None:
    lines = []
    with open(FIXTURE, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            subject = f"<{EX}det/{row['id']}>"
            lines.append(f"{subject} <{RDF_TYPE}> <{TGT}TrafficDetector> .")
            if row["flow"] != "":
                lines.append(f'{subject} <{TGT}flow> "{row["flow"]}"^^<{XSD_INT}> .')
    for line in sorted(lines):
        sys.stdout.write(line + "\n")


if __name__ == "__main__":
    main()

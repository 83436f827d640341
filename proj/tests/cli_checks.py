#!/usr/bin/env python3
"""End-to-end checks of the espdesign command-line surface."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

BIN = sys.argv[1]


def run(*args, expect=0):
    proc = subprocess.run([BIN, *args], capture_output=True, text=True)
    if proc.returncode != expect:
        raise SystemExit(
            f"{' '.join(args)}: exit {proc.returncode}, expected {expect}\n"
            f"stdout:\n{proc.stdout}\nstderr:\n{proc.stderr}"
        )
    return proc


def report_of(proc):
    doc = json.loads(proc.stdout)
    assert doc["all_pass"] is True, doc
    return doc


def stripped(doc):
    doc = dict(doc)
    doc.pop("timings_ms", None)
    return doc


def gf256_families():
    """Independent re-derivation of the q=16 family: GF(2^8) arithmetic from
    scratch (polynomial basis, modulus x^8+x^4+x^3+x^2+1), unit circle of
    order 17, and direct scans of all 5- and 6-subsets for vanishing
    sigma_{5,2} and sigma_{6,3}."""
    from itertools import combinations

    def mul(a, b):
        r = 0
        while b:
            if b & 1:
                r ^= a
            a <<= 1
            if a & 0x100:
                a ^= 0x11D
            b >>= 1
        return r

    # gamma = alpha^(16*15); build U_17 as its powers
    gamma = 1
    for _ in range(16 * 15):
        gamma = mul(gamma, 2)
    units = [1]
    for _ in range(16):
        units.append(mul(units[-1], gamma))
    assert mul(units[-1], gamma) == 1 and len(set(units)) == 17

    def esp_zero(sub, ell):
        deg = [0] * (ell + 1)
        deg[0] = 1
        for e in sub:
            u = units[e]
            for j in range(min(len(sub), ell), 0, -1):
                deg[j] ^= mul(u, deg[j - 1])
        return deg[ell] == 0

    five = [",".join(map(str, sub)) for sub in combinations(range(17), 5)
            if esp_zero(sub, 2)]
    six = [",".join(map(str, sub)) for sub in combinations(range(17), 6)
           if esp_zero(sub, 3)]
    return five, six


def main():
    tmp = Path(tempfile.mkdtemp())

    # reports are identical across thread counts, apart from timings
    a = report_of(run("verify", "--m", "4", "--target", "steiner", "--threads", "1"))
    b = report_of(run("verify", "--m", "4", "--target", "steiner", "--threads", "3"))
    assert stripped(a) == stripped(b), "thread count changed the report"

    # field-info in every format
    report_of(run("field-info", "--m", "5"))
    csv = run("field-info", "--m", "5", "--format", "csv").stdout
    assert csv.startswith("id,expected,computed,pass,origin"), csv
    text = run("field-info", "--m", "5", "--format", "text").stdout
    assert "all checks passed" in text, text

    # block families: file written, header as specified, both modes agree
    fam = tmp / "fam.csv"
    doc = report_of(
        run("blocks", "--m", "4", "--k", "6", "--ell", "3", "--mode", "both",
            "--family-out", str(fam))
    )
    header = fam.read_text().splitlines()[0]
    assert header == "16,6,3,FULL,816", header
    ids = {c["id"]: c for c in doc["checks"]}
    assert ids["enumerations_agree"]["computed"] == "true"

    # report lands in --out when given
    out = tmp / "report.json"
    run("weights", "--m", "4", "--which", "dual-trace", "--out", str(out))
    doc = json.loads(out.read_text())
    assert doc["all_pass"] is True
    assert doc["field"] == "m=4 poly=0x11d"

    # family files are identical whatever the thread count
    fam1, fam3 = tmp / "fam1.csv", tmp / "fam3.csv"
    run("blocks", "--m", "5", "--k", "6", "--ell", "3", "--threads", "1",
        "--family-out", str(fam1))
    run("blocks", "--m", "5", "--k", "6", "--ell", "3", "--threads", "3",
        "--family-out", str(fam3))
    assert fam1.read_bytes() == fam3.read_bytes(), "family file not thread-invariant"

    # independent re-derivation of the q=16 families in pure python
    exp_five, exp_six = gf256_families()
    st = tmp / "steiner.csv"
    run("blocks", "--m", "4", "--k", "5", "--ell", "2", "--mode", "constructive",
        "--family-out", str(st))
    assert st.read_text().splitlines()[1:] == exp_five, "q=16 (5,2) family differs"
    b63 = tmp / "b63.csv"
    run("blocks", "--m", "4", "--k", "6", "--ell", "3", "--mode", "constructive",
        "--family-out", str(b63))
    assert b63.read_text().splitlines()[1:] == exp_six, "q=16 (6,3) family differs"

    # an empty family still writes a well-formed file
    empty = tmp / "empty.csv"
    report_of(
        run("verify", "--m", "4", "--target", "b63-b1", "--family-out", str(empty))
    )
    assert empty.read_text() == "16,6,3,B1,0\n", empty.read_text()

    # exceeding the enumeration budget is a dedicated exit code
    proc = run("verify", "--m", "5", "--target", "b63", "--budget", "10", expect=2)
    assert "budget" in proc.stderr

    # invalid arguments are rejected
    run("verify", "--m", "4", "--target", "nonsense", expect=105)
    run("weights", "--m", "4", "--which", "dual-trace", "--format", "yaml", expect=105)

    print("cli checks passed")


if __name__ == "__main__":
    main()

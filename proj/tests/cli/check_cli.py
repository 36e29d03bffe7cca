#!/usr/bin/env python3
"""End-to-end checks of the capwhitham command line tool.

usage: check_cli.py <capwhitham binary> <source dir>
"""

import json
import math
import pathlib
import subprocess
import sys
import tempfile

try:
    import jsonschema
except ImportError:  # schema validation is skipped, everything else still runs
    jsonschema = None

BIN = sys.argv[1]
SRC = pathlib.Path(sys.argv[2])
SCHEMAS = SRC / "schemas"
failures = []


def run(*args, expect=0):
    p = subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, timeout=300)
    if p.returncode != expect:
        failures.append(f"{' '.join(map(str, args))}: exit {p.returncode}, expected {expect}\n{p.stderr}")
    return p


def check(cond, what):
    if not cond:
        failures.append(what)


def validate(doc, schema):
    if jsonschema is None:
        return
    with open(SCHEMAS / f"{schema}.schema.json") as f:
        try:
            jsonschema.validate(doc, json.load(f))
        except jsonschema.ValidationError as e:
            failures.append(f"{schema} schema: {e.message}")


def envelope(p, code):
    line = p.stderr.strip().splitlines()[-1]
    doc = json.loads(line)
    validate(doc, "error")
    check(doc["code"] == code, f"error code {doc['code']} != {code}")
    return doc


# expand
p = run("expand", "--k1", 2, "--k2", 5)
golden = (SRC / "tests" / "golden" / "expansion_2_5.json").read_text()
check(p.stdout == golden, "expand (2,5) differs from the golden file")
doc = json.loads(p.stdout)
validate(doc, "expansion")
check(doc["N"] == 630 and doc["M"] == 4 and len(doc["monomials"]) == 13, "expand (2,5) N, M or count")
check(run("expand", "--k1", 2, "--k2", 5).stdout == p.stdout, "expand is not byte-stable")

doc = json.loads(run("expand", "--k1", 3, "--k2", 7).stdout)
f = math.factorial
check(doc["N"] == f(2 * 7 + 2 * 3 - 4) // (f(3 + 7 - 2) * f(3) * f(6)), "expand (3,7) N differs from the factorial formula")
check(sum(m["coeff"] for m in doc["monomials"]) == doc["N"], "expand (3,7) weights")

doc = json.loads(run("expand", "--k1", 1, "--k2", 3).stdout)
for m in doc["monomials"]:
    check(all(x not in (1, 3) for x in m["factors"]), "expand (1,3) has a kernel factor")

envelope(run("expand", "--k1", 8, "--k2", 13, expect=4), "resource")

# bifurcate
doc = json.loads(run("bifurcate", "--k1", 2, "--k2", 5, "--T", 0.1215).stdout)
validate(doc, "bifurcate")
check(len(doc["points"]) == 1 and doc["points"][0]["residual"] <= 1e-12, "bifurcate residual")
envelope(run("bifurcate", "--k1", 2, "--k2", 5, "--T", 0.5, expect=2), "domain")
p = run("bifurcate", "--k1", 2, "--k2", 4, "--T", 0.1)
doc = json.loads(p.stdout)
validate(doc, "bifurcate")
check(doc["pair"] == {"k1": 1, "k2": 2}, "pair (2,4) not reduced")
check(doc["warnings"] and doc["warnings"][0]["code"] == "pair_reduced", "missing reduction warning")
check('"pair_reduced"' in p.stderr, "reduction warning not on stderr")
p = run("bifurcate", "--k1", 2, "--k2", 5, "--T-grid", "0.05:0.3:6", "--format", "csv")
lines = p.stdout.splitlines()
check(lines[0] == "T,c0,kappa0,residual" and len(lines) == 7, "bifurcate csv shape")
envelope(run("bifurcate", "--k1", 5, "--k2", 2, "--T", 0.1, expect=2), "domain")
envelope(run("bifurcate", "--k1", 2, expect=2), "usage")

# phi
doc = json.loads(run("phi", "root", "--k1", 2, "--k2", 5).stdout)
validate(doc, "phi_root")
check(len(doc["roots"]) == 1 and abs(doc["roots"][0]["T0"] - 0.1215) <= 0.003, "phi root (2,5)")
r = doc["roots"][0]
check(r["lo"] <= r["T0"] <= r["hi"] and r["slope"] > 0, "phi root bracket or slope")
doc = json.loads(run("phi", "root", "--k1", 1, "--k2", 4).stdout)
check(doc["roots"] == [], "phi root (1,4) not empty")
doc = json.loads(run("phi", "limits", "--k1", 2, "--k2", 5).stdout)
validate(doc, "phi_limits")
check(doc["limits"]["signs"] == ["-", "+"], "phi limits (2,5) signs")
doc = json.loads(run("phi", "eval", "--k1", 2, "--k2", 5, "--T-grid", "0.1,0.2").stdout)
validate(doc, "phi_eval")
check(doc["samples"][0]["phi"] < 0 < doc["samples"][1]["phi"], "phi eval signs")

with tempfile.TemporaryDirectory() as tmp:
    run("phi", "curve", "--k1", 2, "--k2", 5, "--grid", 64, "--out", tmp)
    out = pathlib.Path(tmp)
    doc = json.loads((out / "phi_curve.json").read_text())
    validate(doc, "phi_curve")
    check(len(doc["points"]) == 64, "phi curve point count")
    csv = (out / "phi_curve.csv").read_text()
    check(csv.startswith("T,phi,phi_normalized\n") and "\r" not in csv, "phi curve csv header")
    svg = (out / "phi_curve.svg").read_text()
    check('width="800" height="500"' in svg and "<polyline" in svg and "T0 =" in svg, "phi curve svg")

    # configuration file, overridden by flags
    cfg = out / "run.cfg"
    cfg.write_text("# comment\ngrid = 48\ntol-root = 1e-9\n")
    doc = json.loads(run("phi", "root", "--k1", 2, "--k2", 5, "--config", cfg).stdout)
    check(doc["grid"] == 48 and doc["tol"] == 1e-9, "config file not applied")
    doc = json.loads(run("phi", "root", "--k1", 2, "--k2", 5, "--config", cfg, "--grid", 80).stdout)
    check(doc["grid"] == 80, "flag does not override config")
    cfg.write_text("nonsense = 1\n")
    envelope(run("phi", "root", "--k1", 2, "--k2", 5, "--config", cfg, expect=2), "config")
envelope(run("phi", "root", "--k1", 2, "--k2", 5, "--tol-root", -1, expect=2), "config")

# pairs
p1 = run("pairs", "--kmax", 5, "--jobs", 1)
p4 = run("pairs", "--kmax", 5, "--jobs", 4)
check(p1.stdout == p4.stdout, "pairs csv depends on jobs")
rows = [l.split(",") for l in p1.stdout.splitlines()]
check(rows[0] == ["k1", "k2", "status", "limit_low", "limit_high", "n_roots", "T0_first"], "pairs csv header")
admits = [(r[0], r[1]) for r in rows[1:] if r[2] == "admits"]
check(admits == [("2", "5")], f"pairs kmax=5 admits {admits}")
for r in rows[1:]:
    if r[2].startswith("excluded"):
        check(r[3] == "" and r[4] == "", "excluded pair carries limits")
with tempfile.TemporaryDirectory() as tmp:
    run("pairs", "--kmax", 9, "--jobs", 3, "--out", tmp, "--format", "csv,json,svg")
    doc = json.loads((pathlib.Path(tmp) / "pairs.json").read_text())
    validate(doc, "pairs")
    svg = (pathlib.Path(tmp) / "pairs.svg").read_text()
    n_admits = sum(v["status"] == "admits" for v in doc["verdicts"])
    check(svg.count("<circle") == n_admits, "pairs svg dot count")
    first = (pathlib.Path(tmp) / "pairs.csv").read_bytes()
    run("pairs", "--kmax", 9, "--jobs", 2, "--out", tmp, "--format", "csv")
    check((pathlib.Path(tmp) / "pairs.csv").read_bytes() == first, "pairs rerun not byte-identical")
envelope(run("pairs", "--kmax", 2, expect=2), "domain")

# wave
theta = math.pi / 20
p = run("wave", "--k1", 2, "--k2", 5, "--r1", 1e-3, "--r2", 1e-3, "--theta1", theta, "--T", 0.1215)
doc = json.loads(p.stdout)
validate(doc, "wave")
rep = doc["report"]
check(doc["asymmetry_test"] and rep["asymmetric"] and rep["converged"], "asymmetric wave flags")
check(rep["residuals"]["J_inf"] <= 1e-10 and abs(rep["residuals"]["orthogonality"]) <= 1e-12
      and abs(rep["residuals"]["lindep"]) <= 1e-13, "asymmetric wave residuals")
check(run("wave", "--k1", 2, "--k2", 5, "--r1", 1e-3, "--r2", 1e-3, "--theta1", theta, "--T", 0.1215).stdout == p.stdout,
      "wave rerun not byte-identical")

doc = json.loads(run("wave", "--k1", 2, "--k2", 5, "--r1", 1e-3, "--r2", 1e-3, "--theta1", math.pi / 10, "--T", 0.1215).stdout)
validate(doc, "wave")
check(not doc["asymmetry_test"] and doc["report"]["mode"] == "symmetric-bimodal", "degenerate angle not symmetric")

doc = json.loads(run("wave", "--k1", 2, "--k2", 5, "--T", 0.1215).stdout)
check(doc["report"]["mode"] == "trivial", "zero amplitude not trivial")

with tempfile.TemporaryDirectory() as tmp:
    run("wave", "--k1", 2, "--k2", 5, "--r1", 1e-3, "--r2", 1e-3, "--theta1", theta, "--out", tmp)
    lines = (pathlib.Path(tmp) / "wave.csv").read_text().splitlines()
    check(lines[0] == "x,u" and len(lines) == 1025, "wave csv shape")
    doc = json.loads((pathlib.Path(tmp) / "wave.json").read_text())
    validate(doc, "wave")
    check(abs(doc["T_init"] - 0.1215) < 0.003, "wave default T_init is not the phi root")

p = run("wave", "--k1", 2, "--k2", 5, "--r1", 0.05, "--r2", 0.05, "--theta1", theta, "--T", 0.1215, expect=3)
doc = json.loads(p.stdout)
validate(doc, "wave")
check(doc["report"]["converged"] is False, "non-converged report marked converged")
envelope(p, "convergence")
envelope(run("wave", "--k1", 2, "--k2", 5, "--r1", 1e-3, "--r2", 1e-3, "--theta1", math.pi / 10 + 5e-12, "--T", 0.1215,
             expect=2), "degenerate_direction")

if jsonschema is None:
    print("note: jsonschema not installed, schema validation skipped")
if failures:
    print("\n".join("FAIL: " + f for f in failures))
    sys.exit(1)
print("cli checks passed")

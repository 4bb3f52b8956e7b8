"""Runs silting-forge subcommands, checks exit codes and validates every JSON output against schemas/."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema
from referencing import Registry, Resource

BINARY = Path(sys.argv[1]).resolve()
ROOT = Path(sys.argv[2]).resolve()
CORPUS = ROOT / "corpus"
SCHEMAS = ROOT / "schemas"

registry = Registry()
for path in sorted(SCHEMAS.glob("*.schema.json")):
    schema = json.loads(path.read_text())
    registry = registry.with_resource(schema["$id"], Resource.from_contents(schema))


def validator(name):
    schema = registry.contents(name + ".schema.json")
    return jsonschema.Draft202012Validator(schema, registry=registry)


failures = []


def run(args, code, schema, check=None, env=None):
    proc = subprocess.run([str(BINARY), *args], capture_output=True, text=True, cwd=CORPUS, env=env)
    label = " ".join(args)
    if proc.returncode != code:
        failures.append(f"{label}: exit {proc.returncode}, expected {code}\n{proc.stdout[-400:]}")
        return None
    try:
        doc = json.loads(proc.stdout)
    except json.JSONDecodeError as e:
        failures.append(f"{label}: output is not JSON ({e})")
        return None
    errors = sorted(validator(schema).iter_errors(doc), key=lambda e: list(e.path))
    if errors:
        failures.append(f"{label}: schema {schema}: {errors[0].message} at {list(errors[0].path)}")
    if check is not None and not check(doc):
        failures.append(f"{label}: content check failed")
    return proc.stdout


tmp = Path(tempfile.mkdtemp())
bad = tmp / "bad.json"
bad.write_text(json.dumps({
    "field": {"kind": "prime", "p": 2},
    "quiver": {"vertices": ["1", "2"], "arrows": [{"name": "a", "source": "1", "target": "2"}]},
    "relations": [[{"coeff": "1", "path": ["a"]}]],
}))
broken = tmp / "broken.json"
broken.write_text("{ not json")
wrong_module = json.loads((CORPUS / "a2_simple1.json").read_text())
wrong_module["action"]["a"] = [["1"]]
(tmp / "wrong_module.json").write_text(json.dumps(wrong_module))

# algebras
run(["algebra", "build", "--quiver", "a2.json"], 0, "algebra", lambda d: d["dim"] == 3)
run(["algebra", "build", "--quiver", str(bad)], 3, "error")
run(["algebra", "build", "--quiver", str(broken)], 3, "error")
run(["algebra", "build", "--quiver", "a2.json", "--field", "3"], 3, "error")
run(["algebra", "derive", "--algebra", "a2.json", "--op", "corner", "--vertices", "2"], 0, "algebra",
    lambda d: d["dim"] == 1)
run(["algebra", "derive", "--algebra", "a3_zero_relation.json", "--op", "quotient", "--vertices", "2"], 0, "algebra",
    lambda d: d["dim"] == 2)
run(["algebra", "derive", "--algebra", "a2.json", "--op", "tensor", "--with", "a2.json"], 0, "algebra",
    lambda d: d["dim"] == 9)
run(["algebra", "derive", "--algebra", "a2.json", "--op", "opposite"], 0, "algebra")
run(["algebra", "derive", "--algebra", "a2.json", "--op", "nope"], 3, "error")
run(["algebra", "triangular", "--a", "point.json", "--b", "dual_numbers.json", "--bimodule", "gamma0_bimodule.json"],
    0, "context", lambda d: d["gamma"]["dim"] == 5 and all(d["hypotheses"].values()))
# the structure-constant form round-trips
out = run(["algebra", "derive", "--algebra", "a2_tensor_a2.json", "--op", "corner", "--vertices", "1|1,1|2,2|1,2|2"], 0,
          "algebra")
if out is not None:
    (tmp / "again.json").write_text(out)
    run(["algebra", "build", "--quiver", str(tmp / "again.json")], 0, "algebra",
        lambda d: d["id"] == json.loads(out)["id"])

# modules
run(["module", "validate", "--algebra", "a2.json", "--module", "a2_regular.json"], 0, "module_validation")
run(["module", "validate", "--algebra", "a2.json", "--module", str(tmp / "wrong_module.json")], 3, "error")
run(["module", "validate", "--algebra", "dual_numbers.json", "--module", "a2_regular.json"], 3, "error")
run(["module", "hom", "--algebra", "a2.json", "--module", "a2_regular.json", "--to", "a2_simple1.json"], 0, "hom",
    lambda d: d["dim"] == 1)
run(["module", "tau", "--algebra", "a2.json", "--module", "a2_simple1.json"], 0, "module_summary",
    lambda d: d["dimension_vector"] == [0, 1])
run(["module", "decompose", "--algebra", "a2.json", "--module", "a2_regular.json"], 0, "decomposition",
    lambda d: sorted(s["dimension_vector"] for s in d["summands"]) == [[0, 1], [1, 1]])
run(["module", "enumerate", "--algebra", "a2.json"], 0, "module_enumeration", lambda d: len(d["indecomposables"]) == 3)
run(["module", "enumerate", "--algebra", "dual_numbers.json", "--jobs", "2"], 0, "module_enumeration",
    lambda d: len(d["indecomposables"]) == 2)

# silting
run(["silting", "check", "--algebra", "a2.json", "--module", "a2_regular.json", "--presentation", "auto"], 0,
    "silting_certificate", lambda d: d["verdict"] == "silting")
pres = tmp / "p2_to_p1.json"
pres.write_text(json.dumps({"p1": ["2"], "p0": ["1"], "matrix": [["0"], ["1"]]}))
run(["silting", "check", "--algebra", "a2.json", "--module", "a2_simple1.json", "--presentation", str(pres)], 1,
    "silting_certificate", lambda d: d["verdict"] == "partial_silting_only")
run(["silting", "check", "--algebra", "a2.json", "--module", "a2_regular.json", "--presentation", str(pres)], 3, "error")
run(["silting", "enumerate", "--algebra", "a2.json", "--dim-bound", "2"], 0, "silting_enumeration",
    lambda d: d["count"] == 5)
run(["silting", "enumerate", "--algebra", "dual_numbers.json"], 0, "silting_enumeration", lambda d: d["count"] == 2)
run(["silting", "tensor", "--algebra", "a2.json", "--module", "a2_regular.json", "--module2", "a2_simple1.json"], 0,
    "tensor_report", lambda d: d["totalized"]["verdict"] == "silting")

# Gorenstein
run(["gorenstein", "report", "--algebra", "dual_numbers.json"], 0, "gorenstein_report",
    lambda d: d["left_injective_dimension"] == 0 and d["global_dimension"] is None)
run(["gorenstein", "gp", "--algebra", "dual_numbers.json"], 0, "gp_classification",
    lambda d: sorted(m["dimension_vector"] for m in d["modules"]) == [[1], [2]])
run(["gorenstein", "check", "--algebra", "a2.json", "--module", "a2_regular.json"], 0, "gorenstein_certificate",
    lambda d: d["verdict"] == "gorenstein_silting")

# recollements
run(["recollement", "build", "--algebra", "a2.json", "--vertices", "2"], 0, "recollement_build",
    lambda d: d["quotient"]["dim"] == 1 and d["corner"]["dim"] == 1)
run(["recollement", "apply", "--algebra", "a2.json", "--vertices", "2", "--functor", "e", "--module", "a2_regular.json"],
    0, "module_summary", lambda d: d["dimension_vector"] == [2])
run(["recollement", "apply", "--algebra", "a2.json", "--vertices", "2", "--functor", "i", "--module", "a2_regular.json"],
    3, "error")
run(["recollement", "verify", "--algebra", "a2.json", "--vertices", "2", "--count", "20", "--seed", "3"], 0,
    "battery_report", lambda d: d["ok"] and d["probes"] == 20)
run(["recollement", "verify", "--algebra", "a2.json", "--vertices", "9"], 3, "error")

# theorem suites
first = run(["theorems", "run", "--suite", "gluing", "--context", "gamma0.json", "--seed", "4"], 0, "theorems_run",
            lambda d: d["verdict"] == "PASS")
second = run(["theorems", "run", "--suite", "gluing", "--context", "gamma0.json", "--seed", "4"], 0, "theorems_run")
if first != second:
    failures.append("gluing suite output differs between runs with the same seed")
run(["theorems", "run", "--suite", "gluing", "--presentations", "complemented"], 1, "theorems_run",
    lambda d: d["suites"][0]["summary"]["a_iff_b_holds"] == "14")
run(["theorems", "run", "--suite", "idempotent"], 0, "theorems_run", lambda d: len(d["suites"]) == 2)
run(["theorems", "run", "--suite", "idempotent", "--algebra", "a3_zero_relation.json", "--vertices", "2"], 0,
    "theorems_run")
run(["theorems", "run", "--suite", "tensor", "--dim-bound", "2"], 1, "theorems_run",
    lambda d: d["suites"][0]["summary"]["totalized_silting"] == "9")
run(["theorems", "run", "--suite", "bogus"], 3, "error")

# corpus
run(["corpus", "list"], 0, "corpus_list", lambda d: {e["id"] for e in d["entries"]} >= {
    "a2", "a3_zero_relation", "dual_numbers", "semisimple_pair", "a2_tensor_a2", "gamma0"})
scratch = tmp / "corpus"
run(["corpus", "add", "--file", str(CORPUS / "a2.json"), "--corpus-dir", str(scratch)], 0, "corpus_entry")
run(["corpus", "add", "--file", str(bad), "--corpus-dir", str(scratch)], 3, "error")
run(["corpus", "add", "--file", str(CORPUS / "a2.json"), "--kind", "module", "--corpus-dir", str(scratch)], 3, "error")
run(["corpus", "list", "--corpus-dir", str(scratch)], 0, "corpus_list", lambda d: len(d["entries"]) == 1)

# usage errors
run([], 3, "error")
run(["silting", "check", "--algebra", "a2.json"], 3, "error")
run(["silting", "frobnicate"], 3, "error")
run(["module", "tau", "--algebra", "missing.json", "--module", "a2_simple1.json"], 3, "error")

for f in failures:
    print("FAIL", f)
print(f"{'ok' if not failures else 'failed'}: {len(failures)} failures")
sys.exit(1 if failures else 0)

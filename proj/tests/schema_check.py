"""Runs the dslab tool over a spread of commands and validates every JSON
document it writes against docs/report.schema.json."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

COMMANDS = [
    ["verify", "all", "--mu-max", "6", "--nu-max", "6", "--r-max", "8", "--report-limit", "3000"],
    ["verify", "integrals", "--report-limit", "0"],
    ["verify", "genfun", "--order", "20"],
    ["pmf", "S", "--kind", "pm", "--p", "1/3", "--n", "6"],
    ["pmf", "S", "--kind", "nd", "--p", "1/3", "--n", "2"],
    ["pmf", "T", "--kind", "pm", "--p", "1/2", "--a", "1", "--horizon", "9"],
    ["pmf", "T", "--kind", "nd", "--p", "2/5", "--a", "3", "--horizon", "12"],
    ["pmf", "bridge", "--mu", "1", "--nu", "0", "--r", "2", "--p", "1/2"],
    ["pmf", "bridge", "--mu", "2", "--nu", "1", "--r", "3", "--p", "1/3"],
    ["pmf", "negbin", "--mu", "3", "--p", "1/4", "--horizon", "10"],
    ["simulate", "S", "--n", "8", "--samples", "20000"],
    ["simulate", "T", "--a", "2", "--samples", "20000", "--horizon", "200"],
    ["simulate", "bridge", "--r", "3", "--samples", "20000", "--p", "1/3"],
    ["series", "G", "--j", "-2", "--p", "1/3", "--order", "12"],
    ["series", "T", "--kind", "nd", "--a", "2", "--p", "1/2", "--order", "12"],
]

# Runs that report failures (exit 1) must still produce valid documents.
FAILING = [
    ["verify", "laplace", "--abs-tol", "1e-30", "--rel-tol", "1e-15", "--report-limit", "0"],
]


def main() -> int:
    tool, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(Path(schema_path).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    bad = 0
    with tempfile.TemporaryDirectory() as tmp:
        runs = [(args, 0) for args in COMMANDS] + [(args, 1) for args in FAILING]
        for i, (args, expected) in enumerate(runs):
            out = Path(tmp) / f"out{i}.json"
            proc = subprocess.run([tool, *args, "-o", str(out)], capture_output=True, text=True)
            if proc.returncode != expected:
                print(f"FAIL exit {proc.returncode}: {' '.join(args)}\n{proc.stderr}")
                bad += 1
                continue
            doc = json.loads(out.read_text())
            errors = list(validator.iter_errors(doc))
            status = "ok  " if not errors else "FAIL"
            print(f"{status} {' '.join(args)}")
            for e in errors[:5]:
                print(f"     {e.json_path}: {e.message[:200]}")
            bad += bool(errors)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())

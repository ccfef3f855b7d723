#!/usr/bin/env python3
"""Runs representative ordered-beta commands and validates their JSON output.

Each command is run twice: the outputs must be byte-identical and must
conform to schemas/output.json. Exit status is nonzero on any failure.
"""
import argparse
import json
import pathlib
import subprocess
import sys

import jsonschema

SET1 = ["--a", "0.8,0.3,1.5", "--b", "0.4,1.7,0.8"]
SET2 = ["--a", "50.8,0.3,1.5", "--b", "0.4,1.7,0.8"]
UNIFORM2 = ["--a", "1,1", "--b", "1,1"]

COMMANDS = [
    ["eval", *SET1, "--z", "1"],
    ["eval", *SET1, "--z", "0.7", "--method", "taylor"],
    ["eval", *SET2, "--z", "1", "--method", "taylor"],
    ["eval", *SET2, "--z", "1", "--method", "taylor", "--precision", "extended"],
    ["eval", *SET1, "--z", "0"],
    ["curve", *SET1, "--from", "4", "--to", "24", "--step", "4"],
    ["verify", *SET1],
    ["verify", "--a", "1,1,1,1,1", "--b", "1,1,1,1,1", "--samples", "100000"],
    ["dist", "pdf", *UNIFORM2, "--x", "0.2,0.6"],
    ["dist", "pdf", *UNIFORM2, "--x", "0.6,0.2"],
    ["dist", "pdf", *SET1, "--x", "0.4", "--k", "2"],
    ["dist", "cdf", *UNIFORM2, "--k", "1", "--z", "0.5"],
    ["dist", "bracket", *SET1, "--k", "2", "--z", "0.5"],
    ["dist", "moment", *SET1, "--alpha", "1,0,0", "--beta", "0,0,1"],
    ["dist", "posterior", *UNIFORM2, "--m", "2,0", "--k", "1,3"],
    ["dist", "sample", *SET1, "--count", "5", "--seed", "3"],
    ["dist", "sample", *SET1, "--count", "5", "--seed", "3", "--sampler", "gibbs"],
]


def run(binary, args):
    return subprocess.run([binary, *args], capture_output=True, check=False)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("binary", help="path to the ordered-beta executable")
    parser.add_argument("schema", help="path to schemas/output.json")
    opts = parser.parse_args()

    schema = json.loads(pathlib.Path(opts.schema).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    failures = 0
    for args in COMMANDS:
        label = " ".join(args)
        first, second = run(opts.binary, args), run(opts.binary, args)
        problems = []
        if first.returncode != 0:
            problems.append(f"exit {first.returncode}: {first.stderr.decode().strip()}")
        if first.stdout != second.stdout:
            problems.append("output differs between runs")
        try:
            record = json.loads(first.stdout)
            problems += [e.message for e in validator.iter_errors(record)]
        except json.JSONDecodeError as e:
            problems.append(f"not JSON: {e}")
        print(("PASS " if not problems else "FAIL ") + label)
        for p in problems:
            print("    " + p)
        failures += bool(problems)

    timed = json.loads(run(opts.binary, ["eval", *SET1, "--z", "1", "--timing"]).stdout)
    timing_ok = not list(validator.iter_errors(timed)) and "timing" in timed
    print(("PASS " if timing_ok else "FAIL ") + "eval --timing")
    failures += not timing_ok

    print(f"{len(COMMANDS) + 1 - failures}/{len(COMMANDS) + 1} passed")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
